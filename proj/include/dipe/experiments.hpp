// Copyright 2026 The dipesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dipe/analytics.hpp"
#include "dipe/protocol.hpp"
#include "dipe/tensor_net.hpp"

namespace dipe {

struct SweepRow {
  std::string scenario;
  std::string ensemble;
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double theta = 0;
  double empirical_variance = 0;
  double analytic_reference = 0;
  double stderr_ = 0;
};

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct SweepResult {
  std::vector<SweepRow> rows;

  static constexpr const char* kHeader =
      "scenario,ensemble,d,n,m,k,theta,empirical_variance,analytic_reference,stderr";

  void write_csv(std::ostream& os) const {
    os << kHeader << '\n';
    for (const auto& r : rows) {
      os << r.scenario << ',' << r.ensemble << ',' << r.d << ',' << r.n << ',' << r.m << ',' << r.k << ','
         << format_real(r.theta) << ',' << format_real(r.empirical_variance) << ','
         << format_real(r.analytic_reference) << ',' << format_real(r.stderr_) << '\n';
    }
  }

  /// Whitespace-separated blocks, one per ensemble, separated by two blank
  /// lines so gnuplot can address them with `index`.
  void write_dat(std::ostream& os) const {
    std::vector<std::string> order;
    for (const auto& r : rows) {
      if (std::find(order.begin(), order.end(), r.ensemble) == order.end()) order.push_back(r.ensemble);
    }
    bool first = true;
    for (const auto& e : order) {
      if (!first) os << "\n\n";
      first = false;
      os << "# " << e << "\n# n m k theta empirical analytic stderr\n";
      for (const auto& r : rows) {
        if (r.ensemble != e) continue;
        os << r.n << ' ' << r.m << ' ' << r.k << ' ' << format_real(r.theta) << ' ' << format_real(r.empirical_variance)
           << ' ' << format_real(r.analytic_reference) << ' ' << format_real(r.stderr_) << '\n';
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct SweepConfig {
  std::string scenario;
  std::vector<EnsembleSpec> ensembles;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> k_values;
  std::vector<std::size_t> depths;
  std::vector<double> theta_values;
  std::size_t fixed_n = 8;
  std::size_t fixed_m = 100;
  std::size_t fixed_k = 4;
  double fixed_theta = std::numbers::pi / 4;
  std::size_t rounds = 10000;
  std::size_t haar_pairs = 20;
  std::size_t haar_unitaries = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string out;

  static SweepConfig defaults(const std::string& scenario);
  void validate() const;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  for (const auto& part : split(v, ',')) {
    auto t = trim(part);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

// "4, 6, 9" or "4..12" or "4..12:2"
inline std::vector<std::size_t> parse_uint_list(const std::string& v, const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(v)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_uint(item, key));
      continue;
    }
    const auto lo = parse_uint(item.substr(0, dots), key);
    std::string rest = item.substr(dots + 2);
    std::uint64_t step = 1;
    if (const auto c = rest.find(':'); c != std::string::npos) {
      step = parse_uint(rest.substr(c + 1), key);
      rest = rest.substr(0, c);
    }
    const auto hi = parse_uint(rest, key);
    require_config(step >= 1 && lo <= hi, "bad range '" + item + "' for " + key);
    for (auto x = lo; x <= hi; x += step) out.push_back(x);
  }
  require_config(!out.empty(), key + " is empty");
  return out;
}

inline std::vector<double> parse_real_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_real(item, key));
  require_config(!out.empty(), key + " is empty");
  return out;
}

// `count` evenly spaced angles on [0, pi/2]
inline std::vector<double> theta_grid(std::size_t count) {
  require_config(count >= 2, "theta_grid needs at least two points");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::numbers::pi / 2 * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

inline void apply_key(SweepConfig& c, const std::string& key, const std::string& value) {
  if (key == "ensembles") {
    c.ensembles.clear();
    for (const auto& e : split_list(value)) c.ensembles.push_back(parse_ensemble(e));
  } else if (key == "n") {
    c.n_values = parse_uint_list(value, key);
  } else if (key == "m") {
    c.m_values = parse_uint_list(value, key);
  } else if (key == "k") {
    c.k_values = parse_uint_list(value, key);
  } else if (key == "depths") {
    c.depths = parse_uint_list(value, key);
  } else if (key == "theta") {
    c.theta_values = parse_real_list(value, key);
  } else if (key == "theta_grid") {
    c.theta_values = theta_grid(parse_uint(value, key));
  } else if (key == "fixed_n") {
    c.fixed_n = parse_uint(value, key);
  } else if (key == "fixed_m") {
    c.fixed_m = parse_uint(value, key);
  } else if (key == "fixed_k") {
    c.fixed_k = parse_uint(value, key);
  } else if (key == "fixed_theta") {
    c.fixed_theta = parse_real(value, key);
  } else if (key == "rounds") {
    c.rounds = parse_uint(value, key);
  } else if (key == "haar_pairs") {
    c.haar_pairs = parse_uint(value, key);
  } else if (key == "haar_unitaries") {
    c.haar_unitaries = parse_uint(value, key);
  } else if (key == "seed") {
    c.seed = parse_uint(value, key);
  } else if (key == "threads") {
    c.threads = parse_uint(value, key);
  } else if (key == "out") {
    c.out = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace detail

inline SweepConfig SweepConfig::defaults(const std::string& scenario) {
  SweepConfig c;
  c.scenario = scenario;
  const std::vector<EnsembleSpec> all = {EnsembleSpec::local(), EnsembleSpec::brickwork(1), EnsembleSpec::brickwork(3),
                                         EnsembleSpec::brickwork(5), EnsembleSpec::global()};
  if (scenario == "fig2a") {
    c.ensembles = all;
    c.n_values = {4, 6, 8, 10, 12};
    c.m_values = {10, 100, 1000};
    c.fixed_n = 8;
    c.fixed_m = 100;
    c.rounds = 10000;
  } else if (scenario == "fig2b") {
    c.ensembles = all;
    c.fixed_n = 8;
    c.fixed_m = 1000;
    c.k_values = detail::parse_uint_list("0..8", "k");
    c.theta_values = detail::theta_grid(9);
    c.fixed_k = 4;
    c.rounds = 10000;
  } else if (scenario == "haar-scaling") {
    c.ensembles = {EnsembleSpec::local(), EnsembleSpec::brickwork(1), EnsembleSpec::brickwork(3), EnsembleSpec::global()};
    c.n_values = {4, 6, 8, 10};
    c.m_values = {10, 100, 1000};
    c.haar_pairs = 20;
    c.haar_unitaries = 100;
  } else if (scenario == "upsilon-convergence") {
    c.n_values = {6};
    c.depths = detail::parse_uint_list("1..9", "depths");
  } else {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
  return c;
}

inline void SweepConfig::validate() const {
  require_config(rounds >= 2, "rounds must be at least 2");
  require_config(haar_pairs >= 2 && haar_unitaries >= 2, "haar_pairs and haar_unitaries must be at least 2");
  for (auto m : m_values) require_config(m >= 1, "shot counts must be positive");
  require_config(fixed_m >= 1, "fixed_m must be positive");
  for (auto n : n_values) require_config(n >= 1 && n <= 64, "qubit counts must lie in 1..64");
  for (auto d : depths) require_config(d >= 1, "depths must be positive");
  for (auto k : k_values) require_config(k <= fixed_n, "k must not exceed fixed_n");
  require_config(fixed_k <= fixed_n, "fixed_k must not exceed fixed_n");
  if (scenario == "upsilon-convergence") {
    for (auto n : n_values) require_config(n % 2 == 0, "upsilon sweep needs even qubit counts");
  }
}

/// Reads `key = value` lines. Keys before any `[section]` apply to every
/// scenario; keys inside `[name]` apply only to that scenario. `#` and `;`
/// start comments.
inline SweepConfig parse_config(std::istream& in, const std::string& scenario) {
  auto c = SweepConfig::defaults(scenario);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find_first_of("#;"); h != std::string::npos) line.resize(h);
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      require_config(t.back() == ']', "line " + std::to_string(lineno) + ": unterminated section");
      section = detail::trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    require_config(eq != std::string::npos, "line " + std::to_string(lineno) + ": expected key = value");
    if (!section.empty() && section != scenario) continue;
    detail::apply_key(c, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  c.validate();
  return c;
}

inline SweepConfig parse_config_text(const std::string& text, const std::string& scenario) {
  std::istringstream is(text);
  return parse_config(is, scenario);
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// Sample variance and its delete-one jackknife standard error.
inline std::pair<double, double> variance_with_jackknife(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  require_config(n >= 3, "jackknife needs at least three values");
  const auto [mean, var] = mean_variance(xs);
  double s1 = 0, s2 = 0;
  for (double x : xs) {
    s1 += x - mean;
    s2 += (x - mean) * (x - mean);
  }
  const double nn = static_cast<double>(n);
  std::vector<double> loo(n);
  double loo_mean = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = xs[i] - mean;
    const double a = s1 - y, b = s2 - y * y;
    loo[i] = (b - a * a / (nn - 1)) / (nn - 2);
    loo_mean += loo[i] / nn;
  }
  double acc = 0;
  for (double v : loo) acc += (v - loo_mean) * (v - loo_mean);
  return {var, std::sqrt((nn - 1) / nn * acc)};
}

/// Least-squares slope of log2(y) against x, returned as the base 2^slope.
inline double fit_log_base(const std::vector<double>& x, const std::vector<double>& y) {
  require_config(x.size() == y.size() && x.size() >= 2, "fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require_config(y[i] > 0, "fit needs positive values");
    mx += x[i];
    my += std::log2(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (std::log2(y[i]) - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return std::exp2(sxy / sxx);
}

/// Spearman rank correlation; ties get their average rank.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  require_config(a.size() == b.size() && a.size() >= 2, "rank correlation needs paired data");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && std::abs(v[idx[j + 1]] - v[idx[i]]) <= 1e-12 * std::max(1.0, std::abs(v[idx[i]]))) ++j;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = 0.5 * static_cast<double>(i + j);
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const auto [ma, va] = mean_variance(ra);
  const auto [mb, vb] = mean_variance(rb);
  double cov = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) cov += (ra[i] - ma) * (rb[i] - mb);
  cov /= static_cast<double>(ra.size() - 1);
  if (va == 0 || vb == 0) return 0;
  return cov / std::sqrt(va * vb);
}

// ---------------------------------------------------------------------------
// Analytic references
// ---------------------------------------------------------------------------

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Best closed form for Var(X_m) on a fixed pair, or NaN when none is
/// available. Global: exact. Local: V1 + V2 + V4, exact at m = 1.
/// Brickwork: V1 + V2 at m = 1 only.
inline double analytic_variance(const EnsembleSpec& spec, const StatePair& pair, std::size_t m) {
  try {
    const double t = inner_product(pair);
    switch (spec.kind) {
      case EnsembleKind::GlobalClifford:
        return global_clifford_variance(pair, m).total();
      case EnsembleKind::LocalClifford:
        return -t * t + local_clifford_v2(pair, m) + local_clifford_v4(pair, m);
      case EnsembleKind::Brickwork:
        if (m != 1) return kNaN;
        return -t * t + brickwork_v2_exact(pair, spec.depth, m);
    }
  } catch (const ResourceCapError&) {
  }
  return kNaN;
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

namespace detail {

inline SweepRow fixed_pair_point(const std::string& scenario, const EnsembleSpec& spec, const StatePair& pair,
                                 std::size_t m, std::size_t rounds, std::uint64_t seed, std::size_t threads) {
  const auto xs = run_rounds(spec, pair, rounds, m, seed, threads);
  const auto [var, se] = variance_with_jackknife(xs);
  SweepRow r;
  r.scenario = scenario;
  r.ensemble = spec.name();
  r.d = spec.depth;
  r.n = pair.num_qubits();
  r.m = m;
  r.empirical_variance = var;
  r.stderr_ = se;
  return r;
}

}  // namespace detail

/// GHZ pairs: n sweep at fixed_m, then m sweep at fixed_n. Reference:
/// 2 + 2^{n+1}/m^2 for global, 2.5^n/m^2 for local, none for brickwork.
inline SweepResult run_fig2a(const SweepConfig& c) {
  c.validate();
  SweepResult res;
  std::uint64_t point = 0;
  auto one = [&](const EnsembleSpec& spec, std::size_t n, std::size_t m) {
    const auto g = make_ghz(n);
    const StatePair pair(g, g);
    auto row = detail::fixed_pair_point("fig2a", spec, pair, m, c.rounds, derive_seed(c.seed, {point++}), c.threads);
    const double mm = static_cast<double>(m);
    switch (spec.kind) {
      case EnsembleKind::GlobalClifford: row.analytic_reference = 2 + std::ldexp(1.0, static_cast<int>(n) + 1) / (mm * mm); break;
      case EnsembleKind::LocalClifford: row.analytic_reference = std::pow(2.5, static_cast<double>(n)) / (mm * mm); break;
      case EnsembleKind::Brickwork: row.analytic_reference = analytic_variance(spec, pair, m); break;
    }
    res.rows.push_back(row);
  };
  for (const auto& spec : c.ensembles) {
    for (auto n : c.n_values) {
      if (spec.kind == EnsembleKind::Brickwork && n % 2) continue;
      one(spec, n, c.fixed_m);
    }
    for (auto m : c.m_values) {
      if (m == c.fixed_m && std::find(c.n_values.begin(), c.n_values.end(), c.fixed_n) != c.n_values.end()) continue;
      if (spec.kind == EnsembleKind::Brickwork && c.fixed_n % 2) continue;
      one(spec, c.fixed_n, m);
    }
  }
  return res;
}

/// Local-Clifford limit 1.5^{n-k} xi(theta)^k - 1.
inline double local_sstate_reference(std::size_t n, std::size_t k, double theta) {
  return std::pow(1.5, static_cast<double>(n - k)) * std::pow(xi_theta(theta), static_cast<double>(k)) - 1;
}

/// S_{n,k}(theta) pairs: k sweep at fixed_theta, then theta sweep at fixed_k.
inline SweepResult run_fig2b(const SweepConfig& c) {
  c.validate();
  SweepResult res;
  const std::size_t n = c.fixed_n;
  const std::size_t m = c.fixed_m;
  std::uint64_t point = 0;
  auto one = [&](const EnsembleSpec& spec, std::size_t k, double theta) {
    const auto s = make_s_state(n, k, theta);
    const StatePair pair(s, s);
    auto row = detail::fixed_pair_point("fig2b", spec, pair, m, c.rounds, derive_seed(c.seed, {point++}), c.threads);
    row.k = k;
    row.theta = theta;
    row.analytic_reference = spec.kind == EnsembleKind::LocalClifford ? local_sstate_reference(n, k, theta)
                                                                       : analytic_variance(spec, pair, m);
    res.rows.push_back(row);
  };
  for (const auto& spec : c.ensembles) {
    if (spec.kind == EnsembleKind::Brickwork && n % 2) continue;
    for (auto k : c.k_values) one(spec, k, c.fixed_theta);
    for (double th : c.theta_values) one(spec, c.fixed_k, th);
  }
  return res;
}

/// Independent Haar pairs. Each point pools the within-pair variance over
/// haar_pairs pairs of haar_unitaries rounds; stderr is the jackknife over pairs.
inline SweepResult run_haar_scaling(const SweepConfig& c) {
  c.validate();
  SweepResult res;
  std::uint64_t point = 0;
  for (const auto& spec : c.ensembles) {
    for (auto n : c.n_values) {
      if (spec.kind == EnsembleKind::Brickwork && n % 2) continue;
      const auto fn = ClassicalFn::for_ensemble(spec, n);
      for (auto m : c.m_values) {
        const std::uint64_t pseed = derive_seed(c.seed, {point++});
        std::vector<double> per_pair(c.haar_pairs);
        for (std::size_t p = 0; p < c.haar_pairs; ++p) {
          const StatePair pair(make_haar_random(n, derive_seed(pseed, {p, 0})), make_haar_random(n, derive_seed(pseed, {p, 1})));
          const auto xs = run_rounds(spec, pair, c.haar_unitaries, m, derive_seed(pseed, {p, 2}), c.threads);
          per_pair[p] = mean_variance(xs).second;
        }
        const auto [mean, var] = mean_variance(per_pair);
        SweepRow r;
        r.scenario = "haar-scaling";
        r.ensemble = spec.name();
        r.d = spec.depth;
        r.n = n;
        r.m = m;
        r.empirical_variance = mean;
        r.stderr_ = std::sqrt(var / static_cast<double>(c.haar_pairs));
        r.analytic_reference = avg_variance_case2(AvgVarianceInputs::from(fn, m)).total();
        res.rows.push_back(r);
      }
    }
  }
  return res;
}

/// Fitted base of variance against n, per ensemble, at shot count m.
inline std::vector<std::pair<std::string, double>> fitted_bases(const SweepResult& res, std::size_t m) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> pts;
  std::vector<std::string> order;
  for (const auto& r : res.rows) {
    if (r.m != m) continue;
    if (!pts.count(r.ensemble)) order.push_back(r.ensemble);
    pts[r.ensemble].first.push_back(static_cast<double>(r.n));
    pts[r.ensemble].second.push_back(r.empirical_variance);
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& e : order) {
    const auto& [x, y] = pts[e];
    if (x.size() >= 2) out.emplace_back(e, fit_log_base(x, y));
  }
  return out;
}

/// Upsilon_d for one representative per block class, via the ring contraction.
/// `k` holds the class bits, `analytic_reference` the limit value.
inline SweepResult run_upsilon_convergence(const SweepConfig& c) {
  c.validate();
  SweepResult res;
  for (auto n : c.n_values) {
    for (auto d : c.depths) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n / 2)); ++x) {
        SweepRow r;
        r.scenario = "upsilon-convergence";
        r.ensemble = EnsembleSpec::brickwork(d).name();
        r.d = d;
        r.n = n;
        r.k = static_cast<std::size_t>(x);
        r.empirical_variance = upsilon_mps(class_representative(BitString::from_word(n / 2, x)), d);
        r.analytic_reference = x == 0 ? std::pow(19.0, static_cast<double>(n / 2)) : std::ldexp(1.0, static_cast<int>(n));
        res.rows.push_back(r);
      }
    }
  }
  return res;
}

inline SweepResult run_scenario(const SweepConfig& c) {
  if (c.scenario == "fig2a") return run_fig2a(c);
  if (c.scenario == "fig2b") return run_fig2b(c);
  if (c.scenario == "haar-scaling") return run_haar_scaling(c);
  if (c.scenario == "upsilon-convergence") return run_upsilon_convergence(c);
  throw ConfigError("unknown scenario '" + c.scenario + "'");
}

}  // namespace dipe
