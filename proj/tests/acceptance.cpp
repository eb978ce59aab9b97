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


// Acceptance runner: one PASS/FAIL line per criterion.
//
//   dipe_acceptance <path-to-dipe-cli> [criterion ...]
//
// Exit status is the number of failed criteria.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "dipe/dipe.hpp"

namespace dipe {
namespace acceptance {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "[x] ") << what << "; ";
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) { return format_real(v); }

// ---------------------------------------------------------------------------

void moment_channels(Verdict& v) {
  const auto t0 = Clock::now();
  const auto local = verify_unbiasedness(ClassicalFn::local(1));
  const auto brick = verify_unbiasedness(ClassicalFn::brickwork(2, 1));
  const double secs = seconds_since(t0);
  v.require(local.ok, "local residual " + fmt(local.max_residual));
  v.require(brick.ok, "brickwork block residual " + fmt(brick.max_residual));
  v.require(secs < 60, "runtime " + fmt(secs) + " s");
}

void protocol_unbiased(Verdict& v) {
  const auto ghz = make_ghz(4);
  const auto s = make_s_state(4, 2, std::numbers::pi / 4);
  struct Case {
    std::string name;
    StatePair pair;
  };
  const std::vector<Case> cases = {
      {"ghz4", StatePair(ghz, ghz)},
      {"zero/plus", StatePair(make_zero(1), make_plus(1))},
      {"S4,2", StatePair(s, s)},
  };
  const std::vector<EnsembleSpec> ens = {EnsembleSpec::local(), EnsembleSpec::brickwork(1), EnsembleSpec::brickwork(3),
                                         EnsembleSpec::global()};
  std::uint64_t seed = 100;
  double worst = 0;
  for (const auto& c : cases) {
    const double t = inner_product(c.pair);
    for (const auto& e : ens) {
      if (e.kind == EnsembleKind::Brickwork && c.pair.num_qubits() % 2) continue;
      const auto rep = run_protocol(e, c.pair, 20000, 10, seed++);
      const double z = std::abs(rep.omega_hat - t) / rep.std_error;
      worst = std::max(worst, z);
      if (z > 5) v.require(false, e.name() + " " + c.name + " z=" + fmt(z));
    }
  }
  v.require(worst <= 5, "max |omega - t| / stderr = " + fmt(worst) + " (brickwork skipped at n=1)");
}

void fig2a(Verdict& v) {
  auto c = SweepConfig::defaults("fig2a");
  c.ensembles = {EnsembleSpec::local(), EnsembleSpec::brickwork(1), EnsembleSpec::brickwork(5), EnsembleSpec::global()};
  c.n_values = detail::parse_uint_list("4..12", "n");
  c.m_values = {};
  c.fixed_m = 100;
  c.rounds = 10000;
  c.seed = 2024;
  const auto res = run_fig2a(c);
  std::vector<double> ln, lv;
  double bw1 = 0, bw5 = 0;
  for (const auto& r : res.rows) {
    if (r.ensemble == "global-clifford" && (r.n == 4 || r.n == 8 || r.n == 12)) {
      const double rel = std::abs(r.empirical_variance - r.analytic_reference) / r.analytic_reference;
      v.require(rel <= 0.25, "global n=" + std::to_string(r.n) + " var " + fmt(r.empirical_variance) + " vs " +
                                 fmt(r.analytic_reference) + " (rel " + fmt(rel) + ")");
    }
    if (r.ensemble == "local-clifford") {
      ln.push_back(static_cast<double>(r.n));
      lv.push_back(r.empirical_variance);
    }
    if (r.n == 8 && r.ensemble == "brickwork:1") bw1 = r.empirical_variance;
    if (r.n == 8 && r.ensemble == "brickwork:5") bw5 = r.empirical_variance;
  }
  const double base = fit_log_base(ln, lv);
  v.require(base >= 2.3 && base <= 2.7, "local fitted base " + fmt(base) + " (want 2.3..2.7)");
  v.require(bw5 < bw1, "brickwork n=8 d=5 " + fmt(bw5) + " < d=1 " + fmt(bw1));
}

void fig2b(Verdict& v) {
  auto c = SweepConfig::defaults("fig2b");
  c.k_values = {0, 4, 8};
  c.theta_values = detail::theta_grid(9);
  c.fixed_m = 1000;
  c.rounds = 10000;
  c.seed = 77;
  const auto res = run_fig2b(c);
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> grid;
  std::size_t rows_k = 0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& r = res.rows[i];
    // rows per ensemble: the k sweep first, then the theta grid
    const bool k_sweep = (i % (c.k_values.size() + c.theta_values.size())) < c.k_values.size();
    if (k_sweep && r.ensemble == "local-clifford") {
      ++rows_k;
      const double rel = std::abs(r.empirical_variance - r.analytic_reference) / std::abs(r.analytic_reference);
      v.require(rel <= 0.2, "local k=" + std::to_string(r.k) + " var " + fmt(r.empirical_variance) + " vs " +
                                fmt(r.analytic_reference) + " (rel " + fmt(rel) + ")");
    }
    if (!k_sweep) {
      grid[r.ensemble].first.push_back(r.empirical_variance);
      grid[r.ensemble].second.push_back(m2_sre(c.fixed_n, r.k, r.theta));
    }
  }
  v.require(rows_k == 3, "three local k points");
  for (const auto& [e, xy] : grid) {
    const double rho = spearman(xy.first, xy.second);
    v.require(rho > 0, e + " spearman " + fmt(rho));
  }
}

void local_terms(Verdict& v) {
  // oracle: tr[P psi] by direct action of X^x Z^z on the amplitudes
  auto spectrum = [](const QuantumState& s) {
    const auto sv = s.to_statevector();
    const auto& a = sv.amplitudes();
    const std::size_t n = s.num_qubits();
    std::vector<double> out(std::size_t{1} << (2 * n));
    for (std::uint64_t code = 0; code < out.size(); ++code) {
      const std::uint64_t x = code & BitString::low_mask(n), z = code >> n;
      cplx acc = 0;
      for (std::uint64_t u = 0; u < a.size(); ++u) {
        const double sg = (std::popcount(z & u) & 1) ? -1.0 : 1.0;
        acc += std::conj(a[u ^ x]) * sg * a[u];
      }
      const int y = std::popcount(x & z) & 3;
      const cplx ph[4] = {1.0, {0, 1}, -1.0, {0, -1}};
      out[code] = (acc * ph[y]).real();
    }
    return out;
  };
  Rng rng(55);
  double worst = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 4; ++t) {
      CliffordCircuit ca(n), cb(n);
      for (int g = 0; g < 30; ++g) {
        const auto q0 = static_cast<std::uint32_t>(rng.below(n));
        ca.append(gate1(GateKind::C1, q0, static_cast<std::uint32_t>(rng.below(24))));
        if (n > 1) {
          auto q1 = static_cast<std::uint32_t>(rng.below(n - 1));
          if (q1 >= q0) ++q1;
          cb.append(gate2(GateKind::C2, q0, q1, static_cast<std::uint32_t>(rng.below(11520))));
        }
      }
      std::vector<StatePair> pairs = {
          StatePair(make_haar_random(n, 900 + 10 * n + t), make_haar_random(n, 950 + 10 * n + t)),
          StatePair(make_zero(n).apply(ca), make_zero(n).apply(cb)),
      };
      const auto h = make_haar_random(n, 990 + 10 * n + t);
      pairs.emplace_back(h, h);
      for (const auto& p : pairs) {
        const auto a = spectrum(p.rho), b = spectrum(p.sigma);
        double acc = 0;
        for (std::uint64_t code = 0; code < a.size(); ++code) {
          const int w = std::popcount((code | (code >> n)) & BitString::low_mask(n));
          acc += a[code] * b[code] * std::pow(0.2, w);
        }
        const double want = std::pow(2.5, static_cast<double>(n)) * acc / 49.0;
        const double got = local_clifford_v2(p, 7);
        worst = std::max(worst, std::abs(got - want) / std::max(1e-300, std::abs(want)));
      }
    }
  }
  v.require(worst <= 1e-10, "local V2 vs Pauli oracle, max rel err " + fmt(worst));
  double plus_err = 0, prod_err = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto plus = make_plus(n);
    plus_err = std::max(plus_err, std::abs(local_clifford_v2(StatePair(plus, plus), 1) - std::pow(3.0, n)) / std::pow(3.0, n));
    CliffordCircuit layer(n);
    for (std::size_t i = 0; i < n; ++i) layer.append(gate1(GateKind::C1, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(rng.below(24))));
    const auto prod = make_zero(n).apply(layer).to_statevector();
    prod_err = std::max(prod_err, std::abs(local_clifford_v4_limit(StatePair(prod, prod)) - std::pow(1.5, n)) / std::pow(1.5, n));
  }
  v.require(plus_err <= 1e-10, "3^n on |+>^n, rel err " + fmt(plus_err));
  v.require(prod_err <= 1e-10, "1.5^n on stabilizer products, rel err " + fmt(prod_err));
}

void fourth_moment(Verdict& v) {
  Rng rng(808);
  for (std::size_t n = 1; n <= 3; ++n) {
    const StatePair pair(make_haar_random(n, 40 + n), make_haar_random(n, 60 + n));
    const double want = global_clifford_fourth_moment(pair);
    double s1 = 0, s2 = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
      const auto u = sample_unitary(EnsembleSpec::global(), n, rng);
      const auto p = pair.rho.apply(u).probabilities(), q = pair.sigma.apply(u).probabilities();
      double s = 0;
      for (std::size_t a = 0; a < p.size(); ++a) s += p[a] * q[a];
      s1 += s * s;
      s2 += s * s * s * s;
    }
    const double mean = s1 / samples;
    const double se = std::sqrt((s2 / samples - mean * mean) / samples);
    const double z = std::abs(mean - want) / se;
    v.require(z <= 3, "n=" + std::to_string(n) + " MC " + fmt(mean) + " vs " + fmt(want) + " (z " + fmt(z) + ")");
  }
  const auto z = make_zero(1).to_statevector();
  const auto& tab = clifford1_table();
  double acc = 0;
  for (std::size_t e = 0; e < tab.size(); ++e) {
    CliffordCircuit c(1);
    c.append(gate1(GateKind::C1, 0, static_cast<std::uint32_t>(e)));
    const auto p = z.apply(c).probabilities();
    const double s = p[0] * p[0] + p[1] * p[1];
    acc += s * s;
  }
  acc /= static_cast<double>(tab.size());
  const double closed = global_clifford_fourth_moment(StatePair(make_zero(1), make_zero(1)));
  v.require(std::abs(acc - 0.5) < 1e-15 && std::abs(closed - 0.5) < 1e-15,
            "n=1 |0>: enumeration " + fmt(acc) + ", closed form " + fmt(closed));
}

void tensor_net(Verdict& v) {
  const auto t0 = Clock::now();
  double worst = 0;
  for (std::size_t n : {2u, 4u, 6u}) {
    for (std::size_t d = 1; d <= 5; ++d) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
        const PauliString p(BitString::from_word(n, code), BitString::from_word(n, code >> n));
        const double a = upsilon_oracle(p, d), b = upsilon_mps(p, d);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
    }
  }
  v.require(worst <= 1e-10, "MPS vs oracle max rel err " + fmt(worst));
  bool ident = true;
  for (std::size_t n = 2; n <= 12; n += 2) {
    for (std::size_t d = 1; d <= 6; ++d) {
      ident = ident && std::abs(upsilon_mps(PauliString(n), d) - std::pow(19.0, n / 2.0)) <= 1e-12 * std::pow(19.0, n / 2.0);
    }
  }
  v.require(ident, "identity gives 19^{n/2}");
  double far = 0;
  for (std::uint64_t x = 1; x < 8; ++x) {
    const double u = upsilon_mps(class_representative(BitString::from_word(3, x)), 9);
    far = std::max(far, std::abs(u - 64.0) / 64.0);
  }
  v.require(far <= 0.1, "n=6 d=9 classes within " + fmt(far) + " of 64");
  const double secs = seconds_since(t0);
  v.require(secs < 300, "runtime " + fmt(secs) + " s");
}

void average_case(Verdict& v) {
  const std::size_t n = 4;
  const std::vector<EnsembleSpec> ens = {EnsembleSpec::local(), EnsembleSpec::brickwork(2), EnsembleSpec::global()};
  std::uint64_t seed = 4000;
  for (const auto& e : ens) {
    const auto fn = ClassicalFn::for_ensemble(e, n);
    for (std::size_t m : {1u, 100u}) {
      for (int which = 1; which <= 2; ++which) {
        const std::size_t states = 200, unitaries = 200;
        double pooled = 0;
        for (std::size_t s = 0; s < states; ++s) {
          const auto a = make_haar_random(n, derive_seed(seed, {s, 0}));
          const auto pair = which == 1 ? StatePair(a, a) : StatePair(a, make_haar_random(n, derive_seed(seed, {s, 1})));
          pooled += mean_variance(run_rounds(e, pair, unitaries, m, derive_seed(seed, {s, 2}))).second;
        }
        ++seed;
        pooled /= static_cast<double>(states);
        const auto in = AvgVarianceInputs::from(fn, m);
        const double want = (which == 1 ? avg_variance_case1(in) : avg_variance_case2(in)).total();
        const double rel = std::abs(pooled - want) / std::abs(want);
        v.require(rel <= 0.1, e.name() + " case" + std::to_string(which) + " m=" + std::to_string(m) + " MC " +
                                  fmt(pooled) + " vs " + fmt(want));
      }
    }
  }
  bool exact = true;
  for (std::size_t k : {2u, 4u, 6u, 8u, 10u}) {
    const double d = std::ldexp(1.0, static_cast<int>(k));
    const auto g = avg_variance_case2(AvgVarianceInputs::from(ClassicalFn::global(k), 1)).v2;
    const auto l = avg_variance_case2(AvgVarianceInputs::from(ClassicalFn::local(k), 1)).v2;
    const auto b = avg_variance_case2(AvgVarianceInputs::from(ClassicalFn::brickwork(k, 3), 1)).v2;
    exact = exact && g == (d * d + d - 1) / d && l == std::pow(2.5, static_cast<double>(k)) &&
            b == std::pow(19.0 / 4.0, static_cast<double>(k) / 2);
  }
  v.require(exact, "V2 leading terms (4^n+2^n-1)/2^n, 2.5^n, (19/4)^{n/2} exact");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void determinism(Verdict& v, const std::string& cli) {
  if (cli.empty()) {
    v.require(false, "no CLI path given");
    return;
  }
  const auto dir = std::filesystem::temp_directory_path() / ("dipe_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "sweep.ini");
    cfg << "[fig2a]\nensembles = local-clifford, brickwork:3, global-clifford\nn = 4, 6\nm = 10\nfixed_n = 4\nrounds = 400\n";
  }
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"estimate", "estimate --ensemble global-clifford --state-a ghz:6 --state-b plus:6 --rounds 3000 --shots 20 "
                   "--seed 5 --per-round {dir}/rounds_{tag}.csv --out {dir}/estimate_{tag}.csv"},
      {"variance-sweep", "variance-sweep --ensemble local-clifford,brickwork:2 --state-a sstate:4:2:0.5 --state-b haar:4:3 "
                         "--shots 1,10 --rounds 2000 --seed 8 --out {dir}/sweep_{tag}.csv"},
      {"reproduce", "reproduce fig2a --config {dir}/sweep.ini --seed 3 --out {dir}/fig2a_{tag}.csv"},
  };
  auto expand = [&](std::string s, const std::string& tag) {
    for (auto [key, val] : {std::pair<std::string, std::string>{"{dir}", dir.string()}, {"{tag}", tag}}) {
      for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key)) s.replace(pos, key.size(), val);
    }
    return s;
  };
  for (const auto& [name, args] : runs) {
    std::vector<std::string> outputs;
    for (const auto& [tag, threads] : {std::pair<std::string, int>{"a", 1}, {"b", 1}, {"c", 4}}) {
      const std::string cmd = cli + " " + expand(args, tag) + " --threads " + std::to_string(threads) + " > /dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) v.require(false, name + " exited with " + std::to_string(rc));
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().filename().string().find("_" + tag + ".") != std::string::npos) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::string all;
      for (const auto& f : files) {
        const auto name = f.filename().string();
        all += name.substr(0, name.rfind('_')) + f.extension().string() + ":" + slurp(f);
      }
      outputs.push_back(all);
    }
    v.require(!outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2],
              name + " byte-identical across repeats and 1/4 threads");
  }
  std::filesystem::remove_all(dir);
}

}  // namespace acceptance
}  // namespace dipe

int main(int argc, char** argv) {
  using namespace dipe::acceptance;
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<int> only;
  for (int i = 2; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"moment channel equals SWAP for local and brickwork functions", moment_channels},
      {"protocol estimates are unbiased", protocol_unbiased},
      {"GHZ variance scaling (global level, local slope, depth ordering)", fig2a},
      {"S-state variance against the local closed form and M2", fig2b},
      {"local Clifford second and fourth order terms", local_terms},
      {"global Clifford fourth moment", fourth_moment},
      {"brickwork depth factor contraction", tensor_net},
      {"average-case variance formulas", average_case},
      {"CLI output is deterministic", [&](Verdict& v) { determinism(v, cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << fmt(seconds_since(t0)) << " s)\n    " << v.detail.str() << std::endl;
  }
  return failed;
}
