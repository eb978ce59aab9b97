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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dipe/classical_fn.hpp"
#include "dipe/ensembles.hpp"
#include "dipe/parallel.hpp"
#include "dipe/rng.hpp"
#include "dipe/states.hpp"

namespace dipe {

using int128 = __int128;

enum class CollisionMethod { Auto, Direct, Histogram, Kernel };

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::int64_t>> histogram(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  std::vector<std::pair<std::uint64_t, std::int64_t>> h;
  for (auto x : v) {
    if (!h.empty() && h.back().first == x) {
      ++h.back().second;
    } else {
      h.emplace_back(x, 1);
    }
  }
  return h;
}

inline constexpr std::size_t kKernelMaxQubits = 24;

// sum_{a,b} A(a) f(a^b) B(b) with f applied as a product kernel on a
// dense count vector.
inline int128 kernel_sum(const std::vector<std::pair<std::uint64_t, std::int64_t>>& ha,
                         const std::vector<std::pair<std::uint64_t, std::int64_t>>& hb, const ClassicalFn& fn) {
  const std::size_t n = fn.num_qubits();
  if (fn.kind() == FnKind::Global) {
    int128 diag = 0, ma = 0, mb = 0;
    std::size_t j = 0;
    for (const auto& [a, ca] : ha) {
      ma += ca;
      while (j < hb.size() && hb[j].first < a) ++j;
      if (j < hb.size() && hb[j].first == a) diag += static_cast<int128>(ca) * hb[j].second;
    }
    for (const auto& e : hb) mb += e.second;
    return ((static_cast<int128>(1) << n) + 1) * diag - ma * mb;
  }
  if (n > kKernelMaxQubits) throw ResourceCapError("dense collision kernel needs n <= 24");
  std::vector<std::int64_t> w(std::size_t{1} << n, 0);
  for (const auto& [b, cb] : hb) w[b] = cb;
  if (fn.kind() == FnKind::Local) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t u = 0; u < w.size(); ++u) {
        if (u & bit) continue;
        const std::int64_t x = w[u], y = w[u | bit];
        w[u] = 2 * x - y;
        w[u | bit] = 2 * y - x;
      }
    }
  } else {
    for (const auto& [p, q] : fn.pairs()) {
      const std::size_t bp = std::size_t{1} << p, bq = std::size_t{1} << q;
      for (std::size_t u = 0; u < w.size(); ++u) {
        if ((u & bp) || (u & bq)) continue;
        const std::size_t idx[4] = {u, u | bp, u | bq, u | bp | bq};
        const std::int64_t s = w[idx[0]] + w[idx[1]] + w[idx[2]] + w[idx[3]];
        for (auto k : idx) w[k] = 5 * w[k] - s;
      }
    }
  }
  int128 acc = 0;
  for (const auto& [a, ca] : ha) acc += static_cast<int128>(ca) * w[a];
  return acc;
}

}  // namespace detail

/// m^2 X_m as an exact integer; samples are packed words, n <= 62.
inline int128 collision_numerator(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                  const ClassicalFn& fn, CollisionMethod method = CollisionMethod::Auto) {
  require_config(!a.empty() && !b.empty(), "collision statistic needs at least one shot per side");
  if (fn.num_qubits() > 62) throw ResourceCapError("collision statistic supports at most 62 qubits");
  if (method == CollisionMethod::Direct) {
    int128 acc = 0;
    for (auto x : a) {
      for (auto y : b) acc += fn.value_xor(x ^ y);
    }
    return acc;
  }
  const auto ha = detail::histogram(a);
  const auto hb = detail::histogram(b);
  if (method == CollisionMethod::Auto) {
    const std::size_t n = fn.num_qubits();
    const double pairs = static_cast<double>(ha.size()) * static_cast<double>(hb.size());
    const bool dense_ok = fn.kind() == FnKind::Global ||
                          (n <= 20 && pairs > static_cast<double>(n + 1) * std::ldexp(1.0, static_cast<int>(n)));
    method = dense_ok ? CollisionMethod::Kernel : CollisionMethod::Histogram;
  }
  if (method == CollisionMethod::Kernel) return detail::kernel_sum(ha, hb, fn);
  int128 acc = 0;
  for (const auto& [x, cx] : ha) {
    for (const auto& [y, cy] : hb) acc += static_cast<int128>(cx) * cy * fn.value_xor(x ^ y);
  }
  return acc;
}

/// X_m = (1/m^2) sum_{i,j} f(a_i, b_j).
inline double collision_statistic(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                  const ClassicalFn& fn, CollisionMethod method = CollisionMethod::Auto) {
  const int128 num = collision_numerator(a, b, fn, method);
  return static_cast<double>(num) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

inline double collision_statistic(const std::vector<BitString>& a, const std::vector<BitString>& b,
                                  const ClassicalFn& fn, CollisionMethod method = CollisionMethod::Auto) {
  require_config(a.size() == b.size(), "both sides need the same number of shots");
  std::vector<std::uint64_t> wa, wb;
  for (const auto& x : a) {
    require_same_n(x.size(), fn.num_qubits(), "collision statistic");
    wa.push_back(x.to_word());
  }
  for (const auto& x : b) {
    require_same_n(x.size(), fn.num_qubits(), "collision statistic");
    wb.push_back(x.to_word());
  }
  return collision_statistic(wa, wb, fn, method);
}

struct RoundOutcome {
  std::uint64_t round_index = 0;
  std::uint64_t unitary_seed = 0;
  std::vector<BitString> a_samples;
  std::vector<BitString> b_samples;
  double x_m = 0;
};

struct RoundRecord {
  std::uint64_t round_index = 0;
  std::uint64_t unitary_seed = 0;
  double x_m = 0;
};

struct EstimateReport {
  EnsembleSpec ensemble;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rounds = 0;
  double omega_hat = 0;
  double empirical_variance = 0;
  double std_error = 0;
  std::optional<double> exact_inner_product;
  std::vector<RoundRecord> per_round;
};

inline std::uint64_t unitary_seed(std::uint64_t master, std::uint64_t round) { return derive_seed(master, {round, 0}); }

namespace detail {

inline std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> round_samples(
    const EnsembleSpec& spec, const StatePair& pair, std::size_t m, std::uint64_t master, std::uint64_t round) {
  const std::size_t n = pair.num_qubits();
  Rng urng(unitary_seed(master, round));
  const auto u = sample_unitary(spec, n, urng);
  const auto rho = pair.rho.apply(u);
  const auto sigma = pair.sigma.apply(u);
  Rng ra(derive_seed(master, {round, 1}));
  Rng rb(derive_seed(master, {round, 2}));
  return {sample_words(rho, m, ra), sample_words(sigma, m, rb)};
}

}  // namespace detail

/// One round: shared U on both sides, m shots each, then X_m.
inline RoundOutcome run_round(const EnsembleSpec& spec, const StatePair& pair, std::size_t m, std::uint64_t master_seed,
                              std::uint64_t round_index) {
  require_config(m >= 1, "need at least one shot");
  spec.validate(pair.num_qubits());
  const auto fn = ClassicalFn::for_ensemble(spec, pair.num_qubits());
  auto [a, b] = detail::round_samples(spec, pair, m, master_seed, round_index);
  RoundOutcome out;
  out.round_index = round_index;
  out.unitary_seed = unitary_seed(master_seed, round_index);
  out.x_m = collision_statistic(a, b, fn);
  for (auto w : a) out.a_samples.push_back(BitString::from_word(pair.num_qubits(), w));
  for (auto w : b) out.b_samples.push_back(BitString::from_word(pair.num_qubits(), w));
  return out;
}

/// Mean and unbiased variance of `xs`, summed in index order.
inline std::pair<double, double> mean_variance(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double s = 0;
  for (double x : xs) s += x;
  const double mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(xs.size() - 1)};
}

/// X_m for rounds [0, N) of the stream `master_seed`.
inline std::vector<double> run_rounds(const EnsembleSpec& spec, const StatePair& pair, std::size_t rounds,
                                      std::size_t m, std::uint64_t master_seed, std::size_t threads = 1) {
  require_config(rounds >= 1, "need at least one round");
  require_config(m >= 1, "need at least one shot");
  spec.validate(pair.num_qubits());
  const auto fn = ClassicalFn::for_ensemble(spec, pair.num_qubits());
  std::vector<double> xs(rounds);
  parallel_for(rounds, threads, [&](std::size_t r) {
    auto [a, b] = detail::round_samples(spec, pair, m, master_seed, r);
    xs[r] = collision_statistic(a, b, fn);
  });
  return xs;
}

inline EstimateReport run_protocol(const EnsembleSpec& spec, const StatePair& pair, std::size_t rounds, std::size_t m,
                                   std::uint64_t master_seed, std::size_t threads = 1, bool keep_rounds = false) {
  const auto xs = run_rounds(spec, pair, rounds, m, master_seed, threads);
  EstimateReport rep;
  rep.ensemble = spec;
  rep.n = pair.num_qubits();
  rep.m = m;
  rep.rounds = rounds;
  std::tie(rep.omega_hat, rep.empirical_variance) = mean_variance(xs);
  rep.std_error = std::sqrt(rep.empirical_variance / static_cast<double>(rounds));
  if (keep_rounds) {
    for (std::size_t r = 0; r < rounds; ++r) rep.per_round.push_back({r, unitary_seed(master_seed, r), xs[r]});
  }
  return rep;
}

/// Rounds N = ceil(variance / (delta eps^2)) for a Chebyshev guarantee.
inline std::size_t plan_rounds(double variance, double epsilon, double delta) {
  require_config(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  require_config(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require_config(variance >= 0, "variance must be non-negative");
  const double q = variance / (delta * epsilon * epsilon);
  const double r = std::round(q);
  // absorb floating error in exact quotients such as 4.65 / 0.001
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, q)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(q));
}

}  // namespace dipe
