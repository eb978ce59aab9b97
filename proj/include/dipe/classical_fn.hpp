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

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "dipe/bits.hpp"
#include "dipe/clifford.hpp"
#include "dipe/ensembles.hpp"
#include "dipe/errors.hpp"

namespace dipe {

enum class FnKind { Global, Local, Brickwork };

/// Post-processing kernel f(a, b) that makes the collision statistic
/// unbiased. Every value is +-2^e for an integer e.
class ClassicalFn {
 public:
  static ClassicalFn global(std::size_t n) { return ClassicalFn(FnKind::Global, n, 0); }
  static ClassicalFn local(std::size_t n) { return ClassicalFn(FnKind::Local, n, 0); }
  /// Only the parity of d matters.
  static ClassicalFn brickwork(std::size_t n, std::size_t d) { return ClassicalFn(FnKind::Brickwork, n, d); }

  static ClassicalFn for_ensemble(const EnsembleSpec& spec, std::size_t n) {
    switch (spec.kind) {
      case EnsembleKind::LocalClifford: return local(n);
      case EnsembleKind::GlobalClifford: return global(n);
      case EnsembleKind::Brickwork: return brickwork(n, spec.depth);
    }
    throw std::logic_error("unreachable ensemble kind");
  }

  FnKind kind() const { return kind_; }
  std::size_t num_qubits() const { return n_; }
  /// Last-layer pairs (brickwork only).
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }

  /// Sign and log2 magnitude of f(c, 0).
  std::pair<int, long> sign_exponent(const BitString& c) const {
    require_same_n(c.size(), n_, "classical function");
    const long n = static_cast<long>(n_);
    switch (kind_) {
      case FnKind::Global:
        return c.any() ? std::pair<int, long>{-1, 0} : std::pair<int, long>{1, n};
      case FnKind::Local: {
        const long d = static_cast<long>(c.popcount());
        return {(d & 1) ? -1 : 1, n - d};
      }
      case FnKind::Brickwork: {
        long u = 0;
        for (const auto& [p, q] : pairs_) u += (c.get(p) || c.get(q)) ? 1 : 0;
        return {(u & 1) ? -1 : 1, n - 2 * u};
      }
    }
    return {0, 0};
  }

  double eval(const BitString& a, const BitString& b) const {
    require_same_n(a.size(), n_, "classical function");
    require_same_n(b.size(), n_, "classical function");
    const auto [s, e] = sign_exponent(a ^ b);
    return std::ldexp(static_cast<double>(s), static_cast<int>(e));
  }

  /// Exact f(c, 0) for packed c; needs n <= 62.
  std::int64_t value_xor(std::uint64_t c) const {
    const int n = static_cast<int>(n_);
    switch (kind_) {
      case FnKind::Global: return c == 0 ? (std::int64_t{1} << n) : -1;
      case FnKind::Local: {
        const int d = std::popcount(c);
        const std::int64_t v = std::int64_t{1} << (n - d);
        return (d & 1) ? -v : v;
      }
      case FnKind::Brickwork: {
        int u = 0;
        for (const auto& [p, q] : pairs_) u += static_cast<int>(((c >> p) | (c >> q)) & 1);
        const std::int64_t v = std::int64_t{1} << (n - 2 * u);
        return (u & 1) ? -v : v;
      }
    }
    return 0;
  }

  /// ||f||^2 = sum_a f(a, 0)^2.
  double norm_sq() const {
    const double n = static_cast<double>(n_);
    switch (kind_) {
      case FnKind::Global: return std::pow(4.0, n) + std::pow(2.0, n) - 1.0;
      case FnKind::Local: return std::pow(5.0, n);
      case FnKind::Brickwork: return std::pow(19.0, n / 2);
    }
    return 0;
  }

  /// f(0, 0) = 2^n.
  double f00() const { return std::ldexp(1.0, static_cast<int>(n_)); }

 private:
  ClassicalFn(FnKind k, std::size_t n, std::size_t d) : kind_(k), n_(n) {
    require_config(n >= 1, "classical function needs n >= 1");
    if (k == FnKind::Brickwork) {
      require_config(n % 2 == 0, "brickwork classical function needs an even qubit count, got n=" + std::to_string(n));
      require_config(d >= 1, "brickwork classical function needs depth >= 1");
      pairs_ = BrickLayout::layer_pairs(n, d);
    }
  }

  FnKind kind_;
  std::size_t n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
};

inline double eval(const ClassicalFn& fn, const BitString& a, const BitString& b) { return fn.eval(a, b); }
inline double norm_sq(const ClassicalFn& fn) { return fn.norm_sq(); }

/// max |M2(O) - SWAP| over entries, where O = sum f(a^b)|ab><ab| and the
/// twirl averages over every element of the k-qubit Clifford group.
inline double moment_residual(int k, const std::function<double(std::uint64_t)>& f_of_xor) {
  require_config(k == 1 || k == 2, "moment verification enumerates Cl_1 or Cl_2 only");
  const auto& group = k == 1 ? clifford1_table() : clifford2_table();
  const std::size_t d = std::size_t{1} << k;
  const std::size_t dd = d * d;
  std::vector<double> o(dd);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) o[a + d * b] = f_of_xor(a ^ b);
  }
  std::vector<cplx> acc(dd * dd, 0.0), v(dd * dd);
  for (std::size_t e = 0; e < group.size(); ++e) {
    const auto& u = group[e];
    for (std::size_t r = 0; r < dd; ++r) {
      for (std::size_t c = 0; c < dd; ++c) {
        v[r * dd + c] = u.m(static_cast<int>(r % d), static_cast<int>(c % d)) *
                        u.m(static_cast<int>(r / d), static_cast<int>(c / d));
      }
    }
    for (std::size_t r = 0; r < dd; ++r) {
      for (std::size_t c = 0; c < dd; ++c) {
        cplx s = 0;
        for (std::size_t t = 0; t < dd; ++t) s += std::conj(v[t * dd + r]) * o[t] * v[t * dd + c];
        acc[r * dd + c] += s;
      }
    }
  }
  double worst = 0;
  const double inv = 1.0 / static_cast<double>(group.size());
  for (std::size_t r = 0; r < dd; ++r) {
    for (std::size_t c = 0; c < dd; ++c) {
      const std::size_t ra = r % d, rb = r / d;
      const double swap = (c == rb + d * ra) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(acc[r * dd + c] * inv - swap));
    }
  }
  return worst;
}

struct UnbiasednessCheck {
  bool ok = false;
  double max_residual = 0;
};

/// Brute-force second-moment check on the enumerable factor of the
/// ensemble: one site for local, one brick for brickwork, all of Cl_n for
/// global with n <= 2.
inline UnbiasednessCheck verify_unbiasedness(const ClassicalFn& fn, double tol = 1e-12) {
  double res = 0;
  switch (fn.kind()) {
    case FnKind::Local: {
      const auto site = ClassicalFn::local(1);
      res = moment_residual(1, [&](std::uint64_t c) { return static_cast<double>(site.value_xor(c)); });
      break;
    }
    case FnKind::Brickwork: {
      const auto block = ClassicalFn::brickwork(2, 1);
      res = moment_residual(2, [&](std::uint64_t c) { return static_cast<double>(block.value_xor(c)); });
      break;
    }
    case FnKind::Global:
      if (fn.num_qubits() > 2) {
        throw ResourceCapError("global Clifford enumeration is limited to n <= 2");
      }
      res = moment_residual(static_cast<int>(fn.num_qubits()),
                            [&](std::uint64_t c) { return static_cast<double>(fn.value_xor(c)); });
      break;
  }
  return {res < tol, res};
}

}  // namespace dipe
