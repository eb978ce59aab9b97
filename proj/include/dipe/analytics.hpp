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
#include <complex>
#include <map>
#include <cstdint>
#include <numbers>
#include <vector>

#include "dipe/classical_fn.hpp"
#include "dipe/clifford.hpp"
#include "dipe/errors.hpp"
#include "dipe/states.hpp"
#include "dipe/tensor_net.hpp"

namespace dipe {

inline constexpr std::size_t kPauliSumCap = 8;

struct VarianceBreakdown {
  double v1 = 0, v2 = 0, v3 = 0, v4 = 0;
  double total() const { return v1 + v2 + v3 + v4; }
};

struct AvgVarianceInputs {
  double norm_sq = 1;
  double f00 = 1;
  std::size_t n = 1;
  std::size_t m = 1;

  static AvgVarianceInputs from(const ClassicalFn& fn, std::size_t m) {
    return {fn.norm_sq(), fn.f00(), fn.num_qubits(), m};
  }
};

/// Expected variance terms over one Haar state, rho = sigma.
inline VarianceBreakdown avg_variance_case1(const AvgVarianceInputs& in) {
  const double d = std::ldexp(1.0, static_cast<int>(in.n));
  const double m = static_cast<double>(in.m);
  const double f = in.norm_sq, f0 = in.f00;
  VarianceBreakdown v;
  v.v1 = -1.0;
  v.v2 = (f0 * f0 + f) / ((d + 1) * m * m);
  v.v3 = 2 * (m - 1) * (1 + f + 2 * f0 + 2 * f0 * f0) / ((d + 1) * (d + 2) * m * m);
  v.v4 = ((m - 1) / m) * ((m - 1) / m) *
         (d + 2 * d * f0 + 4 + 8 * f0 + d * f0 * f0 + 2 * f + 6 * f0 * f0) / ((d + 1) * (d + 2) * (d + 3));
  return v;
}

/// Expected variance terms over two independent Haar states.
inline VarianceBreakdown avg_variance_case2(const AvgVarianceInputs& in) {
  const double d = std::ldexp(1.0, static_cast<int>(in.n));
  const double m = static_cast<double>(in.m);
  const double f = in.norm_sq;
  VarianceBreakdown v;
  v.v1 = -1.0 / ((d / 2) * (d + 1));
  v.v2 = f / (d * m * m);
  v.v3 = 2 * (m - 1) * (1 + f) / (d * (d + 1) * m * m);
  v.v4 = ((m - 1) / m) * ((m - 1) / m) * (d + 2 + f) / (d * (d + 1) * (d + 1));
  return v;
}

// ---------------------------------------------------------------------------
// Pauli spectra
// ---------------------------------------------------------------------------

/// Pauli code: x bits in the low n bits, z bits above them.
inline PauliString pauli_from_code(std::size_t n, std::uint64_t code) {
  return PauliString(BitString::from_word(n, code), BitString::from_word(n, code >> n));
}

namespace detail {

inline void wht_complex(std::vector<cplx>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

inline void check_pauli_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw ResourceCapError("exhaustive Pauli sum over " + std::to_string(n) + " qubits exceeds the cap of " +
                           std::to_string(cap));
  }
}

// <psi| X^x Z^z |phi> for all codes, O(n 4^n).
inline std::vector<cplx> xz_matrix_elements(const std::vector<cplx>& psi, const std::vector<cplx>& phi, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> out(dim * dim);
  std::vector<cplx> c(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t u = 0; u < dim; ++u) c[u] = std::conj(psi[u ^ x]) * phi[u];
    wht_complex(c);
    for (std::size_t z = 0; z < dim; ++z) out[x | (z << n)] = c[z];
  }
  return out;
}

// Calls fn(P, sign) for every element of the group generated by `gens`
// (commuting Hermitian Paulis), in Gray-code order.
template <class Fn>
void for_each_group_element(const std::vector<SignedPauli>& gens, std::size_t n, Fn&& fn) {
  if (gens.size() > 30) throw ResourceCapError("stabilizer group too large to enumerate");
  SignedPauli cur(PauliString(n), 0);
  fn(cur);
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << gens.size()); ++t) {
    cur = gens[static_cast<std::size_t>(std::countr_zero(t))] * cur;
    fn(cur);
  }
}

}  // namespace detail

/// tr[P rho] for all 4^n Paulis, indexed by code.
inline std::vector<double> pauli_spectrum(const QuantumState& s, std::size_t cap = kPauliSumCap) {
  const std::size_t n = s.num_qubits();
  detail::check_pauli_cap(n, cap);
  std::vector<double> out(std::size_t{1} << (2 * n), 0.0);
  if (s.is_stabilizer()) {
    detail::for_each_group_element(s.generators(), n, [&](const SignedPauli& g) {
      const std::uint64_t code = g.pauli.x().to_word() | (g.pauli.z().to_word() << n);
      out[code] = g.sign();
    });
    return out;
  }
  const auto& a = s.amplitudes();
  const auto el = detail::xz_matrix_elements(a, a, n);
  const cplx ph[4] = {1.0, {0, 1}, -1.0, {0, -1}};
  const std::uint64_t mask = BitString::low_mask(n);
  for (std::uint64_t code = 0; code < out.size(); ++code) {
    const int y = std::popcount(code & (code >> n) & mask);
    out[code] = (el[code] * ph[y & 3]).real();
  }
  return out;
}

/// Xi(P) = tr[P rho] tr[P sigma].
inline std::vector<double> xi_vector(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  auto a = pauli_spectrum(pair.rho, cap);
  const auto b = pauli_spectrum(pair.sigma, cap);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return a;
}

/// tr[rho P sigma P] = |<psi|P|phi>|^2 for all Paulis.
inline std::vector<double> xi_tilde_vector(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  const std::size_t n = pair.num_qubits();
  detail::check_pauli_cap(n, cap);
  const auto a = pair.rho.to_statevector(cap);
  const auto b = pair.sigma.to_statevector(cap);
  const auto el = detail::xz_matrix_elements(a.amplitudes(), b.amplitudes(), n);
  std::vector<double> out(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) out[i] = std::norm(el[i]);
  return out;
}

namespace detail {

struct StabilizerOverlap {
  std::vector<PauliString> basis;  // common elements of both groups
  std::vector<int> eps;            // tr[P rho] tr[P sigma] on the basis
};

inline StabilizerOverlap stabilizer_overlap(const StatePair& pair) {
  const std::size_t n = pair.num_qubits();
  StabilizerOverlap o;
  o.basis = group_intersection(pair.rho.generators(), pair.sigma.generators(), n);
  for (const auto& p : o.basis) o.eps.push_back(pair.rho.expectation(p) * pair.sigma.expectation(p) < 0 ? -1 : 1);
  return o;
}

// fn(P, eps) over the common group; eps is multiplicative because the
// product phases cancel between the two states.
template <class Fn>
void for_each_common_element(const StabilizerOverlap& o, std::size_t n, Fn&& fn) {
  if (o.basis.size() > 30) throw ResourceCapError("stabilizer group too large to enumerate");
  PauliString cur(n);
  int eps = 1;
  fn(cur, eps);
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << o.basis.size()); ++t) {
    const auto j = static_cast<std::size_t>(std::countr_zero(t));
    cur.x() ^= o.basis[j].x();
    cur.z() ^= o.basis[j].z();
    eps *= o.eps[j];
    fn(cur, eps);
  }
}

inline bool both_stabilizer(const StatePair& pair) { return pair.rho.is_stabilizer() && pair.sigma.is_stabilizer(); }

}  // namespace detail

/// ||Xi||^2 = sum_P tr^2[P rho] tr^2[P sigma].
inline double xi_norm_sq(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  if (detail::both_stabilizer(pair)) {
    const auto o = detail::stabilizer_overlap(pair);
    return std::ldexp(1.0, static_cast<int>(o.basis.size()));
  }
  const auto xi = xi_vector(pair, cap);
  double acc = 0;
  for (double v : xi) acc += v * v;
  return acc;
}

/// sum_P tr[rho P sigma P] tr[P rho] tr[P sigma].
inline double xi_tilde_dot_xi(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  const std::size_t n = pair.num_qubits();
  if (detail::both_stabilizer(pair)) {
    // P|phi> = +-|phi> on the support of Xi, so every term is t * Xi(P)
    const double t = inner_product(pair.rho, pair.sigma);
    return std::ldexp(t * t, static_cast<int>(n));
  }
  const auto xi = xi_vector(pair, cap);
  const auto xt = xi_tilde_vector(pair, cap);
  double acc = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) acc += xt[i] * xi[i];
  return acc;
}

/// E_{U in Cl_n} (sum_a <a|U rho U^dag|a><a|U sigma U^dag|a>)^2.
inline double global_clifford_fourth_moment(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  const double d = std::ldexp(1.0, static_cast<int>(pair.num_qubits()));
  const double t = inner_product(pair.rho, pair.sigma);
  const double xs = xi_norm_sq(pair, cap);
  const double xt = xi_tilde_dot_xi(pair, cap);
  return ((1 + t) * (1 + t) + (xs + xt) / d) / ((d + 1) * (d + 2));
}

/// Exact V1..V4 for the global Clifford ensemble and pure states.
inline VarianceBreakdown global_clifford_variance(const StatePair& pair, std::size_t m, std::size_t cap = kPauliSumCap) {
  require_config(m >= 1, "need at least one shot");
  const double d = std::ldexp(1.0, static_cast<int>(pair.num_qubits()));
  const double mm = static_cast<double>(m);
  const double t = inner_product(pair.rho, pair.sigma);
  VarianceBreakdown v;
  v.v1 = -t * t;
  v.v2 = (d + (d - 1) * t) / (mm * mm);
  // third moments: tr rho^2 = 1 and tr[rho^2 sigma] = t for pure states
  const double third = (d + 1) * (1 + 1 + 2 * t + 2 * t) / (d + 2) - (1 + t) - t;
  v.v3 = (mm - 1) / (mm * mm) * 2 * third;
  const double m4 = global_clifford_fourth_moment(pair, cap);
  v.v4 = ((mm - 1) / mm) * ((mm - 1) / mm) * ((d + 1) * (d + 1) * m4 - 2 * t - 1);
  return v;
}

/// V1 + V2 + V4 of the exact breakdown; V3 only adds O(1/m).
inline double global_clifford_variance_bound(const StatePair& pair, std::size_t m, std::size_t cap = kPauliSumCap) {
  const auto v = global_clifford_variance(pair, m, cap);
  return v.v1 + v.v2 + v.v4;
}

/// Order-of-magnitude envelope 2^n/m^2 + 1/m + ||Xi||^2/2^n.
inline double global_clifford_variance_envelope(const StatePair& pair, std::size_t m, std::size_t cap = kPauliSumCap) {
  const double d = std::ldexp(1.0, static_cast<int>(pair.num_qubits()));
  const double mm = static_cast<double>(m);
  return d / (mm * mm) + 1 / mm + xi_norm_sq(pair, cap) / d;
}

/// Pauli weight of a code.
inline int code_weight(std::uint64_t code, std::size_t n) {
  return std::popcount((code | (code >> n)) & BitString::low_mask(n));
}

/// (2.5^n / m^2) sum_P Xi(P) / 5^{|P|}.
inline double local_clifford_v2(const StatePair& pair, std::size_t m, std::size_t cap = kPauliSumCap) {
  require_config(m >= 1, "need at least one shot");
  const std::size_t n = pair.num_qubits();
  double acc = 0;
  if (detail::both_stabilizer(pair)) {
    const auto o = detail::stabilizer_overlap(pair);
    detail::for_each_common_element(o, n, [&](const PauliString& p, int eps) {
      acc += eps * std::pow(0.2, static_cast<double>(p.weight()));
    });
  } else {
    const auto xi = xi_vector(pair, cap);
    std::vector<double> by_weight(n + 1, 0.0);
    for (std::uint64_t code = 0; code < xi.size(); ++code) by_weight[static_cast<std::size_t>(code_weight(code, n))] += xi[code];
    for (std::size_t w = 0; w <= n; ++w) acc += by_weight[w] * std::pow(0.2, static_cast<double>(w));
  }
  const double mm = static_cast<double>(m);
  return std::pow(2.5, static_cast<double>(n)) * acc / (mm * mm);
}

/// Xi^T K^{(x)n} Xi with K(a,b) = 1 if a or b is I, 3 if a = b, else 0.
inline double local_fourth_moment_sum(const std::vector<double>& xi, std::size_t n) {
  std::vector<double> w = xi;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bx = std::uint64_t{1} << i, bz = std::uint64_t{1} << (n + i);
    for (std::uint64_t u = 0; u < w.size(); ++u) {
      if ((u & bx) || (u & bz)) continue;
      // site letters I, X, Z, Y
      const std::uint64_t idx[4] = {u, u | bx, u | bz, u | bx | bz};
      const double in[4] = {w[idx[0]], w[idx[1]], w[idx[2]], w[idx[3]]};
      const double s = in[0] + in[1] + in[2] + in[3];
      w[idx[0]] = s;
      for (int a = 1; a < 4; ++a) w[idx[a]] = in[0] + 3 * in[a];
    }
  }
  double acc = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) acc += xi[i] * w[i];
  return acc;
}

/// ((m-1)^2 / (4^n m^2)) sum_P sum_{Q compatible} Xi(P) Xi(Q) 3^{#equal}.
inline double local_clifford_v4(const StatePair& pair, std::size_t m, std::size_t cap = kPauliSumCap) {
  require_config(m >= 1, "need at least one shot");
  const std::size_t n = pair.num_qubits();
  const double mm = static_cast<double>(m);
  const double pre = ((mm - 1) / mm) * ((mm - 1) / mm) * std::ldexp(1.0, -2 * static_cast<int>(n));
  return pre * local_fourth_moment_sum(xi_vector(pair, cap), n);
}

/// Same quantity without the (m-1)^2/m^2 factor.
inline double local_clifford_v4_limit(const StatePair& pair, std::size_t cap = kPauliSumCap) {
  const std::size_t n = pair.num_qubits();
  return std::ldexp(local_fourth_moment_sum(xi_vector(pair, cap), n), -2 * static_cast<int>(n));
}

/// 2^{n-k} (1 + cos^4 theta + sin^4 theta)^k.
inline double m2_sre(std::size_t n, std::size_t k, double theta) {
  require_config(k <= n, "m2 needs 0 <= k <= n");
  const double c = std::cos(theta), s = std::sin(theta);
  return std::ldexp(1.0, static_cast<int>(n - k)) * std::pow(1 + c * c * c * c + s * s * s * s, static_cast<double>(k));
}

/// E_{U in Cl_1} (sum_{a,b} f(a,b) p_U(a) p_U(b))^2 for |S_{1,1}(theta)>.
inline double xi_theta(double theta) {
  const auto& tab = clifford1_table();
  const cplx v0(std::sqrt(0.5), 0.0);
  const cplx v1 = std::polar(std::sqrt(0.5), theta);
  double acc = 0;
  for (std::size_t e = 0; e < tab.size(); ++e) {
    const auto& u = tab[e];
    const double p0 = std::norm(u.m(0, 0) * v0 + u.m(0, 1) * v1);
    const double p1 = std::norm(u.m(1, 0) * v0 + u.m(1, 1) * v1);
    const double s = 2 * p0 * p0 + 2 * p1 * p1 - 2 * p0 * p1;
    acc += s * s;
  }
  return acc / static_cast<double>(tab.size());
}

/// (1 / (2^n m^2)) sum_P Xi(P) Upsilon_d(P).
inline double brickwork_v2_exact(const StatePair& pair, std::size_t d, std::size_t m, std::size_t cap = kPauliSumCap) {
  require_config(m >= 1, "need at least one shot");
  const std::size_t n = pair.num_qubits();
  require_config(n % 2 == 0, "brickwork needs an even qubit count");
  // Upsilon depends on P only through its block pattern
  std::map<std::uint64_t, double> by_class;
  auto block_word = [&](std::uint64_t q) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < n / 2; ++k) x |= ((q >> (2 * k)) & 3 ? std::uint64_t{1} : 0) << k;
    return x;
  };
  if (detail::both_stabilizer(pair)) {
    require_config(n <= 64, "brickwork term supports at most 64 qubits");
    const auto o = detail::stabilizer_overlap(pair);
    detail::for_each_common_element(o, n, [&](const PauliString& p, int eps) {
      by_class[block_word((p.x() | p.z()).to_word())] += eps;
    });
  } else {
    const auto xi = xi_vector(pair, cap);
    for (std::uint64_t code = 0; code < xi.size(); ++code) {
      if (xi[code] == 0.0) continue;
      by_class[block_word((code | (code >> n)) & BitString::low_mask(n))] += xi[code];
    }
  }
  double acc = 0;
  for (const auto& [x, w] : by_class) {
    if (w == 0.0) continue;
    acc += w * upsilon_mps(class_representative(BitString::from_word(n / 2, x)), d);
  }
  const double mm = static_cast<double>(m);
  return std::ldexp(acc, -static_cast<int>(n)) / (mm * mm);
}

}  // namespace dipe
