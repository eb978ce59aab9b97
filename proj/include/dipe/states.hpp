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
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dipe/clifford.hpp"
#include "dipe/errors.hpp"
#include "dipe/pauli.hpp"
#include "dipe/rng.hpp"

namespace dipe {

inline constexpr std::size_t kDefaultStatevectorCap = 24;

enum class Backend { Statevector, Stabilizer };

inline std::string backend_name(Backend b) { return b == Backend::Statevector ? "statevector" : "stabilizer"; }

namespace detail {

// Product of two commuting Hermitian rows stays Hermitian.
inline void row_mul(SignedPauli& target, const SignedPauli& by) { target = by * target; }

// Reduced echelon form of a stabilizer group: x-pivot rows first, then
// z-pivot rows whose x part vanishes.
struct StabilizerEchelon {
  std::vector<SignedPauli> rows;
  std::vector<std::size_t> x_pivots;
  std::vector<std::size_t> z_pivots;
};

inline StabilizerEchelon echelon(std::vector<SignedPauli> rows, std::size_t n) {
  StabilizerEchelon e;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].pauli.x().get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].pauli.x().get(col)) row_mul(rows[r], rows[rank]);
    }
    e.x_pivots.push_back(col);
    ++rank;
  }
  const std::size_t xrank = rank;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].pauli.z().get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].pauli.z().get(col)) row_mul(rows[r], rows[rank]);
    }
    e.z_pivots.push_back(col);
    ++rank;
  }
  (void)xrank;
  rows.resize(rank);
  e.rows = std::move(rows);
  return e;
}

}  // namespace detail

/// Pure n-qubit state held either as amplitudes or as stabilizer generators.
class QuantumState {
 public:
  QuantumState() = default;

  /// Amplitudes indexed so that bit i of the index is qubit i.
  static QuantumState statevector(std::vector<cplx> amps, std::size_t cap = kDefaultStatevectorCap) {
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(amps.size()));
    if (amps.empty() || (std::size_t{1} << n) != amps.size()) {
      throw ConfigError("amplitude vector length must be a power of two");
    }
    check_cap(n, cap);
    double norm = 0;
    for (const auto& a : amps) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10) throw ConfigError("state vector is not normalized");
    QuantumState s;
    s.n_ = n;
    s.backend_ = Backend::Statevector;
    s.amps_ = std::move(amps);
    return s;
  }

  /// Stabilizer state from n commuting, independent, Hermitian generators.
  static QuantumState stabilizer(std::size_t n, std::vector<SignedPauli> gens) {
    if (n == 0) throw ConfigError("state needs at least one qubit");
    if (gens.size() != n) throw ConfigError("stabilizer state needs exactly n generators");
    for (std::size_t a = 0; a < n; ++a) {
      require_same_n(gens[a].size(), n, "stabilizer generator");
      if (!gens[a].is_hermitian()) throw ConfigError("stabilizer generator must have phase +1 or -1");
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!gens[a].pauli.commutes(gens[b].pauli)) throw ConfigError("stabilizer generators must commute");
      }
    }
    QuantumState s;
    s.n_ = n;
    s.backend_ = Backend::Stabilizer;
    s.set_generators(std::move(gens));
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  Backend backend() const { return backend_; }
  bool is_stabilizer() const { return backend_ == Backend::Stabilizer; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  /// Stabilizer generators in reduced echelon form.
  const std::vector<SignedPauli>& generators() const { return gens_; }

  /// U|psi> for the circuit U.
  QuantumState apply(const CliffordCircuit& c) const {
    require_same_n(n_, c.num_qubits(), "apply_clifford");
    QuantumState out = *this;
    if (backend_ == Backend::Stabilizer) {
      auto gens = gens_;
      for (const auto& g : c.gates()) {
        const auto& act = gate_action(g);
        for (auto& row : gens) apply_local(act, g.q, row);
      }
      out.set_generators(std::move(gens));
    } else {
      for (const auto& g : c.gates()) out.apply_dense(g);
    }
    return out;
  }

  /// Same state on the statevector backend.
  QuantumState to_statevector(std::size_t cap = kDefaultStatevectorCap) const {
    if (backend_ == Backend::Statevector) return *this;
    check_cap(n_, cap);
    const std::size_t dim = std::size_t{1} << n_;
    std::vector<cplx> v(dim, 0.0);
    v[static_cast<std::size_t>(support_offset_)] = 1.0;
    for (const auto& g : gens_) {
      std::vector<cplx> gv(dim);
      apply_pauli_dense(g, v, gv);
      for (std::size_t i = 0; i < dim; ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    double norm = 0;
    for (const auto& a : v) norm += std::norm(a);
    const double s = 1.0 / std::sqrt(norm);
    for (auto& a : v) a *= s;
    return statevector(std::move(v), cap);
  }

  /// <psi| P |psi>.
  double expectation(const PauliString& p) const {
    require_same_n(n_, p.size(), "pauli_expectation");
    if (backend_ == Backend::Stabilizer) return stabilizer_expectation(p);
    const std::uint64_t x = p.x().to_word(), z = p.z().to_word();
    cplx acc = 0;
    for (std::uint64_t u = 0; u < amps_.size(); ++u) {
      const double sgn = (std::popcount(z & u) & 1) ? -1.0 : 1.0;
      acc += std::conj(amps_[u ^ x]) * amps_[u] * sgn;
    }
    // i^{#Y} from writing the letters as X^x Z^z
    const int r = static_cast<int>(p.num_y() & 3);
    const cplx ph[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    return (acc * ph[r]).real();
  }

  /// Born probabilities over all 2^n outcomes.
  std::vector<double> probabilities(std::size_t cap = kDefaultStatevectorCap) const {
    check_cap(n_, cap);
    std::vector<double> p(std::size_t{1} << n_, 0.0);
    if (backend_ == Backend::Statevector) {
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps_[i]);
      return p;
    }
    const double w = std::ldexp(1.0, -static_cast<int>(directions_.size()));
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << directions_.size()); ++c) {
      p[static_cast<std::size_t>(support_point(c))] = w;
    }
    return p;
  }

  /// Affine support of a stabilizer state: offset ^ span(directions).
  std::uint64_t support_offset() const { return support_offset_; }
  const std::vector<std::uint64_t>& support_directions() const { return directions_; }

  std::uint64_t support_point(std::uint64_t coeffs) const {
    std::uint64_t x = support_offset_;
    for (std::size_t j = 0; j < directions_.size(); ++j) {
      if ((coeffs >> j) & 1) x ^= directions_[j];
    }
    return x;
  }

 private:
  static void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
      throw ResourceCapError("statevector of " + std::to_string(n) + " qubits exceeds the cap of " +
                             std::to_string(cap));
    }
  }

  void set_generators(std::vector<SignedPauli> gens) {
    auto e = detail::echelon(std::move(gens), n_);
    if (e.rows.size() != n_) throw ConfigError("stabilizer generators are not independent");
    gens_ = std::move(e.rows);
    directions_.clear();
    support_offset_ = 0;
    if (n_ > 64) return;
    const std::size_t k = e.x_pivots.size();
    for (std::size_t j = 0; j < k; ++j) directions_.push_back(gens_[j].pauli.x().to_word());
    // z-rows are reduced, so the pivot bit alone satisfies each parity constraint
    for (std::size_t j = k; j < n_; ++j) {
      if (gens_[j].sign() < 0) support_offset_ |= std::uint64_t{1} << e.z_pivots[j - k];
    }
  }

  double stabilizer_expectation(const PauliString& p) const {
    for (const auto& g : gens_) {
      if (!g.pauli.commutes(p)) return 0.0;
    }
    SignedPauli acc(p, 0);
    for (const auto& g : gens_) {
      // first set bit of the row is its pivot
      bool hit = false;
      for (std::size_t w = 0; w < g.pauli.x().num_words() && !hit; ++w) {
        if (g.pauli.x().word(w)) {
          const std::size_t col = 64 * w + static_cast<std::size_t>(std::countr_zero(g.pauli.x().word(w)));
          if (acc.pauli.x().get(col)) acc = g * acc;
          hit = true;
        }
      }
      if (hit) continue;
      for (std::size_t w = 0; w < g.pauli.z().num_words(); ++w) {
        if (g.pauli.z().word(w)) {
          const std::size_t col = 64 * w + static_cast<std::size_t>(std::countr_zero(g.pauli.z().word(w)));
          if (acc.pauli.z().get(col)) acc = g * acc;
          break;
        }
      }
    }
    if (!acc.pauli.is_identity()) throw std::logic_error("commuting Pauli outside a maximal stabilizer group");
    return acc.sign();
  }

  static void apply_pauli_dense(const SignedPauli& p, const std::vector<cplx>& in, std::vector<cplx>& out) {
    const std::uint64_t x = p.pauli.x().to_word(), z = p.pauli.z().to_word();
    const cplx ph[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    const cplx f = ph[p.xz_phase()];
    for (std::uint64_t u = 0; u < in.size(); ++u) {
      out[u ^ x] = ((std::popcount(z & u) & 1) ? -f : f) * in[u];
    }
  }

  void apply_dense(const Gate& g) {
    const auto& act = gate_action(g);
    const std::size_t dim = amps_.size();
    if (act.k == 1) {
      const std::size_t b = std::size_t{1} << g.q[0];
      const cplx m00 = act.m(0, 0), m01 = act.m(0, 1), m10 = act.m(1, 0), m11 = act.m(1, 1);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & b) continue;
        const cplx a0 = amps_[i], a1 = amps_[i | b];
        amps_[i] = m00 * a0 + m01 * a1;
        amps_[i | b] = m10 * a0 + m11 * a1;
      }
      return;
    }
    const std::size_t b0 = std::size_t{1} << g.q[0], b1 = std::size_t{1} << g.q[1];
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & b0) || (i & b1)) continue;
      const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
      cplx a[4], r[4];
      for (int t = 0; t < 4; ++t) a[t] = amps_[idx[t]];
      for (int row = 0; row < 4; ++row) {
        r[row] = 0;
        for (int col = 0; col < 4; ++col) r[row] += act.m(row, col) * a[col];
      }
      for (int t = 0; t < 4; ++t) amps_[idx[t]] = r[t];
    }
  }

  std::size_t n_ = 0;
  Backend backend_ = Backend::Statevector;
  std::vector<cplx> amps_;
  std::vector<SignedPauli> gens_;
  std::uint64_t support_offset_ = 0;
  std::vector<std::uint64_t> directions_;
};

struct StatePair {
  QuantumState rho;
  QuantumState sigma;

  StatePair(QuantumState r, QuantumState s) : rho(std::move(r)), sigma(std::move(s)) {
    require_same_n(rho.num_qubits(), sigma.num_qubits(), "state pair");
  }
  std::size_t num_qubits() const { return rho.num_qubits(); }
};

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

inline QuantumState maybe_dense(QuantumState s, Backend b, std::size_t cap) {
  return b == Backend::Statevector ? s.to_statevector(cap) : s;
}

inline QuantumState make_basis_state(const BitString& bits, Backend b = Backend::Stabilizer,
                                     std::size_t cap = kDefaultStatevectorCap) {
  const std::size_t n = bits.size();
  std::vector<SignedPauli> gens;
  for (std::size_t i = 0; i < n; ++i) {
    gens.emplace_back(PauliString::single(n, i, Pauli1::Z), bits.get(i) ? 2 : 0);
  }
  return maybe_dense(QuantumState::stabilizer(n, std::move(gens)), b, cap);
}

inline QuantumState make_zero(std::size_t n, Backend b = Backend::Stabilizer, std::size_t cap = kDefaultStatevectorCap) {
  require_config(n >= 1, "state needs at least one qubit");
  return make_basis_state(BitString(n), b, cap);
}

inline QuantumState make_plus(std::size_t n, Backend b = Backend::Stabilizer, std::size_t cap = kDefaultStatevectorCap) {
  require_config(n >= 1, "state needs at least one qubit");
  std::vector<SignedPauli> gens;
  for (std::size_t i = 0; i < n; ++i) gens.emplace_back(PauliString::single(n, i, Pauli1::X));
  return maybe_dense(QuantumState::stabilizer(n, std::move(gens)), b, cap);
}

inline QuantumState make_ghz(std::size_t n, Backend b = Backend::Stabilizer, std::size_t cap = kDefaultStatevectorCap) {
  require_config(n >= 1, "GHZ state needs n >= 1");
  std::vector<SignedPauli> gens;
  PauliString all_x(n);
  for (std::size_t i = 0; i < n; ++i) all_x.set(i, Pauli1::X);
  gens.emplace_back(all_x);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PauliString zz(n);
    zz.set(i, Pauli1::Z);
    zz.set(i + 1, Pauli1::Z);
    gens.emplace_back(zz);
  }
  return maybe_dense(QuantumState::stabilizer(n, std::move(gens)), b, cap);
}

/// |0>^(n-k) (x) ((|0> + e^{i theta}|1>)/sqrt 2)^k.
inline QuantumState make_s_state(std::size_t n, std::size_t k, double theta, std::size_t cap = kDefaultStatevectorCap) {
  require_config(n >= 1, "S state needs n >= 1");
  require_config(k <= n, "S state needs 0 <= k <= n");
  if (n > cap) throw ResourceCapError("S state of " + std::to_string(n) + " qubits exceeds the statevector cap");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> v(dim, 0.0);
  const double amp = std::pow(std::sqrt(0.5), static_cast<double>(k));
  const std::size_t shift = n - k;
  for (std::size_t t = 0; t < (std::size_t{1} << k); ++t) {
    v[t << shift] = std::polar(amp, theta * static_cast<double>(std::popcount(t)));
  }
  return QuantumState::statevector(std::move(v), cap);
}

/// Normalized vector of i.i.d. complex Gaussians.
inline QuantumState make_haar_random(std::size_t n, std::uint64_t seed, std::size_t cap = kDefaultStatevectorCap) {
  require_config(n >= 1, "Haar state needs n >= 1");
  if (n > cap) throw ResourceCapError("Haar state of " + std::to_string(n) + " qubits exceeds the statevector cap");
  Rng rng(derive_seed(seed, {0x4a11}));
  std::vector<cplx> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = cplx(re, im);
    norm += re * re + im * im;
  }
  const double s = 1.0 / std::sqrt(norm);
  for (auto& a : v) a *= s;
  return QuantumState::statevector(std::move(v), cap);
}

// ---------------------------------------------------------------------------
// Inner products, expectations, sampling
// ---------------------------------------------------------------------------

inline double pauli_expectation(const QuantumState& s, const PauliString& p) { return s.expectation(p); }

inline QuantumState apply_clifford(const QuantumState& s, const CliffordCircuit& c) { return s.apply(c); }

namespace detail {

// Basis of the intersection of the unsigned groups generated by `a` and `b`
// (Zassenhaus on rows (v, v) and (w, 0)).
inline std::vector<PauliString> group_intersection(const std::vector<SignedPauli>& a,
                                                   const std::vector<SignedPauli>& b, std::size_t n) {
  const std::size_t len = 4 * n;
  std::vector<BitString> rows;
  auto pack = [&](const PauliString& p, bool both) {
    BitString r(len);
    for (std::size_t i = 0; i < n; ++i) {
      r.set(i, p.x().get(i));
      r.set(n + i, p.z().get(i));
      if (both) {
        r.set(2 * n + i, p.x().get(i));
        r.set(3 * n + i, p.z().get(i));
      }
    }
    return r;
  };
  for (const auto& g : a) rows.push_back(pack(g.pauli, true));
  for (const auto& g : b) rows.push_back(pack(g.pauli, false));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < len && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  std::vector<PauliString> out;
  for (const auto& r : rows) {
    bool left_zero = true;
    for (std::size_t i = 0; i < 2 * n && left_zero; ++i) left_zero = !r.get(i);
    if (!left_zero) continue;
    PauliString p(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      p.x().set(i, r.get(2 * n + i));
      p.z().set(i, r.get(3 * n + i));
      any = any || r.get(2 * n + i) || r.get(3 * n + i);
    }
    if (any) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// tr[rho sigma] = |<psi|phi>|^2.
inline double inner_product(const QuantumState& a, const QuantumState& b, std::size_t cap = kDefaultStatevectorCap) {
  require_same_n(a.num_qubits(), b.num_qubits(), "inner_product");
  const std::size_t n = a.num_qubits();
  if (a.is_stabilizer() && b.is_stabilizer()) {
    const auto common = detail::group_intersection(a.generators(), b.generators(), n);
    for (const auto& p : common) {
      if (a.expectation(p) != b.expectation(p)) return 0.0;
    }
    return std::ldexp(1.0, static_cast<int>(common.size()) - static_cast<int>(n));
  }
  const auto va = a.to_statevector(cap);
  const auto vb = b.to_statevector(cap);
  cplx acc = 0;
  for (std::size_t i = 0; i < va.amplitudes().size(); ++i) acc += std::conj(va.amplitudes()[i]) * vb.amplitudes()[i];
  return std::norm(acc);
}

inline double inner_product(const StatePair& p, std::size_t cap = kDefaultStatevectorCap) {
  return inner_product(p.rho, p.sigma, cap);
}

/// Draws shots as packed words (bit i = qubit i); needs n <= 64.
class ShotSampler {
 public:
  explicit ShotSampler(const QuantumState& s) : state_(&s) {
    if (s.num_qubits() > 64) throw ResourceCapError("sampling supports at most 64 qubits");
    if (!s.is_stabilizer()) {
      const auto& a = s.amplitudes();
      cdf_.resize(a.size());
      double acc = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::norm(a[i]);
        cdf_[i] = acc;
      }
    }
  }

  std::uint64_t draw(Rng& rng) const {
    if (state_->is_stabilizer()) {
      const std::size_t k = state_->support_directions().size();
      const std::uint64_t coeffs = k == 0 ? 0 : (rng.next() & BitString::low_mask(k));
      return state_->support_point(coeffs);
    }
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin());
  }

 private:
  const QuantumState* state_;
  std::vector<double> cdf_;
};

inline std::vector<std::uint64_t> sample_words(const QuantumState& s, std::size_t m, Rng& rng) {
  ShotSampler sampler(s);
  std::vector<std::uint64_t> out(m);
  for (auto& w : out) w = sampler.draw(rng);
  return out;
}

/// m i.i.d. computational-basis outcomes.
inline std::vector<BitString> sample_measurements(const QuantumState& s, std::size_t m, Rng& rng) {
  require_config(m >= 1, "need at least one shot");
  std::vector<BitString> out;
  out.reserve(m);
  for (auto w : sample_words(s, m, rng)) out.push_back(BitString::from_word(s.num_qubits(), w));
  return out;
}

// ---------------------------------------------------------------------------
// Text grammar
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("expected a non-negative integer for " + what + ", got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("integer out of range for " + what + ": '" + s + "'");
  }
}

inline double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + what + ", got '" + s + "'");
  }
}

}  // namespace detail

/// Parses `ghz:<n>`, `plus:<n>`, `zero:<n>`, `basis:<bits>`,
/// `sstate:<n>:<k>:<theta>` or `haar:<n>:<seed>`. Stabilizer families use
/// the stabilizer backend unless `backend` says otherwise.
inline QuantumState parse_state(std::string_view text, std::optional<Backend> backend = std::nullopt,
                                std::size_t cap = kDefaultStatevectorCap) {
  const auto parts = detail::split(text, ':');
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) throw ConfigError("state '" + std::string(text) + "' has the wrong number of fields");
  };
  auto dense_only = [&]() {
    if (backend == Backend::Stabilizer) {
      throw ConfigError("state '" + std::string(text) + "' is not a stabilizer state");
    }
  };
  const Backend stab = backend.value_or(Backend::Stabilizer);
  if (kind == "ghz" || kind == "plus" || kind == "zero") {
    arity(1);
    const auto n = detail::parse_uint(parts[1], "qubit count");
    require_config(n >= 1, "qubit count must be positive");
    if (kind == "ghz") return make_ghz(n, stab, cap);
    if (kind == "plus") return make_plus(n, stab, cap);
    return make_zero(n, stab, cap);
  }
  if (kind == "basis") {
    arity(1);
    return make_basis_state(BitString::parse(parts[1]), stab, cap);
  }
  if (kind == "sstate") {
    arity(3);
    dense_only();
    return make_s_state(detail::parse_uint(parts[1], "qubit count"), detail::parse_uint(parts[2], "k"),
                        detail::parse_real(parts[3], "theta"), cap);
  }
  if (kind == "haar") {
    arity(2);
    dense_only();
    return make_haar_random(detail::parse_uint(parts[1], "qubit count"), detail::parse_uint(parts[2], "seed"), cap);
  }
  throw ConfigError("unknown state family '" + kind + "'");
}

inline Backend parse_backend(std::string_view s) {
  if (s == "statevector") return Backend::Statevector;
  if (s == "stabilizer") return Backend::Stabilizer;
  throw ConfigError("backend must be 'statevector' or 'stabilizer'");
}

}  // namespace dipe
