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

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <stdexcept>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dipe/errors.hpp"
#include "dipe/pauli.hpp"

namespace dipe {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Local (1- and 2-qubit) Clifford elements
// ---------------------------------------------------------------------------

/// Image of a local Pauli X^x Z^z under conjugation. `dphase` is the change
/// of the letter-relative phase of any row the local part is embedded in.
struct LocalImage {
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  std::uint8_t dphase = 0;
};

/// A Clifford unitary on k <= 2 qubits: its conjugation table on all 4^k
/// local Paulis and its 2^k x 2^k matrix (local qubit 0 is the low bit).
struct LocalClifford {
  int k = 1;
  std::array<LocalImage, 16> map{};
  std::array<cplx, 16> matrix{};

  const LocalImage& image(std::uint8_t x, std::uint8_t z) const {
    return map[static_cast<std::size_t>(x | (z << k))];
  }
  cplx m(int row, int col) const { return matrix[static_cast<std::size_t>(row * (1 << k) + col)]; }
};

namespace detail {

// Local Pauli in xz form: i^r X^x Z^z on k qubits.
struct LocalXZ {
  std::uint8_t x = 0, z = 0, r = 0;
};

inline LocalXZ local_mul(LocalXZ a, LocalXZ b) {
  const int sign = std::popcount(static_cast<unsigned>(a.z & b.x)) & 1;
  return {static_cast<std::uint8_t>(a.x ^ b.x), static_cast<std::uint8_t>(a.z ^ b.z),
          static_cast<std::uint8_t>((a.r + b.r + 2 * sign) & 3)};
}

// Builds the full local map from images of X_j, Z_j (xz form).
inline void fill_local_map(LocalClifford& g, const std::array<LocalXZ, 4>& gens) {
  const int k = g.k;
  const int np = 1 << (2 * k);
  for (int code = 0; code < np; ++code) {
    const std::uint8_t x = static_cast<std::uint8_t>(code & ((1 << k) - 1));
    const std::uint8_t z = static_cast<std::uint8_t>(code >> k);
    LocalXZ acc;
    for (int j = 0; j < k; ++j) {
      if ((x >> j) & 1) acc = local_mul(acc, gens[static_cast<std::size_t>(2 * j)]);
    }
    for (int j = 0; j < k; ++j) {
      if ((z >> j) & 1) acc = local_mul(acc, gens[static_cast<std::size_t>(2 * j + 1)]);
    }
    const int y_old = std::popcount(static_cast<unsigned>(x & z));
    const int y_new = std::popcount(static_cast<unsigned>(acc.x & acc.z));
    g.map[static_cast<std::size_t>(code)] = {acc.x, acc.z,
                                             static_cast<std::uint8_t>((acc.r + y_old - y_new + 8) & 3)};
  }
}

inline std::array<LocalXZ, 4> generator_images(const LocalClifford& g) {
  std::array<LocalXZ, 4> out{};
  for (int j = 0; j < g.k; ++j) {
    const auto xj = g.image(static_cast<std::uint8_t>(1 << j), 0);
    const auto zj = g.image(0, static_cast<std::uint8_t>(1 << j));
    // letter phase -> xz phase
    out[static_cast<std::size_t>(2 * j)] = {
        xj.x, xj.z, static_cast<std::uint8_t>((xj.dphase + std::popcount(static_cast<unsigned>(xj.x & xj.z))) & 3)};
    out[static_cast<std::size_t>(2 * j + 1)] = {
        zj.x, zj.z, static_cast<std::uint8_t>((zj.dphase + std::popcount(static_cast<unsigned>(zj.x & zj.z))) & 3)};
  }
  return out;
}

inline LocalClifford make_local(int k, const std::array<LocalXZ, 4>& gens, std::initializer_list<cplx> matrix) {
  LocalClifford g;
  g.k = k;
  fill_local_map(g, gens);
  std::size_t i = 0;
  for (auto v : matrix) g.matrix[i++] = v;
  return g;
}

// g2 after g1.
inline LocalClifford compose_local(const LocalClifford& g1, const LocalClifford& g2) {
  LocalClifford out;
  out.k = g1.k;
  auto gens = generator_images(g1);
  for (int j = 0; j < 2 * g1.k; ++j) {
    auto& v = gens[static_cast<std::size_t>(j)];
    const auto& img = g2.image(v.x, v.z);
    const int y_old = std::popcount(static_cast<unsigned>(v.x & v.z));
    const int y_new = std::popcount(static_cast<unsigned>(img.x & img.z));
    // xz phase of the product: r + (letter delta) + y_new - y_old
    v = {img.x, img.z, static_cast<std::uint8_t>((v.r + img.dphase + y_new - y_old + 8) & 3)};
  }
  fill_local_map(out, gens);
  const int d = 1 << g1.k;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      cplx acc = 0;
      for (int t = 0; t < d; ++t) acc += g2.m(r, t) * g1.m(t, c);
      out.matrix[static_cast<std::size_t>(r * d + c)] = acc;
    }
  }
  return out;
}

inline std::uint64_t local_key(const LocalClifford& g) {
  const auto gens = generator_images(g);
  std::uint64_t key = 0;
  for (int j = 0; j < 2 * g.k; ++j) {
    const auto& v = gens[static_cast<std::size_t>(j)];
    key = (key << 8) | static_cast<std::uint64_t>(v.x | (v.z << 2) | (v.r << 4));
  }
  return key;
}

}  // namespace detail

/// Named local gates.
namespace gates {

inline const LocalClifford& H() {
  static const LocalClifford g = [] {
    const double s = 1.0 / std::sqrt(2.0);
    return detail::make_local(1, {{{0, 1, 0}, {1, 0, 0}}}, {s, s, s, -s});
  }();
  return g;
}
inline const LocalClifford& S() {
  static const LocalClifford g =
      detail::make_local(1, {{{1, 1, 1}, {0, 1, 0}}}, {1.0, 0.0, 0.0, cplx(0, 1)});
  return g;
}
inline const LocalClifford& Sdg() {
  static const LocalClifford g =
      detail::make_local(1, {{{1, 1, 3}, {0, 1, 0}}}, {1.0, 0.0, 0.0, cplx(0, -1)});
  return g;
}
inline const LocalClifford& X() {
  static const LocalClifford g = detail::make_local(1, {{{1, 0, 0}, {0, 1, 2}}}, {0.0, 1.0, 1.0, 0.0});
  return g;
}
inline const LocalClifford& Y() {
  static const LocalClifford g =
      detail::make_local(1, {{{1, 0, 2}, {0, 1, 2}}}, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
  return g;
}
inline const LocalClifford& Z() {
  static const LocalClifford g = detail::make_local(1, {{{1, 0, 2}, {0, 1, 0}}}, {1.0, 0.0, 0.0, -1.0});
  return g;
}
/// Control on local qubit 0, target on local qubit 1.
inline const LocalClifford& CX() {
  static const LocalClifford g = detail::make_local(
      2, {{{0b11, 0b00, 0}, {0b00, 0b01, 0}, {0b10, 0b00, 0}, {0b00, 0b11, 0}}},
      {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0});
  return g;
}
inline const LocalClifford& CZ() {
  static const LocalClifford g = detail::make_local(
      2, {{{0b01, 0b10, 0}, {0b00, 0b01, 0}, {0b10, 0b01, 0}, {0b00, 0b10, 0}}},
      {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
  return g;
}
inline const LocalClifford& SWAP() {
  static const LocalClifford g = detail::make_local(
      2, {{{0b10, 0b00, 0}, {0b00, 0b10, 0}, {0b01, 0b00, 0}, {0b00, 0b01, 0}}},
      {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  return g;
}

}  // namespace gates

/// All elements of the k-qubit Clifford group modulo global phase, in a
/// fixed breadth-first order from the identity (index 0).
class LocalCliffordGroup {
 public:
  explicit LocalCliffordGroup(int k) : k_(k) {
    std::vector<LocalClifford> generators;
    LocalClifford id;
    id.k = k;
    std::array<detail::LocalXZ, 4> gens{};
    for (int j = 0; j < k; ++j) {
      gens[static_cast<std::size_t>(2 * j)] = {static_cast<std::uint8_t>(1 << j), 0, 0};
      gens[static_cast<std::size_t>(2 * j + 1)] = {0, static_cast<std::uint8_t>(1 << j), 0};
    }
    detail::fill_local_map(id, gens);
    const int d = 1 << k;
    for (int i = 0; i < d; ++i) id.matrix[static_cast<std::size_t>(i * d + i)] = 1.0;

    if (k == 1) {
      generators = {gates::H(), gates::S()};
    } else {
      generators = {embed(gates::H(), 0), embed(gates::S(), 0), embed(gates::H(), 1),
                    embed(gates::S(), 1), gates::CX()};
    }
    std::deque<std::size_t> queue;
    add(id);
    queue.push_back(0);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const auto& g : generators) {
        auto next = detail::compose_local(elements_[cur], g);
        if (add(next)) queue.push_back(elements_.size() - 1);
      }
    }
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      inverse_[i] = find_inverse(i);
    }
  }

  int qubits() const { return k_; }
  std::size_t size() const { return elements_.size(); }
  const LocalClifford& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }

  /// Index of the element equal (as a tableau) to `g`.
  std::size_t index_of(const LocalClifford& g) const {
    auto it = index_.find(detail::local_key(g));
    if (it == index_.end()) throw std::logic_error("element not in the Clifford table");
    return it->second;
  }

 private:
  static LocalClifford embed(const LocalClifford& g1, int qubit) {
    // single-qubit gate as a 2-qubit element
    std::array<detail::LocalXZ, 4> gens{};
    const auto img = detail::generator_images(g1);
    for (int j = 0; j < 2; ++j) {
      for (int p = 0; p < 2; ++p) {
        const std::size_t slot = static_cast<std::size_t>(2 * j + p);
        if (j == qubit) {
          const auto& v = img[static_cast<std::size_t>(p)];
          gens[slot] = {static_cast<std::uint8_t>(v.x << j), static_cast<std::uint8_t>(v.z << j), v.r};
        } else {
          gens[slot] = p == 0 ? detail::LocalXZ{static_cast<std::uint8_t>(1 << j), 0, 0}
                              : detail::LocalXZ{0, static_cast<std::uint8_t>(1 << j), 0};
        }
      }
    }
    LocalClifford out;
    out.k = 2;
    detail::fill_local_map(out, gens);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const int r0 = (r >> qubit) & 1, c0 = (c >> qubit) & 1;
        const int r1 = (r >> (1 - qubit)) & 1, c1 = (c >> (1 - qubit)) & 1;
        out.matrix[static_cast<std::size_t>(r * 4 + c)] = r1 == c1 ? g1.m(r0, c0) : cplx(0);
      }
    }
    return out;
  }

  bool add(const LocalClifford& g) {
    const auto key = detail::local_key(g);
    if (index_.count(key)) return false;
    index_.emplace(key, elements_.size());
    elements_.push_back(g);
    return true;
  }

  std::size_t find_inverse(std::size_t i) const {
    // the inverse maps each image back onto its generator
    std::array<detail::LocalXZ, 4> gens{};
    const auto& g = elements_[i];
    const int np = 1 << (2 * k_);
    for (int j = 0; j < 2 * k_; ++j) {
      const std::uint8_t tx = (j % 2 == 0) ? static_cast<std::uint8_t>(1 << (j / 2)) : 0;
      const std::uint8_t tz = (j % 2 == 1) ? static_cast<std::uint8_t>(1 << (j / 2)) : 0;
      for (int code = 0; code < np; ++code) {
        const auto& img = g.map[static_cast<std::size_t>(code)];
        if (img.x == tx && img.z == tz) {
          const std::uint8_t x = static_cast<std::uint8_t>(code & ((1 << k_) - 1));
          const std::uint8_t z = static_cast<std::uint8_t>(code >> k_);
          // g (sign * P) g^dag = target requires letter phase 2 iff dphase is 2
          const int letter = (4 - img.dphase) & 3;
          gens[static_cast<std::size_t>(j)] = {
              x, z, static_cast<std::uint8_t>((letter + std::popcount(static_cast<unsigned>(x & z))) & 3)};
          break;
        }
      }
    }
    LocalClifford inv;
    inv.k = k_;
    detail::fill_local_map(inv, gens);
    return index_of(inv);
  }

  int k_;
  std::vector<LocalClifford> elements_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// The 24 single-qubit Cliffords.
inline const LocalCliffordGroup& clifford1_table() {
  static const LocalCliffordGroup t(1);
  return t;
}
/// The 11520 two-qubit Cliffords.
inline const LocalCliffordGroup& clifford2_table() {
  static const LocalCliffordGroup t(2);
  return t;
}

// ---------------------------------------------------------------------------
// Gates and circuits
// ---------------------------------------------------------------------------

enum class GateKind : std::uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, SWAP, C1, C2 };

/// One gate; qubits are 0-based. `index` selects the element for C1/C2.
struct Gate {
  GateKind kind = GateKind::H;
  std::uint32_t index = 0;
  std::array<std::uint32_t, 2> q{0, 0};

  int arity() const {
    switch (kind) {
      case GateKind::CX:
      case GateKind::CZ:
      case GateKind::SWAP:
      case GateKind::C2: return 2;
      default: return 1;
    }
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline Gate gate1(GateKind k, std::uint32_t q, std::uint32_t index = 0) { return {k, index, {q, q}}; }
inline Gate gate2(GateKind k, std::uint32_t q0, std::uint32_t q1, std::uint32_t index = 0) {
  return {k, index, {q0, q1}};
}

inline const LocalClifford& gate_action(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return gates::H();
    case GateKind::S: return gates::S();
    case GateKind::Sdg: return gates::Sdg();
    case GateKind::X: return gates::X();
    case GateKind::Y: return gates::Y();
    case GateKind::Z: return gates::Z();
    case GateKind::CX: return gates::CX();
    case GateKind::CZ: return gates::CZ();
    case GateKind::SWAP: return gates::SWAP();
    case GateKind::C1: return clifford1_table()[g.index];
    case GateKind::C2: return clifford2_table()[g.index];
  }
  throw std::logic_error("unreachable gate kind");
}

inline Gate inverse_gate(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::S: out.kind = GateKind::Sdg; break;
    case GateKind::Sdg: out.kind = GateKind::S; break;
    case GateKind::C1: out.index = static_cast<std::uint32_t>(clifford1_table().inverse(g.index)); break;
    case GateKind::C2: out.index = static_cast<std::uint32_t>(clifford2_table().inverse(g.index)); break;
    default: break;
  }
  return out;
}

inline std::string gate_name(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::C1: return "C1[" + std::to_string(g.index) + "]";
    case GateKind::C2: return "C2[" + std::to_string(g.index) + "]";
  }
  return "?";
}

/// Ordered gate list on n qubits.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(const Gate& g) {
    const auto bad = [&](std::uint32_t q) { return q >= n_; };
    if (bad(g.q[0]) || (g.arity() == 2 && bad(g.q[1]))) {
      throw ConfigError("gate " + gate_name(g) + " targets a qubit outside [1, " + std::to_string(n_) + "]");
    }
    if (g.arity() == 2 && g.q[0] == g.q[1]) {
      throw ConfigError("two-qubit gate " + gate_name(g) + " needs distinct targets");
    }
    if ((g.kind == GateKind::C1 && g.index >= 24) || (g.kind == GateKind::C2 && g.index >= 11520)) {
      throw ConfigError("Clifford index out of range in " + gate_name(g));
    }
    gates_.push_back(g);
  }
  void append(const CliffordCircuit& other) {
    require_same_n(n_, other.n_, "circuit append");
    for (const auto& g : other.gates_) gates_.push_back(g);
  }

  CliffordCircuit inverse() const {
    CliffordCircuit out(n_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(inverse_gate(*it));
    return out;
  }

  /// One gate per line, 1-based qubits: "H 1", "CX 1 2", "C2[17] 3 4".
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& g : gates_) {
      os << gate_name(g) << ' ' << g.q[0] + 1;
      if (g.arity() == 2) os << ' ' << g.q[1] + 1;
      os << '\n';
    }
    return os.str();
  }

  static CliffordCircuit parse(std::size_t n, const std::string& text) {
    CliffordCircuit c(n);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      std::istringstream ls(line);
      std::string name;
      if (!(ls >> name) || name.starts_with("#")) continue;
      Gate g;
      if (name == "H") g.kind = GateKind::H;
      else if (name == "S") g.kind = GateKind::S;
      else if (name == "SDG") g.kind = GateKind::Sdg;
      else if (name == "X") g.kind = GateKind::X;
      else if (name == "Y") g.kind = GateKind::Y;
      else if (name == "Z") g.kind = GateKind::Z;
      else if (name == "CX") g.kind = GateKind::CX;
      else if (name == "CZ") g.kind = GateKind::CZ;
      else if (name == "SWAP") g.kind = GateKind::SWAP;
      else if ((name.starts_with("C1[") || name.starts_with("C2[")) && name.ends_with("]")) {
        g.kind = name[1] == '1' ? GateKind::C1 : GateKind::C2;
        try {
          g.index = static_cast<std::uint32_t>(std::stoul(name.substr(3, name.size() - 4)));
        } catch (const std::exception&) {
          throw ConfigError("bad Clifford index in gate '" + name + "'");
        }
      } else {
        throw ConfigError("unknown gate name '" + name + "'");
      }
      long a = 0, b = 0;
      if (!(ls >> a) || a < 1) throw ConfigError("gate '" + name + "' needs a 1-based target");
      g.q = {static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(a - 1)};
      if (g.arity() == 2) {
        if (!(ls >> b) || b < 1) throw ConfigError("gate '" + name + "' needs two targets");
        g.q[1] = static_cast<std::uint32_t>(b - 1);
      }
      c.append(g);
    }
    return c;
  }

  friend bool operator==(const CliffordCircuit&, const CliffordCircuit&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Gate> gates_;
};

/// Conjugates `p` in place by the local Clifford acting on qubits `q`.
inline void apply_local(const LocalClifford& g, const std::array<std::uint32_t, 2>& q, SignedPauli& p) {
  auto& x = p.pauli.x();
  auto& z = p.pauli.z();
  std::uint8_t lx = 0, lz = 0;
  for (int j = 0; j < g.k; ++j) {
    lx |= static_cast<std::uint8_t>(x.get(q[static_cast<std::size_t>(j)]) << j);
    lz |= static_cast<std::uint8_t>(z.get(q[static_cast<std::size_t>(j)]) << j);
  }
  if (lx == 0 && lz == 0) return;
  const auto& img = g.image(lx, lz);
  for (int j = 0; j < g.k; ++j) {
    x.set(q[static_cast<std::size_t>(j)], (img.x >> j) & 1);
    z.set(q[static_cast<std::size_t>(j)], (img.z >> j) & 1);
  }
  p.phase = static_cast<std::uint8_t>((p.phase + img.dphase) & 3);
}

inline void apply_gate(const Gate& g, SignedPauli& p) { apply_local(gate_action(g), g.q, p); }

// ---------------------------------------------------------------------------
// Tableau
// ---------------------------------------------------------------------------

/// Images U X_i U^dag (row 2i) and U Z_i U^dag (row 2i+1) with signs.
class CliffordTableau {
 public:
  CliffordTableau() = default;
  explicit CliffordTableau(std::size_t n) : n_(n), rows_(2 * n) {
    for (std::size_t i = 0; i < n; ++i) {
      rows_[2 * i] = SignedPauli(PauliString::single(n, i, Pauli1::X));
      rows_[2 * i + 1] = SignedPauli(PauliString::single(n, i, Pauli1::Z));
    }
  }
  static CliffordTableau identity(std::size_t n) { return CliffordTableau(n); }

  /// Builds a tableau from explicit images; does not validate.
  static CliffordTableau from_rows(std::size_t n, std::vector<SignedPauli> rows) {
    if (rows.size() != 2 * n) throw DimensionMismatch("tableau needs 2n rows");
    CliffordTableau t;
    t.n_ = n;
    t.rows_ = std::move(rows);
    return t;
  }

  std::size_t num_qubits() const { return n_; }
  const SignedPauli& x_image(std::size_t i) const { return rows_[2 * i]; }
  const SignedPauli& z_image(std::size_t i) const { return rows_[2 * i + 1]; }
  const std::vector<SignedPauli>& rows() const { return rows_; }

  /// Entry (r, c) of the 2n x 2n binary matrix; column 2j is x_j, 2j+1 is z_j.
  bool bit(std::size_t r, std::size_t c) const {
    const auto& p = rows_[r].pauli;
    return (c % 2 == 0) ? p.x().get(c / 2) : p.z().get(c / 2);
  }
  /// Quarter phase of row r (0 or 2 for a valid tableau).
  int phase(std::size_t r) const { return rows_[r].phase; }

  /// Left-multiplies by a gate: the tableau of g * U.
  void apply(const Gate& g) {
    const auto& act = gate_action(g);
    for (auto& r : rows_) apply_local(act, g.q, r);
  }

  /// U P U^dag with exact phase.
  SignedPauli conjugate(const SignedPauli& p) const {
    require_same_n(n_, p.size(), "conjugate");
    SignedPauli acc(PauliString(n_), 0);
    int r = p.xz_phase();
    for (std::size_t i = 0; i < n_; ++i) {
      if (p.pauli.x().get(i)) acc = acc * rows_[2 * i];
      if (p.pauli.z().get(i)) acc = acc * rows_[2 * i + 1];
    }
    acc.phase = static_cast<std::uint8_t>((acc.phase + r) & 3);
    return acc;
  }

  /// Tableau of `first` followed by `second`.
  static CliffordTableau compose(const CliffordTableau& first, const CliffordTableau& second) {
    require_same_n(first.n_, second.n_, "compose");
    CliffordTableau out;
    out.n_ = first.n_;
    out.rows_.reserve(first.rows_.size());
    for (const auto& r : first.rows_) out.rows_.push_back(second.conjugate(r));
    return out;
  }

  CliffordTableau inverse() const {
    CliffordTableau inv;
    inv.n_ = n_;
    inv.rows_.resize(2 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (int kind = 0; kind < 2; ++kind) {
        PauliString w(n_);
        for (std::size_t i = 0; i < n_; ++i) {
          const auto& ix = rows_[2 * i].pauli;
          const auto& iz = rows_[2 * i + 1].pauli;
          // symplectic inverse: coordinates from products with the images
          if (kind == 0) {
            w.x().set(i, iz.z().get(j));
            w.z().set(i, ix.z().get(j));
          } else {
            w.x().set(i, iz.x().get(j));
            w.z().set(i, ix.x().get(j));
          }
        }
        SignedPauli cand = SignedPauli::from_xz_phase(w, static_cast<int>(w.num_y() & 3));
        const auto back = conjugate(cand);
        if (back.phase == 2) cand.phase = static_cast<std::uint8_t>((cand.phase + 2) & 3);
        inv.rows_[2 * j + static_cast<std::size_t>(kind)] = cand;
      }
    }
    return inv;
  }

  /// Rows are Hermitian and reproduce the canonical commutation relations.
  bool is_symplectic() const {
    for (std::size_t a = 0; a < 2 * n_; ++a) {
      if (!rows_[a].is_hermitian() || rows_[a].pauli.is_identity()) return false;
      for (std::size_t b = a + 1; b < 2 * n_; ++b) {
        const bool anticommute = !rows_[a].pauli.commutes(rows_[b].pauli);
        const bool expected = (a / 2 == b / 2);
        if (anticommute != expected) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<SignedPauli> rows_;
};

inline SignedPauli conjugate(const CliffordTableau& t, const SignedPauli& p) { return t.conjugate(p); }

/// Index of a 1- or 2-qubit tableau in the matching Clifford table.
inline std::size_t table_index(const CliffordTableau& t) {
  const std::size_t n = t.num_qubits();
  require_config(n == 1 || n == 2, "table lookup needs a 1- or 2-qubit tableau");
  std::array<detail::LocalXZ, 4> gens{};
  for (std::size_t r = 0; r < 2 * n; ++r) {
    const auto& row = t.rows()[r];
    gens[r] = {static_cast<std::uint8_t>(row.pauli.x().to_word()), static_cast<std::uint8_t>(row.pauli.z().to_word()),
               static_cast<std::uint8_t>(row.xz_phase())};
  }
  LocalClifford g;
  g.k = static_cast<int>(n);
  detail::fill_local_map(g, gens);
  return (n == 1 ? clifford1_table() : clifford2_table()).index_of(g);
}

inline CliffordTableau tableau_from_circuit(const CliffordCircuit& c) {
  CliffordTableau t(c.num_qubits());
  for (const auto& g : c.gates()) t.apply(g);
  return t;
}

/// Circuit over {H, S, SDG, X, Z, CX, SWAP} whose tableau equals `t`.
inline CliffordCircuit synthesize(const CliffordTableau& t) {
  const std::size_t n = t.num_qubits();
  if (!t.is_symplectic()) throw ConfigError("cannot synthesize a non-symplectic tableau");
  CliffordTableau work = t;
  CliffordCircuit reducer(n);
  auto push = [&](const Gate& g) {
    work.apply(g);
    reducer.append(g);
  };
  const auto u32 = [](std::size_t v) { return static_cast<std::uint32_t>(v); };

  for (std::size_t i = 0; i < n; ++i) {
    // image of X_i -> +-X_i
    {
      const auto& p = work.x_image(i).pauli;
      for (std::size_t k = i; k < n; ++k) {
        const Pauli1 s = p.get(k);
        if (s == Pauli1::Z) push(gate1(GateKind::H, u32(k)));
        else if (s == Pauli1::Y) push(gate1(GateKind::Sdg, u32(k)));
      }
      if (work.x_image(i).pauli.get(i) == Pauli1::I) {
        for (std::size_t k = i + 1; k < n; ++k) {
          if (work.x_image(i).pauli.get(k) != Pauli1::I) {
            push(gate2(GateKind::SWAP, u32(i), u32(k)));
            break;
          }
        }
      }
      for (std::size_t k = i + 1; k < n; ++k) {
        if (work.x_image(i).pauli.get(k) == Pauli1::X) push(gate2(GateKind::CX, u32(i), u32(k)));
      }
    }
    // image of Z_i -> +-Z_i, keeping X_i fixed
    {
      for (std::size_t k = i + 1; k < n; ++k) {
        const Pauli1 s = work.z_image(i).pauli.get(k);
        if (s == Pauli1::X) {
          push(gate1(GateKind::H, u32(k)));
        } else if (s == Pauli1::Y) {
          push(gate1(GateKind::Sdg, u32(k)));
          push(gate1(GateKind::H, u32(k)));
        }
      }
      for (std::size_t k = i + 1; k < n; ++k) {
        if (work.z_image(i).pauli.get(k) == Pauli1::Z) push(gate2(GateKind::CX, u32(k), u32(i)));
      }
      if (work.z_image(i).pauli.get(i) == Pauli1::Y) {
        push(gate1(GateKind::H, u32(i)));
        push(gate1(GateKind::S, u32(i)));
        push(gate1(GateKind::H, u32(i)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (work.x_image(i).phase == 2) push(gate1(GateKind::Z, u32(i)));
    if (work.z_image(i).phase == 2) push(gate1(GateKind::X, u32(i)));
  }
  if (!(work == CliffordTableau(n))) throw std::logic_error("tableau synthesis did not reach the identity");
  return reducer.inverse();
}

}  // namespace dipe
