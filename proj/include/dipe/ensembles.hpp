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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dipe/clifford.hpp"
#include "dipe/errors.hpp"
#include "dipe/rng.hpp"

namespace dipe {

enum class EnsembleKind { LocalClifford, GlobalClifford, Brickwork };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::LocalClifford;
  std::size_t depth = 0;

  static EnsembleSpec local() { return {EnsembleKind::LocalClifford, 0}; }
  static EnsembleSpec global() { return {EnsembleKind::GlobalClifford, 0}; }
  /// Depth 0 is the local ensemble.
  static EnsembleSpec brickwork(std::size_t d) {
    return d == 0 ? local() : EnsembleSpec{EnsembleKind::Brickwork, d};
  }

  std::string name() const {
    switch (kind) {
      case EnsembleKind::LocalClifford: return "local-clifford";
      case EnsembleKind::GlobalClifford: return "global-clifford";
      case EnsembleKind::Brickwork: return "brickwork:" + std::to_string(depth);
    }
    return "?";
  }

  void validate(std::size_t n) const {
    require_config(n >= 1, "ensemble needs n >= 1");
    if (kind == EnsembleKind::Brickwork) {
      require_config(n % 2 == 0, "brickwork ensemble needs an even qubit count, got n=" + std::to_string(n));
      require_config(depth >= 1, "brickwork depth must be at least 1");
    }
  }

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

/// `local-clifford`, `global-clifford` or `brickwork:<d>`.
inline EnsembleSpec parse_ensemble(std::string_view s) {
  if (s == "local-clifford") return EnsembleSpec::local();
  if (s == "global-clifford") return EnsembleSpec::global();
  if (s.starts_with("brickwork:")) {
    const std::string d(s.substr(10));
    if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("brickwork depth must be a non-negative integer: '" + std::string(s) + "'");
    }
    return EnsembleSpec::brickwork(std::stoul(d));
  }
  throw ConfigError("unknown ensemble '" + std::string(s) + "'");
}

/// Qubit pairs of each brick layer (0-based).
struct BrickLayout {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> layers;

  /// Pairs of layer `l` (1-based): offset 0 when odd, periodic offset 1 when even.
  static std::vector<std::pair<std::uint32_t, std::uint32_t>> layer_pairs(std::size_t n, std::size_t l) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    if (n == 2) {
      out.emplace_back(0, 1);
      return out;
    }
    const std::size_t off = (l % 2 == 1) ? 0 : 1;
    for (std::size_t s = 0; s < n / 2; ++s) {
      const auto a = static_cast<std::uint32_t>((2 * s + off) % n);
      const auto b = static_cast<std::uint32_t>((2 * s + off + 1) % n);
      out.emplace_back(a, b);
    }
    return out;
  }

  /// The pairs S of the final layer, which fix the classical function.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> last_layer_pairs() const { return layers.back(); }
};

inline BrickLayout brick_layout(std::size_t n, std::size_t d) {
  require_config(n % 2 == 0 && n >= 2, "brickwork layout needs an even qubit count, got n=" + std::to_string(n));
  require_config(d >= 1, "brickwork layout needs depth >= 1");
  BrickLayout b;
  b.n = n;
  for (std::size_t l = 1; l <= d; ++l) b.layers.push_back(BrickLayout::layer_pairs(n, l));
  return b;
}

/// Images of a uniformly random element of Cl_n (symplectic part built one
/// hyperbolic pair at a time, then independent signs).
inline CliffordTableau sample_global_clifford_tableau(std::size_t n, Rng& rng) {
  require_config(n >= 1, "Clifford sampling needs n >= 1");
  auto sym = [](const PauliString& a, const PauliString& b) { return !a.commutes(b); };
  auto combo = [&](const std::vector<PauliString>& basis) {
    PauliString v(n);
    for (const auto& b : basis) {
      if (rng.bit()) {
        v.x() ^= b.x();
        v.z() ^= b.z();
      }
    }
    return v;
  };
  std::vector<PauliString> basis;
  for (std::size_t i = 0; i < n; ++i) {
    basis.push_back(PauliString::single(n, i, Pauli1::X));
    basis.push_back(PauliString::single(n, i, Pauli1::Z));
  }
  std::vector<SignedPauli> rows(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    PauliString v(n);
    do {
      v = combo(basis);
    } while (v.is_identity());
    PauliString w(n);
    do {
      w = combo(basis);
    } while (!sym(v, w));
    rows[2 * i] = SignedPauli(v, rng.bit() ? 2 : 0);
    rows[2 * i + 1] = SignedPauli(w, rng.bit() ? 2 : 0);
    // project onto the symplectic complement of span{v, w}
    std::vector<PauliString> next;
    for (auto u : basis) {
      const bool uw = sym(u, w), uv = sym(u, v);
      if (uw) {
        u.x() ^= v.x();
        u.z() ^= v.z();
      }
      if (uv) {
        u.x() ^= w.x();
        u.z() ^= w.z();
      }
      next.push_back(std::move(u));
    }
    // re-basis: drop the two dependent vectors
    std::vector<PauliString> reduced;
    std::vector<std::size_t> pivots;
    for (auto& u : next) {
      for (std::size_t r = 0; r < reduced.size(); ++r) {
        const std::size_t c = pivots[r];
        const bool bit = c < n ? u.x().get(c) : u.z().get(c - n);
        if (bit) {
          u.x() ^= reduced[r].x();
          u.z() ^= reduced[r].z();
        }
      }
      if (u.is_identity()) continue;
      std::size_t c = 0;
      while (!(c < n ? u.x().get(c) : u.z().get(c - n))) ++c;
      for (std::size_t r = 0; r < reduced.size(); ++r) {
        const bool bit = c < n ? reduced[r].x().get(c) : reduced[r].z().get(c - n);
        if (bit) {
          reduced[r].x() ^= u.x();
          reduced[r].z() ^= u.z();
        }
      }
      reduced.push_back(std::move(u));
      pivots.push_back(c);
    }
    basis = std::move(reduced);
  }
  return CliffordTableau::from_rows(n, std::move(rows));
}

/// One draw U from the ensemble, as a circuit.
inline CliffordCircuit sample_unitary(const EnsembleSpec& spec, std::size_t n, Rng& rng) {
  spec.validate(n);
  CliffordCircuit c(n);
  switch (spec.kind) {
    case EnsembleKind::LocalClifford:
      for (std::size_t i = 0; i < n; ++i) {
        c.append(gate1(GateKind::C1, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(rng.below(24))));
      }
      break;
    case EnsembleKind::GlobalClifford:
      c = synthesize(sample_global_clifford_tableau(n, rng));
      break;
    case EnsembleKind::Brickwork:
      for (std::size_t i = 0; i < n; ++i) {
        c.append(gate1(GateKind::C1, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(rng.below(24))));
      }
      for (std::size_t l = 1; l <= spec.depth; ++l) {
        for (const auto& [a, b] : BrickLayout::layer_pairs(n, l)) {
          c.append(gate2(GateKind::C2, a, b, static_cast<std::uint32_t>(rng.below(11520))));
        }
      }
      break;
  }
  return c;
}

}  // namespace dipe
