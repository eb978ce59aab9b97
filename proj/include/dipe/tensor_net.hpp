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
#include <cstdint>
#include <vector>

#include "dipe/classical_fn.hpp"
#include "dipe/ensembles.hpp"
#include "dipe/errors.hpp"
#include "dipe/pauli.hpp"

namespace dipe {

inline constexpr std::size_t kSignatureMaxQubits = 14;
inline constexpr std::size_t kMaxBondBits = 12;

/// Column-stochastic map on a brick's 2-bit signature (index b_p + 2 b_q).
struct BrickTransfer {
  static constexpr std::array<std::array<double, 4>, 4> B = {{
      {1.0, 0.0, 0.0, 0.0},
      {0.0, 0.2, 0.2, 0.2},
      {0.0, 0.2, 0.2, 0.2},
      {0.0, 0.6, 0.6, 0.6},
  }};
  /// Distinct columns: inactive and active input.
  static constexpr std::array<std::array<double, 2>, 4> B_reduced = {{
      {1.0, 0.0},
      {0.0, 0.2},
      {0.0, 0.2},
      {0.0, 0.6},
  }};
};

/// Per-site weights indexed by the output signature bit.
struct WeightVectors {
  static constexpr std::array<double, 2> W0 = {1.0, 1.0 / 3.0};
  static constexpr std::array<double, 2> W1 = {1.0, -1.0 / 3.0};
};

/// f_d^2(a, 0) on one last-layer block, indexed by the 2-bit block of a.
struct FTensor {
  static constexpr std::array<double, 4> F = {16.0, 1.0, 1.0, 1.0};
};

/// Block factor sum_a F(a) w(a, gamma) for each 2-bit output signature.
inline std::array<double, 4> block_final_factor() {
  std::array<double, 4> g{};
  for (int gamma = 0; gamma < 4; ++gamma) {
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int bit = 0; bit < 2; ++bit) {
        const int ab = (a >> bit) & 1, gb = (gamma >> bit) & 1;
        w *= ab ? WeightVectors::W1[gb] : WeightVectors::W0[gb];
      }
      g[gamma] += FTensor::F[a] * w;
    }
  }
  return g;
}

/// Dense distribution of q(U P U^dag) over Z_2^n.
struct SignatureDistribution {
  std::size_t n = 0;
  std::vector<double> prob;
};

namespace detail {

inline void check_signature_args(const PauliString& p, std::size_t d, std::size_t cap) {
  const std::size_t n = p.size();
  require_config(n >= 2 && n % 2 == 0, "brickwork signature chain needs an even qubit count, got n=" + std::to_string(n));
  require_config(d >= 1, "brickwork depth must be at least 1");
  if (n > cap) {
    throw ResourceCapError("signature distribution over " + std::to_string(n) + " qubits exceeds the cap of " +
                           std::to_string(cap));
  }
}

// In-place Walsh-Hadamard transform.
inline void wht(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace detail

/// Point mass at q(P) pushed through d brick layers; the single-qubit
/// layer leaves signatures unchanged.
inline SignatureDistribution propagate_signature(const PauliString& p, std::size_t d,
                                                 std::size_t cap = kSignatureMaxQubits) {
  detail::check_signature_args(p, d, cap);
  const std::size_t n = p.size();
  SignatureDistribution dist;
  dist.n = n;
  dist.prob.assign(std::size_t{1} << n, 0.0);
  dist.prob[static_cast<std::size_t>(signature(p).to_word())] = 1.0;
  for (std::size_t l = 1; l <= d; ++l) {
    for (const auto& [a, b] : BrickLayout::layer_pairs(n, l)) {
      const std::size_t ba = std::size_t{1} << a, bb = std::size_t{1} << b;
      for (std::size_t u = 0; u < dist.prob.size(); ++u) {
        if ((u & ba) || (u & bb)) continue;
        const std::size_t idx[4] = {u, u | ba, u | bb, u | ba | bb};
        double in[4], out[4] = {0, 0, 0, 0};
        for (int s = 0; s < 4; ++s) in[s] = dist.prob[idx[s]];
        for (int r = 0; r < 4; ++r) {
          for (int s = 0; s < 4; ++s) out[r] += BrickTransfer::B[r][s] * in[s];
        }
        for (int s = 0; s < 4; ++s) dist.prob[idx[s]] = out[s];
      }
    }
  }
  return dist;
}

/// h(a, P) for every a at once: the transform of Pr(gamma) 3^{-|gamma|}.
inline std::vector<double> h_all(const PauliString& p, std::size_t d, std::size_t cap = kSignatureMaxQubits) {
  auto dist = propagate_signature(p, d, cap);
  std::vector<double> g = std::move(dist.prob);
  for (std::size_t gamma = 0; gamma < g.size(); ++gamma) {
    g[gamma] *= std::pow(1.0 / 3.0, std::popcount(gamma));
  }
  detail::wht(g);
  return g;
}

/// sum_gamma Pr(gamma) prod_i w(a_i, gamma_i).
inline double h_oracle(const BitString& a, const PauliString& p, std::size_t d, std::size_t cap = kSignatureMaxQubits) {
  require_same_n(a.size(), p.size(), "h_oracle");
  const auto dist = propagate_signature(p, d, cap);
  double acc = 0;
  for (std::size_t gamma = 0; gamma < dist.prob.size(); ++gamma) {
    if (dist.prob[gamma] == 0.0) continue;
    double w = dist.prob[gamma];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int gb = static_cast<int>((gamma >> i) & 1);
      w *= a.get(i) ? WeightVectors::W1[gb] : WeightVectors::W0[gb];
    }
    acc += w;
  }
  return acc;
}

/// Upsilon_d(P) = sum_a f_d^2(a, 0) h(a, P), summed in the signature basis.
inline double upsilon_oracle(const PauliString& p, std::size_t d, std::size_t cap = kSignatureMaxQubits) {
  const auto dist = propagate_signature(p, d, cap);
  const auto g = block_final_factor();
  const auto pairs = BrickLayout::layer_pairs(p.size(), d);
  double acc = 0;
  for (std::size_t gamma = 0; gamma < dist.prob.size(); ++gamma) {
    if (dist.prob[gamma] == 0.0) continue;
    double w = dist.prob[gamma];
    for (const auto& [a, b] : pairs) w *= g[((gamma >> a) & 1) | (((gamma >> b) & 1) << 1)];
    acc += w;
  }
  return acc;
}

/// Column transfer matrix over the d-1 bits crossing a column boundary.
/// Column k holds the odd-layer brick on (2k, 2k+1) and the even-layer
/// brick on (2k+1, 2k+2). Boundary bit l-1 carries an output of layer l:
/// leftward after odd layers, rightward after even layers.
inline std::vector<double> brick_column_transfer(std::size_t d, bool first_active) {
  require_config(d >= 1, "brickwork depth must be at least 1");
  if (d - 1 > kMaxBondBits) {
    throw ResourceCapError("bond dimension 2^" + std::to_string(d - 1) + " exceeds the cap of 2^" +
                           std::to_string(kMaxBondBits));
  }
  const std::size_t dim = std::size_t{1} << (d - 1);
  const auto g = block_final_factor();
  double final_active = 0;
  for (int s = 1; s < 4; ++s) final_active += BrickTransfer::B[static_cast<std::size_t>(s)][1] * g[static_cast<std::size_t>(s)];
  const double final_inactive = g[0];
  // active outputs (left, right) and their weights
  const int out_l[3] = {1, 0, 1}, out_r[3] = {0, 1, 1};
  const double out_w[3] = {BrickTransfer::B[1][1], BrickTransfer::B[2][1], BrickTransfer::B[3][1]};

  std::vector<double> m(dim * dim, 0.0);
  for (std::size_t alpha = 0; alpha < dim; ++alpha) {
    for (std::size_t beta = 0; beta < dim; ++beta) {
      // carry[c]: weight with internal bit c fed to the next layer
      std::array<double, 2> carry = {0.0, 0.0};
      bool first = true;
      for (std::size_t l = 1; l <= d; ++l) {
        std::array<double, 2> next = {0.0, 0.0};
        for (int c = 0; c < 2; ++c) {
          double w;
          bool active;
          if (first) {
            if (c == 1) continue;
            w = 1.0;
            active = first_active;
          } else {
            w = carry[static_cast<std::size_t>(c)];
            if (w == 0.0) continue;
            const bool odd = l % 2 == 1;
            const std::size_t prev = l - 2;
            const int boundary = odd ? static_cast<int>((alpha >> prev) & 1) : static_cast<int>((beta >> prev) & 1);
            active = c || boundary;
          }
          if (l == d) {
            next[0] += w * (active ? final_active : final_inactive);
            continue;
          }
          const bool odd = l % 2 == 1;
          const std::size_t bit = l - 1;
          // odd: left output leaves through alpha, right output is carried
          // even: right output leaves through beta, left output is carried
          const int want = odd ? static_cast<int>((alpha >> bit) & 1) : static_cast<int>((beta >> bit) & 1);
          if (!active) {
            if (want == 0) next[0] += w;
            continue;
          }
          for (int o = 0; o < 3; ++o) {
            const int leaving = odd ? out_l[o] : out_r[o];
            const int kept = odd ? out_r[o] : out_l[o];
            if (leaving != want) continue;
            next[static_cast<std::size_t>(kept)] += w * out_w[o];
          }
        }
        carry = next;
        first = false;
      }
      m[alpha * dim + beta] = carry[0];
    }
  }
  return m;
}

/// Upsilon_d(P) as the trace of the ring of column transfer matrices.
inline double upsilon_mps(const PauliString& p, std::size_t d) {
  const std::size_t n = p.size();
  require_config(n >= 2 && n % 2 == 0, "brickwork contraction needs an even qubit count, got n=" + std::to_string(n));
  const auto m_idle = brick_column_transfer(d, false);
  const auto m_act = brick_column_transfer(d, true);
  const std::size_t dim = std::size_t{1} << (d - 1);
  const auto q = signature(p);
  std::vector<double> acc(dim * dim, 0.0), tmp(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) acc[i * dim + i] = 1.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const auto& mk = (q.get(2 * k) || q.get(2 * k + 1)) ? m_act : m_idle;
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t t = 0; t < dim; ++t) {
        const double a = acc[i * dim + t];
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < dim; ++j) tmp[i * dim + j] += a * mk[t * dim + j];
      }
    }
    std::swap(acc, tmp);
  }
  double tr = 0;
  for (std::size_t i = 0; i < dim; ++i) tr += acc[i * dim + i];
  return tr;
}

/// Block activity pattern x(P): bit k is set when P acts on block (2k, 2k+1).
inline BitString block_signature(const PauliString& p) {
  require_config(p.size() % 2 == 0, "block signature needs an even qubit count");
  const auto q = signature(p);
  BitString x(p.size() / 2);
  for (std::size_t k = 0; k < x.size(); ++k) x.set(k, q.get(2 * k) || q.get(2 * k + 1));
  return x;
}

/// Z on the left site of every active block.
inline PauliString class_representative(const BitString& x) {
  PauliString p(2 * x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x.get(k)) p.set(2 * k, Pauli1::Z);
  }
  return p;
}

}  // namespace dipe
