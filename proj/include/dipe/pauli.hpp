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

#include <cstdint>
#include <string>
#include <string_view>

#include "dipe/bits.hpp"
#include "dipe/errors.hpp"

namespace dipe {

/// Single-site Pauli letter; the value packs (x, z) as x | z << 1.
enum class Pauli1 : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char pauli_char(Pauli1 p) {
  constexpr char kChars[] = {'I', 'X', 'Z', 'Y'};
  return kChars[static_cast<int>(p)];
}

/// Tensor product of I/X/Y/Z in symplectic form. Site i is (x_i, z_i):
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n), z_(n) {}
  PauliString(BitString x, BitString z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw DimensionMismatch("x and z parts differ in length");
  }

  static PauliString identity(std::size_t n) { return PauliString(n); }

  static PauliString parse(std::string_view text) {
    PauliString p(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case 'I': break;
        case 'X': p.set(i, Pauli1::X); break;
        case 'Y': p.set(i, Pauli1::Y); break;
        case 'Z': p.set(i, Pauli1::Z); break;
        default: throw ConfigError("Pauli string may contain only I, X, Y, Z: " + std::string(text));
      }
    }
    return p;
  }

  /// Pauli with letter `p` on `site` and identity elsewhere.
  static PauliString single(std::size_t n, std::size_t site, Pauli1 p) {
    PauliString out(n);
    out.set(site, p);
    return out;
  }

  std::size_t size() const { return x_.size(); }
  const BitString& x() const { return x_; }
  const BitString& z() const { return z_; }
  BitString& x() { return x_; }
  BitString& z() { return z_; }

  Pauli1 get(std::size_t i) const {
    return static_cast<Pauli1>(static_cast<int>(x_.get(i)) | (static_cast<int>(z_.get(i)) << 1));
  }
  void set(std::size_t i, Pauli1 p) {
    const int v = static_cast<int>(p);
    x_.set(i, v & 1);
    z_.set(i, (v >> 1) & 1);
  }

  std::size_t weight() const { return (x_ | z_).popcount(); }
  bool is_identity() const { return !x_.any() && !z_.any(); }
  /// Number of Y sites.
  std::size_t num_y() const { return (x_ & z_).popcount(); }

  /// True when the two operators commute (symplectic product zero).
  bool commutes(const PauliString& o) const { return x_.dot(o.z_) == z_.dot(o.x_); }

  std::string to_string() const {
    std::string s(size(), 'I');
    for (std::size_t i = 0; i < size(); ++i) s[i] = pauli_char(get(i));
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  BitString x_;
  BitString z_;
};

inline std::size_t pauli_weight(const PauliString& p) { return p.weight(); }

/// q_i = 1 iff site i is not the identity.
inline BitString signature(const PauliString& p) { return p.x() | p.z(); }

/// Pauli string times i^phase; phase counts quarter turns relative to the
/// I/X/Y/Z letters (0:+1, 1:+i, 2:-1, 3:-i).
struct SignedPauli {
  PauliString pauli;
  std::uint8_t phase = 0;

  SignedPauli() = default;
  explicit SignedPauli(PauliString p, int ph = 0)
      : pauli(std::move(p)), phase(static_cast<std::uint8_t>(((ph % 4) + 4) % 4)) {}

  /// Accepts an optional prefix "+", "-", "i", "+i", "-i" before the letters.
  static SignedPauli parse(std::string_view text) {
    int ph = 0;
    if (text.starts_with("-i")) {
      ph = 3;
      text.remove_prefix(2);
    } else if (text.starts_with("+i")) {
      ph = 1;
      text.remove_prefix(2);
    } else if (text.starts_with("i")) {
      ph = 1;
      text.remove_prefix(1);
    } else if (text.starts_with("-")) {
      ph = 2;
      text.remove_prefix(1);
    } else if (text.starts_with("+")) {
      text.remove_prefix(1);
    }
    return SignedPauli(PauliString::parse(text), ph);
  }

  std::size_t size() const { return pauli.size(); }
  bool is_hermitian() const { return (phase & 1) == 0; }
  /// +1 or -1 for Hermitian operators.
  int sign() const { return phase == 0 ? 1 : -1; }

  /// Phase of the same operator written as i^r X^x Z^z.
  int xz_phase() const { return static_cast<int>((phase + pauli.num_y()) & 3); }
  static SignedPauli from_xz_phase(PauliString p, int r) {
    const int y = static_cast<int>(p.num_y() & 3);
    return SignedPauli(std::move(p), r - y);
  }

  std::string to_string() const {
    constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    return std::string(kPrefix[phase]) + pauli.to_string();
  }

  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

/// Operator product a * b with exact phase.
inline SignedPauli operator*(const SignedPauli& a, const SignedPauli& b) {
  require_same_n(a.size(), b.size(), "Pauli product");
  // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{z1.x2} X^{x1+x2} Z^{z1+z2}
  int r = a.xz_phase() + b.xz_phase() + (a.pauli.z().dot(b.pauli.x()) ? 2 : 0);
  PauliString p(a.pauli.x() ^ b.pauli.x(), a.pauli.z() ^ b.pauli.z());
  return SignedPauli::from_xz_phase(std::move(p), r);
}

}  // namespace dipe
