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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dipe/errors.hpp"

namespace dipe {

/// Fixed-length string of bits packed into 64-bit words.
///
/// Qubit 1 is bit index 0 and is printed as the leftmost character.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  /// Low `n` bits of `value`; requires n <= 64.
  static BitString from_word(std::size_t n, std::uint64_t value) {
    if (n > 64) throw std::invalid_argument("BitString::from_word needs n <= 64");
    BitString b(n);
    if (n > 0) b.words_[0] = value & low_mask(n);
    return b;
  }

  static BitString parse(std::string_view text) {
    BitString b(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        b.set(i, true);
      } else if (text[i] != '0') {
        throw ConfigError("bit string may contain only '0' and '1': " + std::string(text));
      }
    }
    return b;
  }

  std::size_t size() const { return n_; }
  std::size_t num_words() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::uint64_t word(std::size_t w) const { return words_[w]; }
  std::uint64_t& word(std::size_t w) { return words_[w]; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Value as a single word; requires n <= 64.
  std::uint64_t to_word() const {
    if (n_ > 64) throw std::invalid_argument("BitString::to_word needs n <= 64");
    return n_ == 0 ? 0 : words_[0];
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }

  BitString& operator^=(const BitString& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  BitString& operator&=(const BitString& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  BitString& operator|=(const BitString& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend BitString operator&(BitString a, const BitString& b) { return a &= b; }
  friend BitString operator|(BitString a, const BitString& b) { return a |= b; }

  /// Parity of the bitwise AND.
  bool dot(const BitString& o) const {
    check_same(o);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  static constexpr std::uint64_t low_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

 private:
  void check_same(const BitString& o) const {
    if (o.n_ != n_) throw DimensionMismatch("bit strings of different length");
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
  return (a ^ b).popcount();
}

}  // namespace dipe
