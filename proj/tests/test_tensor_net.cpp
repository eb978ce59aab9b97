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


#include <cmath>

#include "catch_amalgamated.hpp"
#include "dipe/tensor_net.hpp"

namespace dipe {
namespace test_tensor_net {

using Catch::Approx;

static PauliString code_pauli(std::size_t n, std::uint64_t code) {
  return PauliString(BitString::from_word(n, code), BitString::from_word(n, code >> n));
}

TEST_CASE("brick transfer fixes the active simplex") {
  const std::array<double, 4> v = {0.0, 0.2, 0.2, 0.6};
  for (int r = 0; r < 4; ++r) {
    double acc = 0;
    for (int s = 0; s < 4; ++s) acc += BrickTransfer::B[r][s] * v[s];
    CHECK(acc == Approx(v[r]));
  }
  for (int s = 0; s < 4; ++s) {
    double col = 0;
    for (int r = 0; r < 4; ++r) col += BrickTransfer::B[r][s];
    CHECK(col == Approx(1.0));
  }
  const auto g = block_final_factor();
  CHECK(g[0] == Approx(19.0));
  CHECK(g[1] == Approx(5.0));
  CHECK(g[2] == Approx(5.0));
  CHECK(g[3] == Approx(5.0 / 3.0));
}

TEST_CASE("two-qubit worked example") {
  const auto p = PauliString::parse("ZI");
  const auto dist = propagate_signature(p, 1);
  CHECK(dist.prob[0] == 0.0);
  CHECK(dist.prob[1] == Approx(0.2));
  CHECK(dist.prob[2] == Approx(0.2));
  CHECK(dist.prob[3] == Approx(0.6));
  CHECK(h_oracle(BitString::parse("00"), p, 1) == Approx(0.2));
  CHECK(h_oracle(BitString::parse("01"), p, 1) == Approx(-1.0 / 15));
  CHECK(h_oracle(BitString::parse("10"), p, 1) == Approx(-1.0 / 15));
  CHECK(h_oracle(BitString::parse("11"), p, 1) == Approx(-1.0 / 15));
  CHECK(upsilon_oracle(p, 1) == Approx(3.0));
  CHECK(upsilon_mps(p, 1) == Approx(3.0));
  const auto h = h_all(p, 1);
  for (std::uint64_t a = 0; a < 4; ++a) CHECK(h[a] == Approx(h_oracle(BitString::from_word(2, a), p, 1)));
}

TEST_CASE("identity gives 19 per block") {
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    for (std::size_t d : {1u, 2u, 5u}) {
      CHECK(upsilon_mps(PauliString(n), d) == Approx(std::pow(19.0, n / 2.0)));
    }
  }
}

TEST_CASE("contraction matches the signature sum") {
  for (std::size_t n : {2u, 4u, 6u}) {
    for (std::size_t d = 1; d <= 5; ++d) {
      double worst = 0;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
        const auto p = code_pauli(n, code);
        const double a = upsilon_oracle(p, d), b = upsilon_mps(p, d);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
      INFO("n=" << n << " d=" << d);
      CHECK(worst < 1e-10);
    }
  }
  // a larger ring against the dense sum
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto p = code_pauli(10, rng.next() & BitString::low_mask(20));
    const std::size_t d = 1 + rng.below(6);
    CHECK(upsilon_mps(p, d) == Approx(upsilon_oracle(p, d)).epsilon(1e-10));
  }
}

TEST_CASE("h is largest at the zero string and depends only on the class") {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 * (1 + rng.below(4));
    const std::size_t d = 1 + rng.below(5);
    const auto p = code_pauli(n, rng.next() & BitString::low_mask(2 * n));
    const auto h = h_all(p, d);
    for (double v : h) CHECK(h[0] >= std::abs(v) - 1e-12);
    const auto rep = class_representative(block_signature(p));
    CHECK(upsilon_mps(p, d) == Approx(upsilon_mps(rep, d)));
    CHECK(upsilon_oracle(p, d) == Approx(upsilon_oracle(rep, d)));
  }
}

TEST_CASE("h agrees with sampled brickwork circuits") {
  const std::size_t n = 4, d = 2;
  const auto spec = EnsembleSpec::brickwork(d);
  const std::vector<std::string> paulis = {"ZIII", "XYII", "IZXI", "ZIIX"};
  Rng rng(31);
  const int samples = 20000;
  for (const auto& text : paulis) {
    const SignedPauli p(PauliString::parse(text));
    std::vector<double> acc(16, 0.0);
    for (int s = 0; s < samples; ++s) {
      const auto q = conjugate(tableau_from_circuit(sample_unitary(spec, n, rng)), p);
      if (q.pauli.x().any()) continue;
      const std::uint64_t z = q.pauli.z().to_word();
      for (std::uint64_t a = 0; a < 16; ++a) acc[a] += (std::popcount(z & a) & 1) ? -1.0 : 1.0;
    }
    const auto h = h_all(p.pauli, d);
    for (std::uint64_t a = 0; a < 16; ++a) {
      INFO(text << " a=" << a);
      CHECK(std::abs(acc[a] / samples - h[a]) < 0.02);
    }
  }
}

TEST_CASE("large chains contract quickly and converge") {
  const auto p = class_representative(BitString::parse("10110010100101101001011010010110"));
  const double v = upsilon_mps(p, 8);
  CHECK(std::isfinite(v));
  CHECK(v > 0);
  for (std::uint64_t x = 1; x < 8; ++x) {
    CHECK(std::abs(upsilon_mps(class_representative(BitString::from_word(3, x)), 9) - 64.0) < 6.4);
  }
  CHECK_THROWS_AS(upsilon_mps(PauliString(5), 2), ConfigError);
  CHECK_THROWS_AS(upsilon_mps(PauliString(4), 0), ConfigError);
  CHECK_THROWS_AS(upsilon_mps(PauliString(4), 20), ResourceCapError);
  CHECK_THROWS_AS(propagate_signature(PauliString(16), 1), ResourceCapError);
}

}  // namespace test_tensor_net
}  // namespace dipe
