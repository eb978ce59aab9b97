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

#include <numbers>

#include "catch_amalgamated.hpp"
#include "dense.hpp"
#include "dipe/ensembles.hpp"
#include "dipe/states.hpp"
#include "stats.hpp"

namespace dipe {
namespace test_states {

using Catch::Matchers::WithinAbs;

static QuantumState random_stabilizer(std::size_t n, Rng& rng) {
  return make_zero(n).apply(test::random_circuit(n, 6 * n, rng));
}

TEST_CASE("GHZ amplitudes and stabilizers") {
  const double h = std::sqrt(0.5);
  auto g1 = make_ghz(1, Backend::Statevector);
  CHECK_THAT(g1.amplitudes()[0].real(), WithinAbs(h, 1e-12));
  CHECK_THAT(g1.amplitudes()[1].real(), WithinAbs(h, 1e-12));
  auto g3 = make_ghz(3, Backend::Statevector);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK_THAT(std::abs(g3.amplitudes()[i]), WithinAbs((i == 0 || i == 7) ? h : 0.0, 1e-12));
  }
  for (std::size_t n : {1, 2, 5, 40}) {
    auto g = make_ghz(n);
    PauliString xs(n);
    for (std::size_t i = 0; i < n; ++i) xs.set(i, Pauli1::X);
    CHECK(pauli_expectation(g, xs) == 1.0);
  }
  CHECK(pauli_expectation(make_ghz(2), PauliString::parse("ZI")) == 0.0);
  CHECK(pauli_expectation(make_ghz(2, Backend::Statevector), PauliString::parse("ZI")) == Catch::Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(make_ghz(30, Backend::Statevector), ResourceCapError);
}

TEST_CASE("S states") {
  auto s0 = make_s_state(3, 0, 1.234);
  CHECK_THAT(std::abs(s0.amplitudes()[0]), WithinAbs(1.0, 1e-12));
  auto s1 = make_s_state(1, 1, std::numbers::pi / 2);
  CHECK_THAT(s1.amplitudes()[0].real(), WithinAbs(std::sqrt(0.5), 1e-12));
  CHECK_THAT(s1.amplitudes()[1].imag(), WithinAbs(std::sqrt(0.5), 1e-12));
  auto s2 = make_s_state(2, 1, std::numbers::pi / 4);
  CHECK_THAT(pauli_expectation(s2, PauliString::parse("IZ")), WithinAbs(0.0, 1e-12));
  CHECK_THAT(pauli_expectation(s2, PauliString::parse("IX")), WithinAbs(std::cos(std::numbers::pi / 4), 1e-12));
  CHECK_THROWS_AS(make_s_state(2, 3, 0.0), ConfigError);
}

TEST_CASE("Haar states are normalized, seeded and spread out") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = make_haar_random(5, seed);
    double norm = 0;
    for (auto a : s.amplitudes()) norm += std::norm(a);
    CHECK_THAT(norm, WithinAbs(1.0, 1e-10));
  }
  CHECK(make_haar_random(4, 9).amplitudes() == make_haar_random(4, 9).amplitudes());
  CHECK(make_haar_random(4, 9).amplitudes() != make_haar_random(4, 10).amplitudes());
  const std::size_t n = 3, trials = 4000;
  double s = 0, ss = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double v = inner_product(make_haar_random(n, 2 * t), make_haar_random(n, 2 * t + 1));
    s += v;
    ss += v * v;
  }
  const double mean = s / trials;
  const double se = std::sqrt((ss / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 1.0 / 8) < 5 * se);
}

TEST_CASE("inner products of simple pairs") {
  CHECK(inner_product(make_ghz(6), make_ghz(6)) == 1.0);
  CHECK(inner_product(make_zero(1), make_plus(1)) == 0.5);
  CHECK(inner_product(make_zero(1), make_basis_state(BitString::parse("1"))) == 0.0);
  CHECK_THAT(inner_product(make_zero(1, Backend::Statevector), make_plus(1, Backend::Statevector)), WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(inner_product(make_zero(2), make_zero(3)), DimensionMismatch);
}

TEST_CASE("stabilizer algebra agrees with dense vectors") {
  Rng rng(21);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 15; ++t) {
      auto a = random_stabilizer(n, rng);
      auto b = random_stabilizer(n, rng);
      auto da = a.to_statevector(), db = b.to_statevector();
      CHECK_THAT(inner_product(a, b), WithinAbs(inner_product(da, db), 1e-10));
      CHECK_THAT(inner_product(a, a), WithinAbs(1.0, 1e-12));
      for (int k = 0; k < 20; ++k) {
        auto p = test::random_pauli(n, rng);
        CHECK_THAT(pauli_expectation(a, p), WithinAbs(pauli_expectation(da, p), 1e-10));
      }
    }
  }
}

TEST_CASE("backends give identical Born distributions") {
  Rng rng(4);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      auto start = make_ghz(n);
      auto c = test::random_circuit(n, 5 * n, rng);
      auto stab = start.apply(c);
      auto dense = start.to_statevector().apply(c);
      const auto ps = stab.probabilities();
      const auto pd = dense.probabilities();
      double worst = 0, norm = 0;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        worst = std::max(worst, std::abs(ps[i] - pd[i]));
        norm += pd[i];
      }
      CHECK(worst < 1e-10);
      CHECK_THAT(norm, WithinAbs(1.0, 1e-10));
    }
  }
}

TEST_CASE("apply_clifford basics") {
  auto z = make_zero(1, Backend::Statevector);
  CHECK(z.apply(CliffordCircuit(1)).amplitudes() == z.amplitudes());
  CliffordCircuit h(1);
  h.append(gate1(GateKind::H, 0));
  auto plus = z.apply(h);
  CHECK_THAT(inner_product(plus, make_plus(1)), WithinAbs(1.0, 1e-12));
  CHECK(inner_product(make_zero(1).apply(h), make_plus(1)) == 1.0);
  CHECK_THROWS_AS(z.apply(CliffordCircuit(2)), DimensionMismatch);
}

TEST_CASE("Pauli spectrum sums to 2^n times the overlap") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto a = make_haar_random(n, 100 + n);
    auto b = make_haar_random(n, 200 + n);
    double acc = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
      PauliString p(BitString::from_word(n, code), BitString::from_word(n, code >> n));
      acc += pauli_expectation(a, p) * pauli_expectation(b, p);
    }
    CHECK_THAT(acc, WithinAbs(std::ldexp(inner_product(a, b), static_cast<int>(n)), 1e-9));
  }
}

TEST_CASE("measurement sampling") {
  Rng rng(8);
  for (const auto& s : sample_measurements(make_zero(5), 100, rng)) CHECK(!s.any());
  for (const auto& s : sample_measurements(make_zero(5, Backend::Statevector), 100, rng)) CHECK(!s.any());
  SECTION("GHZ halves") {
    for (auto backend : {Backend::Stabilizer, Backend::Statevector}) {
      std::vector<std::uint64_t> counts(2, 0);
      for (auto w : sample_words(make_ghz(6, backend), 10000, rng)) {
        REQUIRE((w == 0 || w == 63));
        ++counts[w == 63];
      }
      CHECK(test::chi_square_uniform(counts) < test::chi_square_bound(1));
    }
  }
  SECTION("plus states are uniform") {
    for (auto backend : {Backend::Stabilizer, Backend::Statevector}) {
      std::vector<std::uint64_t> counts(8, 0);
      for (auto w : sample_words(make_plus(3, backend), 100000, rng)) ++counts[w];
      CHECK(test::chi_square_uniform(counts) < test::chi_square_bound(7));
    }
  }
  SECTION("fixed stream gives identical shots") {
    Rng r1(5), r2(5);
    CHECK(sample_words(make_haar_random(4, 1), 50, r1) == sample_words(make_haar_random(4, 1), 50, r2));
  }
}

TEST_CASE("state grammar") {
  CHECK(parse_state("ghz:4").is_stabilizer());
  CHECK(!parse_state("ghz:4", Backend::Statevector).is_stabilizer());
  CHECK(parse_state("sstate:4:2:0.785398").num_qubits() == 4);
  CHECK(parse_state("haar:3:7").amplitudes() == make_haar_random(3, 7).amplitudes());
  CHECK(inner_product(parse_state("basis:01"), make_basis_state(BitString::parse("01"))) == 1.0);
  CHECK_THROWS_AS(parse_state("ghz"), ConfigError);
  CHECK_THROWS_AS(parse_state("ghz:x"), ConfigError);
  CHECK_THROWS_AS(parse_state("foo:3"), ConfigError);
  CHECK_THROWS_AS(parse_state("haar:3:1", Backend::Stabilizer), ConfigError);
  CHECK_THROWS_AS(parse_state("haar:30:1"), ResourceCapError);
}

TEST_CASE("invalid stabilizer generators are rejected") {
  std::vector<SignedPauli> bad = {SignedPauli::parse("XI"), SignedPauli::parse("ZI")};
  CHECK_THROWS_AS(QuantumState::stabilizer(2, bad), ConfigError);
  std::vector<SignedPauli> dep = {SignedPauli::parse("ZI"), SignedPauli::parse("ZI")};
  CHECK_THROWS_AS(QuantumState::stabilizer(2, dep), ConfigError);
  std::vector<SignedPauli> imag = {SignedPauli::parse("iZI"), SignedPauli::parse("IZ")};
  CHECK_THROWS_AS(QuantumState::stabilizer(2, imag), ConfigError);
}

}  // namespace test_states
}  // namespace dipe
