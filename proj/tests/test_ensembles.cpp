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

#include <map>

#include "catch_amalgamated.hpp"
#include "dense.hpp"
#include "dipe/ensembles.hpp"
#include "stats.hpp"

namespace dipe {
namespace test_ensembles {

using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

TEST_CASE("ensemble grammar") {
  CHECK(parse_ensemble("local-clifford") == EnsembleSpec::local());
  CHECK(parse_ensemble("global-clifford") == EnsembleSpec::global());
  CHECK(parse_ensemble("brickwork:3") == EnsembleSpec::brickwork(3));
  CHECK(parse_ensemble("brickwork:0") == EnsembleSpec::local());
  CHECK(parse_ensemble("brickwork:3").name() == "brickwork:3");
  CHECK_THROWS_AS(parse_ensemble("brickwork:"), ConfigError);
  CHECK_THROWS_AS(parse_ensemble("haar"), ConfigError);
  Rng rng(1);
  CHECK_THROWS_AS(sample_unitary(EnsembleSpec::brickwork(1), 3, rng), ConfigError);
  CHECK_THROWS_AS(sample_unitary(EnsembleSpec::local(), 0, rng), ConfigError);
}

TEST_CASE("brick layout") {
  auto b = brick_layout(4, 2);
  CHECK(b.layers[0] == Pairs{{0, 1}, {2, 3}});
  CHECK(b.layers[1] == Pairs{{1, 2}, {3, 0}});
  CHECK(brick_layout(4, 1).last_layer_pairs() == Pairs{{0, 1}, {2, 3}});
  CHECK(brick_layout(4, 2).last_layer_pairs() == Pairs{{1, 2}, {3, 0}});
  for (std::size_t d = 1; d <= 4; ++d) CHECK(brick_layout(2, d).last_layer_pairs() == Pairs{{0, 1}});
  CHECK_THROWS_AS(brick_layout(5, 1), ConfigError);
  for (std::size_t n : {2, 4, 6, 10}) {
    auto lay = brick_layout(n, 3);
    for (const auto& layer : lay.layers) {
      std::vector<int> seen(n, 0);
      for (auto [a, c] : layer) {
        ++seen[a];
        ++seen[c];
      }
      for (int s : seen) CHECK(s == 1);
    }
  }
}

TEST_CASE("brickwork circuit structure") {
  Rng rng(2);
  auto c = sample_unitary(EnsembleSpec::brickwork(2), 4, rng);
  REQUIRE(c.size() == 4 + 2 + 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c.gates()[i].kind == GateKind::C1);
  CHECK(c.gates()[4].q == std::array<std::uint32_t, 2>{0, 1});
  CHECK(c.gates()[5].q == std::array<std::uint32_t, 2>{2, 3});
  CHECK(c.gates()[6].q == std::array<std::uint32_t, 2>{1, 2});
  CHECK(c.gates()[7].q == std::array<std::uint32_t, 2>{3, 0});
}

TEST_CASE("local Clifford draws are uniform on Cl1") {
  Rng rng(3);
  std::vector<std::uint64_t> counts(24, 0);
  for (int t = 0; t < 100000; ++t) ++counts[sample_unitary(EnsembleSpec::local(), 1, rng).gates()[0].index];
  CHECK(test::chi_square_uniform(counts) < test::chi_square_bound(23));
}

TEST_CASE("global Clifford sampler is uniform at n=1") {
  Rng rng(4);
  std::vector<std::uint64_t> counts(24, 0);
  for (int t = 0; t < 100000; ++t) ++counts[table_index(sample_global_clifford_tableau(1, rng))];
  CHECK(test::chi_square_uniform(counts) < test::chi_square_bound(23));
}

TEST_CASE("global Clifford sampler is uniform at n=2") {
  Rng rng(5);
  std::vector<std::uint64_t> counts(11520, 0);
  for (int t = 0; t < 1000000; ++t) ++counts[table_index(sample_global_clifford_tableau(2, rng))];
  std::size_t empty = 0;
  for (auto c : counts) empty += (c == 0);
  CHECK(empty == 0);
  CHECK(test::chi_square_uniform(counts) < test::chi_square_bound(11519));
}

TEST_CASE("sampled circuits are Clifford and reproducible") {
  for (auto spec : {EnsembleSpec::local(), EnsembleSpec::global(), EnsembleSpec::brickwork(1), EnsembleSpec::brickwork(4)}) {
    for (std::size_t n : {2, 4, 8}) {
      Rng r1(77), r2(77);
      for (int t = 0; t < 10; ++t) {
        auto c1 = sample_unitary(spec, n, r1);
        auto c2 = sample_unitary(spec, n, r2);
        CHECK(c1 == c2);
        CHECK(tableau_from_circuit(c1).is_symplectic());
      }
    }
  }
  Rng rng(9);
  for (std::size_t n : {3, 7, 16}) {
    auto t = sample_global_clifford_tableau(n, rng);
    CHECK(t.is_symplectic());
    CHECK(tableau_from_circuit(synthesize(t)) == t);
  }
}

// Distribution of the signed image U P U^dag, with and without an extra Pauli Q.
TEST_CASE("ensembles are Pauli invariant") {
  const std::size_t n = 2;
  const auto p = SignedPauli::parse("ZX");
  for (auto spec : {EnsembleSpec::local(), EnsembleSpec::global(), EnsembleSpec::brickwork(1)}) {
    Rng rng(31);
    std::map<std::string, std::array<std::uint64_t, 2>> counts;
    const int draws = 30000;
    for (int t = 0; t < draws; ++t) {
      auto u = sample_unitary(spec, n, rng);
      counts[tableau_from_circuit(u).conjugate(p).to_string()][0]++;
      auto qu = sample_unitary(spec, n, rng);
      qu.append(gate1(GateKind::X, 0));
      qu.append(gate1(GateKind::Y, 1));
      counts[tableau_from_circuit(qu).conjugate(p).to_string()][1]++;
    }
    double chi = 0;
    for (const auto& [key, c] : counts) {
      const double tot = static_cast<double>(c[0] + c[1]);
      for (int s = 0; s < 2; ++s) {
        const double e = tot / 2;
        chi += (static_cast<double>(c[s]) - e) * (static_cast<double>(c[s]) - e) / e;
      }
    }
    CHECK(counts.size() == (spec == EnsembleSpec::local() ? 18u : 30u));
    CHECK(chi < test::chi_square_bound(counts.size() - 1));
  }
}

}  // namespace test_ensembles
}  // namespace dipe
