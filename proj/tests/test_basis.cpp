// Copyright 2025 The wgqed Authors
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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "wgqed/basis.hpp"
#include "wgqed/interaction.hpp"

using namespace wgqed;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(60, 2) == 1770);
  CHECK(binomial(48, 3) == 17296);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(7, 0) == 1);
}

TEST_CASE("basis is lexicographic and rank inverts unrank") {
  for (int n : {1, 4, 7, 12})
    for (int m = 0; m <= std::min(n, 4); ++m) {
      ExcitationBasis b(n, m);
      REQUIRE(b.size() == binomial(n, m));
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto s = b.state(i);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        CHECK(b.rank(s) == i);
        CHECK(b.unrank(i) == std::vector<int>(s.begin(), s.end()));
        if (i > 0) {
          const auto p = b.state(i - 1);
          CHECK(std::lexicographical_compare(p.begin(), p.end(), s.begin(), s.end()));
        }
      }
    }
}

TEST_CASE("mirror is an involution matching site inversion") {
  ExcitationBasis b(9, 3);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::size_t j = b.mirror(i);
    CHECK(b.mirror(j) == i);
    auto s = b.unrank(i);
    std::vector<int> t;
    for (int x : s) t.push_back(8 - x);
    std::sort(t.begin(), t.end());
    CHECK(b.rank(t) == j);
  }
}

TEST_CASE("single-site edits agree with full ranking") {
  std::mt19937_64 rng(7);
  ExcitationBasis b(11, 3), lower(11, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t i = rng() % b.size();
    const auto s = b.unrank(i);
    const int remove = s[rng() % 3];
    std::vector<int> t;
    for (int x : s)
      if (x != remove) t.push_back(x);
    CHECK(rank_remove(lower, s, remove) == lower.rank(t));
    int add = static_cast<int>(rng() % 11);
    if (std::find(s.begin(), s.end(), add) != s.end()) continue;
    t.push_back(add);
    std::sort(t.begin(), t.end());
    CHECK(rank_replace(b, s, remove, add) == b.rank(t));
  }
}

TEST_CASE("spin-wave Fock states") {
  ChainConfig c;
  c.n_qubits = 10;
  c.k1d_d = 0.7 * kPi;
  const VecC k0 = fock_state(c, 0.0, 2);
  REQUIRE(k0.size() == 45);
  CHECK(std::abs(k0.norm() - 1.0) < 1e-12);
  for (Eigen::Index i = 0; i < k0.size(); ++i) CHECK(std::abs(k0(i) - 1.0 / std::sqrt(45.0)) < 1e-14);

  c.n_qubits = 4;
  const VecC kpi = fock_state(c, kPi, 1);
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(kpi(i) / kpi(0) - sign) < 1e-12);
    CHECK(std::abs(std::abs(kpi(i)) - 0.5) < 1e-12);
  }
}
