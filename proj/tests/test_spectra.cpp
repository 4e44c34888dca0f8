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

#include <random>

#include "doctest.h"
#include "wgqed/interaction.hpp"
#include "wgqed/linalg.hpp"
#include "wgqed/spectra.hpp"

using namespace wgqed;

namespace {

ChainConfig chain(int n, double phi_over_pi) {
  ChainConfig c;
  c.n_qubits = n;
  c.k1d_d = phi_over_pi * kPi;
  return c;
}

}  // namespace

TEST_CASE("two-qubit spectra") {
  auto m = single_excitation_modes(chain(2, 1.0));
  CHECK(std::abs(m[0].Gamma) < 1e-12);
  CHECK(m[1].Gamma == doctest::Approx(2.0));
  CHECK(std::abs(m[0].J) < 1e-12);
  CHECK(std::abs(m[1].J) < 1e-12);

  m = single_excitation_modes(chain(2, 0.5));
  CHECK(m[0].Gamma == doctest::Approx(1.0));
  CHECK(m[1].Gamma == doctest::Approx(1.0));
  CHECK(m[0].J == doctest::Approx(-0.5));
  CHECK(m[1].J == doctest::Approx(0.5));
}

TEST_CASE("N=10 most subradiant rate matches the frozen dense-solver value") {
  // Independent numpy eigvals of J - i Gamma / 2.
  const auto m = single_excitation_modes(chain(10, 0.7));
  CHECK(m[0].Gamma == doctest::Approx(1.697589888310212e-03).epsilon(1e-9));
}

TEST_CASE("Dicke limit") {
  for (int n : {5, 10, 30}) {
    const auto m = single_excitation_modes(chain(n, 2.0));
    CHECK(m.back().Gamma == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    for (int k = 0; k + 1 < n; ++k) CHECK(m[static_cast<std::size_t>(k)].Gamma <= 1e-10);
  }
}

TEST_CASE("trace identities, residuals and ordering on random configs") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = chain(1 + static_cast<int>(rng() % 40), u(rng));
    const auto modes = single_excitation_modes(c);
    const MatC h = interaction_matrices(c).h();
    double sg = 0.0, sj = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      sg += modes[k].Gamma;
      sj += modes[k].J;
      CHECK(modes[k].xi == static_cast<int>(k) + 1);
      CHECK(eigen_residual(h, modes[k].lambda(), modes[k].c) <= 1e-10);
      if (k > 0) CHECK(modes[k].Gamma >= modes[k - 1].Gamma - 1e-9);
    }
    CHECK(std::abs(sg - c.n_qubits) <= 1e-10 * c.n_qubits);
    CHECK(std::abs(sj) <= 1e-10 * c.n_qubits);
  }
}

TEST_CASE("inverted eigenvectors remain eigenvectors") {
  const auto c = chain(17, 0.31);
  const MatC h = interaction_matrices(c).h();
  for (const auto& m : single_excitation_modes(c)) {
    const VecC r = m.c.reverse();
    CHECK(eigen_residual(h, m.lambda(), r) <= 1e-10);
  }
}

TEST_CASE("dominant wavevector") {
  const int n = 24;
  VecC pw(n);
  const double k = 2.0 * kPi * 3 / n;
  for (int s = 0; s < n; ++s) pw(s) = std::polar(1.0, k * (s + 1));
  CHECK(dominant_wavevector(pw).k_d == doctest::Approx(k).epsilon(1e-12));

  const VecC flat = VecC::Constant(n, 1.0 / std::sqrt(n));
  CHECK(std::abs(dominant_wavevector(flat).k_d) < 1e-12);

  const auto modes = single_excitation_modes(chain(30, 0.2));
  const double res = 2.0 * kPi / (8 * 30);
  CHECK(std::abs(modes.front().k_dom - kPi) <= res);
  CHECK(std::abs(modes.back().k_dom - 0.2 * kPi) <= 2.0 * kPi / 30);
}

TEST_CASE("infinite-chain Bloch shift") {
  const auto c = chain(30, 0.2);
  CHECK(infinite_chain_shift(0.0, c) == doctest::Approx(1.538841768587627).epsilon(1e-12));
  const double at_edge = 0.25 * (1.0 / std::tan((kPi + 0.2 * kPi) / 2) + 1.0 / std::tan((0.2 * kPi - kPi) / 2));
  CHECK(infinite_chain_shift(kPi, c) == doctest::Approx(at_edge).epsilon(1e-12));
  CHECK_THROWS_AS(infinite_chain_shift(0.2 * kPi, c), PoleError);
  CHECK_THROWS_AS(infinite_chain_shift(-0.2 * kPi + 2.0 * kPi, c), PoleError);
}

TEST_CASE("subradiant scaling on a coarse list") {
  const auto s = subradiant_scaling_fit(chain(10, 0.2), {20, 30, 40}, {1, 2});
  REQUIRE(s.slope_vs_n.size() == 2);
  CHECK(s.slope_vs_n[0] < -2.5);
  CHECK(s.slope_vs_n[0] > -3.5);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(single_excitation_modes(chain(0, 0.2)), InvalidArgument);
  CHECK_THROWS_AS(single_excitation_modes(chain(5, -0.2)), InvalidArgument);
}
