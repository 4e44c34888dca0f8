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
#include <cmath>

#include "doctest.h"
#include "wgqed/config.hpp"
#include "wgqed/polariton.hpp"
#include "wgqed/spectra.hpp"

using namespace wgqed;

namespace {

std::vector<double> zone_grid(int n) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / (n - 1);
  return k;
}

}  // namespace

TEST_CASE("weak coupling recovers the bare lines") {
  PolaritonConfig p;
  p.g = 1e-9;
  for (const auto& pt : polariton_bands(zone_grid(41), p)) {
    const double wq = p.omega_eg, wp = std::abs(pt.k);
    if (std::abs(wq - wp) < 1e-3) continue;
    CHECK(pt.omega_plus == doctest::Approx(std::max(wq, wp)).epsilon(1e-9));
    CHECK(pt.omega_minus == doctest::Approx(std::min(wq, wp)).epsilon(1e-9));
    CHECK(std::abs(pt.qubit_shift) < 1e-9);
  }
}

TEST_CASE("avoided crossing at the resonant wavevector") {
  PolaritonConfig p;
  const auto pts = polariton_bands({p.omega_eg}, p);
  CHECK(pts[0].omega_plus - pts[0].omega_minus == doctest::Approx(2.0 * pts[0].coupling).epsilon(1e-12));
  CHECK(pts[0].qubit_weight_plus == doctest::Approx(0.5));
  for (const auto& pt : polariton_bands(zone_grid(101), p)) {
    CHECK(pt.omega_plus > pt.omega_minus);
    CHECK(pt.qubit_weight_plus + pt.qubit_weight_minus == doctest::Approx(1.0));
  }
}

TEST_CASE("golden-rule rate from the discretized coupling") {
  PolaritonConfig p;
  p.n_qubits = 100;
  const double len = p.length();
  const double g_single = p.coupling(p.omega_eg) / std::sqrt(len);
  // Two directions, mode density L / (2 pi v) each.
  const double rate = 2.0 * kPi * g_single * g_single * 2.0 * len / (2.0 * kPi);
  CHECK(rate == doctest::Approx(p.gamma_1d()).epsilon(1e-12));
  CHECK(p.coupling(p.omega_f + 1.0) == 0.0);
}

TEST_CASE("qubit-branch shift matches the Bloch shift away from resonance") {
  PolaritonConfig p;
  ChainConfig c;
  c.n_qubits = p.n_qubits;
  c.k1d_d = p.omega_eg;
  c.gamma_1d = p.gamma_1d();
  int compared = 0;
  double worst = 0.0;
  for (const auto& pt : polariton_bands(zone_grid(401), p)) {
    double jk = 0.0;
    try {
      jk = infinite_chain_shift(pt.k, c);
    } catch (const PoleError&) {
      continue;
    }
    if (std::abs(jk) >= 1e-3 * p.omega_eg) continue;
    ++compared;
    worst = std::max(worst, std::abs(pt.qubit_shift - jk) / std::abs(jk));
  }
  REQUIRE(compared > 0);
  CHECK(worst <= 0.01);
}

TEST_CASE("configuration validation") {
  PolaritonConfig p;
  p.g = 0.0;
  CHECK_THROWS_AS(polariton_bands({0.0}, p), InvalidArgument);
  p = PolaritonConfig{};
  p.omega_f = 0.5;
  CHECK_THROWS_AS(polariton_bands({0.0}, p), InvalidArgument);
  p = PolaritonConfig{};
  CHECK_THROWS_AS(polariton_bands({4.0}, p), InvalidArgument);
}
