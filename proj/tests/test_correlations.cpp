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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "wgqed/correlations.hpp"
#include "wgqed/interaction.hpp"

using namespace wgqed;

namespace {

ChainConfig chain(int n, double phi_over_pi, double gp = 0.0, double gd = 0.0) {
  ChainConfig c;
  c.n_qubits = n;
  c.k1d_d = phi_over_pi * kPi;
  c.gamma_prime = gp;
  c.gamma_deph = gd;
  return c;
}

}  // namespace

TEST_CASE("detector side strings") {
  CHECK(detector_side_from_string("left") == DetectorSide::left);
  CHECK(to_string(DetectorSide::right) == "right");
  CHECK_THROWS_AS(detector_side_from_string("up"), InvalidArgument);
}

TEST_CASE("lowering operator phases and vacuum") {
  const CollectiveLoweringOp op(chain(7, 0.3), DetectorSide::right, 3);
  CHECK((op.beta().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK(std::abs(op.beta()(6) - 1.0) < 1e-15);
  CHECK(op.intensity(BlockDensityMatrix::vacuum(7, 3)) == 0.0);
}

TEST_CASE("intensity examples") {
  const auto one = BlockDensityMatrix::pure(1, 1, VecC::Ones(1));
  CHECK(intensity(one, chain(1, 0.5), DetectorSide::left) == doctest::Approx(1.0));
  CHECK(intensity(one, chain(1, 0.5), DetectorSide::right) == doctest::Approx(1.0));
  const auto sym = BlockDensityMatrix::pure(2, 1, VecC::Ones(2));
  CHECK(std::abs(intensity(sym, chain(2, 1.0), DetectorSide::left)) < 1e-15);
  VecC anti(2);
  anti << 1.0, -1.0;
  CHECK(intensity(BlockDensityMatrix::pure(2, 1, anti), chain(2, 1.0), DetectorSide::left) ==
        doctest::Approx(2.0));
}

TEST_CASE("conditional state of two excited qubits") {
  const auto c = chain(2, 0.3);
  const auto cs = conditional_state(c, VecC::Ones(1), DetectorSide::left);
  const CollectiveLoweringOp op(c, DetectorSide::left, 2);
  VecC expect(2);
  expect << op.beta()(1), op.beta()(0);
  expect /= std::sqrt(2.0);
  CHECK((cs.psi_c - expect).norm() < 1e-12);
  CHECK(cs.epsilon < 1e-12);
}

TEST_CASE("dark two-excitation input is rejected") {
  const auto c = chain(4, 1.0);
  const CollectiveLoweringOp op(c, DetectorSide::left, 2);
  // Null vector of the 3x3 lowering block.
  const Eigen::FullPivLU<MatC> lu(op.block(2));
  REQUIRE(lu.dimensionOfKernel() > 0);
  const VecC dark = lu.kernel().col(0);
  CHECK_THROWS_AS(conditional_state(c, dark), NumericalError);
}

TEST_CASE("single-excitation states give vanishing correlations") {
  const auto c = chain(5, 0.3);
  const auto rho = BlockDensityMatrix::pure(5, 1, fock_state(c, 0.0, 1));
  const auto rec = t2_surface(rho, c, {0.0, 1.0}, {0.0, 0.5, 1.0});
  for (Eigen::Index i = 0; i < rec.t2.size(); ++i) CHECK(std::abs(rec.t2(i)) < 1e-14);
}

TEST_CASE("synthetic maxima") {
  const double delta = 0.37;
  const auto tau = default_tau_grid(delta, 4, 50);
  std::vector<double> y;
  for (double x : tau) y.push_back(1.0 - std::cos(delta * x));
  const auto got = t2_maxima(tau, y);
  const auto want = predicted_t2_maxima(delta, {1, 3, 5, 7});
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK_THROWS_AS(predicted_t2_maxima(delta, {2}), InvalidArgument);
  CHECK_THROWS_AS(default_tau_grid(0.0), InvalidArgument);
}

TEST_CASE("surface is nonnegative and side-symmetric for inversion-symmetric states") {
  const auto c = chain(6, 0.7, 0.001, 0.001);
  const auto rho = BlockDensityMatrix::pure(6, 2, fock_state(c, 0.0, 2));
  const std::vector<double> t{0.0, 2.0, 5.0}, tau{0.0, 1.0, 3.0, 8.0};
  const auto l = t2_surface(rho, c, t, tau, DetectorSide::left);
  const auto r = t2_surface(rho, c, t, tau, DetectorSide::right);
  CHECK(l.t2.minCoeff() >= -1e-10);
  CHECK((l.t2 - r.t2).cwiseAbs().maxCoeff() <= 1e-8);
  for (double i : l.intensity) CHECK(i >= 0.0);
}

TEST_CASE("regression result matches the full two-jump computation") {
  std::mt19937_64 rng(17);
  EvolveOptions tight;
  tight.rtol = 1e-11;
  tight.atol = 1e-14;
  for (int n = 2; n <= 4; ++n) {
    const auto c = chain(n, 0.63, 0.02, 0.03);
    const oracle::Chain oc{n, 0.63 * kPi, 0.02, 0.03};
    const auto rho = oracle::random_block_state(n, 2, rng);
    const std::vector<double> t{0.0, 0.7}, tau{0.0, 0.4, 1.3};
    for (auto side : {DetectorSide::left, DetectorSide::right}) {
      const auto rec = t2_surface(rho, c, t, tau, side, tight);
      const oracle::Mat full = oracle::to_full(rho);
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < tau.size(); ++j) {
          const double ref = oracle::t2(oc, full, t[i], tau[j], side == DetectorSide::left);
          CHECK(std::abs(rec.t2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - ref) <=
                1e-6 * std::max(1.0, std::abs(ref)));
        }
    }
  }
}

TEST_CASE("tau grid must start at zero") {
  const auto c = chain(3, 0.5);
  CHECK_THROWS_AS(t2_surface(BlockDensityMatrix::vacuum(3, 2), c, {0.0}, {0.1, 0.2}), InvalidArgument);
}

TEST_CASE("epsilon decreases with N") {
  const auto s = epsilon_scaling(chain(10, 0.2), {10, 14, 20, 26});
  for (std::size_t i = 1; i < s.epsilon.size(); ++i) CHECK(s.epsilon[i] < s.epsilon[i - 1]);
  CHECK(s.epsilon[0] == doctest::Approx(0.02).epsilon(1e-2));
  CHECK(s.slope < 0.0);
}
