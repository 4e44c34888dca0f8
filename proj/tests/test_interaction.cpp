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
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "wgqed/basis.hpp"
#include "wgqed/interaction.hpp"
#include "wgqed/linalg.hpp"

using namespace wgqed;

namespace {

ChainConfig chain(int n, double phi_over_pi) {
  ChainConfig c;
  c.n_qubits = n;
  c.k1d_d = phi_over_pi * kPi;
  return c;
}

std::vector<cplx> sorted_eigs(const MatC& h) {
  const auto e = eig(h, false).values;
  std::vector<cplx> v(e.data(), e.data() + e.size());
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() < b.real();
  });
  return v;
}

// Largest distance from any value in a to its nearest neighbour in b.
double spectral_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (cplx x : a) {
    double best = 1e300;
    for (cplx y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("interaction matrix entries") {
  auto m1 = interaction_matrices(chain(1, 0.3));
  CHECK(m1.J(0, 0) == 0.0);
  CHECK(m1.Gamma(0, 0) == doctest::Approx(1.0));

  auto m2 = interaction_matrices(chain(2, 1.0));
  CHECK(std::abs(m2.J(0, 1)) < 1e-15);
  CHECK(m2.Gamma(0, 1) == doctest::Approx(-1.0));

  auto m3 = interaction_matrices(chain(3, 0.2));
  CHECK(m3.Gamma(0, 2) == doctest::Approx(0.309016994374947).epsilon(1e-12));
}

TEST_CASE("Dicke block is the all-ones matrix") {
  const int n = 6;
  const auto mats = interaction_matrices(chain(n, 2.0));
  const MatC h = heff_block(mats, ExcitationBasis(n, 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) CHECK(std::abs(h(a, b) - cplx(0.0, -0.5)) < 1e-12);
  const auto ev = sorted_eigs(h);
  CHECK(std::abs(ev.back() - cplx(0.0, -0.5 * n)) < 1e-10);
  for (int k = 0; k + 1 < n; ++k) CHECK(std::abs(ev[static_cast<std::size_t>(k)]) < 1e-10);
}

TEST_CASE("three-site two-excitation hopping structure") {
  const auto mats = interaction_matrices(chain(3, 0.37));
  const MatC h1 = mats.h();
  const MatC h = heff_block(mats, ExcitationBasis(3, 2));
  // Basis (0,1), (0,2), (1,2).
  CHECK(std::abs(h(0, 1) - h1(1, 2)) < 1e-15);
  CHECK(std::abs(h(0, 2) - h1(0, 2)) < 1e-15);
  CHECK(std::abs(h(1, 2) - h1(0, 1)) < 1e-15);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(h(i, i) - cplx(0.0, -1.0)) < 1e-14);
}

TEST_CASE("single-excitation block reconstructs J and Gamma for random configs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = chain(2 + static_cast<int>(rng() % 20), u(rng));
    const auto mats = interaction_matrices(c);
    const MatC h = heff_block(mats, ExcitationBasis(c.n_qubits, 1));
    CHECK((h.real() - mats.J).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((-2.0 * h.imag() - mats.Gamma).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::SelfAdjointEigenSolver<MatR> es(mats.Gamma);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("serial and parallel block assembly agree") {
  const auto mats = interaction_matrices(chain(14, 0.23));
  for (int m : {1, 2, 3}) {
    ExcitationBasis b(14, m);
    const MatC a = heff_block(mats, b, 0.05, Exec::serial);
    const MatC p = heff_block(mats, b, 0.05, Exec::parallel);
    CHECK((a - p).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("block eigenvalues do not depend on basis order") {
  const auto mats = interaction_matrices(chain(7, 0.41));
  ExcitationBasis b(7, 3);
  const MatC h = heff_block(mats, b);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(h.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  MatC hp(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j)
      hp(i, j) = h(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  const auto a = sorted_eigs(h), c = sorted_eigs(hp);
  CHECK(spectral_distance(a, c) < 1e-10);
  CHECK(spectral_distance(c, a) < 1e-10);
}

TEST_CASE("sector blocks equal the restricted full-space operator") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 2.0 * kPi);
  for (int trial = 0; trial < 6; ++trial) {
    oracle::Chain oc;
    oc.n = 2 + trial % 3;
    oc.phi = u(rng);
    oc.gamma_prime = 0.1 * trial;
    ChainConfig c;
    c.n_qubits = oc.n;
    c.k1d_d = oc.phi;
    const auto full = oracle::heff(oc);
    for (int m = 0; m <= oc.n; ++m) {
      const MatC block = heff_block(interaction_matrices(c), ExcitationBasis(oc.n, m), oc.gamma_prime);
      CHECK((block - oracle::restrict_to_sector(full, oc.n, m)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("N=10 two-excitation eigenvalues match the full 2^N operator") {
  oracle::Chain oc;
  oc.n = 10;
  oc.phi = 0.7 * kPi;
  const MatC reference = oracle::restrict_to_sector(oracle::heff(oc), 10, 2);
  const MatC block = heff_block(interaction_matrices(chain(10, 0.7)), ExcitationBasis(10, 2));
  const Eigen::ComplexEigenSolver<MatC> es(reference);
  std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  const auto ours = sorted_eigs(block);
  REQUIRE(ours.size() == ref.size());
  CHECK(spectral_distance(ours, ref) < 1e-10);
  CHECK(spectral_distance(ref, ours) < 1e-10);
}
