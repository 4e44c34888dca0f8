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

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracle.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/spectra.hpp"
#include "wgqed/multiexc.hpp"

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

std::vector<double> grid(double t_max, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (n - 1);
  return t;
}

double block_diff(const BlockDensityMatrix& a, const BlockDensityMatrix& b) {
  double d = 0.0;
  for (std::size_t m = 0; m < a.blocks.size(); ++m)
    d = std::max(d, (a.blocks[m] - b.blocks[m]).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

TEST_CASE("single qubit decays at 1 + gamma'") {
  const double gp = 0.3;
  const auto c = chain(1, 0.5, gp);
  const LindbladGenerator gen(c, 1);
  const auto rec = evolve(BlockDensityMatrix::pure(1, 1, VecC::Ones(1)), gen, grid(3.0, 31));
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    CHECK(rec.population[1][i] == doctest::Approx(std::exp(-(1.0 + gp) * rec.t[i])).epsilon(1e-6));
    CHECK(rec.population[0][i] + rec.population[1][i] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pure dephasing keeps populations and damps coherences") {
  ChainConfig c = chain(3, 0.5, 0.0, 0.2);
  c.gamma_1d = 0.0;
  const LindbladGenerator gen(c, 1);
  const VecC psi = VecC::Constant(3, 1.0 / std::sqrt(3.0));
  const auto s = propagate_to(BlockDensityMatrix::pure(3, 1, psi), gen, 2.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(s.blocks[1](i, i).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(s.blocks[1](i, j)) == doctest::Approx(std::exp(-0.4 * 2.0) / 3.0).epsilon(1e-6));
  }
}

TEST_CASE("block right-hand side equals the full Liouvillian") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    oracle::Chain oc{n, 0.37 * kPi, 0.13, 0.07};
    const auto cfg = chain(n, 0.37, 0.13, 0.07);
    const auto rho = oracle::random_block_state(n, n, rng);
    const auto lib = lindblad_rhs(rho, cfg);
    const auto ref = oracle::to_blocks(
        oracle::unvec(oracle::liouvillian(oc) * oracle::vec(oracle::to_full(rho)), 1 << n), n, n);
    CHECK(block_diff(lib, ref) < 1e-10);
  }
}

TEST_CASE("serial and parallel right-hand sides agree") {
  std::mt19937_64 rng(5);
  const auto cfg = chain(7, 0.21, 0.01, 0.02);
  const LindbladGenerator gen(cfg, 3);
  const auto rho = oracle::random_block_state(7, 3, rng);
  BlockDensityMatrix a = rho, b = rho;
  gen.apply(rho, a, Exec::serial);
  gen.apply(rho, b, Exec::parallel);
  CHECK(block_diff(a, b) < 1e-13);
}

TEST_CASE("propagation matches the matrix exponential for N <= 4") {
  std::mt19937_64 rng(3);
  EvolveOptions tight;
  tight.rtol = 1e-11;
  tight.atol = 1e-14;
  for (int n = 2; n <= 4; ++n) {
    oracle::Chain oc{n, 0.7 * kPi, 0.05, 0.03};
    const auto cfg = chain(n, 0.7, 0.05, 0.03);
    const auto rho = oracle::random_block_state(n, n, rng);
    const LindbladGenerator gen(cfg, n);
    const auto lib = propagate_to(rho, gen, 1.7, tight);
    const auto ref = oracle::to_blocks(oracle::propagate(oc, oracle::to_full(rho), 1.7), n, n);
    CHECK(block_diff(lib, ref) < 1e-8);
  }
}

TEST_CASE("symmetric state in the Dicke limit decays at N") {
  const auto c = chain(4, 2.0);
  const LindbladGenerator gen(c, 1);
  const auto s = propagate_to(BlockDensityMatrix::pure(4, 1, VecC::Ones(4)), gen, 0.5);
  CHECK(s.population(1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
}

TEST_CASE("single-excitation eigenmodes decay exponentially") {
  const auto c = chain(8, 0.3);
  const auto modes = single_excitation_modes(c);
  const LindbladGenerator gen(c, 1);
  for (std::size_t k : {std::size_t{0}, std::size_t{3}, modes.size() - 1}) {
    const auto rec = evolve(BlockDensityMatrix::pure(8, 1, modes[k].c), gen, grid(2.0, 11));
    for (std::size_t i = 0; i < rec.t.size(); ++i)
      CHECK(std::abs(rec.population[1][i] - std::exp(-modes[k].Gamma * rec.t[i])) <= 1e-6);
  }
}

TEST_CASE("two-excitation eigenstate population decays exponentially") {
  const auto c = chain(8, 0.7);
  const auto modes = multi_excitation_modes(c, 2);
  const LindbladGenerator gen(c, 2);
  for (std::size_t k : {std::size_t{0}, std::size_t{5}}) {
    const double g = modes[k].Gamma;
    const auto rec = evolve(BlockDensityMatrix::pure(8, 2, modes[k].c), gen, grid(5.0 / g, 11));
    for (std::size_t i = 0; i < rec.t.size(); ++i)
      CHECK(std::abs(rec.population[2][i] - std::exp(-g * rec.t[i])) <= 1e-6);
  }
}

TEST_CASE("exact two-excitation eigenstate keeps unit fidelity") {
  const auto c = chain(8, 0.7, 0.02);
  const auto modes = multi_excitation_modes(c.with_n(8), 2);
  const LindbladGenerator gen(c, 2);
  const EvolutionTarget target{modes.front().c, 2};
  const auto rec = evolve(BlockDensityMatrix::pure(8, 2, target.state), gen, grid(5.0, 6), target);
  for (double f : rec.target_fidelity) CHECK(f == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("trace, Hermiticity, positivity and monotone excitation number") {
  std::mt19937_64 rng(99);
  const auto cfg = chain(5, 0.43, 0.02, 0.05);
  const auto rho = oracle::random_block_state(5, 2, rng);
  const LindbladGenerator gen(cfg, 2);
  const auto states = propagate(rho, gen, grid(10.0, 21));
  double prev = 1e9;
  for (const auto& s : states) {
    CHECK(s.total_trace() == doctest::Approx(1.0).epsilon(1e-8));
    double nexc = 0.0;
    for (int m = 0; m <= s.m_max(); ++m) {
      const auto& b = s.blocks[static_cast<std::size_t>(m)];
      CHECK((b - b.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
      const Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (b + b.adjoint()), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
      nexc += m * s.population(m);
    }
    CHECK(nexc <= prev + 1e-10);
    prev = nexc;
  }
}

TEST_CASE("conditional fidelity is independent of gamma'") {
  const auto c = chain(8, 0.7);
  const VecC k0 = fock_state(c, 0.0, 2);
  const auto target = EvolutionTarget{multi_excitation_modes(c, 2).front().c, 2};
  const auto t = grid(10.0, 11);
  const auto a = evolve(BlockDensityMatrix::pure(8, 2, k0), LindbladGenerator(c, 2), t, target);
  ChainConfig lossy = c;
  lossy.gamma_prime = 0.05;
  const auto b = evolve(BlockDensityMatrix::pure(8, 2, k0), LindbladGenerator(lossy, 2), t, target);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(a.target_fidelity[i] == doctest::Approx(b.target_fidelity[i]).epsilon(1e-6));
    CHECK(b.population[2][i] <= a.population[2][i] + 1e-10);
  }
}

TEST_CASE("pair populations are symmetric and sum to the block population") {
  const auto c = chain(6, 0.7);
  const auto s = propagate_to(BlockDensityMatrix::pure(6, 2, fock_state(c, 0.0, 2)), LindbladGenerator(c, 2), 1.0);
  const MatR p = pair_populations(s);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(0.5 * p.sum() == doctest::Approx(s.population(2)).epsilon(1e-12));
}

TEST_CASE("imperfection sweep flags unattainable points") {
  const auto c = chain(6, 0.7);
  const auto target = EvolutionTarget{multi_excitation_modes(c, 2).front().c, 2};
  const VecC k0 = fock_state(c, 0.0, 2);
  auto init = [&](double, double) { return BlockDensityMatrix::pure(6, 2, k0); };
  std::vector<double> t = grid(10.0, 11);
  t.erase(t.begin());
  const auto pts = imperfection_sweep(c, {0.0, 5.0}, {0.0}, init, target, t, 0.2);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].attainable);
  CHECK(pts[0].max_fidelity <= 1.0 + 1e-12);
  CHECK(pts[0].population_at_max >= 0.2);
  CHECK_FALSE(pts[1].attainable);
}
