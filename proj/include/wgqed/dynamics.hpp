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

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wgqed/common.hpp"
#include "wgqed/config.hpp"
#include "wgqed/interaction.hpp"
#include "wgqed/kernels.hpp"

namespace wgqed {

// Number-diagonal density matrix: blocks[m] acts on ExcitationBasis(n, m).
struct BlockDensityMatrix {
  int n_sites = 0;
  std::vector<MatC> blocks;
  double t = 0.0;

  int m_max() const { return static_cast<int>(blocks.size()) - 1; }
  double population(int m) const;
  double total_trace() const;

  static BlockDensityMatrix vacuum(int n_sites, int m_max);
  // |psi><psi| placed in block m (psi normalized on entry).
  static BlockDensityMatrix pure(int n_sites, int m, const VecC& psi, int m_max = -1);
};

class LindbladGenerator {
 public:
  LindbladGenerator(const InteractionMatrices& mats, double gamma_prime, double gamma_deph,
                    int m_max);
  LindbladGenerator(const ChainConfig& config, int m_max);

  int n_sites() const { return n_sites_; }
  int m_max() const { return static_cast<int>(blocks_.size()) - 1; }
  const MatC& heff(int m) const { return blocks_[static_cast<std::size_t>(m)].h; }
  const std::vector<kernels::LindbladBlock>& blocks() const { return blocks_; }
  const kernels::LindbladRates& rates() const { return rates_; }

  void apply(const BlockDensityMatrix& rho, BlockDensityMatrix& drho,
             Exec exec = Exec::parallel) const;
  void apply(const std::vector<MatC>& rho, std::vector<MatC>& drho,
             Exec exec = Exec::parallel) const;

 private:
  int n_sites_;
  kernels::LindbladRates rates_;
  std::vector<kernels::LindbladBlock> blocks_;
};

// Single-block derivative: the RHS of the master equation on a given state.
BlockDensityMatrix lindblad_rhs(const BlockDensityMatrix& state, const ChainConfig& config);

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  Exec exec = Exec::parallel;
  std::size_t max_steps_between_outputs = 5'000'000;
};

// States at each requested time; t_grid must be nondecreasing from state.t.
std::vector<BlockDensityMatrix> propagate(const BlockDensityMatrix& initial,
                                          const LindbladGenerator& gen,
                                          const std::vector<double>& t_grid,
                                          const EvolveOptions& opts = {});

BlockDensityMatrix propagate_to(const BlockDensityMatrix& initial, const LindbladGenerator& gen,
                                double t_final, const EvolveOptions& opts = {});

struct EvolutionRecord {
  std::vector<double> t;
  std::vector<std::vector<double>> population;  // [m][t]
  // (sum_m m p_m) / m_initial: fraction of the initial excitation remaining.
  std::vector<double> excitation_fraction;
  std::vector<double> target_fidelity;  // empty without a target
  std::vector<double> snapshot_times;
  std::vector<MatR> snapshots;  // N x N pair populations of the m = 2 block
};

struct EvolutionTarget {
  VecC state;
  int m = 2;
};

EvolutionRecord evolve(const BlockDensityMatrix& initial, const LindbladGenerator& gen,
                       const std::vector<double>& t_grid,
                       const std::optional<EvolutionTarget>& target = std::nullopt,
                       const std::vector<double>& snapshot_times = {},
                       const EvolveOptions& opts = {});

// <psi|rho_m|psi> / p_m. Throws when p_m < 1e-12.
double conditional_fidelity(const BlockDensityMatrix& state, const VecC& target, int m);

// Site-pair populations <e_a e_b|rho_2|e_a e_b>, symmetric with zero diagonal.
MatR pair_populations(const BlockDensityMatrix& state);

struct SweepPoint {
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;
  bool attainable = false;
  double max_fidelity = 0.0;
  double t_at_max = 0.0;
  double population_at_max = 0.0;
};

// For each (gamma_prime, gamma_deph), the maximum over t_grid of the target
// fidelity subject to p_m(t) >= p_min.
std::vector<SweepPoint> imperfection_sweep(
    const ChainConfig& base, const std::vector<double>& gamma_primes,
    const std::vector<double>& gamma_dephs,
    const std::function<BlockDensityMatrix(double, double)>& initial,
    const EvolutionTarget& target, const std::vector<double>& t_grid, double p_min = 0.2);

}  // namespace wgqed
