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

#include <string>
#include <vector>

#include "wgqed/common.hpp"
#include "wgqed/config.hpp"
#include "wgqed/dynamics.hpp"

namespace wgqed {

enum class DetectorSide { left, right };

std::string to_string(DetectorSide side);
DetectorSide detector_side_from_string(const std::string& s);

// Emitted-field lowering operator sum_n beta_n sigma_ge^n toward one detector,
// with unit-modulus propagation phases beta_n. Units drop the (gamma_1d / 2)
// field prefactor ("operator-normalized units").
class CollectiveLoweringOp {
 public:
  CollectiveLoweringOp(const ChainConfig& config, DetectorSide side, int m_max);

  DetectorSide side() const { return side_; }
  const VecC& beta() const { return beta_; }
  int m_max() const { return static_cast<int>(blocks_.size()); }
  // Matrix from block m to block m - 1, m >= 1.
  const MatC& block(int m) const { return blocks_[static_cast<std::size_t>(m - 1)]; }

  VecC apply(const VecC& psi, int m) const;
  // O rho O^dagger, blocks shifted down by one; block m_max becomes zero.
  BlockDensityMatrix conditional(const BlockDensityMatrix& rho) const;
  // trace(O^dagger O rho).
  double intensity(const BlockDensityMatrix& rho) const;

 private:
  DetectorSide side_;
  VecC beta_;
  std::vector<MatC> blocks_;
};

double intensity(const BlockDensityMatrix& state, const ChainConfig& config, DetectorSide side);

struct ConditionalState {
  VecC psi_c;  // single-excitation, unit norm
  cplx alpha1;
  cplx alpha2;
  double epsilon = 0.0;  // weight outside span{psi_1, psi_2}
};

// State left by detecting one photon from a pure two-excitation input.
ConditionalState conditional_state(const ChainConfig& config, const VecC& psi2,
                                   DetectorSide side = DetectorSide::left);

struct CorrelationRecord {
  DetectorSide side = DetectorSide::left;
  std::vector<double> t;
  std::vector<double> tau;
  MatR t2;  // rows t, columns tau; NaN where the denominator vanishes
  std::vector<double> intensity;
  std::vector<std::vector<double>> maxima;  // per t row
};

// Regression-procedure T2(t, tau) on the given grids (tau grid starts at 0).
CorrelationRecord t2_surface(const BlockDensityMatrix& initial, const ChainConfig& config,
                             const std::vector<double>& t_grid, const std::vector<double>& tau_grid,
                             DetectorSide side = DetectorSide::left, const EvolveOptions& opts = {});

// Interior strict-left local maxima of a sampled curve (plateaus report their first point).
std::vector<double> t2_maxima(const std::vector<double>& tau, const std::vector<double>& values);

// n pi / delta_j for the given odd n.
std::vector<double> predicted_t2_maxima(double delta_j, const std::vector<int>& n_odd);

// Grid spanning `periods` of 2 pi / delta_j with `points_per_period` steps each.
std::vector<double> default_tau_grid(double delta_j, int periods = 4, int points_per_period = 50);

struct EpsilonScaling {
  std::vector<int> n_list;
  std::vector<double> epsilon;
  double slope = 0.0;
};

// epsilon of the most subradiant two-excitation eigenstate per N.
EpsilonScaling epsilon_scaling(const ChainConfig& tmpl, const std::vector<int>& n_list,
                               DetectorSide side = DetectorSide::left);

}  // namespace wgqed
