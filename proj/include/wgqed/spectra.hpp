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

#include <vector>

#include "wgqed/common.hpp"
#include "wgqed/config.hpp"

namespace wgqed {

struct EigenMode {
  int xi = 0;  // 1 = most subradiant
  VecC c;
  double J = 0.0;
  double Gamma = 0.0;
  double k_dom = 0.0;  // k * d in [0, pi]
  bool k_flat = false;
  double residual = 0.0;
  cplx lambda() const { return {J, -0.5 * Gamma}; }
};

struct WavevectorPeak {
  double k_d = 0.0;  // folded into [0, pi]
  bool flat = false;
};

// Peak of the zero-padded DFT |sum_n c_n e^{-i q n}|^2, folded to |q|.
WavevectorPeak dominant_wavevector(const VecC& c, int pad_factor = 8);

// All N modes, sorted by (Gamma, J, k_dom), gauge-fixed.
std::vector<EigenMode> single_excitation_modes(const ChainConfig& config, int pad_factor = 8);

// Ascending order by Gamma with near-ties (|dGamma| <= tol) ordered by J then k.
void sort_modes(std::vector<EigenMode>& modes, double tol);

struct SubradiantScaling {
  std::vector<int> n_list;
  std::vector<int> xi_list;
  std::vector<std::vector<double>> gamma;  // [xi index][N index]
  std::vector<double> slope_vs_n;          // per xi
  std::vector<double> r2_vs_n;
  int n_for_xi = 0;
  double slope_vs_xi = 0.0;
};

// Fits log Gamma_xi against log N per xi, and log Gamma_xi against log xi at
// n_for_xi (defaults to the largest N in n_list).
SubradiantScaling subradiant_scaling_fit(const ChainConfig& tmpl, const std::vector<int>& n_list,
                                         const std::vector<int>& xi_list, int n_for_xi = 0);

// Infinite-chain Bloch shift (gamma_1d / 4) [cot((k + k1d) d / 2) + cot((k1d - k) d / 2)].
// Throws PoleError at k = +-k1d modulo 2 pi.
double infinite_chain_shift(double k_d, const ChainConfig& config);

}  // namespace wgqed
