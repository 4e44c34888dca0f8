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

#include "wgqed/basis.hpp"
#include "wgqed/common.hpp"
#include "wgqed/config.hpp"

namespace wgqed {

// Coherent (J) and dissipative (Gamma) photon-mediated couplings.
struct InteractionMatrices {
  MatR J;
  MatR Gamma;
  int size() const { return static_cast<int>(J.rows()); }
  MatC h() const { return J.cast<cplx>() - 0.5 * kI * Gamma.cast<cplx>(); }
};

InteractionMatrices interaction_matrices(const ChainConfig& config);

// Sites with arbitrary propagation phases k_1D z_n and amplitude scales a_n:
// J_mn = g a_m a_n sin|theta_m - theta_n| / 2, Gamma_mn = g a_m a_n cos|theta_m - theta_n|.
InteractionMatrices interaction_matrices_from_sites(const std::vector<double>& phases,
                                                    const std::vector<double>& amplitudes,
                                                    double gamma_1d);

enum class Exec { serial, parallel };

// Dense H_eff restricted to one excitation sector. gamma_prime adds the
// local broadening -i gamma_prime m / 2 to the diagonal.
MatC heff_block(const InteractionMatrices& mats, const ExcitationBasis& basis,
                double gamma_prime = 0.0, Exec exec = Exec::parallel);

// Spin-wave Fock state (S_k^dagger)^m |g>, normalized; k_d = k * d.
VecC fock_state(const ChainConfig& config, double k_d, int m_ex);

}  // namespace wgqed
