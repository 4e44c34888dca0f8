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
#include "wgqed/dynamics.hpp"
#include "wgqed/interaction.hpp"

namespace wgqed {

// Two mirror half-chains (spacing phase pi) around one ancilla (gap phase pi/2).
// Sites are stored in spatial order; the ancilla sits at index n_mirror / 2.
struct CavityConfig {
  int n_mirror = 10;
  double gamma_1d = 1.0;
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;
  double eta = 1.0;  // ancilla waveguide amplitude scale

  void validate() const;
  int n_sites() const { return n_mirror + 1; }
  int ancilla() const { return n_mirror / 2; }
  // Mirror index n >= 1 of a spatial site (0 for the ancilla).
  int mirror_index(int site) const;
  std::vector<double> phases() const;
  std::vector<double> amplitudes() const;
};

InteractionMatrices cavity_interactions(const CavityConfig& cc);
MatC cavity_heff(const CavityConfig& cc, int m_ex);
// Closed-form collective Hamiltonian at eta = 1 (transfer plus radiant decay).
MatC cavity_heff_closed_form(const CavityConfig& cc, int m_ex);

// Normalized (S_mirr^dagger)^m |g> over the N chain sites (ancilla removed).
VecC mirror_state(const CavityConfig& cc, int m_ex);
// The same state embedded in the (N+1)-site basis with the ancilla in |g>.
VecC mirror_state_with_ancilla(const CavityConfig& cc, int m_ex);

// Ideal instantaneous g <-> e flip of one site. Coherences that would connect
// different excitation numbers are discarded, as is weight beyond m_max.
BlockDensityMatrix pi_pulse(const BlockDensityMatrix& state, int site);

struct TransferTime {
  double t = 0.0;
  double guess = 0.0;
  double overlap = 0.0;  // <psi|rho|psi> at t
};

// Golden-section maximization of exp(gamma_prime m t) <psi_target|rho(t)|psi_target> over
// [0.5, 1.5] * pi / (gamma_1d * eta * sqrt(N m)).
TransferTime optimize_transfer_time(const CavityConfig& cc, const LindbladGenerator& gen,
                                    const BlockDensityMatrix& after_pulse, int m_ex,
                                    double tol = 1e-4);

struct PreparedState {
  CavityConfig config;
  int m_ex = 0;
  BlockDensityMatrix chain;  // ancilla traced out, N sites
  double p_transfer = 0.0;
  double fidelity_mirror = 0.0;
  std::vector<double> wait_times;
  std::vector<double> wait_guesses;
};

PreparedState prepare_fock(const CavityConfig& cc, int m_ex);

// Partial trace over one site of a number-diagonal state.
BlockDensityMatrix trace_out_site(const BlockDensityMatrix& state, int site);

struct RetunedState {
  ChainConfig config;
  BlockDensityMatrix state;
};

// Local phases mapping the mirror pattern onto exp(i k d n) (the alternating
// sign flip when k = 0), then reinterpretation on a chain with new_k1d_d.
RetunedState phase_adjust_and_retune(const PreparedState& prepared, double k_d, double new_k1d_d);

}  // namespace wgqed
