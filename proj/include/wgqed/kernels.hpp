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

namespace wgqed::kernels {

// Precomputed operators for one excitation block m.
struct LindbladBlock {
  MatC h;                   // H_eff^(m) including local broadening
  MatC h_dag;
  std::vector<MatC> jumps;  // collective lowering (m+1 -> m), empty at m_max
  MatR dephase;             // |S xor S'|
  // raise(i, s): index of state i with site s added in block m+1, or -1.
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> raise;
};

struct LindbladRates {
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;
};

// d rho_m / dt for every block. Reference implementation built from whole-
// matrix products.
void lindblad_rhs_serial(const std::vector<LindbladBlock>& ops, const LindbladRates& rates,
                         const std::vector<MatC>& rho, std::vector<MatC>& out);

// Same result computed column by column across OpenMP threads.
void lindblad_rhs_parallel(const std::vector<LindbladBlock>& ops, const LindbladRates& rates,
                           const std::vector<MatC>& rho, std::vector<MatC>& out);

}  // namespace wgqed::kernels
