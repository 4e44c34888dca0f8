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

#include <cmath>
#include <string>

#include "wgqed/common.hpp"

namespace wgqed {

// Regular chain of N qubits at z_n = n d. Rates are in units of gamma_1d.
struct ChainConfig {
  int n_qubits = 1;
  double k1d_d = 0.0;  // k_1D * d in radians
  double gamma_1d = 1.0;
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;

  void validate() const {
    if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
    if (!std::isfinite(k1d_d) || k1d_d < 0.0)
      throw InvalidArgument("k1d_d must be finite and >= 0");
    if (!(gamma_1d >= 0.0) || !(gamma_prime >= 0.0) || !(gamma_deph >= 0.0))
      throw InvalidArgument("rates must be >= 0");
  }

  ChainConfig with_n(int n) const {
    ChainConfig c = *this;
    c.n_qubits = n;
    return c;
  }
};

}  // namespace wgqed
