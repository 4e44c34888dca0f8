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

namespace wgqed {

// Frequencies in units of v/d, wavevectors in units of 1/d.
struct PolaritonConfig {
  double g = 0.01;
  double omega_eg = 0.32 * 3.14159265358979323846;
  double omega_f = 10.0;
  double quantization_length = 0.0;  // in units of d; <= 0 selects n_qubits
  int n_qubits = 100;

  void validate() const;
  double length() const { return quantization_length > 0.0 ? quantization_length : n_qubits; }
  // Waveguide decay rate 2 pi g^2 omega_eg in units of v/d.
  double gamma_1d() const;
  // Collective coupling of the k spin wave to photon mode k.
  double coupling(double k) const;
  static std::string coupling_formula();
};

struct PolaritonPoint {
  double k = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double qubit_weight_plus = 0.0;  // |qubit component|^2 of the upper branch
  double qubit_weight_minus = 0.0;
  double coupling = 0.0;
  // Omega - omega_eg of the branch with the larger qubit weight.
  double qubit_shift = 0.0;
};

std::vector<PolaritonPoint> polariton_bands(const std::vector<double>& k_grid,
                                            const PolaritonConfig& pconfig);

}  // namespace wgqed
