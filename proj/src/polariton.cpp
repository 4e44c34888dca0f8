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

#include "wgqed/polariton.hpp"

#include <cmath>

#include "wgqed/common.hpp"

namespace wgqed {

void PolaritonConfig::validate() const {
  if (!(g > 0.0)) throw InvalidArgument("polariton: g must be > 0");
  if (!(omega_eg > 0.0) || !(omega_f > omega_eg))
    throw InvalidArgument("polariton: need omega_f > omega_eg > 0");
  if (n_qubits < 1) throw InvalidArgument("polariton: n_qubits must be >= 1");
}

double PolaritonConfig::gamma_1d() const { return 2.0 * kPi * g * g * omega_eg; }

// Single-qubit mode coupling g sqrt(pi v omega_k / L) reproduces the golden-rule
// rate 2 pi g^2 omega_eg with both propagation directions counted. The Bloch
// spin wave couples sqrt(L / d) times more strongly.
double PolaritonConfig::coupling(double k) const {
  const double omega_k = std::abs(k);
  if (omega_k > omega_f) return 0.0;
  const double len = length();
  return std::sqrt(len) * g * std::sqrt(kPi * omega_k / len);
}

std::string PolaritonConfig::coupling_formula() {
  return "G_k = sqrt(L/d) * g * sqrt(pi * v * omega_k / L), omega_k = v|k|, zero above omega_f";
}

std::vector<PolaritonPoint> polariton_bands(const std::vector<double>& k_grid,
                                            const PolaritonConfig& pconfig) {
  pconfig.validate();
  std::vector<PolaritonPoint> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    if (std::abs(k) > kPi * (1.0 + 1e-12))
      throw InvalidArgument("polariton_bands: k outside the first zone");
    PolaritonPoint p;
    p.k = k;
    const double wq = pconfig.omega_eg;
    const double wp = std::abs(k);
    const double gk = pconfig.coupling(k);
    p.coupling = gk;
    const double mean = 0.5 * (wq + wp);
    const double half = 0.5 * (wq - wp);
    const double root = std::hypot(half, gk);
    p.omega_plus = mean + root;
    p.omega_minus = mean - root;
    // Qubit weight of the upper branch: (1 + half / root) / 2.
    if (root == 0.0) {
      p.qubit_weight_plus = 0.5;
    } else {
      p.qubit_weight_plus = 0.5 * (1.0 + half / root);
    }
    p.qubit_weight_minus = 1.0 - p.qubit_weight_plus;
    p.qubit_shift =
        (p.qubit_weight_plus >= p.qubit_weight_minus ? p.omega_plus : p.omega_minus) - wq;
    out.push_back(p);
  }
  return out;
}

}  // namespace wgqed
