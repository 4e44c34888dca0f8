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

#include "wgqed/interaction.hpp"

#include <cmath>

namespace wgqed {

InteractionMatrices interaction_matrices(const ChainConfig& config) {
  config.validate();
  const int n = config.n_qubits;
  InteractionMatrices m{MatR::Zero(n, n), MatR::Zero(n, n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double phase = config.k1d_d * std::abs(a - b);
      m.J(a, b) = a == b ? 0.0 : 0.5 * config.gamma_1d * std::sin(phase);
      m.Gamma(a, b) = config.gamma_1d * std::cos(phase);
    }
  }
  return m;
}

InteractionMatrices interaction_matrices_from_sites(const std::vector<double>& phases,
                                                    const std::vector<double>& amplitudes,
                                                    double gamma_1d) {
  if (phases.size() != amplitudes.size())
    throw InvalidArgument("phases and amplitudes differ in length");
  const int n = static_cast<int>(phases.size());
  InteractionMatrices m{MatR::Zero(n, n), MatR::Zero(n, n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double phase = std::abs(phases[a] - phases[b]);
      const double s = gamma_1d * amplitudes[a] * amplitudes[b];
      m.J(a, b) = a == b ? 0.0 : 0.5 * s * std::sin(phase);
      m.Gamma(a, b) = s * std::cos(phase);
    }
  }
  return m;
}

MatC heff_block(const InteractionMatrices& mats, const ExcitationBasis& basis, double gamma_prime,
                Exec exec) {
  if (mats.size() != basis.n_sites())
    throw InvalidArgument("heff_block: basis and interaction sizes differ");
  const MatC h = mats.h();
  const int n = basis.n_sites();
  const int m = basis.m_ex();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  MatC out = MatC::Zero(dim, dim);

  auto fill_column = [&](Eigen::Index col) {
    auto s = basis.state(static_cast<std::size_t>(col));
    cplx diag = -0.5 * kI * gamma_prime * static_cast<double>(m);
    for (int a : s) diag += h(a, a);
    out(col, col) = diag;
    for (int a : s) {
      for (int target = 0; target < n; ++target) {
        if (basis.occupied(static_cast<std::size_t>(col), target)) continue;
        const auto row = static_cast<Eigen::Index>(rank_replace(basis, s, a, target));
        out(row, col) += h(target, a);
      }
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index col = 0; col < dim; ++col) fill_column(col);
  } else {
    for (Eigen::Index col = 0; col < dim; ++col) fill_column(col);
  }
  return out;
}

VecC fock_state(const ChainConfig& config, double k_d, int m_ex) {
  config.validate();
  if (m_ex < 0 || m_ex > config.n_qubits) throw InvalidArgument("fock_state: m_ex > N");
  ExcitationBasis basis(config.n_qubits, m_ex);
  VecC v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double phase = 0.0;
    for (int s : basis.state(i)) phase += k_d * (s + 1);
    v(static_cast<Eigen::Index>(i)) = std::polar(1.0, phase);
  }
  return v / v.norm();
}

}  // namespace wgqed
