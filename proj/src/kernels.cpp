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

#include "wgqed/kernels.hpp"

namespace wgqed::kernels {
namespace {

void resize_like(const std::vector<MatC>& rho, std::vector<MatC>& out) {
  out.resize(rho.size());
  for (std::size_t m = 0; m < rho.size(); ++m)
    if (out[m].rows() != rho[m].rows() || out[m].cols() != rho[m].cols())
      out[m].resize(rho[m].rows(), rho[m].cols());
}

// Local-loss refill into entry (i, j) of block m from block m+1.
cplx local_refill(const LindbladBlock& op, const MatC& upper, Eigen::Index i, Eigen::Index j) {
  cplx acc = 0.0;
  for (Eigen::Index s = 0; s < op.raise.cols(); ++s) {
    const int a = op.raise(i, s), b = op.raise(j, s);
    if (a >= 0 && b >= 0) acc += upper(a, b);
  }
  return acc;
}

}  // namespace

void lindblad_rhs_serial(const std::vector<LindbladBlock>& ops, const LindbladRates& rates,
                         const std::vector<MatC>& rho, std::vector<MatC>& out) {
  resize_like(rho, out);
  const std::size_t top = rho.size() - 1;
  for (std::size_t m = 0; m < rho.size(); ++m) {
    const LindbladBlock& op = ops[m];
    MatC d = -kI * (op.h * rho[m] - rho[m] * op.h_dag);
    if (rates.gamma_deph > 0.0) d.array() -= rates.gamma_deph * op.dephase.array() * rho[m].array();
    if (m < top) {
      for (const MatC& o : op.jumps) d.noalias() += o * rho[m + 1] * o.adjoint();
      if (rates.gamma_prime > 0.0) {
        for (Eigen::Index j = 0; j < d.cols(); ++j)
          for (Eigen::Index i = 0; i < d.rows(); ++i)
            d(i, j) += rates.gamma_prime * local_refill(op, rho[m + 1], i, j);
      }
    }
    out[m] = std::move(d);
  }
}

void lindblad_rhs_parallel(const std::vector<LindbladBlock>& ops, const LindbladRates& rates,
                           const std::vector<MatC>& rho, std::vector<MatC>& out) {
  resize_like(rho, out);
  const std::size_t top = rho.size() - 1;
  // Flatten (block, column) pairs so small blocks do not starve threads.
  std::vector<std::pair<std::size_t, Eigen::Index>> work;
  for (std::size_t m = 0; m < rho.size(); ++m)
    for (Eigen::Index c = 0; c < rho[m].cols(); ++c) work.emplace_back(m, c);

#pragma omp parallel for schedule(static)
  for (std::size_t w = 0; w < work.size(); ++w) {
    const auto [m, c] = work[w];
    const LindbladBlock& op = ops[m];
    const MatC& r = rho[m];
    VecC col = -kI * (op.h * r.col(c) - r * op.h_dag.col(c));
    if (rates.gamma_deph > 0.0)
      col.array() -= rates.gamma_deph * op.dephase.col(c).array() * r.col(c).array();
    if (m < top) {
      for (const MatC& o : op.jumps) {
        const VecC t = rho[m + 1] * o.row(c).adjoint();
        col.noalias() += o * t;
      }
      if (rates.gamma_prime > 0.0)
        for (Eigen::Index i = 0; i < col.size(); ++i)
          col(i) += rates.gamma_prime * local_refill(op, rho[m + 1], i, c);
    }
    out[m].col(c) = col;
  }
}

}  // namespace wgqed::kernels
