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

namespace wgqed {

struct EigenPairs {
  VecC values;
  MatC vectors;  // columns, l2-normalized; empty when not requested
};

// General complex eigenproblem (LAPACK zgeev).
EigenPairs eig(const MatC& a, bool want_vectors = true);

// Normalize and rotate so the largest-magnitude entry is real positive.
void fix_gauge(VecC& v);

double eigen_residual(const MatC& a, cplx lambda, const VecC& v);

// Refines one eigenvector from a start vector by shifted inverse iteration.
VecC inverse_iteration(const MatC& a, cplx shift, const VecC& start, int max_iter = 6,
                       double tol = 1e-12);

// |<a|b>|^2 / (|a|^2 |b|^2).
double overlap_fidelity(const VecC& a, const VecC& b);

// Orthonormal symmetric/antisymmetric combinations under site inversion.
// Exact for any operator built from |m - n|-dependent couplings.
class ParitySplit {
 public:
  explicit ParitySplit(const ExcitationBasis& basis);

  // sign = +1 (even) or -1 (odd).
  std::size_t dim(int sign) const { return sign > 0 ? even_.size() : odd_.size(); }
  MatC project(const MatC& h, int sign) const;
  VecC lift(const VecC& reduced, int sign) const;
  VecC restrict(const VecC& full, int sign) const;
  // +1 / -1 when v has definite parity to tolerance, 0 otherwise.
  int parity_of(const VecC& v, double tol = 1e-8) const;

 private:
  struct Orbit {
    std::size_t a;
    std::size_t b;  // equals a for self-mirrored states
  };
  const std::vector<Orbit>& orbits(int sign) const { return sign > 0 ? even_ : odd_; }
  std::size_t full_dim_;
  std::vector<Orbit> even_;
  std::vector<Orbit> odd_;
  std::vector<std::size_t> mirror_;
};

}  // namespace wgqed
