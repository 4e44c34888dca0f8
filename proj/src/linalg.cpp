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

#include "wgqed/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

namespace wgqed {
namespace {

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }

}  // namespace

EigenPairs eig(const MatC& a, bool want_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) throw InvalidArgument("eig: matrix not square");
  if (n == 0) throw InvalidArgument("eig: empty matrix");
  MatC work = a;
  EigenPairs out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  cplx dummy{};
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, lp(work.data()), n,
      lp(out.values.data()), lp(&dummy), 1, want_vectors ? lp(out.vectors.data()) : lp(&dummy),
      want_vectors ? n : 1);
  if (info != 0) throw NumericalError("zgeev failed with info=" + std::to_string(info));
  if (want_vectors)
    for (lapack_int j = 0; j < n; ++j) out.vectors.col(j).normalize();
  return out;
}

void fix_gauge(VecC& v) {
  const double nrm = v.norm();
  if (nrm == 0.0) throw NumericalError("fix_gauge: zero vector");
  v /= nrm;
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const cplx phase = std::conj(v(imax)) / std::abs(v(imax));
  v *= phase;
  v(imax) = std::abs(v(imax));
}

double eigen_residual(const MatC& a, cplx lambda, const VecC& v) {
  return (a * v - lambda * v).norm() / v.norm();
}

VecC inverse_iteration(const MatC& a, cplx shift, const VecC& start, int max_iter, double tol) {
  const auto n = static_cast<lapack_int>(a.rows());
  MatC lu = a;
  lu.diagonal().array() -= shift;
  std::vector<lapack_int> piv(n);
  lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(lu.data()), n, piv.data());
  if (info < 0) throw NumericalError("zgetrf failed with info=" + std::to_string(info));
  if (info > 0) {
    // Shift is an exact eigenvalue to machine precision; nudge it.
    lu = a;
    lu.diagonal().array() -= shift * (1.0 + 1e-14) + cplx(1e-14, 1e-14);
    info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(lu.data()), n, piv.data());
    if (info != 0) throw NumericalError("zgetrf failed with info=" + std::to_string(info));
  }
  VecC v = start / start.norm();
  for (int it = 0; it < max_iter; ++it) {
    VecC w = v;
    info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lp(lu.data()), n, piv.data(), lp(w.data()),
                          n);
    if (info != 0) throw NumericalError("zgetrs failed with info=" + std::to_string(info));
    w.normalize();
    const cplx lambda = w.dot(a * w);
    v = w;
    if (eigen_residual(a, lambda, v) < tol) break;
  }
  return v;
}

double overlap_fidelity(const VecC& a, const VecC& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

ParitySplit::ParitySplit(const ExcitationBasis& basis) : full_dim_(basis.size()) {
  mirror_.resize(full_dim_);
  for (std::size_t i = 0; i < full_dim_; ++i) mirror_[i] = basis.mirror(i);
  for (std::size_t i = 0; i < full_dim_; ++i) {
    const std::size_t j = mirror_[i];
    if (j < i) continue;
    even_.push_back({i, j});
    if (j != i) odd_.push_back({i, j});
  }
}

MatC ParitySplit::project(const MatC& h, int sign) const {
  const auto& orb = orbits(sign);
  const auto d = static_cast<Eigen::Index>(orb.size());
  MatC out(d, d);
  const double s = sign > 0 ? 1.0 : -1.0;
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto& oc = orb[c];
    const bool cpair = oc.a != oc.b;
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& or_ = orb[r];
      const bool rpair = or_.a != or_.b;
      const auto ra = static_cast<Eigen::Index>(or_.a), rb = static_cast<Eigen::Index>(or_.b);
      const auto ca = static_cast<Eigen::Index>(oc.a), cb = static_cast<Eigen::Index>(oc.b);
      cplx v = h(ra, ca);
      double norm = 1.0;
      if (cpair) {
        v += s * h(ra, cb);
        norm *= std::sqrt(2.0);
      }
      if (rpair) {
        cplx w = h(rb, ca);
        if (cpair) w += s * h(rb, cb);
        v += s * w;
        norm *= std::sqrt(2.0);
      }
      out(r, c) = v / norm;
    }
  }
  return out;
}

VecC ParitySplit::lift(const VecC& reduced, int sign) const {
  const auto& orb = orbits(sign);
  VecC out = VecC::Zero(static_cast<Eigen::Index>(full_dim_));
  const double s = sign > 0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < orb.size(); ++k) {
    const auto a = static_cast<Eigen::Index>(orb[k].a), b = static_cast<Eigen::Index>(orb[k].b);
    const cplx x = reduced(static_cast<Eigen::Index>(k));
    if (a == b) {
      out(a) = x;
    } else {
      out(a) = x / std::sqrt(2.0);
      out(b) = s * x / std::sqrt(2.0);
    }
  }
  return out;
}

VecC ParitySplit::restrict(const VecC& full, int sign) const {
  const auto& orb = orbits(sign);
  VecC out(static_cast<Eigen::Index>(orb.size()));
  const double s = sign > 0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < orb.size(); ++k) {
    const auto a = static_cast<Eigen::Index>(orb[k].a), b = static_cast<Eigen::Index>(orb[k].b);
    out(static_cast<Eigen::Index>(k)) =
        a == b ? full(a) : (full(a) + s * full(b)) / std::sqrt(2.0);
  }
  return out;
}

int ParitySplit::parity_of(const VecC& v, double tol) const {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < full_dim_; ++i) {
    const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(mirror_[i]);
    plus += std::norm(v(a) - v(b));
    minus += std::norm(v(a) + v(b));
  }
  const double n2 = v.squaredNorm();
  if (plus <= tol * tol * n2) return +1;
  if (minus <= tol * tol * n2) return -1;
  return 0;
}

}  // namespace wgqed
