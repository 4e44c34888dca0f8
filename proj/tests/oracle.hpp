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

// Brute-force reference in the full 2^N Hilbert space. Shares nothing with
// the library except the basis enumeration used to map block indices.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "wgqed/basis.hpp"
#include "wgqed/dynamics.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline const cplx I{0.0, 1.0};

struct Chain {
  int n = 2;
  double phi = 0.5;  // k1D d
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;

  double J(int a, int b) const { return a == b ? 0.0 : 0.5 * std::sin(phi * std::abs(a - b)); }
  double G(int a, int b) const { return std::cos(phi * std::abs(a - b)); }
};

// sigma_ge on site s: removes the excitation at bit s.
inline Mat lowering(int n, int s) {
  const int d = 1 << n;
  Mat m = Mat::Zero(d, d);
  for (int x = 0; x < d; ++x)
    if (x & (1 << s)) m(x ^ (1 << s), x) = 1.0;
  return m;
}

inline Mat heff(const Chain& c) {
  const int d = 1 << c.n;
  Mat h = Mat::Zero(d, d);
  for (int x = 0; x < d; ++x)
    for (int b = 0; b < c.n; ++b) {
      if (!(x & (1 << b))) continue;
      const int y = x ^ (1 << b);
      for (int a = 0; a < c.n; ++a) {
        if (y & (1 << a)) continue;
        h(y | (1 << a), x) += cplx(c.J(a, b), -0.5 * c.G(a, b));
      }
      h(x, x) += -0.5 * I * c.gamma_prime;
    }
  return h;
}

// Column-stacked vec(rho): L vec(rho) = vec(drho/dt).
inline Mat liouvillian(const Chain& c) {
  const int d = 1 << c.n;
  const Mat id = Mat::Identity(d, d);
  const Mat h = heff(c);
  auto left = [&](const Mat& a) { return Mat(Eigen::kroneckerProduct(id, a)); };
  auto right = [&](const Mat& b) { return Mat(Eigen::kroneckerProduct(b.transpose(), id)); };
  auto sandwich = [&](const Mat& a, const Mat& b) { return Mat(Eigen::kroneckerProduct(b.transpose(), a)); };
  Mat l = -I * (left(h) - right(h.adjoint()));
  std::vector<Mat> low;
  for (int s = 0; s < c.n; ++s) low.push_back(lowering(c.n, s));
  for (int a = 0; a < c.n; ++a)
    for (int b = 0; b < c.n; ++b) l += c.G(a, b) * sandwich(low[b], low[a].adjoint());
  for (int a = 0; a < c.n; ++a) {
    l += c.gamma_prime * sandwich(low[a], low[a].adjoint());
    const Mat ee = low[a].adjoint() * low[a];
    l += c.gamma_deph * (2.0 * sandwich(ee, ee) - left(ee) - right(ee));
  }
  return l;
}

inline Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }
inline Mat unvec(const Vec& v, int d) { return Eigen::Map<const Mat>(v.data(), d, d); }

inline int bits_of(std::span<const int> s) {
  int x = 0;
  for (int site : s) x |= 1 << site;
  return x;
}

inline Mat to_full(const wgqed::BlockDensityMatrix& r) {
  const int d = 1 << r.n_sites;
  Mat full = Mat::Zero(d, d);
  for (int m = 0; m <= r.m_max(); ++m) {
    wgqed::ExcitationBasis b(r.n_sites, m);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        full(bits_of(b.state(i)), bits_of(b.state(j))) =
            r.blocks[static_cast<std::size_t>(m)](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return full;
}

// Number-diagonal part of a full density matrix in block form.
inline wgqed::BlockDensityMatrix to_blocks(const Mat& full, int n, int m_max) {
  wgqed::BlockDensityMatrix r = wgqed::BlockDensityMatrix::vacuum(n, m_max);
  for (int m = 0; m <= m_max; ++m) {
    wgqed::ExcitationBasis b(n, m);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        r.blocks[static_cast<std::size_t>(m)](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            full(bits_of(b.state(i)), bits_of(b.state(j)));
  }
  return r;
}

inline Mat restrict_to_sector(const Mat& op, int n, int m) {
  wgqed::ExcitationBasis b(n, m);
  const auto d = static_cast<Eigen::Index>(b.size());
  Mat out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out(i, j) = op(bits_of(b.state(static_cast<std::size_t>(i))), bits_of(b.state(static_cast<std::size_t>(j))));
  return out;
}

inline Mat propagate(const Chain& c, const Mat& rho0, double t) {
  const int d = 1 << c.n;
  const Mat l = liouvillian(c);
  return unvec((l * t).exp() * vec(rho0), d);
}

// Field operator sum_n beta_n sigma_ge^n toward the left (or right) detector.
inline Mat field(const Chain& c, bool left) {
  const int d = 1 << c.n;
  Mat o = Mat::Zero(d, d);
  for (int s = 0; s < c.n; ++s)
    o += std::polar(1.0, c.phi * (left ? s : c.n - 1 - s)) * lowering(c.n, s);
  return o;
}

// T2(t, tau) by applying the jump operator to the full state and propagating.
inline double t2(const Chain& c, const Mat& rho0, double t, double tau, bool left) {
  const Mat o = field(c, left);
  const Mat od = o.adjoint();
  const Mat rt = propagate(c, rho0, t);
  const double den = (od * o * rt).trace().real();
  const Mat cond = o * rt * od;
  const Mat later = propagate(c, cond, tau);
  return (od * o * later).trace().real() / (den * den);
}

// Random number-diagonal state on blocks 0..m_max with trace 1.
inline wgqed::BlockDensityMatrix random_block_state(int n, int m_max, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  wgqed::BlockDensityMatrix r = wgqed::BlockDensityMatrix::vacuum(n, m_max);
  double tr = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    auto& b = r.blocks[static_cast<std::size_t>(m)];
    Mat a(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx(g(rng), g(rng));
    b = a * a.adjoint();
    tr += b.trace().real();
  }
  for (auto& b : r.blocks) b /= tr;
  return r;
}

}  // namespace oracle
