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

#include "wgqed/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wgqed/fit.hpp"
#include "wgqed/interaction.hpp"
#include "wgqed/linalg.hpp"

namespace wgqed {

WavevectorPeak dominant_wavevector(const VecC& c, int pad_factor) {
  if (pad_factor < 1) throw InvalidArgument("pad_factor must be >= 1");
  const auto n = c.size();
  const Eigen::Index grid = n * pad_factor;
  double best = -1.0, worst = 1e300;
  Eigen::Index arg = 0;
  for (Eigen::Index j = 0; j < grid; ++j) {
    const double q = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
    cplx f = 0.0;
    for (Eigen::Index s = 0; s < n; ++s) f += c(s) * std::polar(1.0, -q * static_cast<double>(s));
    const double p = std::norm(f);
    // Strict improvement keeps the first (smallest |q|) of symmetric twins.
    if (p > best * (1.0 + 1e-12)) {
      best = p;
      arg = j;
    }
    worst = std::min(worst, p);
  }
  WavevectorPeak out;
  double q = 2.0 * kPi * static_cast<double>(arg) / static_cast<double>(grid);
  if (q > kPi) q = 2.0 * kPi - q;
  out.k_d = q;
  out.flat = best - worst <= 1e-9 * best;
  return out;
}

void sort_modes(std::vector<EigenMode>& modes, double tol) {
  std::sort(modes.begin(), modes.end(),
            [](const EigenMode& a, const EigenMode& b) { return a.Gamma < b.Gamma; });
  std::size_t i = 0;
  while (i < modes.size()) {
    std::size_t j = i + 1;
    while (j < modes.size() && modes[j].Gamma - modes[j - 1].Gamma <= tol) ++j;
    std::stable_sort(modes.begin() + static_cast<std::ptrdiff_t>(i),
                     modes.begin() + static_cast<std::ptrdiff_t>(j),
                     [tol](const EigenMode& a, const EigenMode& b) {
                       if (std::abs(a.J - b.J) > tol) return a.J < b.J;
                       return a.k_dom < b.k_dom;
                     });
    i = j;
  }
  for (std::size_t k = 0; k < modes.size(); ++k) modes[k].xi = static_cast<int>(k) + 1;
}

std::vector<EigenMode> single_excitation_modes(const ChainConfig& config, int pad_factor) {
  config.validate();
  const auto mats = interaction_matrices(config);
  const MatC h = mats.h();
  const EigenPairs ep = eig(h, true);
  const int n = config.n_qubits;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff() * n);
  std::vector<EigenMode> modes(n);
  for (int i = 0; i < n; ++i) {
    EigenMode& m = modes[i];
    m.c = ep.vectors.col(i);
    cplx lambda = ep.values(i);
    m.residual = eigen_residual(h, lambda, m.c);
    if (m.residual > 1e-12 * scale) {
      m.c = inverse_iteration(h, lambda, m.c);
      m.residual = eigen_residual(h, lambda, m.c);
    }
    if (m.residual > 1e-10 * scale) {
      std::ostringstream os;
      os << "single_excitation_modes: residual " << m.residual << " for eigenvalue " << lambda;
      throw NumericalError(os.str());
    }
    fix_gauge(m.c);
    m.J = lambda.real();
    m.Gamma = -2.0 * lambda.imag();
    const auto peak = dominant_wavevector(m.c, pad_factor);
    m.k_dom = peak.k_d;
    m.k_flat = peak.flat;
  }
  sort_modes(modes, 1e-10 * n * config.gamma_1d);
  return modes;
}

SubradiantScaling subradiant_scaling_fit(const ChainConfig& tmpl, const std::vector<int>& n_list,
                                         const std::vector<int>& xi_list, int n_for_xi) {
  if (n_list.size() < 3) throw InvalidArgument("subradiant_scaling_fit: fewer than 3 sizes");
  if (xi_list.empty()) throw InvalidArgument("subradiant_scaling_fit: empty xi list");
  const int xi_max = *std::max_element(xi_list.begin(), xi_list.end());
  if (*std::min_element(xi_list.begin(), xi_list.end()) < 1)
    throw InvalidArgument("subradiant_scaling_fit: xi must be >= 1");
  for (int n : n_list)
    if (n < xi_max + 2) throw InvalidArgument("subradiant_scaling_fit: N < max(xi) + 2");
  if (n_for_xi == 0) n_for_xi = *std::max_element(n_list.begin(), n_list.end());
  if (n_for_xi < xi_max + 2) throw InvalidArgument("subradiant_scaling_fit: n_for_xi too small");

  SubradiantScaling out;
  out.n_list = n_list;
  out.xi_list = xi_list;
  out.n_for_xi = n_for_xi;
  out.gamma.assign(xi_list.size(), std::vector<double>(n_list.size()));
  std::vector<std::vector<EigenMode>> spectra(n_list.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    try {
      spectra[i] = single_excitation_modes(tmpl.with_n(n_list[i]));
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> ns(n_list.begin(), n_list.end());
  for (std::size_t x = 0; x < xi_list.size(); ++x) {
    for (std::size_t i = 0; i < n_list.size(); ++i)
      out.gamma[x][i] = spectra[i][static_cast<std::size_t>(xi_list[x] - 1)].Gamma;
    const auto f = loglog_fit(ns, out.gamma[x]);
    out.slope_vs_n.push_back(f.slope);
    out.r2_vs_n.push_back(f.r2);
  }
  const auto fixed = single_excitation_modes(tmpl.with_n(n_for_xi));
  std::vector<double> xs, gs;
  for (int xi : xi_list) {
    xs.push_back(xi);
    gs.push_back(fixed[static_cast<std::size_t>(xi - 1)].Gamma);
  }
  if (xs.size() >= 3) out.slope_vs_xi = loglog_fit(xs, gs).slope;
  return out;
}

double infinite_chain_shift(double k_d, const ChainConfig& config) {
  auto near_zero_mod_2pi = [](double x) {
    const double r = std::remainder(x, 2.0 * kPi);
    return std::abs(r) < 1e-12;
  };
  if (near_zero_mod_2pi(k_d - config.k1d_d) || near_zero_mod_2pi(k_d + config.k1d_d))
    throw PoleError("infinite_chain_shift: pole at k = +-k1d");
  auto cot = [](double x) { return std::cos(x) / std::sin(x); };
  return 0.25 * config.gamma_1d *
         (cot(0.5 * (k_d + config.k1d_d)) + cot(0.5 * (config.k1d_d - k_d)));
}

}  // namespace wgqed
