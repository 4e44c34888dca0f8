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

#include "wgqed/correlations.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include <Eigen/QR>

#include "wgqed/basis.hpp"
#include "wgqed/fit.hpp"
#include "wgqed/multiexc.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed {

std::string to_string(DetectorSide side) { return side == DetectorSide::left ? "left" : "right"; }

DetectorSide detector_side_from_string(const std::string& s) {
  if (s == "left") return DetectorSide::left;
  if (s == "right") return DetectorSide::right;
  throw InvalidArgument("detector side must be 'left' or 'right'");
}

CollectiveLoweringOp::CollectiveLoweringOp(const ChainConfig& config, DetectorSide side, int m_max)
    : side_(side) {
  config.validate();
  const int n = config.n_qubits;
  if (m_max < 0 || m_max > n) throw InvalidArgument("lowering operator: m_max out of range");
  beta_.resize(n);
  for (int s = 0; s < n; ++s) {
    const int dist = side == DetectorSide::left ? s : n - 1 - s;
    beta_(s) = std::polar(1.0, config.k1d_d * dist);
  }
  for (int m = 1; m <= m_max; ++m) {
    ExcitationBasis upper(n, m), lower(n, m - 1);
    MatC o = MatC::Zero(static_cast<Eigen::Index>(lower.size()),
                        static_cast<Eigen::Index>(upper.size()));
    for (std::size_t j = 0; j < upper.size(); ++j) {
      const auto s = upper.state(j);
      for (int x : s)
        o(static_cast<Eigen::Index>(rank_remove(lower, s, x)), static_cast<Eigen::Index>(j)) +=
            beta_(x);
    }
    blocks_.push_back(std::move(o));
  }
}

VecC CollectiveLoweringOp::apply(const VecC& psi, int m) const {
  if (m < 1 || m > m_max()) throw InvalidArgument("lowering operator: block out of range");
  const MatC& o = block(m);
  if (psi.size() != o.cols()) throw InvalidArgument("lowering operator: size mismatch");
  return o * psi;
}

BlockDensityMatrix CollectiveLoweringOp::conditional(const BlockDensityMatrix& rho) const {
  if (rho.m_max() > m_max()) throw InvalidArgument("lowering operator: state exceeds m_max");
  BlockDensityMatrix out = rho;
  for (int m = 0; m < rho.m_max(); ++m) {
    const MatC& o = block(m + 1);
    out.blocks[static_cast<std::size_t>(m)] =
        o * rho.blocks[static_cast<std::size_t>(m + 1)] * o.adjoint();
  }
  out.blocks.back().setZero();
  return out;
}

double CollectiveLoweringOp::intensity(const BlockDensityMatrix& rho) const {
  if (rho.m_max() > m_max()) throw InvalidArgument("lowering operator: state exceeds m_max");
  double acc = 0.0;
  for (int m = 1; m <= rho.m_max(); ++m) {
    const MatC& o = block(m);
    acc += (o * rho.blocks[static_cast<std::size_t>(m)] * o.adjoint()).trace().real();
  }
  return acc;
}

double intensity(const BlockDensityMatrix& state, const ChainConfig& config, DetectorSide side) {
  ChainConfig c = config;
  c.n_qubits = state.n_sites;
  return CollectiveLoweringOp(c, side, state.m_max()).intensity(state);
}

ConditionalState conditional_state(const ChainConfig& config, const VecC& psi2,
                                   DetectorSide side) {
  const int n = config.n_qubits;
  if (n < 2) throw InvalidArgument("conditional_state: needs N >= 2");
  const CollectiveLoweringOp op(config, side, 2);
  VecC c = op.apply(psi2, 2);
  const double norm = c.norm();
  if (norm < 1e-12 * psi2.norm())
    throw NumericalError("conditional_state: input is dark to the detector side");
  c /= norm;

  const auto modes = single_excitation_modes(config);
  MatC a(n, 2);
  a.col(0) = modes[0].c;
  a.col(1) = modes[1].c;
  const Eigen::ColPivHouseholderQR<MatC> qr(a);
  const VecC alpha = qr.solve(c);
  ConditionalState out;
  out.psi_c = c;
  out.alpha1 = alpha(0);
  out.alpha2 = alpha(1);
  out.epsilon = std::max(0.0, 1.0 - (a * alpha).squaredNorm());
  return out;
}

CorrelationRecord t2_surface(const BlockDensityMatrix& initial, const ChainConfig& config,
                             const std::vector<double>& t_grid, const std::vector<double>& tau_grid,
                             DetectorSide side, const EvolveOptions& opts) {
  if (initial.n_sites != config.n_qubits)
    throw InvalidArgument("t2_surface: state does not match configuration");
  if (initial.m_max() > 2) throw InvalidArgument("t2_surface: support must be on m <= 2");
  if (tau_grid.empty() || tau_grid.front() != 0.0)
    throw InvalidArgument("t2_surface: tau grid must start at 0");
  const LindbladGenerator gen(config, initial.m_max());
  const CollectiveLoweringOp op(config, side, initial.m_max());
  const auto states = propagate(initial, gen, t_grid, opts);

  CorrelationRecord rec;
  rec.side = side;
  rec.t = t_grid;
  rec.tau = tau_grid;
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  const auto ntau = static_cast<Eigen::Index>(tau_grid.size());
  rec.t2 = MatR::Constant(nt, ntau, std::numeric_limits<double>::quiet_NaN());
  rec.intensity.assign(t_grid.size(), 0.0);
  rec.maxima.assign(t_grid.size(), {});

  EvolveOptions inner = opts;
  inner.exec = Exec::serial;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index i = 0; i < nt; ++i) {
    try {
      const auto& rho = states[static_cast<std::size_t>(i)];
      const double den = op.intensity(rho);
      rec.intensity[static_cast<std::size_t>(i)] = den;
      if (den < 1e-14) continue;
      BlockDensityMatrix cond = op.conditional(rho);
      cond.t = 0.0;
      const auto later = propagate(cond, gen, tau_grid, inner);
      std::vector<double> row(tau_grid.size());
      for (Eigen::Index j = 0; j < ntau; ++j) {
        row[static_cast<std::size_t>(j)] =
            op.intensity(later[static_cast<std::size_t>(j)]) / (den * den);
        rec.t2(i, j) = row[static_cast<std::size_t>(j)];
      }
      rec.maxima[static_cast<std::size_t>(i)] = t2_maxima(tau_grid, row);
    } catch (...) {
#pragma omp critical(wgqed_t2_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rec;
}

std::vector<double> t2_maxima(const std::vector<double>& tau, const std::vector<double>& values) {
  if (tau.size() != values.size()) throw InvalidArgument("t2_maxima: size mismatch");
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) out.push_back(tau[i]);
  return out;
}

std::vector<double> predicted_t2_maxima(double delta_j, const std::vector<int>& n_odd) {
  if (!(std::abs(delta_j) > 0.0)) throw InvalidArgument("predicted_t2_maxima: zero splitting");
  std::vector<double> out;
  for (int n : n_odd) {
    if (n % 2 == 0) throw InvalidArgument("predicted_t2_maxima: n must be odd");
    out.push_back(n * kPi / std::abs(delta_j));
  }
  return out;
}

std::vector<double> default_tau_grid(double delta_j, int periods, int points_per_period) {
  if (!(std::abs(delta_j) > 0.0) || periods < 1 || points_per_period < 20)
    throw InvalidArgument("default_tau_grid: needs delta_j != 0 and >= 20 points per period");
  const double step = 2.0 * kPi / std::abs(delta_j) / points_per_period;
  std::vector<double> out(static_cast<std::size_t>(periods * points_per_period) + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = step * static_cast<double>(i);
  return out;
}

EpsilonScaling epsilon_scaling(const ChainConfig& tmpl, const std::vector<int>& n_list,
                               DetectorSide side) {
  EpsilonScaling out;
  out.n_list = n_list;
  out.epsilon.assign(n_list.size(), 0.0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    try {
      const ChainConfig cfg = tmpl.with_n(n_list[i]);
      SectorSolver solver(cfg, 2);
      const auto modes = solver.modes();
      out.epsilon[i] = conditional_state(cfg, modes.front().c, side).epsilon;
    } catch (...) {
#pragma omp critical(wgqed_eps_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> x(n_list.begin(), n_list.end());
  out.slope = loglog_fit(x, out.epsilon).slope;
  return out;
}

}  // namespace wgqed
