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

#include "wgqed/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cstring>
#include <exception>

#include "wgqed/basis.hpp"

namespace wgqed {
namespace odeint = boost::numeric::odeint;

double BlockDensityMatrix::population(int m) const {
  if (m < 0 || m > m_max()) return 0.0;
  return blocks[static_cast<std::size_t>(m)].trace().real();
}

double BlockDensityMatrix::total_trace() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.trace().real();
  return s;
}

BlockDensityMatrix BlockDensityMatrix::vacuum(int n_sites, int m_max) {
  BlockDensityMatrix r;
  r.n_sites = n_sites;
  for (int m = 0; m <= m_max; ++m) {
    const auto d = static_cast<Eigen::Index>(binomial(n_sites, m));
    r.blocks.push_back(MatC::Zero(d, d));
  }
  r.blocks[0](0, 0) = 1.0;
  return r;
}

BlockDensityMatrix BlockDensityMatrix::pure(int n_sites, int m, const VecC& psi, int m_max) {
  if (m_max < 0) m_max = m;
  if (m > m_max) throw InvalidArgument("pure state: m exceeds m_max");
  BlockDensityMatrix r = vacuum(n_sites, m_max);
  r.blocks[0](0, 0) = 0.0;
  auto& b = r.blocks[static_cast<std::size_t>(m)];
  if (psi.size() != b.rows()) throw InvalidArgument("pure state: vector does not match basis");
  const VecC v = psi / psi.norm();
  b = v * v.adjoint();
  return r;
}

LindbladGenerator::LindbladGenerator(const InteractionMatrices& mats, double gamma_prime,
                                     double gamma_deph, int m_max)
    : n_sites_(mats.size()), rates_{gamma_prime, gamma_deph} {
  if (m_max < 0 || m_max > n_sites_) throw InvalidArgument("m_max must lie in [0, N]");
  if (gamma_prime < 0.0 || gamma_deph < 0.0) throw InvalidArgument("rates must be >= 0");

  // Gamma = sum_k u_k u_k^T with u_k = sqrt(lambda_k) v_k.
  Eigen::SelfAdjointEigenSolver<MatR> es(mats.Gamma);
  const double gmax = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<VecR> channels;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > 1e-12 * gmax)
      channels.push_back(std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k));

  std::vector<ExcitationBasis> bases;
  for (int m = 0; m <= m_max; ++m) bases.emplace_back(n_sites_, m);
  blocks_.resize(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    const auto& b = bases[static_cast<std::size_t>(m)];
    auto& op = blocks_[static_cast<std::size_t>(m)];
    const auto d = static_cast<Eigen::Index>(b.size());
    op.h = heff_block(mats, b, gamma_prime);
    op.h_dag = op.h.adjoint();
    op.dephase.resize(d, d);
    std::vector<std::vector<char>> occ(b.size(), std::vector<char>(n_sites_, 0));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (int s : b.state(i)) occ[i][s] = 1;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        int diff = 0;
        for (int s = 0; s < n_sites_; ++s) diff += occ[i][s] != occ[j][s];
        op.dephase(i, j) = diff;
      }
    op.raise.setConstant(d, n_sites_, -1);
    if (m < m_max) {
      const auto& up = bases[static_cast<std::size_t>(m) + 1];
      const auto du = static_cast<Eigen::Index>(up.size());
      op.jumps.assign(channels.size(), MatC::Zero(d, du));
      for (Eigen::Index j = 0; j < du; ++j) {
        auto s = up.state(static_cast<std::size_t>(j));
        for (int site : s) {
          const auto i = static_cast<Eigen::Index>(rank_remove(b, s, site));
          op.raise(i, site) = static_cast<int>(j);
          for (std::size_t k = 0; k < channels.size(); ++k) op.jumps[k](i, j) += channels[k](site);
        }
      }
    }
  }
}

LindbladGenerator::LindbladGenerator(const ChainConfig& config, int m_max)
    : LindbladGenerator(interaction_matrices(config), config.gamma_prime, config.gamma_deph,
                        m_max) {}

void LindbladGenerator::apply(const std::vector<MatC>& rho, std::vector<MatC>& drho,
                              Exec exec) const {
  if (rho.size() != blocks_.size()) throw InvalidArgument("apply: block count mismatch");
  if (exec == Exec::parallel)
    kernels::lindblad_rhs_parallel(blocks_, rates_, rho, drho);
  else
    kernels::lindblad_rhs_serial(blocks_, rates_, rho, drho);
}

void LindbladGenerator::apply(const BlockDensityMatrix& rho, BlockDensityMatrix& drho,
                              Exec exec) const {
  drho.n_sites = rho.n_sites;
  drho.t = rho.t;
  apply(rho.blocks, drho.blocks, exec);
}

BlockDensityMatrix lindblad_rhs(const BlockDensityMatrix& state, const ChainConfig& config) {
  if (state.n_sites != config.n_qubits) throw InvalidArgument("lindblad_rhs: size mismatch");
  LindbladGenerator gen(config, state.m_max());
  BlockDensityMatrix out;
  gen.apply(state, out);
  return out;
}

namespace {

using State = std::vector<double>;

std::size_t packed_size(const std::vector<MatC>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += 2 * static_cast<std::size_t>(b.size());
  return n;
}

void pack(const std::vector<MatC>& blocks, State& x) {
  x.resize(packed_size(blocks));
  double* p = x.data();
  for (const auto& b : blocks) {
    std::memcpy(p, b.data(), sizeof(cplx) * static_cast<std::size_t>(b.size()));
    p += 2 * b.size();
  }
}

void unpack(const State& x, std::vector<MatC>& blocks) {
  const double* p = x.data();
  for (auto& b : blocks) {
    std::memcpy(static_cast<void*>(b.data()), p, sizeof(cplx) * static_cast<std::size_t>(b.size()));
    p += 2 * b.size();
  }
}

struct System {
  const LindbladGenerator* gen;
  Exec exec;
  std::vector<MatC> rho, drho;
  void operator()(const State& x, State& dxdt, double /*t*/) {
    unpack(x, rho);
    gen->apply(rho, drho, exec);
    pack(drho, dxdt);
  }
};

}  // namespace

std::vector<BlockDensityMatrix> propagate(const BlockDensityMatrix& initial,
                                          const LindbladGenerator& gen,
                                          const std::vector<double>& t_grid,
                                          const EvolveOptions& opts) {
  if (initial.blocks.size() != gen.blocks().size() || initial.n_sites != gen.n_sites())
    throw InvalidArgument("propagate: state does not match generator");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < initial.t) throw InvalidArgument("propagate: time before initial state");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw InvalidArgument("propagate: t_grid decreasing");
  }
  std::vector<BlockDensityMatrix> out;
  if (t_grid.empty()) return out;
  out.reserve(t_grid.size());

  // The dense-output driver cannot revisit its current time before the first
  // step, so repeated times are integrated once and copied.
  std::vector<double> times;
  times.push_back(initial.t);
  for (double t : t_grid)
    if (t != times.back()) times.push_back(t);
  std::vector<BlockDensityMatrix> at_times;
  at_times.reserve(times.size());
  if (times.size() == 1) {
    at_times.push_back(initial);
  } else {
    System sys{&gen, opts.exec, initial.blocks, initial.blocks};
    State x;
    pack(initial.blocks, x);
    auto observer = [&](const State& s, double t) {
      BlockDensityMatrix r;
      r.n_sites = initial.n_sites;
      r.t = t;
      r.blocks = initial.blocks;
      unpack(s, r.blocks);
      at_times.push_back(std::move(r));
    };
    const double dt0 = 1e-3 / std::max(1, gen.n_sites());
    try {
      auto stepper = odeint::make_dense_output(opts.atol, opts.rtol,
                                               odeint::runge_kutta_dopri5<State>());
      odeint::integrate_times(stepper, std::ref(sys), x, times.begin(), times.end(), dt0, observer,
                              odeint::max_step_checker(opts.max_steps_between_outputs));
    } catch (const odeint::odeint_error& e) {
      throw NumericalError(std::string("propagate: integrator failure: ") + e.what());
    }
  }
  if (at_times.size() != times.size()) throw NumericalError("propagate: missing output times");
  std::size_t k = 0;
  for (double t : t_grid) {
    while (times[k] != t) ++k;
    out.push_back(at_times[k]);
    out.back().t = t;
  }
  if (out.size() != t_grid.size()) throw NumericalError("propagate: missing output times");
  return out;
}

BlockDensityMatrix propagate_to(const BlockDensityMatrix& initial, const LindbladGenerator& gen,
                                double t_final, const EvolveOptions& opts) {
  return propagate(initial, gen, {t_final}, opts).front();
}

double conditional_fidelity(const BlockDensityMatrix& state, const VecC& target, int m) {
  const double p = state.population(m);
  if (p < 1e-12) throw NumericalError("conditional_fidelity: population below 1e-12");
  const auto& b = state.blocks[static_cast<std::size_t>(m)];
  if (target.size() != b.rows()) throw InvalidArgument("conditional_fidelity: size mismatch");
  return target.dot(b * target).real() / (target.squaredNorm() * p);
}

MatR pair_populations(const BlockDensityMatrix& state) {
  const int n = state.n_sites;
  MatR p = MatR::Zero(n, n);
  if (state.m_max() < 2) return p;
  ExcitationBasis basis(n, 2);
  const auto& b = state.blocks[2];
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto s = basis.state(i);
    const double v = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    p(s[0], s[1]) = v;
    p(s[1], s[0]) = v;
  }
  return p;
}

EvolutionRecord evolve(const BlockDensityMatrix& initial, const LindbladGenerator& gen,
                       const std::vector<double>& t_grid,
                       const std::optional<EvolutionTarget>& target,
                       const std::vector<double>& snapshot_times, const EvolveOptions& opts) {
  std::vector<double> all = t_grid;
  all.insert(all.end(), snapshot_times.begin(), snapshot_times.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const auto states = propagate(initial, gen, all, opts);

  double m0 = 0.0;
  for (int m = 0; m <= initial.m_max(); ++m) m0 += m * initial.population(m);

  EvolutionRecord rec;
  rec.population.assign(static_cast<std::size_t>(initial.m_max()) + 1, {});
  std::size_t k = 0;
  for (double t : t_grid) {
    while (states[k].t != t) ++k;
    const auto& s = states[k];
    rec.t.push_back(t);
    double exc = 0.0;
    for (int m = 0; m <= s.m_max(); ++m) {
      rec.population[static_cast<std::size_t>(m)].push_back(s.population(m));
      exc += m * s.population(m);
    }
    rec.excitation_fraction.push_back(m0 > 0.0 ? exc / m0 : 0.0);
    if (target) {
      const double p = s.population(target->m);
      rec.target_fidelity.push_back(p >= 1e-12 ? conditional_fidelity(s, target->state, target->m)
                                               : std::numeric_limits<double>::quiet_NaN());
    }
  }
  for (double ts : snapshot_times) {
    const auto it = std::find_if(states.begin(), states.end(),
                                 [ts](const BlockDensityMatrix& s) { return s.t == ts; });
    rec.snapshot_times.push_back(ts);
    rec.snapshots.push_back(pair_populations(*it));
  }
  return rec;
}

std::vector<SweepPoint> imperfection_sweep(
    const ChainConfig& base, const std::vector<double>& gamma_primes,
    const std::vector<double>& gamma_dephs,
    const std::function<BlockDensityMatrix(double, double)>& initial,
    const EvolutionTarget& target, const std::vector<double>& t_grid, double p_min) {
  std::vector<SweepPoint> out(gamma_primes.size() * gamma_dephs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    try {
      SweepPoint pt;
      pt.gamma_prime = gamma_primes[idx / gamma_dephs.size()];
      pt.gamma_deph = gamma_dephs[idx % gamma_dephs.size()];
      ChainConfig cfg = base;
      cfg.gamma_prime = pt.gamma_prime;
      cfg.gamma_deph = pt.gamma_deph;
      const auto init = initial(pt.gamma_prime, pt.gamma_deph);
      LindbladGenerator gen(cfg, init.m_max());
      const auto states = propagate(init, gen, t_grid);
      for (const auto& s : states) {
        const double p = s.population(target.m);
        if (p < p_min) continue;
        const double f = conditional_fidelity(s, target.state, target.m);
        if (!pt.attainable || f > pt.max_fidelity) {
          pt.attainable = true;
          pt.max_fidelity = f;
          pt.t_at_max = s.t;
          pt.population_at_max = p;
        }
      }
      out[idx] = pt;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace wgqed
