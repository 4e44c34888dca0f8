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

#include "wgqed/multiexc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "wgqed/fit.hpp"
#include "wgqed/interaction.hpp"

namespace wgqed {
namespace {

bool decay_order(cplx a, cplx b) {
  const double ga = -2.0 * a.imag(), gb = -2.0 * b.imag();
  if (ga != gb) return ga < gb;
  return a.real() < b.real();
}

template <class F>
void parallel_for_each(std::size_t n, F&& f) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Next m-combination of {0..k-1} in lexicographic order.
bool next_combination(std::vector<int>& t, int k) {
  const int m = static_cast<int>(t.size());
  int i = m - 1;
  while (i >= 0 && t[i] == k - m + i) --i;
  if (i < 0) return false;
  ++t[i];
  for (int j = i + 1; j < m; ++j) t[j] = t[j - 1] + 1;
  return true;
}

}  // namespace

SectorSolver::SectorSolver(const ChainConfig& config, int m_ex)
    : config_(config), basis_(config.n_qubits, m_ex) {
  config.validate();
  if (basis_.size() == 0) throw InvalidArgument("sector dimension is zero");
  h_ = heff_block(interaction_matrices(config), basis_);
  if (config.n_qubits >= 2 && basis_.size() >= 2) split_ = std::make_unique<ParitySplit>(basis_);
}

SectorSolver::Block& SectorSolver::block(int sign, bool vectors) {
  auto it = blocks_.find(sign);
  if (it != blocks_.end() && (it->second.has_vectors || !vectors)) return it->second;
  Block b;
  if (sign == 0 || !split_) {
    b.pairs = eig(h_, vectors);
  } else if (split_->dim(sign) > 0) {
    b.pairs = eig(split_->project(h_, sign), vectors);
  }
  b.has_vectors = vectors;
  return blocks_[sign] = std::move(b);
}

VecC SectorSolver::lift(const VecC& v, int sign) const {
  if (sign == 0 || !split_) return v;
  return split_->lift(v, sign);
}

SectorSolver::Match SectorSolver::best_match(const VecC& trial) {
  const int sign = split_ ? split_->parity_of(trial) : 0;
  const Block& b = block(sign, true);
  const VecC t = (sign == 0 || !split_) ? trial : split_->restrict(trial, sign);
  const double t2 = trial.squaredNorm();
  Match best;
  best.fidelity = -1.0;
  Eigen::Index arg = -1;
  for (Eigen::Index j = 0; j < b.pairs.values.size(); ++j) {
    const double f = std::norm(t.dot(b.pairs.vectors.col(j))) / t2;
    if (f > best.fidelity) {
      best.fidelity = f;
      arg = j;
    }
  }
  if (arg < 0) throw NumericalError("best_match: empty parity block");
  best.lambda = b.pairs.values(arg);
  best.vector = lift(b.pairs.vectors.col(arg), sign);
  best.vector.normalize();
  return best;
}

std::vector<cplx> SectorSolver::sorted_eigenvalues() {
  std::vector<cplx> out;
  if (split_) {
    for (int sign : {+1, -1}) {
      if (split_->dim(sign) == 0) continue;
      const auto& v = block(sign, false).pairs.values;
      out.insert(out.end(), v.data(), v.data() + v.size());
    }
  } else {
    const auto& v = block(0, false).pairs.values;
    out.insert(out.end(), v.data(), v.data() + v.size());
  }
  std::sort(out.begin(), out.end(), decay_order);
  return out;
}

std::vector<SectorMode> SectorSolver::modes() {
  std::vector<SectorMode> out;
  const std::vector<int> signs = split_ ? std::vector<int>{+1, -1} : std::vector<int>{0};
  for (int sign : signs) {
    if (split_ && split_->dim(sign) == 0) continue;
    const Block& b = block(sign, true);
    for (Eigen::Index j = 0; j < b.pairs.values.size(); ++j) {
      SectorMode m;
      m.c = lift(b.pairs.vectors.col(j), sign);
      fix_gauge(m.c);
      m.lambda = b.pairs.values(j);
      m.J = m.lambda.real();
      m.Gamma = -2.0 * m.lambda.imag();
      m.residual = eigen_residual(h_, m.lambda, m.c);
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SectorMode& a, const SectorMode& b) { return decay_order(a.lambda, b.lambda); });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].xi = static_cast<int>(i) + 1;
  return out;
}

std::vector<SectorMode> multi_excitation_modes(const ChainConfig& config, int m_ex) {
  if (m_ex < 0 || m_ex > config.n_qubits) throw InvalidArgument("m_ex must lie in [0, N]");
  SectorSolver solver(config, m_ex);
  auto modes = solver.modes();
  const double scale = std::max(1.0, solver.heff().cwiseAbs().maxCoeff() * config.n_qubits);
  for (const auto& m : modes)
    if (m.residual > 1e-10 * scale)
      throw NumericalError("multi_excitation_modes: eigen-residual " + std::to_string(m.residual));
  return modes;
}

PairLabel momentum_pair_label(const VecC& c, int n_sites, int pad_factor, double ambiguity_ratio) {
  ExcitationBasis basis(n_sites, 2);
  if (static_cast<std::size_t>(c.size()) != basis.size())
    throw InvalidArgument("momentum_pair_label: vector does not match the m=2 basis");
  const int n = n_sites;
  MatC cm = MatC::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto s = basis.state(i);
    cm(s[0], s[1]) = c(static_cast<Eigen::Index>(i));
    cm(s[1], s[0]) = c(static_cast<Eigen::Index>(i));
  }
  const int grid = n * pad_factor;
  MatC w(grid, n);
  for (int j = 0; j < grid; ++j)
    for (int s = 0; s < n; ++s) w(j, s) = std::polar(1.0, -2.0 * kPi * j * s / grid);
  const MatR power = (w * cm * w.transpose()).cwiseAbs2();

  // Fold (q1, q2) onto (|q1|, |q2|) bins.
  const int half = grid / 2;
  MatR folded = MatR::Zero(half + 1, half + 1);
  for (int a = 0; a < grid; ++a) {
    const int fa = a <= half ? a : grid - a;
    for (int b = 0; b < grid; ++b) {
      const int fb = b <= half ? b : grid - b;
      folded(fa, fb) = std::max(folded(fa, fb), power(a, b));
    }
  }
  struct Peak {
    double value;
    int a, b;
  };
  std::vector<Peak> peaks;
  for (int a = 0; a <= half; ++a) {
    for (int b = a; b <= half; ++b) {
      const double v = folded(a, b);
      bool is_max = true;
      for (int da = -1; da <= 1 && is_max; ++da)
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const int x = a + da, y = b + db;
          if (x < 0 || y < 0 || x > half || y > half) continue;
          if (folded(x, y) > v) {
            is_max = false;
            break;
          }
        }
      if (is_max) peaks.push_back({v, a, b});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) {
    if (x.value != y.value) return x.value > y.value;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  PairLabel out;
  if (peaks.empty()) throw NumericalError("momentum_pair_label: no spectral peak");
  out.k1 = 2.0 * kPi * peaks[0].a / grid;
  out.k2 = 2.0 * kPi * peaks[0].b / grid;
  // Plateaus produce adjacent equal maxima; compare against the first
  // non-adjacent peak.
  out.peak_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    if (std::abs(peaks[i].a - peaks[0].a) <= 1 && std::abs(peaks[i].b - peaks[0].b) <= 1) continue;
    out.peak_ratio = peaks[i].value > 0.0 ? peaks[0].value / peaks[i].value
                                          : std::numeric_limits<double>::infinity();
    break;
  }
  out.ambiguous = out.peak_ratio < ambiguity_ratio;
  return out;
}

FermionicAnsatz fermionic_ansatz(const std::vector<VecC>& singles, std::vector<int> constituents) {
  const int m = static_cast<int>(singles.size());
  if (m < 1) throw InvalidArgument("fermionic_ansatz: no constituents");
  const auto n = static_cast<int>(singles[0].size());
  for (const auto& s : singles)
    if (s.size() != n) throw InvalidArgument("fermionic_ansatz: constituent length mismatch");
  ExcitationBasis basis(n, m);
  VecC c(static_cast<Eigen::Index>(basis.size()));
  MatC a(m, m);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto s = basis.state(i);
    for (int r = 0; r < m; ++r)
      for (int k = 0; k < m; ++k) a(r, k) = singles[k](s[r]);
    cplx det;
    if (m == 1) {
      det = a(0, 0);
    } else if (m == 2) {
      det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    } else if (m == 3) {
      det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
            a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
            a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    } else {
      det = a.determinant();
    }
    c(static_cast<Eigen::Index>(i)) = det;
  }
  double scale = 1.0;
  for (const auto& s : singles) scale *= s.norm();
  const double nrm = c.norm();
  if (!(nrm > 1e-10 * scale))
    throw NumericalError("fermionic_ansatz: constituents are (nearly) linearly dependent");
  FermionicAnsatz out;
  out.constituents = std::move(constituents);
  out.norm_factor = 1.0 / nrm;
  out.c = c * out.norm_factor;
  return out;
}

FermionicAnsatz fermionic_ansatz(const std::vector<EigenMode>& modes, const std::vector<int>& xis) {
  std::vector<VecC> singles;
  for (int xi : xis) {
    if (xi < 1 || xi > static_cast<int>(modes.size()))
      throw InvalidArgument("fermionic_ansatz: xi out of range");
    singles.push_back(modes[static_cast<std::size_t>(xi - 1)].c);
  }
  return fermionic_ansatz(singles, xis);
}

AnsatzFidelity ansatz_fidelity(const ChainConfig& config, const std::vector<int>& xis) {
  const auto singles = single_excitation_modes(config);
  const auto ansatz = fermionic_ansatz(singles, xis);
  SectorSolver solver(config, static_cast<int>(xis.size()));
  const auto match = solver.best_match(ansatz.c);
  AnsatzFidelity out;
  out.constituents = xis;
  out.fidelity = match.fidelity;
  out.exact_lambda = match.lambda;
  out.exact_gamma = -2.0 * match.lambda.imag();
  for (int xi : xis) out.constituent_gamma_sum += singles[static_cast<std::size_t>(xi - 1)].Gamma;
  return out;
}

AnsatzFidelity best_constituents(const std::vector<EigenMode>& singles, const VecC& exact,
                                 int m_ex, int k_max) {
  k_max = std::min<int>(k_max, static_cast<int>(singles.size()));
  if (m_ex > k_max) throw InvalidArgument("best_constituents: k_max < m_ex");
  std::vector<int> t(m_ex);
  std::iota(t.begin(), t.end(), 0);
  AnsatzFidelity best;
  best.fidelity = -1.0;
  do {
    std::vector<int> xis;
    for (int i : t) xis.push_back(i + 1);
    const auto a = fermionic_ansatz(singles, xis);
    const double f = overlap_fidelity(a.c, exact);
    if (f > best.fidelity) {
      best.fidelity = f;
      best.constituents = xis;
    }
  } while (next_combination(t, k_max));
  for (int xi : best.constituents)
    best.constituent_gamma_sum += singles[static_cast<std::size_t>(xi - 1)].Gamma;
  return best;
}

InfidelityScaling infidelity_scaling(const ChainConfig& tmpl, const std::vector<int>& n_list,
                                     const std::vector<int>& xis) {
  if (n_list.size() < 4) throw InvalidArgument("infidelity_scaling: need at least 4 sizes");
  InfidelityScaling out;
  out.n_list = n_list;
  out.constituents = xis;
  out.fidelity.resize(n_list.size());
  parallel_for_each(n_list.size(), [&](std::size_t i) {
    out.fidelity[i] = ansatz_fidelity(tmpl.with_n(n_list[i]), xis).fidelity;
  });
  std::vector<double> ns, inf;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ns.push_back(n_list[i]);
    inf.push_back(1.0 - out.fidelity[i]);
    if (inf.back() <= 1e-14) out.saturated = true;
  }
  out.slope = out.saturated ? std::numeric_limits<double>::quiet_NaN() : loglog_fit(ns, inf).slope;
  return out;
}

DecayAdditivity decay_additivity(const ChainConfig& tmpl, const std::vector<int>& n_list, int m_ex,
                                 int count, int k_max) {
  if (n_list.empty()) throw InvalidArgument("decay_additivity: empty N list");
  if (m_ex < 2) throw InvalidArgument("decay_additivity: m_ex must be >= 2");
  DecayAdditivity out;
  out.m_ex = m_ex;
  out.n_list = n_list;

  {
    const ChainConfig ref = tmpl.with_n(n_list.front());
    const auto singles = single_excitation_modes(ref);
    SectorSolver solver(ref, m_ex);
    const auto modes = solver.modes();
    for (int i = 0; i < count && i < static_cast<int>(modes.size()); ++i) {
      const auto bc = best_constituents(singles, modes[static_cast<std::size_t>(i)].c, m_ex, k_max);
      out.labels.push_back(bc.constituents);
    }
  }
  const std::size_t nl = out.labels.size();
  out.r.assign(nl, std::vector<double>(n_list.size()));
  out.fidelity.assign(nl, std::vector<double>(n_list.size()));
  parallel_for_each(n_list.size(), [&](std::size_t j) {
    const ChainConfig cfg = tmpl.with_n(n_list[j]);
    const auto singles = single_excitation_modes(cfg);
    SectorSolver solver(cfg, m_ex);
    for (std::size_t l = 0; l < nl; ++l) {
      const auto ansatz = fermionic_ansatz(singles, out.labels[l]);
      const auto match = solver.best_match(ansatz.c);
      double sum = 0.0;
      for (int xi : out.labels[l]) sum += singles[static_cast<std::size_t>(xi - 1)].Gamma;
      if (!(sum > std::numeric_limits<double>::min()))
        throw NumericalError("decay_additivity: constituent decay rates vanish");
      out.r[l][j] = -2.0 * match.lambda.imag() / sum - 1.0;
      out.fidelity[l][j] = match.fidelity;
    }
  });
  std::vector<double> ns(n_list.begin(), n_list.end());
  for (std::size_t l = 0; l < nl; ++l) {
    std::vector<double> ar;
    for (double v : out.r[l]) ar.push_back(std::abs(v));
    bool ok = n_list.size() >= 3;
    for (double v : ar) ok = ok && v > 0.0;
    out.slope.push_back(ok ? loglog_fit(ns, ar).slope : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace wgqed
