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

#include "wgqed/preparation.hpp"

#include <algorithm>
#include <cmath>

#include "wgqed/basis.hpp"

namespace wgqed {

void CavityConfig::validate() const {
  if (n_mirror < 2 || n_mirror % 2 != 0) throw InvalidArgument("n_mirror must be even and >= 2");
  if (!(gamma_1d > 0.0) || !(gamma_prime >= 0.0) || !(gamma_deph >= 0.0))
    throw InvalidArgument("cavity rates must be >= 0 (gamma_1d > 0)");
  if (!(eta > 0.0) || eta > 1.0) throw InvalidArgument("eta must lie in (0, 1]");
}

int CavityConfig::mirror_index(int site) const {
  const int a = ancilla();
  return site < a ? a - site : site - a;
}

std::vector<double> CavityConfig::phases() const {
  std::vector<double> z(static_cast<std::size_t>(n_sites()));
  const int a = ancilla();
  for (int s = 0; s < n_sites(); ++s) {
    const int n = mirror_index(s);
    const double dist = n == 0 ? 0.0 : 0.5 * kPi + (n - 1) * kPi;
    z[static_cast<std::size_t>(s)] = s < a ? -dist : dist;
  }
  return z;
}

std::vector<double> CavityConfig::amplitudes() const {
  std::vector<double> amp(static_cast<std::size_t>(n_sites()), 1.0);
  amp[static_cast<std::size_t>(ancilla())] = eta;
  return amp;
}

InteractionMatrices cavity_interactions(const CavityConfig& cc) {
  cc.validate();
  return interaction_matrices_from_sites(cc.phases(), cc.amplitudes(), cc.gamma_1d);
}

MatC cavity_heff(const CavityConfig& cc, int m_ex) {
  return heff_block(cavity_interactions(cc), ExcitationBasis(cc.n_sites(), m_ex), cc.gamma_prime);
}

MatC cavity_heff_closed_form(const CavityConfig& cc, int m_ex) {
  cc.validate();
  const int m = cc.n_sites(), a = cc.ancilla();
  // Per-site amplitudes of S_mirr and S_rad (times sqrt N).
  VecR mirr = VecR::Zero(m), rad = VecR::Zero(m);
  for (int s = 0; s < m; ++s) {
    if (s == a) continue;
    const int k = cc.mirror_index(s);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    mirr(s) = sign;
    rad(s) = s > a ? sign : -sign;
  }
  InteractionMatrices mats{MatR::Zero(m, m), MatR::Zero(m, m)};
  for (int s = 0; s < m; ++s) {
    if (s == a) continue;
    mats.J(a, s) = mats.J(s, a) = 0.5 * cc.gamma_1d * mirr(s);
  }
  mats.Gamma = cc.gamma_1d * rad * rad.transpose();
  mats.Gamma(a, a) = cc.gamma_1d;
  return heff_block(mats, ExcitationBasis(m, m_ex), cc.gamma_prime);
}

VecC mirror_state(const CavityConfig& cc, int m_ex) {
  cc.validate();
  const int n = cc.n_mirror, a = cc.ancilla();
  ExcitationBasis basis(n, m_ex);
  VecC v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double amp = 1.0;
    for (int j : basis.state(i)) {
      const int site = j < a ? j : j + 1;
      if (cc.mirror_index(site) % 2 != 0) amp = -amp;
    }
    v(static_cast<Eigen::Index>(i)) = amp;
  }
  return v / v.norm();
}

VecC mirror_state_with_ancilla(const CavityConfig& cc, int m_ex) {
  const VecC chain = mirror_state(cc, m_ex);
  const int a = cc.ancilla();
  ExcitationBasis full(cc.n_sites(), m_ex), reduced(cc.n_mirror, m_ex);
  VecC v = VecC::Zero(static_cast<Eigen::Index>(full.size()));
  std::vector<int> t(static_cast<std::size_t>(m_ex));
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto s = full.state(i);
    bool has_a = false;
    for (int k = 0; k < m_ex; ++k) {
      has_a = has_a || s[k] == a;
      t[static_cast<std::size_t>(k)] = s[k] < a ? s[k] : s[k] - 1;
    }
    if (has_a) continue;
    v(static_cast<Eigen::Index>(i)) = chain(static_cast<Eigen::Index>(reduced.rank(t)));
  }
  return v;
}

BlockDensityMatrix pi_pulse(const BlockDensityMatrix& state, int site) {
  const int n = state.n_sites;
  if (site < 0 || site >= n) throw InvalidArgument("pi_pulse: site out of range");
  const int mmax = state.m_max();
  std::vector<ExcitationBasis> bases;
  for (int m = 0; m <= mmax; ++m) bases.emplace_back(n, m);
  BlockDensityMatrix out = BlockDensityMatrix::vacuum(n, mmax);
  out.blocks[0](0, 0) = 0.0;
  out.t = state.t;

  // Image of each state under the flip: (target block, index) or block -1.
  for (int m = 0; m <= mmax; ++m) {
    const auto& b = bases[static_cast<std::size_t>(m)];
    std::vector<std::pair<int, std::size_t>> image(b.size());
    std::vector<int> t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto s = b.state(i);
      t.assign(s.begin(), s.end());
      const auto it = std::lower_bound(t.begin(), t.end(), site);
      if (it != t.end() && *it == site)
        t.erase(it);
      else
        t.insert(it, site);
      const int m2 = static_cast<int>(t.size());
      image[i] = m2 > mmax ? std::pair<int, std::size_t>{-1, 0}
                           : std::pair<int, std::size_t>{m2, bases[static_cast<std::size_t>(m2)].rank(t)};
    }
    const auto& r = state.blocks[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto [mi, ii] = image[i];
      if (mi < 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        const auto [mj, jj] = image[j];
        if (mj != mi) continue;
        out.blocks[static_cast<std::size_t>(mi)](static_cast<Eigen::Index>(ii),
                                                 static_cast<Eigen::Index>(jj)) +=
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return out;
}

TransferTime optimize_transfer_time(const CavityConfig& cc, const LindbladGenerator& gen,
                                    const BlockDensityMatrix& after_pulse, int m_ex, double tol) {
  const VecC target = mirror_state_with_ancilla(cc, m_ex);
  TransferTime out;
  out.guess = kPi / (cc.gamma_1d * cc.eta * std::sqrt(static_cast<double>(cc.n_mirror) * m_ex));
  auto overlap = [&](double t) {
    BlockDensityMatrix s = after_pulse;
    s.t = 0.0;
    const auto r = propagate_to(s, gen, t);
    const auto& b = r.blocks[static_cast<std::size_t>(m_ex)];
    return target.dot(b * target).real();
  };
  // Uniform loss rescales block m by exp(-gamma' m t); the search runs on the
  // compensated overlap so the chosen waits do not depend on gamma'.
  auto objective = [&](double t) { return overlap(t) * std::exp(cc.gamma_prime * m_ex * t); };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.5 * out.guess, hi = 1.5 * out.guess;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  out.t = 0.5 * (lo + hi);
  if (out.t - 0.5 * out.guess < tol || 1.5 * out.guess - out.t < tol)
    throw NumericalError("optimize_transfer_time: no interior maximum in bracket");
  out.overlap = overlap(out.t);
  return out;
}

BlockDensityMatrix trace_out_site(const BlockDensityMatrix& state, int site) {
  const int n = state.n_sites, mmax = state.m_max();
  if (site < 0 || site >= n) throw InvalidArgument("trace_out_site: site out of range");
  BlockDensityMatrix out = BlockDensityMatrix::vacuum(n - 1, std::min(mmax, n - 1));
  out.blocks[0](0, 0) = 0.0;
  out.t = state.t;
  std::vector<int> t;
  for (int m = 0; m <= mmax; ++m) {
    ExcitationBasis b(n, m);
    // Reduced index and block of every state; the traced site's occupation
    // must match between bra and ket.
    std::vector<std::pair<int, std::size_t>> red(b.size());
    std::vector<char> has(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      t.clear();
      has[i] = 0;
      for (int s : b.state(i)) {
        if (s == site) {
          has[i] = 1;
          continue;
        }
        t.push_back(s < site ? s : s - 1);
      }
      const int mr = static_cast<int>(t.size());
      red[i] = {mr, mr <= out.m_max() ? ExcitationBasis(n - 1, mr).rank(t) : 0};
    }
    const auto& r = state.blocks[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (has[i] != has[j]) continue;
        const int mr = red[i].first;
        if (mr > out.m_max()) continue;
        out.blocks[static_cast<std::size_t>(mr)](static_cast<Eigen::Index>(red[i].second),
                                                 static_cast<Eigen::Index>(red[j].second)) +=
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
  }
  return out;
}

PreparedState prepare_fock(const CavityConfig& cc, int m_ex) {
  cc.validate();
  if (m_ex < 1 || m_ex > 2) throw InvalidArgument("prepare_fock supports m_ex in {1, 2}");
  const LindbladGenerator gen(cavity_interactions(cc), cc.gamma_prime, cc.gamma_deph, m_ex);
  BlockDensityMatrix rho = BlockDensityMatrix::vacuum(cc.n_sites(), m_ex);
  PreparedState out;
  out.config = cc;
  out.m_ex = m_ex;
  for (int step = 1; step <= m_ex; ++step) {
    rho = pi_pulse(rho, cc.ancilla());
    rho.t = 0.0;
    const auto tt = optimize_transfer_time(cc, gen, rho, step);
    rho = propagate_to(rho, gen, tt.t);
    out.wait_times.push_back(tt.t);
    out.wait_guesses.push_back(tt.guess);
  }
  rho.t = 0.0;
  out.chain = trace_out_site(rho, cc.ancilla());
  out.p_transfer = out.chain.population(m_ex);
  out.fidelity_mirror = conditional_fidelity(out.chain, mirror_state(cc, m_ex), m_ex);
  return out;
}

RetunedState phase_adjust_and_retune(const PreparedState& prepared, double k_d, double new_k1d_d) {
  const CavityConfig& cc = prepared.config;
  if (prepared.chain.n_sites != cc.n_mirror || cc.n_mirror % 2 != 0)
    throw InvalidArgument("phase_adjust_and_retune: qubit count parity mismatch");
  const int n = cc.n_mirror, a = cc.ancilla();
  VecC u(n);
  for (int j = 0; j < n; ++j) {
    const int site = j < a ? j : j + 1;
    const double flip = cc.mirror_index(site) % 2 != 0 ? kPi : 0.0;
    u(j) = std::polar(1.0, k_d * (j + 1) + flip);
  }
  RetunedState out;
  out.config.n_qubits = n;
  out.config.k1d_d = new_k1d_d;
  out.config.gamma_1d = cc.gamma_1d;
  out.config.gamma_prime = cc.gamma_prime;
  out.config.gamma_deph = cc.gamma_deph;
  out.config.validate();
  out.state = prepared.chain;
  for (int m = 0; m <= out.state.m_max(); ++m) {
    ExcitationBasis b(n, m);
    VecC phase(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
      cplx p = 1.0;
      for (int s : b.state(i)) p *= u(s);
      phase(static_cast<Eigen::Index>(i)) = p;
    }
    auto& blk = out.state.blocks[static_cast<std::size_t>(m)];
    blk = phase.asDiagonal() * blk * phase.conjugate().asDiagonal();
  }
  return out;
}

}  // namespace wgqed
