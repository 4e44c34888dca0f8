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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <fstream>
#include <limits>
#include <sstream>

#include "wgqed/basis.hpp"
#include "wgqed/correlations.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/fit.hpp"
#include "wgqed/interaction.hpp"
#include "wgqed/multiexc.hpp"
#include "wgqed/polariton.hpp"
#include "wgqed/preparation.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::string join(const std::vector<int>& v, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

ChainConfig chain_config(const RunConfig& rc) {
  ChainConfig c;
  c.n_qubits = rc.n_qubits;
  c.k1d_d = rc.k1d_d_over_pi * kPi;
  c.gamma_prime = rc.gamma_prime;
  c.gamma_deph = rc.gamma_deph;
  c.validate();
  return c;
}

Cell num(double v) { return v; }
Cell integer(std::int64_t v) { return v; }

nlohmann::json fit_json(const LogLogFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") throw InvalidArgument("format must be csv or json");
}

int first_xi(const RunConfig& rc) {
  const auto xs = parse_int_list(rc.xi, "xi");
  if (xs.empty()) throw InvalidArgument("xi list is empty");
  return xs.front();
}

VecC sector_eigenstate(const ChainConfig& cfg, int m, int xi) {
  SectorSolver solver(cfg, m);
  const auto modes = solver.modes();
  if (xi < 1 || xi > static_cast<int>(modes.size())) throw InvalidArgument("xi out of range");
  return modes[static_cast<std::size_t>(xi - 1)].c;
}

// Initial pure state of the chain selected by --initial.
VecC initial_vector(const RunConfig& rc, const ChainConfig& cfg, int m) {
  if (rc.initial == "k0") return fock_state(cfg, rc.k_over_pi * kPi, m);
  if (rc.initial == "xi") return sector_eigenstate(cfg, m, first_xi(rc));
  throw InvalidArgument("initial must be k0 or xi");
}

Table dense_matrix_table(const MatR& m) {
  Table t;
  t.columns.push_back("site");
  for (Eigen::Index j = 0; j < m.cols(); ++j) t.columns.push_back(std::to_string(j + 1));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<Cell> row{integer(i + 1)};
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (item.empty() || pos != item.size()) throw InvalidArgument(what + ": not an integer list");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& item : split(s, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (item.empty() || pos != item.size() || !std::isfinite(v))
      throw InvalidArgument(what + ": not a number list");
    out.push_back(v);
  }
  return out;
}

nlohmann::json base_metadata(const RunConfig& rc) {
  nlohmann::json p = {{"n_qubits", rc.n_qubits},
                      {"k1d_d_over_pi", rc.k1d_d_over_pi},
                      {"gamma_prime", rc.gamma_prime},
                      {"gamma_deph", rc.gamma_deph},
                      {"m_ex", rc.m_ex},
                      {"t_max", rc.t_max},
                      {"n_t", rc.n_t},
                      {"tau_max", rc.tau_max},
                      {"n_tau", rc.n_tau},
                      {"xi", rc.xi},
                      {"k_over_pi", rc.k_over_pi},
                      {"n_list", rc.n_list},
                      {"format", rc.format},
                      {"initial", rc.initial},
                      {"side", rc.side},
                      {"quantity", rc.quantity},
                      {"input", rc.input},
                      {"which", rc.which},
                      {"gamma_prime_list", rc.gamma_prime_list},
                      {"gamma_deph_list", rc.gamma_deph_list},
                      {"snapshots", rc.snapshots},
                      {"eta", rc.eta},
                      {"g", rc.g},
                      {"omega_f", rc.omega_f},
                      {"p_min", rc.p_min},
                      {"n_k", rc.n_k},
                      {"pair_grid", rc.pair_grid},
                      {"k_max", rc.k_max},
                      {"grid", rc.grid}};
  return {{"tool", kToolName}, {"version", kToolVersion}, {"subcommand", rc.subcommand},
          {"params", p}, {"units", "rates and frequencies in gamma_1d, times in 1/gamma_1d"}};
}

std::string render(const Artifact& a, const std::string& format) {
  check_format(format);
  if (format == "csv" && !a.report_only()) {
    std::ostringstream os;
    write_csv(os, a.metadata, a.table);
    return os.str();
  }
  nlohmann::json j;
  if (!a.report.is_null()) {
    j = a.report;
    j["metadata"] = a.metadata;
  } else {
    j = table_to_json(a.metadata, a.table);
  }
  if (format == "json" && !a.attachments.empty()) {
    nlohmann::json att = nlohmann::json::object();
    for (const auto& sub : a.attachments) att[sub.name] = nlohmann::json::parse(render(sub, "json"));
    j["attachments"] = std::move(att);
  }
  return j.dump(2) + "\n";
}

Artifact cmd_spectrum(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  Artifact a;
  a.name = "spectrum";
  a.metadata = base_metadata(rc);
  // k1D d in pi Z: one bright mode and an N-1 fold degenerate dark manifold
  // whose eigenvectors (and their labels) are not unique.
  a.metadata["degenerate_dark_manifold"] = std::abs(std::remainder(rc.k1d_d_over_pi, 1.0)) < 1e-12;
  a.table.columns = {"xi", "J", "Gamma", "k_d_over_pi", "k_flat"};
  for (const auto& m : single_excitation_modes(cfg))
    a.table.add_row({integer(m.xi), num(m.J), num(m.Gamma), num(m.k_dom / kPi), integer(m.k_flat)});
  return a;
}

Artifact cmd_dispersion(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  Artifact a;
  a.name = "dispersion";
  a.metadata = base_metadata(rc);
  a.metadata["near_pole_window"] = 0.2;
  a.table.columns = {"xi", "k_d_over_pi", "J_finite", "J_infinite", "rel_err", "near_pole"};
  const double k1 = std::remainder(cfg.k1d_d, 2.0 * kPi);
  for (const auto& m : single_excitation_modes(cfg)) {
    double jinf = kNaN;
    try {
      jinf = infinite_chain_shift(m.k_dom, cfg);
    } catch (const PoleError&) {
    }
    const bool near = std::abs(m.k_dom - std::abs(k1)) <= 0.2;
    const double err = std::isfinite(jinf) ? std::abs(m.J - jinf) / std::abs(jinf) : kNaN;
    a.table.add_row({integer(m.xi), num(m.k_dom / kPi), num(m.J), num(jinf), num(err), integer(near)});
  }
  return a;
}

Artifact cmd_dispersion_curve(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  Artifact a;
  a.name = "dispersion_curve";
  a.metadata = base_metadata(rc);
  a.table.columns = {"k_d_over_pi", "J_infinite"};
  for (double k : linspace(-1.0, 1.0, rc.n_k)) {
    double j = kNaN;
    try {
      j = infinite_chain_shift(k * kPi, cfg);
    } catch (const PoleError&) {
    }
    a.table.add_row({num(k), num(j)});
  }
  return a;
}

Artifact cmd_polariton(const RunConfig& rc) {
  PolaritonConfig pc;
  pc.g = rc.g;
  pc.omega_eg = rc.k1d_d_over_pi * kPi;
  pc.omega_f = rc.omega_f;
  pc.n_qubits = rc.n_qubits;
  pc.validate();
  std::vector<double> ks;
  for (double k : linspace(-1.0, 1.0, rc.n_k)) ks.push_back(k * kPi);
  const auto bands = polariton_bands(ks, pc);
  ChainConfig chain;
  chain.n_qubits = pc.n_qubits;
  chain.k1d_d = pc.omega_eg;
  chain.gamma_1d = pc.gamma_1d();

  Artifact a;
  a.name = "polariton";
  a.metadata = base_metadata(rc);
  a.metadata["coupling"] = PolaritonConfig::coupling_formula();
  a.metadata["gamma_1d_v_over_d"] = pc.gamma_1d();
  a.metadata["units"] = "k in 1/d, frequencies in v/d";
  a.table.columns = {"k_d_over_pi",       "omega_plus", "omega_minus", "qubit_weight_plus",
                     "qubit_weight_minus", "coupling",   "qubit_shift", "chain_shift"};
  for (const auto& p : bands) {
    double cs = kNaN;
    try {
      cs = infinite_chain_shift(p.k, chain);
    } catch (const PoleError&) {
    }
    a.table.add_row({num(p.k / kPi), num(p.omega_plus), num(p.omega_minus), num(p.qubit_weight_plus),
                     num(p.qubit_weight_minus), num(p.coupling), num(p.qubit_shift), num(cs)});
  }
  return a;
}

Artifact cmd_two_exc(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  if (rc.m_ex < 1 || rc.m_ex > cfg.n_qubits) throw InvalidArgument("m_ex out of range");
  Artifact a;
  a.metadata = base_metadata(rc);
  SectorSolver solver(cfg, rc.m_ex);
  const auto modes = solver.modes();

  if (rc.grid) {
    if (rc.m_ex != 2) throw InvalidArgument("--grid needs m_ex = 2");
    const int xi = first_xi(rc);
    if (xi < 1 || xi > static_cast<int>(modes.size())) throw InvalidArgument("xi out of range");
    const auto& mode = modes[static_cast<std::size_t>(xi - 1)];
    const ExcitationBasis& b = solver.basis();
    MatR p = MatR::Zero(cfg.n_qubits, cfg.n_qubits);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto s = b.state(i);
      const double w = std::norm(mode.c(static_cast<Eigen::Index>(i)));
      p(s[0], s[1]) = p(s[1], s[0]) = w;
    }
    const auto label = momentum_pair_label(mode.c, cfg.n_qubits);
    a.name = "probability_grid";
    a.metadata["xi"] = xi;
    a.metadata["J"] = mode.J;
    a.metadata["Gamma"] = mode.Gamma;
    a.metadata["k1_d_over_pi"] = label.k1 / kPi;
    a.metadata["k2_d_over_pi"] = label.k2 / kPi;
    a.metadata["ambiguous"] = label.ambiguous;
    a.table = dense_matrix_table(p);
    return a;
  }

  const auto singles = single_excitation_modes(cfg);
  const int k_max = std::min(rc.k_max, cfg.n_qubits);
  a.name = "modes";
  a.table.columns = {"xi",         "J",         "Gamma",    "k1_d_over_pi", "k2_d_over_pi",
                     "peak_ratio", "ambiguous", "F_ansatz", "constituents"};
  for (const auto& m : modes) {
    double k1 = kNaN, k2 = kNaN, ratio = kNaN;
    std::int64_t amb = 0;
    if (rc.m_ex == 2) {
      const auto l = momentum_pair_label(m.c, cfg.n_qubits);
      k1 = l.k1 / kPi;
      k2 = l.k2 / kPi;
      ratio = l.peak_ratio;
      amb = l.ambiguous;
    }
    double f = kNaN;
    std::string cons;
    if (k_max >= rc.m_ex) {
      const auto best = best_constituents(singles, m.c, rc.m_ex, k_max);
      f = best.fidelity;
      cons = join(best.constituents);
    }
    a.table.add_row({integer(m.xi), num(m.J), num(m.Gamma), num(k1), num(k2), num(ratio), integer(amb),
                     num(f), cons});
  }
  return a;
}

Artifact cmd_ansatz(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  Artifact a;
  a.metadata = base_metadata(rc);

  if (rc.pair_grid > 0) {
    const int k = std::min(rc.pair_grid, cfg.n_qubits);
    SectorSolver solver(cfg, 2);
    const auto singles = single_excitation_modes(cfg);
    a.name = "ansatz_map";
    a.table.columns = {"xi1", "xi2", "fidelity", "exact_Gamma", "constituent_Gamma_sum"};
    for (int x1 = 1; x1 <= k; ++x1)
      for (int x2 = x1 + 1; x2 <= k; ++x2) {
        const auto ans = fermionic_ansatz(singles, {x1, x2});
        const auto match = solver.best_match(ans.c);
        const double sum = singles[static_cast<std::size_t>(x1 - 1)].Gamma +
                           singles[static_cast<std::size_t>(x2 - 1)].Gamma;
        a.table.add_row({integer(x1), integer(x2), num(match.fidelity), num(-2.0 * match.lambda.imag()),
                         num(sum)});
      }
    return a;
  }

  std::vector<int> xis = parse_int_list(rc.xi, "xi");
  if (xis.size() < 2) throw InvalidArgument("ansatz needs at least two xi labels");
  const auto n_list = parse_int_list(rc.n_list, "n_list");
  if (!n_list.empty()) {
    const auto s = infidelity_scaling(cfg, n_list, xis);
    a.name = "infidelity_scaling";
    a.metadata["slope"] = s.slope;
    a.metadata["saturated"] = s.saturated;
    a.table.columns = {"N", "fidelity", "infidelity"};
    for (std::size_t i = 0; i < s.n_list.size(); ++i)
      a.table.add_row({integer(s.n_list[i]), num(s.fidelity[i]), num(1.0 - s.fidelity[i])});
    return a;
  }
  const auto f = ansatz_fidelity(cfg, xis);
  a.name = "ansatz";
  a.table.columns = {"N", "constituents", "fidelity", "exact_J", "exact_Gamma", "constituent_Gamma_sum"};
  a.table.add_row({integer(cfg.n_qubits), join(f.constituents), num(f.fidelity), num(f.exact_lambda.real()),
                   num(f.exact_gamma), num(f.constituent_gamma_sum)});
  return a;
}

Artifact cmd_scaling(const RunConfig& rc) {
  Artifact a;
  a.name = "scaling";
  a.metadata = base_metadata(rc);
  a.table.columns = {"quantity", "label", "N", "value"};
  nlohmann::json fits = nlohmann::json::array();

  if (!rc.input.empty()) {
    std::ifstream f(rc.input);
    if (!f) throw InvalidArgument("cannot open input: " + rc.input);
    const auto doc = read_csv(f);
    const auto x = doc.numeric_column("x");
    const auto y = doc.numeric_column("y");
    const auto fit = loglog_fit(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
      a.table.add_row({rc.quantity, std::string("input"), num(x[i]), num(y[i])});
    auto fj = fit_json(fit);
    fj["label"] = "input";
    fits.push_back(fj);
    a.metadata["fits"] = fits;
    return a;
  }

  const ChainConfig cfg = chain_config(rc);
  const auto n_list = parse_int_list(rc.n_list, "n_list");
  if (n_list.size() < 3) throw InvalidArgument("scaling needs at least three N values");
  auto add_series = [&](const std::string& label, const std::vector<double>& values) {
    for (std::size_t i = 0; i < n_list.size(); ++i)
      a.table.add_row({rc.quantity, label, integer(n_list[i]), num(values[i])});
    std::vector<double> x(n_list.begin(), n_list.end());
    nlohmann::json fj = nlohmann::json::object();
    if (std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; }))
      fj = fit_json(loglog_fit(x, values));
    fj["label"] = label;
    fits.push_back(fj);
  };

  if (rc.quantity == "gamma" || rc.quantity == "gamma1") {
    const auto xis = rc.quantity == "gamma1" ? std::vector<int>{1} : parse_int_list(rc.xi, "xi");
    const auto s = subradiant_scaling_fit(cfg, n_list, xis);
    for (std::size_t k = 0; k < xis.size(); ++k)
      add_series("xi=" + std::to_string(xis[k]), s.gamma[k]);
    if (xis.size() >= 3) {
      a.metadata["slope_vs_xi"] = s.slope_vs_xi;
      a.metadata["n_for_xi"] = s.n_for_xi;
    }
  } else if (rc.quantity == "infidelity") {
    const auto s = infidelity_scaling(cfg, n_list, parse_int_list(rc.xi, "xi"));
    std::vector<double> inf;
    for (double f : s.fidelity) inf.push_back(1.0 - f);
    add_series(join(s.constituents), inf);
    a.metadata["saturated"] = s.saturated;
  } else if (rc.quantity == "additivity") {
    const auto d = decay_additivity(cfg, n_list, rc.m_ex);
    for (std::size_t k = 0; k < d.labels.size(); ++k) {
      std::vector<double> absr;
      for (double r : d.r[k]) absr.push_back(std::abs(r));
      add_series(join(d.labels[k]), absr);
    }
  } else if (rc.quantity == "epsilon") {
    const auto e = epsilon_scaling(cfg, n_list, detector_side_from_string(rc.side));
    add_series("epsilon", e.epsilon);
  } else {
    throw InvalidArgument("quantity must be gamma, gamma1, infidelity, additivity or epsilon");
  }
  a.metadata["fits"] = fits;
  return a;
}

Artifact cmd_evolve(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  const int m = rc.m_ex;
  if (m < 1 || m > cfg.n_qubits) throw InvalidArgument("m_ex out of range");
  if (!(rc.t_max > 0.0) || rc.n_t < 2) throw InvalidArgument("need t_max > 0 and n_t >= 2");
  const VecC psi = initial_vector(rc, cfg, m);
  const VecC target = sector_eigenstate(cfg, m, first_xi(rc));
  const LindbladGenerator gen(cfg, m);
  const auto snaps = m == 2 ? parse_double_list(rc.snapshots, "snapshots") : std::vector<double>{};
  for (double t : snaps)
    if (t < 0.0) throw InvalidArgument("snapshot times must be >= 0");
  const auto rec = evolve(BlockDensityMatrix::pure(cfg.n_qubits, m, psi), gen, linspace(0.0, rc.t_max, rc.n_t),
                          EvolutionTarget{target, m}, snaps);

  Artifact a;
  a.name = "trajectory";
  a.metadata = base_metadata(rc);
  a.metadata["target"] = "exact eigenstate xi=" + std::to_string(first_xi(rc));
  for (int k = 0; k <= m; ++k) a.table.columns.push_back("p" + std::to_string(k));
  a.table.columns.insert(a.table.columns.begin(), "t");
  a.table.columns.push_back("excitation_fraction");
  a.table.columns.push_back("fidelity");
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    std::vector<Cell> row{num(rec.t[i])};
    for (int k = 0; k <= m; ++k) row.push_back(num(rec.population[static_cast<std::size_t>(k)][i]));
    row.push_back(num(rec.excitation_fraction[i]));
    row.push_back(num(rec.target_fidelity[i]));
    a.table.add_row(std::move(row));
  }
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    Artifact s;
    s.name = "snapshot_" + std::to_string(i);
    s.metadata = base_metadata(rc);
    s.metadata["t"] = rec.snapshot_times[i];
    s.table = dense_matrix_table(rec.snapshots[i]);
    a.attachments.push_back(std::move(s));
  }
  return a;
}

Artifact cmd_prepare(const RunConfig& rc) {
  CavityConfig cc;
  cc.n_mirror = rc.n_qubits;
  cc.gamma_prime = rc.gamma_prime;
  cc.gamma_deph = rc.gamma_deph;
  cc.eta = rc.eta;
  const auto prepared = prepare_fock(cc, rc.m_ex);
  const auto retuned = phase_adjust_and_retune(prepared, rc.k_over_pi * kPi, rc.k1d_d_over_pi * kPi);
  const double f_k = conditional_fidelity(
      retuned.state, fock_state(retuned.config, rc.k_over_pi * kPi, rc.m_ex), rc.m_ex);

  Artifact a;
  a.name = "prepare";
  a.metadata = base_metadata(rc);
  a.report = {{"p_transfer", prepared.p_transfer},
              {"fidelity_mirror", prepared.fidelity_mirror},
              {"fidelity_k0", f_k},
              {"wait_times", prepared.wait_times},
              {"wait_guesses", prepared.wait_guesses},
              {"config",
               {{"n_mirror", cc.n_mirror},
                {"m_ex", rc.m_ex},
                {"gamma_prime", cc.gamma_prime},
                {"gamma_deph", cc.gamma_deph},
                {"eta", cc.eta},
                {"k_over_pi", rc.k_over_pi},
                {"retuned_k1d_d_over_pi", rc.k1d_d_over_pi}}}};
  a.table.columns = {"p_transfer", "fidelity_mirror", "fidelity_k0"};
  std::vector<Cell> row{num(prepared.p_transfer), num(prepared.fidelity_mirror), num(f_k)};
  for (std::size_t i = 0; i < prepared.wait_times.size(); ++i) {
    a.table.columns.push_back("wait_time_" + std::to_string(i + 1));
    row.push_back(num(prepared.wait_times[i]));
  }
  a.table.add_row(std::move(row));
  return a;
}

Artifact cmd_sweep_imperfections(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  constexpr int m = 2;
  const auto gps = parse_double_list(rc.gamma_prime_list, "gamma_prime_list");
  const auto gds = parse_double_list(rc.gamma_deph_list, "gamma_deph_list");
  if (gps.empty() || gds.empty()) throw InvalidArgument("imperfection lists must be nonempty");
  for (double v : gps)
    if (v < 0.0) throw InvalidArgument("gamma_prime_list must be >= 0");
  for (double v : gds)
    if (v < 0.0) throw InvalidArgument("gamma_deph_list must be >= 0");
  if (!(rc.t_max > 0.0) || rc.n_t < 2) throw InvalidArgument("need t_max > 0 and n_t >= 2");
  const EvolutionTarget target{sector_eigenstate(cfg, m, first_xi(rc)), m};

  std::function<BlockDensityMatrix(double, double)> init;
  if (rc.initial == "prepared") {
    if (cfg.n_qubits % 2 != 0) throw InvalidArgument("prepared initial state needs even N");
    init = [&](double gp, double gd) {
      CavityConfig cc;
      cc.n_mirror = cfg.n_qubits;
      cc.gamma_prime = gp;
      cc.gamma_deph = gd;
      cc.eta = rc.eta;
      return phase_adjust_and_retune(prepare_fock(cc, m), rc.k_over_pi * kPi, cfg.k1d_d).state;
    };
  } else if (rc.initial == "k0") {
    const VecC psi = fock_state(cfg, rc.k_over_pi * kPi, m);
    init = [&cfg, psi](double, double) { return BlockDensityMatrix::pure(cfg.n_qubits, m, psi); };
  } else {
    throw InvalidArgument("initial must be prepared or k0");
  }
  const auto pts = imperfection_sweep(cfg, gps, gds, init, target, linspace(0.0, rc.t_max, rc.n_t), rc.p_min);

  Artifact a;
  a.name = "sweep";
  a.metadata = base_metadata(rc);
  a.table.columns = {"gamma_prime", "gamma_deph", "attainable", "max_fidelity", "t_at_max", "population_at_max"};
  for (const auto& p : pts)
    a.table.add_row({num(p.gamma_prime), num(p.gamma_deph), integer(p.attainable),
                     num(p.attainable ? p.max_fidelity : kNaN), num(p.attainable ? p.t_at_max : kNaN),
                     num(p.attainable ? p.population_at_max : kNaN)});
  return a;
}

Artifact cmd_transfer_grid(const RunConfig& rc) {
  const auto gps = parse_double_list(rc.gamma_prime_list, "gamma_prime_list");
  const auto gds = parse_double_list(rc.gamma_deph_list, "gamma_deph_list");
  struct Point {
    double gp, gd, p, f;
  };
  std::vector<Point> pts;
  for (double gp : gps)
    for (double gd : gds) pts.push_back({gp, gd, 0.0, 0.0});
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      CavityConfig cc;
      cc.n_mirror = rc.n_qubits;
      cc.gamma_prime = pts[i].gp;
      cc.gamma_deph = pts[i].gd;
      cc.eta = rc.eta;
      const auto r = prepare_fock(cc, rc.m_ex);
      pts[i].p = r.p_transfer;
      pts[i].f = r.fidelity_mirror;
    } catch (...) {
#pragma omp critical(wgqed_transfer_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Artifact a;
  a.name = "transfer_grid";
  a.metadata = base_metadata(rc);
  a.table.columns = {"gamma_prime", "gamma_deph", "p_transfer", "fidelity_mirror"};
  for (const auto& p : pts) a.table.add_row({num(p.gp), num(p.gd), num(p.p), num(p.f)});
  return a;
}

Artifact cmd_g2(const RunConfig& rc) {
  const ChainConfig cfg = chain_config(rc);
  if (rc.m_ex < 1 || rc.m_ex > 2) throw InvalidArgument("g2 supports m_ex in {1, 2}");
  if (!(rc.t_max >= 0.0) || rc.n_t < 1) throw InvalidArgument("need t_max >= 0 and n_t >= 1");
  const auto singles = single_excitation_modes(cfg);
  if (singles.size() < 2) throw InvalidArgument("g2 needs N >= 2");
  const double dj = singles[0].J - singles[1].J;
  std::vector<double> tau;
  if (rc.tau_max > 0.0) {
    if (rc.n_tau < 2) throw InvalidArgument("n_tau must be >= 2");
    tau = linspace(0.0, rc.tau_max, rc.n_tau);
  } else {
    tau = default_tau_grid(dj);
  }
  const VecC psi = initial_vector(rc, cfg, rc.m_ex);
  const auto side = detector_side_from_string(rc.side);
  const auto rec = t2_surface(BlockDensityMatrix::pure(cfg.n_qubits, rc.m_ex, psi), cfg,
                              linspace(0.0, rc.t_max, rc.n_t), tau, side);

  Artifact a;
  a.name = "t2";
  a.metadata = base_metadata(rc);
  a.metadata["delta_j"] = std::abs(dj);
  a.metadata["tau_step"] = tau.size() > 1 ? tau[1] - tau[0] : 0.0;
  a.metadata["tau_points"] = tau.size();
  a.metadata["detector_side"] = to_string(side);
  a.table.columns = {"t", "tau", "T2"};
  for (std::size_t i = 0; i < rec.t.size(); ++i)
    for (std::size_t j = 0; j < rec.tau.size(); ++j)
      a.table.add_row({num(rec.t[i]), num(rec.tau[j]),
                       num(rec.t2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});

  std::vector<int> odd;
  for (int n = 1; n * kPi / std::abs(dj) <= tau.back(); n += 2) odd.push_back(n);
  const auto predicted = odd.empty() ? std::vector<double>{} : predicted_t2_maxima(dj, odd);
  Artifact maxima;
  maxima.name = "maxima";
  maxima.metadata = a.metadata;
  nlohmann::json per_t = nlohmann::json::array();
  for (std::size_t i = 0; i < rec.t.size(); ++i)
    per_t.push_back({{"t", rec.t[i]}, {"intensity", rec.intensity[i]}, {"detected", rec.maxima[i]}});
  maxima.report = {{"predicted", predicted}, {"n_odd", odd}, {"grid_step", a.metadata["tau_step"]},
                   {"rows", per_t}};
  a.attachments.push_back(std::move(maxima));
  return a;
}

std::vector<std::string> figure_ids() {
  return {"fig1", "fig2", "fig3", "fig5", "fig6", "figA1", "figA2", "figB1"};
}

std::vector<Artifact> cmd_figures(const RunConfig& rc) {
  const auto ids = figure_ids();
  if (rc.which != "all" && std::find(ids.begin(), ids.end(), rc.which) == ids.end())
    throw InvalidArgument("unknown figure id: " + rc.which);
  std::vector<Artifact> out;
  auto want = [&](const std::string& id) { return rc.which == "all" || rc.which == id; };
  auto add = [&](const std::string& id, Artifact a) {
    a.name = id + "_" + a.name;
    a.metadata["figure"] = id;
    out.push_back(std::move(a));
  };
  auto base = [&](const std::string& sub) {
    RunConfig c;
    c.subcommand = sub;
    c.format = rc.format;
    return c;
  };

  if (want("fig1")) {
    RunConfig c = base("spectrum");
    c.n_qubits = 30;
    c.k1d_d_over_pi = 0.2;
    add("fig1", cmd_spectrum(c));
    c.subcommand = "dispersion";
    add("fig1", cmd_dispersion(c));
    add("fig1", cmd_dispersion_curve(c));
    c.subcommand = "scaling";
    c.quantity = "gamma";
    c.xi = "1,2,3,4";
    c.n_list = "10,20,30,40,60";
    add("fig1", cmd_scaling(c));
  }
  if (want("fig2")) {
    RunConfig c = base("two-exc");
    c.n_qubits = 20;
    c.grid = true;
    for (double s : {0.2, 0.5}) {
      c.k1d_d_over_pi = s;
      Artifact g = cmd_two_exc(c);
      g.name += s == 0.2 ? "_0p2" : "_0p5";
      add("fig2", std::move(g));
    }
    RunConfig m = base("ansatz");
    m.n_qubits = 50;
    m.k1d_d_over_pi = 0.2;
    m.pair_grid = 8;
    add("fig2", cmd_ansatz(m));
    RunConfig p = base("polariton");
    p.n_qubits = 100;
    p.k1d_d_over_pi = 0.32;
    add("fig2", cmd_polariton(p));
  }
  if (want("fig3")) {
    RunConfig c = base("evolve");
    c.n_qubits = 10;
    c.k1d_d_over_pi = 0.7;
    c.t_max = 30.0;
    c.n_t = 301;
    add("fig3", cmd_evolve(c));
  }
  if (want("fig5")) {
    RunConfig c = base("prepare");
    c.n_qubits = 10;
    c.k1d_d_over_pi = 0.7;
    for (double gd : {0.0, 0.01, 0.1}) {
      c.gamma_deph = gd;
      Artifact a = cmd_prepare(c);
      a.name += gd == 0.0 ? "_gd0" : (gd == 0.01 ? "_gd0p01" : "_gd0p1");
      add("fig5", std::move(a));
    }
    RunConfig s = base("sweep-imperfections");
    s.n_qubits = 10;
    s.k1d_d_over_pi = 0.7;
    s.initial = "prepared";
    s.t_max = 50.0;
    s.n_t = 251;
    add("fig5", cmd_sweep_imperfections(s));
  }
  if (want("fig6")) {
    RunConfig c = base("g2");
    c.n_qubits = 10;
    c.k1d_d_over_pi = 0.7;
    c.t_max = 30.0;
    c.n_t = 4;
    add("fig6", cmd_g2(c));
    c.initial = "xi";
    Artifact x = cmd_g2(c);
    x.name += "_xi1";
    add("fig6", std::move(x));
  }
  if (want("figA1")) {
    std::string ns;
    for (int n = 16; n <= 60; n += 4) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    RunConfig c = base("scaling");
    c.quantity = "infidelity";
    c.n_list = ns;
    for (double s : {0.2, 0.5}) {
      for (const char* xi : {"1,2", "1,3", "2,3"}) {
        if (s == 0.2 && std::string(xi) != "1,2") continue;
        c.k1d_d_over_pi = s;
        c.xi = xi;
        Artifact a = cmd_scaling(c);
        a.name += std::string(s == 0.2 ? "_0p2_" : "_0p5_") + std::string{xi[0], xi[2]};
        add("figA1", std::move(a));
      }
    }
  }
  if (want("figA2")) {
    RunConfig c = base("scaling");
    c.quantity = "additivity";
    c.k1d_d_over_pi = 0.2;
    c.m_ex = 2;
    c.n_list = "16,20,24,28,32,36,40,44,48";
    Artifact a2 = cmd_scaling(c);
    a2.name += "_m2";
    add("figA2", std::move(a2));
    c.m_ex = 3;
    c.n_list = "16,20,24,28";
    Artifact a3 = cmd_scaling(c);
    a3.name += "_m3";
    add("figA2", std::move(a3));
  }
  if (want("figB1")) {
    RunConfig c = base("prepare");
    c.n_qubits = 10;
    c.m_ex = 2;
    add("figB1", cmd_transfer_grid(c));
  }
  return out;
}

}  // namespace wgqed::cli
