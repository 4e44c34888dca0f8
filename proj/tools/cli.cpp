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

#include "cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "wgqed/common.hpp"
#include "wgqed/parallel.hpp"

namespace wgqed::cli {
namespace {

// Option groups a subcommand can opt into.
enum Opt : unsigned {
  kChain = 1u << 0,    // --n-qubits --k1d-d-over-pi
  kRates = 1u << 1,    // --gamma-prime --gamma-deph
  kMex = 1u << 2,      // --m-ex
  kTime = 1u << 3,     // --t-max --n-t
  kTau = 1u << 4,      // --tau-max --n-tau
  kXi = 1u << 5,       // --xi
  kK = 1u << 6,        // --k-over-pi
  kNList = 1u << 7,    // --n-list
  kInitial = 1u << 8,  // --initial
  kSide = 1u << 9,     // --side
};

struct Subcommand {
  std::string name;
  std::string help;
  unsigned opts = 0;
  std::function<void(RunConfig&)> defaults;
  std::function<void(CLI::App&, RunConfig&)> extra;
  std::function<Artifact(const RunConfig&)> run;  // empty for figures
};

void add_common(CLI::App& app, RunConfig& rc, unsigned opts) {
  if (opts & kChain) {
    app.add_option("--n-qubits", rc.n_qubits, "Number of qubits N")->capture_default_str();
    app.add_option("--k1d-d-over-pi", rc.k1d_d_over_pi, "Lattice phase k1D d in units of pi")
        ->capture_default_str();
  }
  if (opts & kRates) {
    app.add_option("--gamma-prime", rc.gamma_prime, "Non-waveguide loss rate")->capture_default_str();
    app.add_option("--gamma-deph", rc.gamma_deph, "Dephasing rate")->capture_default_str();
  }
  if (opts & kMex) app.add_option("--m-ex", rc.m_ex, "Excitation number")->capture_default_str();
  if (opts & kTime) {
    app.add_option("--t-max", rc.t_max, "Final time")->capture_default_str();
    app.add_option("--n-t", rc.n_t, "Number of time points")->capture_default_str();
  }
  if (opts & kTau) {
    app.add_option("--tau-max", rc.tau_max, "Final delay (0: four predicted periods)")
        ->capture_default_str();
    app.add_option("--n-tau", rc.n_tau, "Number of delay points when --tau-max > 0")
        ->capture_default_str();
  }
  if (opts & kXi) app.add_option("--xi", rc.xi, "Comma-separated mode labels (1-based)")->capture_default_str();
  if (opts & kK) app.add_option("--k-over-pi", rc.k_over_pi, "Spin-wave k d in units of pi")->capture_default_str();
  if (opts & kNList) app.add_option("--n-list", rc.n_list, "Comma-separated qubit numbers")->capture_default_str();
  if (opts & kSide)
    app.add_option("--side", rc.side, "Detector side")
        ->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
  app.add_option("--output", rc.output, "Output path ('-' for stdout)")->capture_default_str();
  app.add_option("--format", rc.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::vector<Subcommand> subcommands() {
  std::vector<Subcommand> s;
  s.push_back({"spectrum", "Single-excitation modes (xi, J, Gamma, k d / pi)", kChain, nullptr, nullptr,
               cmd_spectrum});
  s.push_back({"dispersion", "Finite-chain shifts against the infinite-chain Bloch shift", kChain, nullptr,
               nullptr, cmd_dispersion});
  s.push_back({"polariton", "Qubit-photon polariton bands", kChain,
               [](RunConfig& rc) {
                 rc.n_qubits = 100;
                 rc.k1d_d_over_pi = 0.32;
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--g", rc.g, "Qubit-photon coupling")->capture_default_str();
                 app.add_option("--omega-f", rc.omega_f, "Photon band cutoff")->capture_default_str();
                 app.add_option("--n-k", rc.n_k, "Number of k points")->capture_default_str();
               },
               cmd_polariton});
  s.push_back({"two-exc", "Multi-excitation modes with pair labels and ansatz fidelity", kChain | kMex | kXi,
               [](RunConfig& rc) { rc.n_qubits = 20; },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_flag("--grid", rc.grid, "Emit the |c_mn|^2 grid of mode --xi instead");
                 app.add_option("--k-max", rc.k_max, "Single modes searched for constituents")
                     ->capture_default_str();
               },
               cmd_two_exc});
  s.push_back({"ansatz", "Fermionic ansatz fidelity, N scan or pair map", kChain | kXi | kNList,
               [](RunConfig& rc) {
                 rc.n_qubits = 50;
                 rc.xi = "1,2";
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--pair-grid", rc.pair_grid, "Fidelity map over pairs xi1 < xi2 <= K")
                     ->capture_default_str();
               },
               cmd_ansatz});
  s.push_back({"scaling", "Log-log scaling fits over N", kChain | kMex | kXi | kNList | kSide,
               [](RunConfig& rc) {
                 rc.n_list = "10,20,30,40,60";
                 rc.xi = "1,2,3,4";
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--quantity", rc.quantity, "gamma, gamma1, infidelity, additivity or epsilon")
                     ->check(CLI::IsMember({"gamma", "gamma1", "infidelity", "additivity", "epsilon"}))
                     ->capture_default_str();
                 app.add_option("--input", rc.input, "CSV with columns x,y to fit instead of computing")
                     ->capture_default_str();
               },
               cmd_scaling});
  s.push_back({"evolve", "Master-equation trajectory", kChain | kRates | kMex | kTime | kXi | kK | kInitial,
               [](RunConfig& rc) {
                 rc.n_qubits = 10;
                 rc.k1d_d_over_pi = 0.7;
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--snapshots", rc.snapshots, "Times of pair-population snapshots")
                     ->capture_default_str();
               },
               cmd_evolve});
  s.push_back({"prepare", "Ancilla-based Fock-state preparation", kChain | kRates | kMex | kK,
               [](RunConfig& rc) {
                 rc.n_qubits = 10;
                 rc.k1d_d_over_pi = 0.7;
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--eta", rc.eta, "Ancilla coupling scale")->capture_default_str();
               },
               cmd_prepare});
  s.push_back({"sweep-imperfections", "Maximum fidelity over a loss/dephasing grid",
               kChain | kTime | kXi | kK | kInitial,
               [](RunConfig& rc) {
                 rc.n_qubits = 10;
                 rc.k1d_d_over_pi = 0.7;
                 rc.t_max = 50.0;
                 rc.n_t = 251;
                 rc.initial = "prepared";
               },
               [](CLI::App& app, RunConfig& rc) {
                 app.add_option("--gamma-prime-list", rc.gamma_prime_list, "Loss rates")->capture_default_str();
                 app.add_option("--gamma-deph-list", rc.gamma_deph_list, "Dephasing rates")
                     ->capture_default_str();
                 app.add_option("--p-min", rc.p_min, "Minimum population constraint")->capture_default_str();
                 app.add_option("--eta", rc.eta, "Ancilla coupling scale")->capture_default_str();
               },
               cmd_sweep_imperfections});
  s.push_back({"g2", "Two-photon delay correlation T2(t, tau)",
               kChain | kRates | kMex | kTime | kTau | kXi | kK | kInitial | kSide,
               [](RunConfig& rc) {
                 rc.n_qubits = 10;
                 rc.k1d_d_over_pi = 0.7;
                 rc.t_max = 30.0;
                 rc.n_t = 4;
               },
               nullptr, cmd_g2});
  s.push_back({"figures", "Canned parameter sets for every figure", 0,
               [](RunConfig& rc) { rc.output = "figures"; },
               [](CLI::App& app, RunConfig& rc) {
                 std::vector<std::string> ids = figure_ids();
                 ids.push_back("all");
                 app.add_option("--which", rc.which, "Figure id or 'all'")
                     ->check(CLI::IsMember(ids))
                     ->capture_default_str();
               },
               nullptr});
  return s;
}

void write_to(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text(path, text);
}

void emit(const Artifact& a, const std::string& path, const std::string& format, std::ostream& out) {
  write_to(path, render(a, format), out);
  if (format != "csv" || path.empty() || path == "-") return;
  for (const auto& sub : a.attachments)
    write_text(path + "." + sub.name + (sub.report_only() ? ".json" : ".csv"), render(sub, "csv"));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collective decay of qubit chains coupled to a waveguide", "wgqed"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  auto subs = subcommands();
  std::map<std::string, RunConfig> configs;
  for (auto& s : subs) {
    RunConfig& rc = configs[s.name];
    rc.subcommand = s.name;
    if (s.defaults) s.defaults(rc);
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(*sub, rc, s.opts);
    if (s.opts & kInitial)
      sub->add_option("--initial", rc.initial, "Initial state (k0, xi, prepared where supported)")
          ->capture_default_str();
    if (s.extra) s.extra(*sub, rc);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    configure_threads_from_env();
    for (auto& s : subs) {
      if (!app.got_subcommand(s.name)) continue;
      const RunConfig& rc = configs[s.name];
      if (s.run) {
        emit(s.run(rc), rc.output, rc.format, out);
      } else {
        std::filesystem::create_directories(rc.output);
        for (const auto& a : cmd_figures(rc)) {
          const auto path = (std::filesystem::path(rc.output) / a.name).string() +
                            (rc.format == "json" || a.report_only() ? ".json" : ".csv");
          emit(a, path, rc.format, out);
        }
      }
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace wgqed::cli
