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

#include <string>
#include <vector>

#include "wgqed/io.hpp"

namespace wgqed::cli {

// Every option any subcommand accepts; each subcommand registers a subset.
struct RunConfig {
  std::string subcommand;
  int n_qubits = 30;
  double k1d_d_over_pi = 0.2;
  double gamma_prime = 0.0;
  double gamma_deph = 0.0;
  int m_ex = 2;
  double t_max = 20.0;
  int n_t = 201;
  double tau_max = 0.0;  // 0 selects the default grid
  int n_tau = 201;
  std::string xi = "1";
  double k_over_pi = 0.0;
  std::string n_list;
  std::string output = "-";
  std::string format = "csv";

  std::string initial = "k0";
  std::string side = "left";
  std::string quantity = "gamma";
  std::string input;
  std::string which = "all";
  std::string gamma_prime_list = "0,0.001,0.01,0.1";
  std::string gamma_deph_list = "0,0.001,0.01,0.1";
  std::string snapshots = "0,5,20";
  double eta = 1.0;
  double g = 0.01;
  double omega_f = 10.0;
  double p_min = 0.2;
  int n_k = 401;
  int pair_grid = 0;
  int k_max = 6;
  bool grid = false;
};

// One output file. In CSV mode attachments go to sibling files
// "<output>.<name>.csv" (skipped on stdout); JSON output embeds them under
// "attachments".
struct Artifact {
  std::string name;
  nlohmann::json metadata = nlohmann::json::object();
  Table table;
  // When set, JSON output is this report plus "metadata" instead of the table;
  // an artifact with a report and no columns is always written as JSON.
  nlohmann::json report;
  std::vector<Artifact> attachments;

  bool report_only() const { return !report.is_null() && table.columns.empty(); }
};

// Serialized primary content in the given format ("csv" or "json").
std::string render(const Artifact& a, const std::string& format);

std::vector<int> parse_int_list(const std::string& s, const std::string& what);
std::vector<double> parse_double_list(const std::string& s, const std::string& what);
nlohmann::json base_metadata(const RunConfig& rc);

Artifact cmd_spectrum(const RunConfig& rc);
Artifact cmd_dispersion(const RunConfig& rc);
Artifact cmd_dispersion_curve(const RunConfig& rc);
Artifact cmd_polariton(const RunConfig& rc);
Artifact cmd_two_exc(const RunConfig& rc);
Artifact cmd_ansatz(const RunConfig& rc);
Artifact cmd_scaling(const RunConfig& rc);
Artifact cmd_evolve(const RunConfig& rc);
Artifact cmd_prepare(const RunConfig& rc);
Artifact cmd_sweep_imperfections(const RunConfig& rc);
Artifact cmd_transfer_grid(const RunConfig& rc);
Artifact cmd_g2(const RunConfig& rc);

// Canned parameter sets; `which` is a figure id or "all".
std::vector<Artifact> cmd_figures(const RunConfig& rc);
std::vector<std::string> figure_ids();

}  // namespace wgqed::cli
