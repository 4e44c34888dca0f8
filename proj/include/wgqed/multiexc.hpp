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

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "wgqed/basis.hpp"
#include "wgqed/common.hpp"
#include "wgqed/config.hpp"
#include "wgqed/linalg.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed {

struct SectorMode {
  int xi = 0;  // 1 = most subradiant within the sector
  VecC c;
  cplx lambda;
  double J = 0.0;
  double Gamma = 0.0;
  double residual = 0.0;
};

// Diagonalizes one excitation sector block by block under site inversion.
class SectorSolver {
 public:
  SectorSolver(const ChainConfig& config, int m_ex);

  const ExcitationBasis& basis() const { return basis_; }
  const MatC& heff() const { return h_; }

  struct Match {
    double fidelity = 0.0;
    cplx lambda;
    VecC vector;
  };
  // Exact eigenstate with the largest overlap with the trial state.
  Match best_match(const VecC& trial);

  // All eigenvalues sorted by decay rate (ties by shift).
  std::vector<cplx> sorted_eigenvalues();
  // All modes with vectors, sorted and gauge-fixed.
  std::vector<SectorMode> modes();

 private:
  struct Block {
    EigenPairs pairs;
    bool has_vectors = false;
  };
  Block& block(int sign, bool vectors);
  VecC lift(const VecC& v, int sign) const;

  ChainConfig config_;
  ExcitationBasis basis_;
  MatC h_;
  std::unique_ptr<ParitySplit> split_;
  std::map<int, Block> blocks_;  // keys +1, -1, 0 (unsplit)
};

std::vector<SectorMode> multi_excitation_modes(const ChainConfig& config, int m_ex);

struct PairLabel {
  double k1 = 0.0;  // k d in [0, pi], k1 <= k2
  double k2 = 0.0;
  double peak_ratio = 0.0;  // top / second local maximum of the folded spectrum
  bool ambiguous = false;
};

// 2D DFT label of a two-excitation state stored in ExcitationBasis(n, 2) order.
PairLabel momentum_pair_label(const VecC& c, int n_sites, int pad_factor = 4,
                              double ambiguity_ratio = 1.05);

struct FermionicAnsatz {
  std::vector<int> constituents;  // single-mode xi labels (1-based) when known
  VecC c;                         // in ExcitationBasis(n, m) order, unit norm
  double norm_factor = 0.0;       // the prefactor that normalizes the determinant
};

// Determinant combination of m = singles.size() single-excitation amplitudes.
FermionicAnsatz fermionic_ansatz(const std::vector<VecC>& singles,
                                 std::vector<int> constituents = {});

FermionicAnsatz fermionic_ansatz(const std::vector<EigenMode>& modes,
                                 const std::vector<int>& xis);

struct AnsatzFidelity {
  std::vector<int> constituents;
  double fidelity = 0.0;
  cplx exact_lambda;
  double exact_gamma = 0.0;
  double constituent_gamma_sum = 0.0;
};

// F = |<ansatz|psi>|^2 against the exact sector eigenstate of largest overlap.
AnsatzFidelity ansatz_fidelity(const ChainConfig& config, const std::vector<int>& xis);

// Among tuples of the k_max lowest single modes, the constituents whose
// ansatz best matches the given sector state.
AnsatzFidelity best_constituents(const std::vector<EigenMode>& singles, const VecC& exact,
                                 int m_ex, int k_max);

struct InfidelityScaling {
  std::vector<int> n_list;
  std::vector<int> constituents;
  std::vector<double> fidelity;
  double slope = 0.0;  // d log(1-F) / d log N
  bool saturated = false;
};

InfidelityScaling infidelity_scaling(const ChainConfig& tmpl, const std::vector<int>& n_list,
                                     const std::vector<int>& xis);

struct DecayAdditivity {
  int m_ex = 2;
  std::vector<int> n_list;
  std::vector<std::vector<int>> labels;          // constituent xi tuples
  std::vector<std::vector<double>> r;            // [label][N]
  std::vector<std::vector<double>> fidelity;     // [label][N]
  std::vector<double> slope;                     // per label, log|r| vs log N
};

// Labels are the constituent tuples of the `count` most subradiant exact
// states at the first N; each is tracked through the list by best overlap.
DecayAdditivity decay_additivity(const ChainConfig& tmpl, const std::vector<int>& n_list, int m_ex,
                                 int count = 4, int k_max = 6);

}  // namespace wgqed
