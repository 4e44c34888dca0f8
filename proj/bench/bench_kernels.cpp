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

#include <benchmark/benchmark.h>

#include <random>

#include "wgqed/dynamics.hpp"
#include "wgqed/interaction.hpp"
#include "wgqed/kernels.hpp"

namespace {

using namespace wgqed;

ChainConfig chain(int n) {
  ChainConfig c;
  c.n_qubits = n;
  c.k1d_d = 0.7 * kPi;
  c.gamma_prime = 0.01;
  c.gamma_deph = 0.01;
  return c;
}

BlockDensityMatrix random_state(int n, int m_max) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::normal_distribution<double> g;
  auto r = BlockDensityMatrix::vacuum(n, m_max);
  for (auto& b : r.blocks) {
    MatC a(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx(g(rng), g(rng));
    b = a * a.adjoint();
  }
  return r;
}

template <Exec E>
void BM_LindbladRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LindbladGenerator gen(chain(n), 2);
  const auto rho = random_state(n, 2);
  BlockDensityMatrix out = rho;
  for (auto _ : state) {
    gen.apply(rho, out, E);
    benchmark::DoNotOptimize(out.blocks.back().data());
  }
}

template <Exec E>
void BM_HeffBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mats = interaction_matrices(chain(n));
  const ExcitationBasis basis(n, 2);
  for (auto _ : state) {
    MatC h = heff_block(mats, basis, 0.01, E);
    benchmark::DoNotOptimize(h.data());
  }
}

}  // namespace

BENCHMARK(BM_LindbladRhs<Exec::serial>)->Arg(10)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LindbladRhs<Exec::parallel>)->Arg(10)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HeffBlock<Exec::serial>)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HeffBlock<Exec::parallel>)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
