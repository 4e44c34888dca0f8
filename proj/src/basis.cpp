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

#include "wgqed/basis.hpp"

#include <algorithm>
#include <array>

#include "wgqed/common.hpp"

namespace wgqed {
namespace {

constexpr int kMaxSites = 62;

struct BinomialTable {
  std::array<std::array<std::uint64_t, kMaxSites + 1>, kMaxSites + 1> c{};
  BinomialTable() {
    for (int n = 0; n <= kMaxSites; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& table() {
  static const BinomialTable t;
  return t;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > kMaxSites) throw InvalidArgument("binomial: n exceeds supported size");
  return table().c[n][k];
}

ExcitationBasis::ExcitationBasis(int n_sites, int m_ex) : n_(n_sites), m_(m_ex) {
  if (n_sites < 0 || n_sites > kMaxSites) throw InvalidArgument("basis: unsupported site count");
  if (m_ex < 0 || m_ex > n_sites) throw InvalidArgument("basis: m_ex must lie in [0, n_sites]");
  size_ = binomial(n_, m_);
  occ_.resize(size_ * static_cast<std::size_t>(m_));
  std::vector<int> t(m_);
  for (int i = 0; i < m_; ++i) t[i] = i;
  for (std::size_t s = 0; s < size_; ++s) {
    std::copy(t.begin(), t.end(), occ_.begin() + static_cast<std::ptrdiff_t>(s * m_));
    int i = m_ - 1;
    while (i >= 0 && t[i] == n_ - m_ + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < m_; ++j) t[j] = t[j - 1] + 1;
  }
}

std::size_t ExcitationBasis::rank(std::span<const int> tuple) const {
  // Lexicographic rank = C(n,m) - 1 - sum_i C(n-1-c_i, m-i).
  std::uint64_t r = size_ - 1;
  for (int i = 0; i < m_; ++i) r -= binomial(n_ - 1 - tuple[i], m_ - i);
  return static_cast<std::size_t>(r);
}

std::vector<int> ExcitationBasis::unrank(std::size_t i) const {
  auto s = state(i);
  return {s.begin(), s.end()};
}

bool ExcitationBasis::occupied(std::size_t i, int site) const {
  auto s = state(i);
  return std::binary_search(s.begin(), s.end(), site);
}

std::size_t ExcitationBasis::mirror(std::size_t i) const {
  auto s = state(i);
  std::vector<int> t(m_);
  for (int j = 0; j < m_; ++j) t[j] = n_ - 1 - s[m_ - 1 - j];
  return rank(t);
}

std::size_t rank_replace(const ExcitationBasis& b, std::span<const int> tuple, int remove_site,
                         int add_site) {
  int buf[64];
  int k = 0;
  bool placed = false;
  for (int s : tuple) {
    if (s == remove_site) continue;
    if (!placed && add_site < s) {
      buf[k++] = add_site;
      placed = true;
    }
    buf[k++] = s;
  }
  if (!placed) buf[k++] = add_site;
  return b.rank({buf, static_cast<std::size_t>(k)});
}

std::size_t rank_remove(const ExcitationBasis& lower, std::span<const int> tuple, int remove_site) {
  int buf[64];
  int k = 0;
  for (int s : tuple)
    if (s != remove_site) buf[k++] = s;
  return lower.rank({buf, static_cast<std::size_t>(k)});
}

}  // namespace wgqed
