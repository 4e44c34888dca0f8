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

#include <cstdint>
#include <span>
#include <vector>

namespace wgqed {

std::uint64_t binomial(int n, int k);

// Lexicographically ordered m-subsets of {0..n-1}. Sites are 0-based here;
// user-facing output converts to 1-based labels.
class ExcitationBasis {
 public:
  ExcitationBasis(int n_sites, int m_ex);

  int n_sites() const { return n_; }
  int m_ex() const { return m_; }
  std::size_t size() const { return size_; }

  std::span<const int> state(std::size_t i) const {
    return {occ_.data() + i * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_)};
  }
  // Rank of a strictly increasing tuple.
  std::size_t rank(std::span<const int> tuple) const;
  std::vector<int> unrank(std::size_t i) const;

  bool occupied(std::size_t i, int site) const;
  // Index of the inversion image {n-1-s}.
  std::size_t mirror(std::size_t i) const;

 private:
  int n_;
  int m_;
  std::size_t size_;
  std::vector<int> occ_;
};

// Rank helpers for single-site edits; the result tuple stays sorted.
std::size_t rank_replace(const ExcitationBasis& b, std::span<const int> tuple, int remove_site,
                         int add_site);
std::size_t rank_remove(const ExcitationBasis& lower, std::span<const int> tuple, int remove_site);

}  // namespace wgqed
