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

#include "wgqed/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "wgqed/common.hpp"

namespace wgqed {

int configure_threads_from_env() {
  if (const char* raw = std::getenv(kThreadsEnv); raw != nullptr && *raw != '\0') {
    const std::string_view s(raw);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size() || n < 1)
      throw InvalidArgument(std::string(kThreadsEnv) + " must be a positive integer");
    omp_set_num_threads(n);
  }
  return max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace wgqed
