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

#include <vector>

namespace wgqed {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log intercept
  double r2 = 0.0;
};

// Ordinary least squares of log y on log x. Needs >= 3 positive points.
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wgqed
