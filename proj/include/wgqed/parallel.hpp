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

namespace wgqed {

inline constexpr const char* kThreadsEnv = "WGQED_NUM_THREADS";

// Applies WGQED_NUM_THREADS (a positive integer) to the OpenMP runtime and
// returns the thread count in effect. Throws InvalidArgument on a bad value.
int configure_threads_from_env();

int max_threads();

}  // namespace wgqed
