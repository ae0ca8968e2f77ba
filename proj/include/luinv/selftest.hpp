// Copyright 2026 The luinv Authors
//
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
#include <string>
#include <vector>

#include "luinv/linalg.hpp"

namespace luinv {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string message;
};

/// Property battery over random states at N = 2 and 3: LU invariance of the
/// fingerprint, orbit round trips, separation, moments, structure constants,
/// non-generic detection, the pure-state path, intertwiners and tensor
/// symmetries. `trials` states are drawn per dimension and property.
/// The pipeline runs under `cfg`; the pass thresholds are fixed.
std::vector<CheckResult> run_selftest(std::uint64_t seed, int trials,
                                      const ToleranceConfig &cfg);

}  // namespace luinv
