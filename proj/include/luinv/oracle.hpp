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
#include <optional>
#include <vector>

#include "luinv/linalg.hpp"
#include "luinv/states.hpp"

namespace luinv {

struct OracleOptions {
  int restarts = 20;
  int max_iter = 500;
  std::uint64_t seed = 0;
};

struct OracleReport {
  double best_cost = 0.0;  // ||(u (x) w) rho (u (x) w)^dagger - rho'||_F
  std::optional<LocalUnitaryPair> best_pair;
  int restarts_used = 0;
  int iterations = 0;      // summed over all restarts
  bool converged = false;  // best_cost <= oracle_tol
  std::vector<double> cost_trace;  // accepted costs of the winning restart
};

/// Multistart Riemannian gradient descent over U(N) x U(N) minimising the
/// Frobenius distance between (u (x) w) rho (u (x) w)^dagger and rho'.
/// Restart 0 starts at (I, I); later restarts start from Haar pairs drawn
/// from derive_seed(seed, restart). Stops early once a restart converges.
OracleReport optimize_local(const DensityMatrix &rho, const DensityMatrix &rho_prime,
                            const OracleOptions &opts, const ToleranceConfig &cfg);

/// Exact pure-state test: sorted Schmidt values (computed as eigenvalues of
/// A A^dagger) agree within eq_tol.
bool pure_oracle(const PureState &psi, const PureState &psi_prime,
                 const ToleranceConfig &cfg);

}  // namespace luinv
