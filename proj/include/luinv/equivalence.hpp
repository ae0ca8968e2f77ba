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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "luinv/invariants.hpp"
#include "luinv/oracle.hpp"
#include "luinv/states.hpp"

namespace luinv {

enum class Outcome { Equivalent, Inequivalent, Indeterminate };

std::string_view to_string(Outcome outcome);

/// labeling[i] is the index in the second ensemble paired with index i of
/// the first.
using Labeling = std::vector<int>;

inline constexpr std::size_t kDefaultPermutationCap = 10000;

struct FingerprintMatch {
  bool match = false;
  Labeling labeling;
  /// Empty on a match; otherwise the first differing invariant under the
  /// identity labelling, e.g. "Omega[0,2]: 0.51 vs 0.49".
  std::string detail;
  /// Spectra (and moments) agreed; only the labelled tensors differ.
  bool spectra_match = false;
};

/// Compares spectra, then J, then searches labelings that permute indices
/// within degeneracy blocks for one equating Omega, Theta, X and Y.
/// Throws SearchBudgetExceeded if the number of candidate labelings exceeds
/// `cap`.
FingerprintMatch compare_fingerprints(const InvariantFingerprint &f,
                                      const InvariantFingerprint &f_prime,
                                      const ToleranceConfig &cfg,
                                      std::size_t cap = kDefaultPermutationCap);

struct Intertwiner {
  ComplexMatrix v;                // unitary, phase-fixed
  double scalar_deviation = 0.0;  // |V^dagger V - (Tr V^dagger V / N) I|, relative
  double action_residual = 0.0;   // max_i |F_i v - v F'_i|_F
};

/// Finds the unitary v with family[i] v = v family_prime[i] for every i.
/// Stacks the Sylvester operators I (x) F_i - F'_i^T (x) I, extracts the
/// nullspace and requires it to be one dimensional.
/// Throws NoIntertwiner, AmbiguousIntertwiner or NotScalar.
Intertwiner solve_intertwiner(std::span<const ComplexMatrix> family,
                              std::span<const ComplexMatrix> family_prime,
                              const ToleranceConfig &cfg);

struct Witness {
  LocalUnitaryPair pair;
  double residual = 0.0;  // ||(u (x) w) rho (u (x) w)^dagger - rho'||_F
};

/// Builds (u, w) from the rho-side and theta-side intertwiners under the
/// given labeling and verifies it. Throws the intertwiner errors, or
/// VerificationFailed when the assembled pair misses rho' by more than eq_tol.
Witness extract_witness(const DensityMatrix &rho, const DensityMatrix &rho_prime,
                        const Labeling &labeling, const ToleranceConfig &cfg);

struct EquivalenceVerdict {
  Outcome outcome = Outcome::Indeterminate;
  std::optional<LocalUnitaryPair> witness;
  std::string detail;
  std::optional<double> residual;
  std::optional<OracleReport> oracle;
};

/// Full decision procedure for two density matrices. Never throws for
/// well-formed inputs of equal dimension; failures fold into the verdict.
/// Any invariant mismatch gives Inequivalent. Matching invariants give
/// Equivalent only for generic states, otherwise Indeterminate.
EquivalenceVerdict decide_equivalence(const DensityMatrix &rho,
                                      const DensityMatrix &rho_prime,
                                      const ToleranceConfig &cfg,
                                      const std::optional<OracleOptions> &oracle = {});

/// Pure states: equivalent iff Schmidt spectra agree; the witness comes from
/// the two singular value decompositions.
EquivalenceVerdict pure_decide(const PureState &psi, const PureState &psi_prime,
                               const ToleranceConfig &cfg);

}  // namespace luinv
