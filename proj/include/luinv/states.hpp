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

#include <variant>
#include <vector>

#include "luinv/linalg.hpp"

namespace luinv {

// Basis convention: the product vector |i> (x) |j> of C^N (x) C^N sits at
// row N*i + j (0-based), so the first factor indexes rows of a coefficient
// matrix and the second factor indexes columns. Under this convention the
// local map u (x) w sends a coefficient matrix A to u * A * w^T.

/// Fixed tolerance for the normalization, trace and positivity checks of
/// validated states.
inline constexpr double kStateTol = 1e-10;

enum class StateKind { Pure, Mixed };

/// Bipartite pure state sum_ij a_ij |i>|j> held as its N x N coefficient
/// matrix. Unit Frobenius norm is guaranteed by construction.
class PureState {
 public:
  /// Throws BadDimension or NotNormalized.
  static PureState validated(const ComplexMatrix &coeffs, int dim);

  int dim() const { return dim_; }
  const ComplexMatrix &coeffs() const { return coeffs_; }
  /// The N^2 state vector in the row-major product basis.
  ComplexVector vector() const;

 private:
  PureState(int dim, ComplexMatrix coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {}
  int dim_;
  ComplexMatrix coeffs_;
};

/// Density matrix on C^N (x) C^N: Hermitian, PSD, unit trace.
class DensityMatrix {
 public:
  /// Throws BadDimension, NotHermitian, NotNormalized or NotPSD. Hermiticity
  /// violations below rank_tol are symmetrized away.
  static DensityMatrix validated(const ComplexMatrix &rho, int dim,
                                 const ToleranceConfig &cfg);

  int dim() const { return dim_; }
  const ComplexMatrix &matrix() const { return rho_; }

 private:
  DensityMatrix(int dim, ComplexMatrix rho) : dim_(dim), rho_(std::move(rho)) {}
  int dim_;
  ComplexMatrix rho_;
};

using State = std::variant<PureState, DensityMatrix>;

State validate(const ComplexMatrix &raw, int dim, StateKind kind,
               const ToleranceConfig &cfg);

/// The pair (u, w) of local unitaries acting as u (x) w.
class LocalUnitaryPair {
 public:
  /// Throws NotUnitary or DimensionMismatch.
  static LocalUnitaryPair validated(ComplexMatrix u, ComplexMatrix w);
  static LocalUnitaryPair identity(int dim);

  int dim() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix &u() const { return u_; }
  const ComplexMatrix &w() const { return w_; }
  ComplexMatrix kron() const { return luinv::kron(u_, w_); }

 private:
  LocalUnitaryPair(ComplexMatrix u, ComplexMatrix w) : u_(std::move(u)), w_(std::move(w)) {}
  ComplexMatrix u_;
  ComplexMatrix w_;
};

/// Spectral decomposition rho = sum_i lambda_i |nu_i><nu_i| restricted to
/// eigenvalues above rank_tol, with every |nu_i> reshaped into its
/// coefficient matrix A_i.
struct EigenEnsemble {
  int dim = 0;
  std::vector<double> lambdas;             // descending
  std::vector<ComplexMatrix> coeff_mats;   // A_i, unit Frobenius norm
  std::vector<std::vector<int>> degeneracy_blocks;

  int rank() const { return static_cast<int>(lambdas.size()); }
  bool has_degeneracy() const;
};

/// rho_i = A_i A_i^dagger and theta_i = A_i^dagger A_i: the reduced states
/// of each eigenvector on the first and (conjugated) second factor.
struct ReducedPair {
  std::vector<ComplexMatrix> rhos;
  std::vector<ComplexMatrix> thetas;
};

/// Reshape an N^2 vector into its N x N coefficient matrix and back.
ComplexMatrix to_coefficients(const ComplexVector &v, int dim);
ComplexVector from_coefficients(const ComplexMatrix &a);

/// Multiplies m by the phase that makes its largest-magnitude entry real
/// and positive (first such entry in row-major order on ties).
void fix_phase(ComplexMatrix &m);

EigenEnsemble eigen_ensemble(const DensityMatrix &rho, const ToleranceConfig &cfg);
ReducedPair reduced_pair(const EigenEnsemble &ens);

PureState apply_local(const PureState &psi, const LocalUnitaryPair &lu);
DensityMatrix apply_local(const DensityMatrix &rho, const LocalUnitaryPair &lu);

/// Squared Schmidt coefficients (eigenvalues of A A^dagger), descending.
RealVector schmidt(const PureState &psi);

/// |psi><psi| as a (rank one) density matrix.
DensityMatrix projector(const PureState &psi);

/// Random pure state with normalized Ginibre coefficients.
PureState random_pure(int dim, std::uint64_t seed);

}  // namespace luinv
