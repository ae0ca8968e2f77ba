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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace luinv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical policy shared by every stage of the pipeline.
///
/// eq_tol     relative tolerance when comparing invariant values
/// rank_tol   relative singular-value cutoff (nullspaces, genericity, rank)
/// oracle_tol Frobenius distance below which the optimizer reports success
struct ToleranceConfig {
  double eq_tol = 1e-8;
  double rank_tol = 1e-8;
  double oracle_tol = 1e-8;

  /// Throws std::invalid_argument unless every tolerance lies in (0, 1).
  void check() const;
};

/// max |a_ij - b_ij| <= tol. Shapes must agree, otherwise false.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol);

/// |a - b| <= tol * max(1, |a|, |b|)
bool values_close(Complex a, Complex b, double tol);

double max_abs(const ComplexMatrix &m);

struct HermitianEig {
  RealVector values;     // descending
  ComplexMatrix vectors; // column k belongs to values(k)
};

/// Eigendecomposition of a Hermitian matrix. Inputs whose anti-Hermitian
/// part is below rank_tol * max(1, |M|) are symmetrized first; anything
/// larger is rejected with ErrorCode::NotHermitian.
HermitianEig hermitian_eig(const ComplexMatrix &m, const ToleranceConfig &cfg);

struct Svd {
  ComplexMatrix u;
  RealVector singular;  // descending, nonnegative
  ComplexMatrix v;      // m = u * diag(singular) * v^dagger
};

/// Full SVD (u and v square unitary).
Svd svd(const ComplexMatrix &m);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Orthonormal basis (as columns) of the right nullspace of m. A right
/// singular vector belongs to the nullspace when its singular value is
/// <= rank_tol * sigma_max; missing singular values of a wide matrix count
/// as zero. The zero matrix has the full space as its nullspace.
ComplexMatrix nullspace(const ComplexMatrix &m, const ToleranceConfig &cfg);

/// exp(i h) for Hermitian h, computed spectrally so the result is unitary
/// to machine precision.
ComplexMatrix exp_i_hermitian(const ComplexMatrix &h);

/// Groups of indices whose (descending) values lie within
/// tol * max(1, |values(0)|) of their neighbour.
std::vector<std::vector<int>> degeneracy_blocks(const RealVector &values,
                                                double tol);

/// Partial traces on C^{n1} (x) C^{n2} in the row-major product basis.
ComplexMatrix partial_trace_first(const ComplexMatrix &m, int n1, int n2);
ComplexMatrix partial_trace_second(const ComplexMatrix &m, int n1, int n2);

/// Matrix with iid standard complex Gaussian entries (E|z|^2 = 1).
ComplexMatrix random_ginibre(int rows, int cols, std::mt19937_64 &rng);

/// Haar-distributed unitary from the QR factorisation of a Ginibre matrix,
/// with the phases of diag(R) pushed into Q. Pure function of (n, seed).
ComplexMatrix random_haar_unitary(int n, std::uint64_t seed);

/// Wishart state G G^dagger / Tr(G G^dagger) with G a d x d Ginibre matrix.
ComplexMatrix random_density(int d, std::uint64_t seed);

/// Mixes a base seed with a stream index (splitmix64), for deriving
/// independent generator seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace luinv
