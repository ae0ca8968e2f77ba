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

#include <span>
#include <string>
#include <vector>

#include "luinv/linalg.hpp"
#include "luinv/states.hpp"

namespace luinv {

/// Dense n x n x n complex tensor, last index fastest.
class CubicTensor {
 public:
  CubicTensor() = default;
  explicit CubicTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n) {}

  int extent() const { return n_; }
  Complex &operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Complex &operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  const std::vector<Complex> &data() const { return data_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<Complex> data_;
};

struct MetricTensors {
  RealMatrix omega;  // Tr(rho_i rho_j)
  RealMatrix theta;  // Tr(theta_i theta_j)
};

struct CubicTensors {
  CubicTensor x;  // Tr(rho_i rho_j rho_k)
  CubicTensor y;  // Tr(theta_i theta_j theta_k)
};

struct GenericityReport {
  bool generic = false;
  bool full_rank = false;      // n == N^2
  double omega_ratio = 0.0;    // sigma_min / sigma_max of Omega
  double theta_ratio = 0.0;
};

/// Expansion coefficients of products in the spanning family {rho_k}:
/// rho_i rho_j = sum_k c(i, j, k) rho_k, and f(i, j, k) = c(i,j,k) - c(j,i,k).
struct StructureConstants {
  CubicTensor c;
  CubicTensor f;
};

/// The complete invariant set of a bipartite density matrix under the
/// canonical eigenstate labelling (descending eigenvalues).
struct InvariantFingerprint {
  int dim = 0;
  int rank = 0;
  std::vector<double> spectrum;
  std::vector<double> moments;  // J^s for s = 1..N^2
  RealMatrix omega;
  RealMatrix theta;
  CubicTensor x;
  CubicTensor y;
  std::vector<std::vector<int>> degeneracy_blocks;
  GenericityReport genericity;
};

/// I_alpha = Tr (A A^dagger)^alpha for alpha = 1..N.
std::vector<double> pure_invariants(const PureState &psi);

/// J^s = sum_i lambda_i^s for s = 1..N^2 (equals Tr rho^s).
std::vector<double> j_moments(const EigenEnsemble &ens);

/// Omega and Theta for the n members of rp. Padding to N^2 x N^2 is
/// implicit: a rank-deficient ensemble is never generic.
MetricTensors metric_tensors(const ReducedPair &rp);

CubicTensors cubic_tensors(const ReducedPair &rp);

/// Generic iff n == N^2 and both Gram matrices have sigma_min above
/// rank_tol * sigma_max.
GenericityReport is_generic(const RealMatrix &omega, const RealMatrix &theta,
                            int dim, const ToleranceConfig &cfg);

/// c(i,j,l) = sum_k X(i,j,k) [Omega^{-1}](k,l). Throws SingularOmega when
/// Omega fails the rank test.
StructureConstants structure_constants(const RealMatrix &omega, const CubicTensor &x,
                                       const ToleranceConfig &cfg);

/// Tr(rho_{i1} ... rho_{im}) for m >= 2 evaluated purely from the structure
/// constants and Omega, by contracting the chain
///   C^{a1}_{i1 i2} C^{a2}_{a1 i3} ... C^{a(m-2)}_{a(m-3) i(m-1)} Omega_{a(m-2) im}.
Complex reduce_trace(std::span<const int> indices, const StructureConstants &sc,
                     const RealMatrix &omega);

InvariantFingerprint fingerprint(const DensityMatrix &rho, const ToleranceConfig &cfg);

/// Same, from an already computed ensemble.
InvariantFingerprint fingerprint(const EigenEnsemble &ens, const ToleranceConfig &cfg);

/// Canonical text form of a fingerprint: fields in the order
/// N, n, spectrum, J, Omega, Theta, X, Y (matrices and tensors row-major,
/// complex entries as re then im), each number rounded to 10 decimals.
std::string canonical_serialization(const InvariantFingerprint &fp);

/// Lower-case hex SHA-256 of canonical_serialization(fp).
std::string fingerprint_key(const InvariantFingerprint &fp);

}  // namespace luinv
