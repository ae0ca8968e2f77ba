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

#include "luinv/states.hpp"

#include <cmath>
#include <string>

#include "luinv/error.hpp"

namespace luinv {

namespace {

void require_square(const ComplexMatrix &m, Eigen::Index size, const char *what) {
  if (m.rows() != size || m.cols() != size) {
    throw Error(ErrorCode::BadDimension,
                std::string(what) + " must be " + std::to_string(size) + "x" +
                    std::to_string(size) + ", got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

bool is_unitary(const ComplexMatrix &m, double tol) {
  if (m.rows() != m.cols()) return false;
  return approx_equal(m.adjoint() * m, ComplexMatrix::Identity(m.rows(), m.cols()), tol);
}

}  // namespace

PureState PureState::validated(const ComplexMatrix &coeffs, int dim) {
  if (dim < 1) throw Error(ErrorCode::BadDimension, "local dimension must be >= 1");
  require_square(coeffs, dim, "pure-state coefficient matrix");
  const double norm2 = coeffs.squaredNorm();
  if (std::abs(norm2 - 1.0) > kStateTol) {
    throw Error(ErrorCode::NotNormalized,
                "sum |a_ij|^2 = " + std::to_string(norm2));
  }
  return PureState(dim, coeffs);
}

ComplexVector PureState::vector() const { return from_coefficients(coeffs_); }

DensityMatrix DensityMatrix::validated(const ComplexMatrix &rho, int dim,
                                       const ToleranceConfig &cfg) {
  if (dim < 1) throw Error(ErrorCode::BadDimension, "local dimension must be >= 1");
  require_square(rho, static_cast<Eigen::Index>(dim) * dim, "density matrix");
  // Throws NotHermitian for asymmetry above rank_tol.
  const HermitianEig eig = hermitian_eig(rho, cfg);
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw Error(ErrorCode::NotNormalized, "trace = " + std::to_string(tr));
  }
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -kStateTol) {
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(min_eig));
  }
  return DensityMatrix(dim, (rho + rho.adjoint()) / 2.0);
}

State validate(const ComplexMatrix &raw, int dim, StateKind kind,
               const ToleranceConfig &cfg) {
  if (kind == StateKind::Pure) return PureState::validated(raw, dim);
  return DensityMatrix::validated(raw, dim, cfg);
}

LocalUnitaryPair LocalUnitaryPair::validated(ComplexMatrix u, ComplexMatrix w) {
  if (u.rows() != w.rows() || u.cols() != w.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "u and w must share a dimension");
  }
  if (!is_unitary(u, kStateTol) || !is_unitary(w, kStateTol)) {
    throw Error(ErrorCode::NotUnitary, "local factors must be unitary");
  }
  return LocalUnitaryPair(std::move(u), std::move(w));
}

LocalUnitaryPair LocalUnitaryPair::identity(int dim) {
  return LocalUnitaryPair(ComplexMatrix::Identity(dim, dim),
                          ComplexMatrix::Identity(dim, dim));
}

bool EigenEnsemble::has_degeneracy() const {
  for (const auto &b : degeneracy_blocks) {
    if (b.size() > 1) return true;
  }
  return false;
}

ComplexMatrix to_coefficients(const ComplexVector &v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw Error(ErrorCode::BadDimension, "vector length must be N^2");
  }
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = v(dim * i + j);
  }
  return a;
}

ComplexVector from_coefficients(const ComplexMatrix &a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  ComplexVector v(rows * cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) v(cols * i + j) = a(i, j);
  }
  return v;
}

void fix_phase(ComplexMatrix &m) {
  double best = -1.0;
  Complex pivot(1.0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double mag = std::abs(m(i, j));
      // Strict comparison keeps the first entry among near-equal maxima.
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        pivot = m(i, j);
      }
    }
  }
  if (best > 0.0) m *= std::conj(pivot) / best;
}

EigenEnsemble eigen_ensemble(const DensityMatrix &rho, const ToleranceConfig &cfg) {
  const HermitianEig eig = hermitian_eig(rho.matrix(), cfg);
  EigenEnsemble ens;
  ens.dim = rho.dim();
  Eigen::Index n = 0;
  while (n < eig.values.size() && eig.values(n) > cfg.rank_tol) ++n;
  for (Eigen::Index k = 0; k < n; ++k) {
    ens.lambdas.push_back(eig.values(k));
    ComplexMatrix a = to_coefficients(eig.vectors.col(k), ens.dim);
    a /= a.norm();
    fix_phase(a);
    ens.coeff_mats.push_back(std::move(a));
  }
  ens.degeneracy_blocks = degeneracy_blocks(eig.values.head(n), cfg.eq_tol);
  return ens;
}

ReducedPair reduced_pair(const EigenEnsemble &ens) {
  ReducedPair rp;
  rp.rhos.reserve(ens.coeff_mats.size());
  rp.thetas.reserve(ens.coeff_mats.size());
  for (const ComplexMatrix &a : ens.coeff_mats) {
    rp.rhos.push_back(a * a.adjoint());
    rp.thetas.push_back(a.adjoint() * a);
  }
  return rp;
}

PureState apply_local(const PureState &psi, const LocalUnitaryPair &lu) {
  if (lu.dim() != psi.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "local unitaries do not match the state");
  }
  ComplexMatrix a = lu.u() * psi.coeffs() * lu.w().transpose();
  a /= a.norm();
  return PureState::validated(a, psi.dim());
}

DensityMatrix apply_local(const DensityMatrix &rho, const LocalUnitaryPair &lu) {
  if (lu.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "local unitaries do not match the state");
  }
  const ComplexMatrix k = lu.kron();
  ComplexMatrix out = k * rho.matrix() * k.adjoint();
  out /= out.trace().real();
  return DensityMatrix::validated(out, rho.dim(), ToleranceConfig{});
}

RealVector schmidt(const PureState &psi) {
  const RealVector s = svd(psi.coeffs()).singular;
  return s.cwiseAbs2();
}

DensityMatrix projector(const PureState &psi) {
  const ComplexVector v = psi.vector();
  return DensityMatrix::validated(v * v.adjoint(), psi.dim(), ToleranceConfig{});
}

PureState random_pure(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::BadDimension, "local dimension must be >= 1");
  std::mt19937_64 rng(seed);
  ComplexMatrix a = random_ginibre(dim, dim, rng);
  a /= a.norm();
  return PureState::validated(a, dim);
}

}  // namespace luinv
