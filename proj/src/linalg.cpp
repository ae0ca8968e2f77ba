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

#include "luinv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "luinv/error.hpp"

namespace luinv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::SingularOmega: return "SingularOmega";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NoIntertwiner: return "NoIntertwiner";
    case ErrorCode::AmbiguousIntertwiner: return "AmbiguousIntertwiner";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

void ToleranceConfig::check() const {
  for (double t : {eq_tol, rank_tol, oracle_tol}) {
    if (!(t > 0.0 && t < 1.0)) {
      throw std::invalid_argument("tolerances must lie strictly between 0 and 1");
    }
  }
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool values_close(Complex a, Complex b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

double max_abs(const ComplexMatrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEig hermitian_eig(const ComplexMatrix &m, const ToleranceConfig &cfg) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::BadDimension, "hermitian_eig needs a square matrix");
  }
  const double asym = max_abs(m - m.adjoint());
  const double scale = std::max(1.0, max_abs(m));
  if (asym > cfg.rank_tol * scale) {
    throw Error(ErrorCode::NotHermitian,
                "max |M - M^dagger| = " + std::to_string(asym));
  }
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);

  // Eigen returns ascending values; reorder descending with ties kept in the
  // solver's original order.
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RealVector &vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });

  HermitianEig out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = vals(order[k]);
    out.vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

Svd svd(const ComplexMatrix &m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix nullspace(const ComplexMatrix &m, const ToleranceConfig &cfg) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return ComplexMatrix(0, 0);
  const Svd d = svd(m);
  const double smax = d.singular.size() > 0 ? d.singular(0) : 0.0;
  if (smax == 0.0) return ComplexMatrix::Identity(cols, cols);

  const double cutoff = cfg.rank_tol * smax;
  Eigen::Index rank = 0;
  while (rank < d.singular.size() && d.singular(rank) > cutoff) ++rank;
  return d.v.rightCols(cols - rank);
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix &h) {
  const ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const RealVector &vals = solver.eigenvalues();
  ComplexVector phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    phases(k) = std::polar(1.0, vals(k));
  }
  const ComplexMatrix &v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

std::vector<std::vector<int>> degeneracy_blocks(const RealVector &values,
                                                double tol) {
  std::vector<std::vector<int>> blocks;
  if (values.size() == 0) return blocks;
  const double gap = tol * std::max(1.0, std::abs(values(0)));
  blocks.push_back({0});
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    if (std::abs(values(k - 1) - values(k)) <= gap) {
      blocks.back().push_back(static_cast<int>(k));
    } else {
      blocks.push_back({static_cast<int>(k)});
    }
  }
  return blocks;
}

ComplexMatrix partial_trace_first(const ComplexMatrix &m, int n1, int n2) {
  ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
  for (int a = 0; a < n1; ++a) {
    out += m.block(a * n2, a * n2, n2, n2);
  }
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix &m, int n1, int n2) {
  ComplexMatrix out(n1, n1);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n1; ++b) {
      out(a, b) = m.block(a * n2, b * n2, n2, n2).trace();
    }
  }
  return out;
}

ComplexMatrix random_ginibre(int rows, int cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Fill row by row so the stream order does not depend on Eigen's layout.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::BadDimension, "unitary dimension must be >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix &r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

ComplexMatrix random_density(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::BadDimension, "density dimension must be >= 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = random_ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity; the product is only Hermitian up to rounding.
  return (rho + rho.adjoint()) / 2.0;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace luinv
