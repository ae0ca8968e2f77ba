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

#include <functional>

#include <gtest/gtest.h>

#include "luinv/error.hpp"
#include "test_util.hpp"

namespace luinv {
namespace {

using testing::kCfg;

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no luinv::Error thrown";
  return ErrorCode::Io;
}

ComplexMatrix bell_coeffs() { return ComplexMatrix::Identity(2, 2) / std::sqrt(2.0); }

ComplexMatrix basis_coeffs(int n, int i, int j) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a(i, j) = 1.0;
  return a;
}

TEST(Validate, BellPureState) {
  const State s = validate(bell_coeffs(), 2, StateKind::Pure, kCfg);
  EXPECT_TRUE(std::holds_alternative<PureState>(s));
}

TEST(Validate, MaximallyMixed) {
  const State s = validate(ComplexMatrix::Identity(4, 4) / 4.0, 2, StateKind::Mixed, kCfg);
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(s));
}

TEST(Validate, Errors) {
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg.diagonal() << 1.0, -0.01, 0.01, 0.0;
  EXPECT_EQ(code_of([&] { validate(neg, 2, StateKind::Mixed, kCfg); }), ErrorCode::NotPSD);

  EXPECT_EQ(code_of([&] { validate(ComplexMatrix::Identity(3, 3) / 3.0, 2, StateKind::Mixed, kCfg); }),
            ErrorCode::BadDimension);
  EXPECT_EQ(code_of([&] { validate(ComplexMatrix::Identity(4, 4) / 2.0, 2, StateKind::Mixed, kCfg); }),
            ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([&] { validate(ComplexMatrix::Identity(2, 2), 2, StateKind::Pure, kCfg); }),
            ErrorCode::NotNormalized);

  ComplexMatrix skew = ComplexMatrix::Identity(4, 4) / 4.0;
  skew(0, 1) = 0.1;
  EXPECT_EQ(code_of([&] { validate(skew, 2, StateKind::Mixed, kCfg); }), ErrorCode::NotHermitian);
}

TEST(Validate, SymmetrizesSubToleranceNoise) {
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
  rho(0, 1) = Complex(0.0, 1e-13);
  const DensityMatrix d = DensityMatrix::validated(rho, 2, kCfg);
  EXPECT_EQ(d.matrix(), ComplexMatrix(d.matrix().adjoint()));
}

TEST(LocalUnitaryPair, RejectsNonUnitary) {
  EXPECT_EQ(code_of([] {
              LocalUnitaryPair::validated(2.0 * ComplexMatrix::Identity(2, 2),
                                          ComplexMatrix::Identity(2, 2));
            }),
            ErrorCode::NotUnitary);
  EXPECT_EQ(code_of([] {
              LocalUnitaryPair::validated(ComplexMatrix::Identity(2, 2),
                                          ComplexMatrix::Identity(3, 3));
            }),
            ErrorCode::DimensionMismatch);
}

TEST(EigenEnsemble, PureBell) {
  const ComplexVector v = testing::bell_vector(0);
  const DensityMatrix rho = DensityMatrix::validated(v * v.adjoint(), 2, kCfg);
  const EigenEnsemble ens = eigen_ensemble(rho, kCfg);
  ASSERT_EQ(ens.rank(), 1);
  EXPECT_NEAR(ens.lambdas[0], 1.0, 1e-12);
  // Phase fixed so the largest entry is real positive.
  EXPECT_LT((ens.coeff_mats[0] - bell_coeffs()).norm(), 1e-12);
}

TEST(EigenEnsemble, MaximallyMixed) {
  const DensityMatrix rho = DensityMatrix::validated(ComplexMatrix::Identity(4, 4) / 4.0, 2, kCfg);
  const EigenEnsemble ens = eigen_ensemble(rho, kCfg);
  ASSERT_EQ(ens.rank(), 4);
  for (double l : ens.lambdas) EXPECT_NEAR(l, 0.25, 1e-14);
  ASSERT_EQ(ens.degeneracy_blocks.size(), 1u);
  EXPECT_EQ(ens.degeneracy_blocks[0].size(), 4u);
}

TEST(EigenEnsemble, WishartProperties) {
  const DensityMatrix rho = testing::wishart(2, 7);
  const EigenEnsemble ens = eigen_ensemble(rho, kCfg);
  ASSERT_EQ(ens.rank(), 4);
  EXPECT_EQ(ens.degeneracy_blocks.size(), 4u);

  // Independent oracle: the ascending solver output reversed.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> direct(rho.matrix());
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(ens.lambdas[i], direct.eigenvalues()(3 - i), 1e-12);
    sum += ens.lambdas[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);

  ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(ens.coeff_mats[i].norm(), 1.0, 1e-12);
    for (int j = 0; j < 4; ++j) {
      const Complex overlap = (ens.coeff_mats[i].adjoint() * ens.coeff_mats[j]).trace();
      EXPECT_NEAR(std::abs(overlap), i == j ? 1.0 : 0.0, 1e-10);
    }
    const ComplexVector v = from_coefficients(ens.coeff_mats[i]);
    rebuilt += ens.lambdas[i] * v * v.adjoint();
  }
  EXPECT_LT((rebuilt - rho.matrix()).norm(), 1e-8);
}

TEST(ReducedPair, BellAndProduct) {
  EigenEnsemble ens;
  ens.dim = 2;
  ens.lambdas = {0.5, 0.5};
  ens.coeff_mats = {bell_coeffs(), basis_coeffs(2, 0, 0)};
  const ReducedPair rp = reduced_pair(ens);
  EXPECT_LT((rp.rhos[0] - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  EXPECT_LT((rp.thetas[0] - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  EXPECT_EQ(rp.rhos[1], basis_coeffs(2, 0, 0));
  EXPECT_EQ(rp.thetas[1], basis_coeffs(2, 0, 0));
}

TEST(ReducedPair, MatchesExplicitPartialTraces) {
  for (int n : {2, 3}) {
    const EigenEnsemble ens = eigen_ensemble(testing::wishart(n, 7), kCfg);
    const ReducedPair rp = reduced_pair(ens);
    for (int i = 0; i < ens.rank(); ++i) {
      const ComplexVector v = from_coefficients(ens.coeff_mats[i]);
      EXPECT_NEAR(rp.rhos[i].trace().real(), 1.0, 1e-10);
      EXPECT_NEAR(rp.thetas[i].trace().real(), 1.0, 1e-10);
      EXPECT_LT((rp.rhos[i] - testing::trace_out_second(v, n)).norm(), 1e-12);
      // theta_i is the complex conjugate of the first-factor partial trace.
      EXPECT_LT((rp.thetas[i] - testing::trace_out_first(v, n).conjugate()).norm(), 1e-12);
    }
  }
}

TEST(ApplyLocal, Identity) {
  const DensityMatrix rho = testing::wishart(2, 7);
  EXPECT_LT((apply_local(rho, LocalUnitaryPair::identity(2)).matrix() - rho.matrix()).norm(), 1e-14);
  const PureState psi = random_pure(3, 4);
  EXPECT_LT((apply_local(psi, LocalUnitaryPair::identity(3)).coeffs() - psi.coeffs()).norm(), 1e-14);
}

TEST(ApplyLocal, FlipsProductState) {
  const PureState zero = PureState::validated(basis_coeffs(2, 0, 0), 2);
  const LocalUnitaryPair flip = LocalUnitaryPair::validated(testing::pauli_x(), testing::pauli_x());
  EXPECT_EQ(apply_local(zero, flip).coeffs(), basis_coeffs(2, 1, 1));
}

TEST(ApplyLocal, PureAndMixedActionsAgree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = random_pure(3, seed);
    const LocalUnitaryPair lu = testing::haar_pair(3, seed + 100);
    const ComplexVector moved = apply_local(psi, lu).vector();
    const ComplexVector direct = lu.kron() * psi.vector();
    EXPECT_LT((moved - direct).norm(), 1e-12);
    EXPECT_LT((apply_local(projector(psi), lu).matrix() - moved * moved.adjoint()).norm(), 1e-12);
  }
}

TEST(ApplyLocal, PreservesSpectrum) {
  const DensityMatrix rho = testing::wishart(2, 7);
  const DensityMatrix moved = apply_local(rho, testing::haar_pair(2, 9));
  const EigenEnsemble a = eigen_ensemble(rho, kCfg), b = eigen_ensemble(moved, kCfg);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.lambdas[i], b.lambdas[i], 1e-10);
}

TEST(ApplyLocal, DimensionMismatch) {
  EXPECT_EQ(code_of([] { apply_local(testing::wishart(2, 1), LocalUnitaryPair::identity(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Schmidt, KnownValues) {
  const RealVector bell = schmidt(PureState::validated(bell_coeffs(), 2));
  EXPECT_NEAR(bell(0), 0.5, 1e-14);
  EXPECT_NEAR(bell(1), 0.5, 1e-14);

  const RealVector prod = schmidt(PureState::validated(basis_coeffs(2, 0, 0), 2));
  EXPECT_NEAR(prod(0), 1.0, 1e-14);
  EXPECT_NEAR(prod(1), 0.0, 1e-14);

  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = std::sqrt(0.9);
  a(1, 1) = std::sqrt(0.1);
  const RealVector lam = schmidt(PureState::validated(a, 2));
  EXPECT_NEAR(lam(0), 0.9, 1e-14);
  EXPECT_NEAR(lam(1), 0.1, 1e-14);
}

TEST(Schmidt, InvariantUnderLocalUnitaries) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const PureState psi = random_pure(n, seed);
    const RealVector before = schmidt(psi);
    const RealVector after = schmidt(apply_local(psi, testing::haar_pair(n, seed + 1000)));
    EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(before.sum(), 1.0, 1e-12);
  }
}

TEST(Schmidt, MatchesReducedStateOfProjector) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = random_pure(3, seed);
    const ReducedPair rp = reduced_pair(eigen_ensemble(projector(psi), kCfg));
    ASSERT_EQ(rp.rhos.size(), 1u);
    const RealVector eig = hermitian_eig(rp.rhos[0], kCfg).values;
    EXPECT_LT((eig - schmidt(psi)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

}  // namespace
}  // namespace luinv
