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

#include "luinv/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "luinv/equivalence.hpp"
#include "luinv/error.hpp"
#include "luinv/invariants.hpp"
#include "luinv/states.hpp"

namespace luinv {

namespace {

struct Sampler {
  std::uint64_t seed;
  std::uint64_t counter = 0;

  std::uint64_t next() { return derive_seed(seed, counter++); }

  DensityMatrix density(int n) {
    return DensityMatrix::validated(random_density(n * n, next()), n, ToleranceConfig{});
  }
  // Generic, non-degenerate draw under default tolerances; the rare
  // near-singular Omega/Theta tail is skipped.
  DensityMatrix generic_density(int n) {
    for (;;) {
      DensityMatrix rho = density(n);
      const InvariantFingerprint fp = fingerprint(rho, ToleranceConfig{});
      if (fp.genericity.generic && fp.degeneracy_blocks.size() == static_cast<std::size_t>(fp.rank)) return rho;
    }
  }
  LocalUnitaryPair pair(int n) {
    return LocalUnitaryPair::validated(random_haar_unitary(n, next()),
                                       random_haar_unitary(n, next()));
  }
};

std::string fmt(const char *f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double worst_fingerprint_gap(const InvariantFingerprint &a, const InvariantFingerprint &b) {
  double worst = 0.0;
  auto rel = [&](Complex x, Complex y) {
    worst = std::max(worst, std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}));
  };
  for (std::size_t s = 0; s < a.moments.size(); ++s) rel(a.moments[s], b.moments[s]);
  for (Eigen::Index k = 0; k < a.omega.size(); ++k) {
    rel(a.omega.data()[k], b.omega.data()[k]);
    rel(a.theta.data()[k], b.theta.data()[k]);
  }
  for (std::size_t k = 0; k < a.x.data().size(); ++k) {
    rel(a.x.data()[k], b.x.data()[k]);
    rel(a.y.data()[k], b.y.data()[k]);
  }
  return worst;
}

ComplexMatrix bell_diagonal(const std::vector<double> &p) {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexVector bells[4] = {
      (ComplexVector(4) << r, 0, 0, r).finished(), (ComplexVector(4) << r, 0, 0, -r).finished(),
      (ComplexVector(4) << 0, r, r, 0).finished(), (ComplexVector(4) << 0, r, -r, 0).finished()};
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) rho += p[k] * bells[k] * bells[k].adjoint();
  return rho;
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed, int trials,
                                      const ToleranceConfig &cfg) {
  std::vector<CheckResult> results;
  auto run = [&](const std::string &name, const std::function<std::string()> &body) {
    CheckResult r{name, false, {}};
    try {
      r.message = body();
      r.passed = r.message.empty();
      if (r.passed) r.message = "ok";
    } catch (const std::exception &e) {
      r.message = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  };
  Sampler sampler{seed};

  run("invariance", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const DensityMatrix rho = sampler.density(n);
        const DensityMatrix image = apply_local(rho, sampler.pair(n));
        const double gap = worst_fingerprint_gap(fingerprint(rho, cfg), fingerprint(image, cfg));
        if (!(gap <= 1e-8)) return fmt("fingerprint gap %.3e", gap);
      }
    }
    return {};
  });

  run("theorem_roundtrip", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const DensityMatrix rho = sampler.generic_density(n);
        const DensityMatrix image = apply_local(rho, sampler.pair(n));
        const EquivalenceVerdict v = decide_equivalence(rho, image, cfg);
        if (v.outcome != Outcome::Equivalent) return "orbit pair not Equivalent: " + v.detail;
        if (!(*v.residual < 1e-8)) return fmt("witness residual %.3e", *v.residual);
      }
    }
    return {};
  });

  run("separation", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const EquivalenceVerdict v = decide_equivalence(sampler.density(n), sampler.density(n), cfg);
        if (v.outcome != Outcome::Inequivalent) return "independent pair: " + v.detail;
      }
    }
    return {};
  });

  run("moments", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const DensityMatrix rho = sampler.density(n);
        const std::vector<double> j = j_moments(eigen_ensemble(rho, cfg));
        ComplexMatrix power = rho.matrix();
        for (std::size_t s = 0; s < j.size(); ++s) {
          if (s) power = power * rho.matrix();
          const double gap = std::abs(power.trace().real() - j[s]);
          if (!(gap <= 1e-9)) return fmt("J vs Tr(rho^s) gap %.3e", gap);
        }
      }
    }
    return {};
  });

  run("structure_constants", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const EigenEnsemble ens = eigen_ensemble(sampler.generic_density(n), cfg);
        const ReducedPair rp = reduced_pair(ens);
        const MetricTensors m = metric_tensors(rp);
        const CubicTensors c = cubic_tensors(rp);
        const StructureConstants sc = structure_constants(m.omega, c.x, cfg);
        const int k = ens.rank();
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            ComplexMatrix expansion = ComplexMatrix::Zero(n, n);
            Complex sum = 0.0;
            for (int l = 0; l < k; ++l) {
              expansion += sc.c(i, j, l) * rp.rhos[l];
              sum += sc.c(i, j, l);
            }
            const double res = (rp.rhos[i] * rp.rhos[j] - expansion).norm();
            if (!(res < 1e-8)) return fmt("product expansion residual %.3e", res);
            if (!(std::abs(sum - m.omega(i, j)) < 1e-8)) return "sum_k C_ij^k != Omega_ij";
          }
        }
      }
    }
    return {};
  });

  run("non_generic", [&]() -> std::string {
    const DensityMatrix bell =
        DensityMatrix::validated(bell_diagonal({0.4, 0.3, 0.2, 0.1}), 2, cfg);
    const DensityMatrix diag = DensityMatrix::validated(
        RealVector((RealVector(4) << 0.4, 0.3, 0.2, 0.1).finished()).asDiagonal().toDenseMatrix().cast<Complex>(),
        2, cfg);
    for (const DensityMatrix *rho : {&bell, &diag}) {
      if (fingerprint(*rho, cfg).genericity.generic) return "full-rank special state flagged generic";
      if (decide_equivalence(*rho, *rho, cfg).outcome != Outcome::Indeterminate) {
        return "non-generic pair not Indeterminate";
      }
    }
    return {};
  });

  run("pure_suite", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const PureState psi = random_pure(n, sampler.next());
        const PureState image = apply_local(psi, sampler.pair(n));
        const PureState other = random_pure(n, sampler.next());
        const std::vector<double> a = pure_invariants(psi);
        const std::vector<double> b = pure_invariants(image);
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (!(std::abs(a[k] - b[k]) <= 1e-10)) return "I_alpha changed under local unitaries";
        }
        for (const PureState *q : {&image, &other}) {
          const bool decided = pure_decide(psi, *q, cfg).outcome == Outcome::Equivalent;
          if (decided != pure_oracle(psi, *q, cfg)) return "pure_decide disagrees with oracle";
        }
      }
    }
    return {};
  });

  run("intertwiner", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const ReducedPair rp = reduced_pair(eigen_ensemble(sampler.generic_density(n), cfg));
        const ComplexMatrix g = random_haar_unitary(n, sampler.next());
        std::vector<ComplexMatrix> conj;
        for (const ComplexMatrix &r : rp.rhos) conj.push_back(g.adjoint() * r * g);
        const Intertwiner iw = solve_intertwiner(rp.rhos, conj, cfg);
        if (!(iw.action_residual < 1e-8)) return fmt("action residual %.3e", iw.action_residual);
        if (!(iw.scalar_deviation < 1e-8)) return fmt("scalar deviation %.3e", iw.scalar_deviation);
      }
    }
    return {};
  });

  run("tensor_symmetry", [&]() -> std::string {
    for (int n : {2, 3}) {
      for (int t = 0; t < trials; ++t) {
        const InvariantFingerprint fp = fingerprint(sampler.density(n), cfg);
        const int k = fp.rank;
        if (!((fp.omega - fp.omega.transpose()).cwiseAbs().maxCoeff() <= 1e-10)) {
          return "Omega not symmetric";
        }
        if (!((fp.theta - fp.theta.transpose()).cwiseAbs().maxCoeff() <= 1e-10)) {
          return "Theta not symmetric";
        }
        for (const CubicTensor *x : {&fp.x, &fp.y}) {
          for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
              for (int c = 0; c < k; ++c) {
                if (std::abs((*x)(a, b, c) - (*x)(b, c, a)) > 1e-12) return "cyclic symmetry broken";
                if (std::abs(std::conj((*x)(a, b, c)) - (*x)(c, b, a)) > 1e-12) {
                  return "conjugation symmetry broken";
                }
              }
            }
          }
        }
      }
    }
    return {};
  });

  return results;
}

}  // namespace luinv
