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

#include "luinv/oracle.hpp"

#include <cmath>
#include <limits>

#include "luinv/error.hpp"

namespace luinv {

namespace {

struct Point {
  ComplexMatrix u;
  ComplexMatrix w;
};

class LocalCost {
 public:
  LocalCost(const DensityMatrix &rho, const DensityMatrix &rho_prime)
      : rho_(rho.matrix()), target_(rho_prime.matrix()), dim_(rho.dim()) {}

  // Squared Frobenius distance; fills the transformed state for gradient().
  double value(const Point &p, ComplexMatrix *image = nullptr) const {
    const ComplexMatrix k = kron(p.u, p.w);
    ComplexMatrix moved = k * rho_ * k.adjoint();
    const double f = (moved - target_).squaredNorm();
    if (image) *image = std::move(moved);
    return f;
  }

  // Derivative of the cost along u -> exp(i h_u) u, w -> exp(i h_w) w is
  // Tr(h_u g_u) + Tr(h_w g_w), with G = 2i [moved, moved - target] and
  // g_u, g_w its partial traces.
  std::pair<ComplexMatrix, ComplexMatrix> gradient(const ComplexMatrix &moved) const {
    const ComplexMatrix diff = moved - target_;
    const ComplexMatrix g = Complex(0.0, 2.0) * (moved * diff - diff * moved);
    return {partial_trace_second(g, dim_, dim_), partial_trace_first(g, dim_, dim_)};
  }

 private:
  const ComplexMatrix &rho_;
  const ComplexMatrix &target_;
  int dim_;
};

double inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  return (a.adjoint() * b).trace().real();
}

struct RestartResult {
  double cost = std::numeric_limits<double>::infinity();  // squared distance
  Point point;
  int iterations = 0;
  std::vector<double> trace;
};

RestartResult descend(const LocalCost &cost, Point start, int max_iter, double target_sq) {
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 60;

  RestartResult r;
  r.point = std::move(start);
  ComplexMatrix moved;
  r.cost = cost.value(r.point, &moved);
  r.trace.push_back(std::sqrt(r.cost));

  auto [gu, gw] = cost.gradient(moved);
  ComplexMatrix prev_gu, prev_gw, step_u, step_w;
  double step = 1.0;

  for (int it = 0; it < max_iter && r.cost > target_sq; ++it) {
    ++r.iterations;
    const double gnorm2 = gu.squaredNorm() + gw.squaredNorm();
    if (gnorm2 < 1e-30) break;

    // Barzilai-Borwein guess for the trial step, then Armijo backtracking.
    if (it > 0) {
      const ComplexMatrix yu = gu - prev_gu;
      const ComplexMatrix yw = gw - prev_gw;
      const double sy = inner(step_u, yu) + inner(step_w, yw);
      const double ss = step_u.squaredNorm() + step_w.squaredNorm();
      if (sy > 0.0) step = ss / sy;
    }

    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h) {
      Point trial{exp_i_hermitian(-step * gu) * r.point.u,
                  exp_i_hermitian(-step * gw) * r.point.w};
      ComplexMatrix trial_moved;
      const double f = cost.value(trial, &trial_moved);
      if (f <= r.cost - kArmijo * step * gnorm2) {
        step_u = -step * gu;
        step_w = -step * gw;
        prev_gu = gu;
        prev_gw = gw;
        r.point = std::move(trial);
        r.cost = f;
        std::tie(gu, gw) = cost.gradient(trial_moved);
        r.trace.push_back(std::sqrt(f));
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;
  }
  return r;
}

}  // namespace

OracleReport optimize_local(const DensityMatrix &rho, const DensityMatrix &rho_prime,
                            const OracleOptions &opts, const ToleranceConfig &cfg) {
  if (rho.dim() != rho_prime.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states have different local dimensions");
  }
  const int n = rho.dim();
  const LocalCost cost(rho, rho_prime);
  const double target_sq = cfg.oracle_tol * cfg.oracle_tol;

  OracleReport report;
  RestartResult best;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Point start;
    if (r == 0) {
      start = {ComplexMatrix::Identity(n, n), ComplexMatrix::Identity(n, n)};
    } else {
      const std::uint64_t base = derive_seed(opts.seed, static_cast<std::uint64_t>(r));
      start = {random_haar_unitary(n, derive_seed(base, 0)),
               random_haar_unitary(n, derive_seed(base, 1))};
    }
    RestartResult res = descend(cost, std::move(start), opts.max_iter, target_sq);
    report.iterations += res.iterations;
    report.restarts_used = r + 1;
    // Strict comparison: ties keep the earlier restart.
    if (res.cost < best.cost) best = std::move(res);
    if (best.cost <= target_sq) break;
  }

  report.best_cost = std::sqrt(best.cost);
  report.converged = report.best_cost <= cfg.oracle_tol;
  report.cost_trace = std::move(best.trace);
  // Re-orthonormalize to strip accumulated rounding from repeated products.
  auto polar = [](const ComplexMatrix &m) {
    const Svd d = svd(m);
    return ComplexMatrix(d.u * d.v.adjoint());
  };
  report.best_pair = LocalUnitaryPair::validated(polar(best.point.u), polar(best.point.w));
  return report;
}

bool pure_oracle(const PureState &psi, const PureState &psi_prime,
                 const ToleranceConfig &cfg) {
  if (psi.dim() != psi_prime.dim()) return false;
  const ComplexMatrix &a = psi.coeffs();
  const ComplexMatrix &b = psi_prime.coeffs();
  const RealVector la = hermitian_eig(a * a.adjoint(), cfg).values;
  const RealVector lb = hermitian_eig(b * b.adjoint(), cfg).values;
  for (Eigen::Index k = 0; k < la.size(); ++k) {
    if (!values_close(la(k), lb(k), cfg.eq_tol)) return false;
  }
  return true;
}

}  // namespace luinv
