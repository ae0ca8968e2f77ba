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

#include "luinv/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "luinv/error.hpp"

namespace luinv {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Equivalent: return "Equivalent";
    case Outcome::Inequivalent: return "Inequivalent";
    case Outcome::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

namespace {

std::string format_value(Complex z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  }
  return buf;
}

std::string mismatch(const std::string &name, std::initializer_list<int> idx, Complex a,
                     Complex b) {
  std::string s = name + "[";
  bool first = true;
  for (int i : idx) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "]: " + format_value(a) + " vs " + format_value(b);
}

// First labelled-tensor mismatch under `p`, or empty.
std::string tensor_mismatch(const InvariantFingerprint &f, const InvariantFingerprint &g,
                            const Labeling &p, double tol) {
  const int n = f.rank;
  for (const auto &[name, a, b] :
       {std::tuple<const char *, const RealMatrix &, const RealMatrix &>{"Omega", f.omega, g.omega},
        {"Theta", f.theta, g.theta}}) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!values_close(a(i, j), b(p[i], p[j]), tol)) {
          return mismatch(name, {i, j}, a(i, j), b(p[i], p[j]));
        }
      }
    }
  }
  for (const auto &[name, a, b] :
       {std::tuple<const char *, const CubicTensor &, const CubicTensor &>{"X", f.x, g.x},
        {"Y", f.y, g.y}}) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (!values_close(a(i, j, k), b(p[i], p[j], p[k]), tol)) {
            return mismatch(name, {i, j, k}, a(i, j, k), b(p[i], p[j], p[k]));
          }
        }
      }
    }
  }
  return {};
}

double factorial_product(const std::vector<std::vector<int>> &blocks, double cap) {
  double total = 1.0;
  for (const auto &b : blocks) {
    for (std::size_t k = 2; k <= b.size(); ++k) {
      total *= static_cast<double>(k);
      if (total > cap) return total;
    }
  }
  return total;
}

ComplexMatrix to_unitary(const ComplexMatrix &m) {
  const Svd d = svd(m);
  return d.u * d.v.adjoint();
}

}  // namespace

FingerprintMatch compare_fingerprints(const InvariantFingerprint &f,
                                      const InvariantFingerprint &f_prime,
                                      const ToleranceConfig &cfg, std::size_t cap) {
  if (f.dim != f_prime.dim) {
    throw Error(ErrorCode::DimensionMismatch, "fingerprints have different N");
  }
  FingerprintMatch out;
  if (f.rank != f_prime.rank) {
    out.detail = "rank: " + std::to_string(f.rank) + " vs " + std::to_string(f_prime.rank);
    return out;
  }
  for (int k = 0; k < f.rank; ++k) {
    if (!values_close(f.spectrum[k], f_prime.spectrum[k], cfg.eq_tol)) {
      out.detail = mismatch("spectrum", {k}, f.spectrum[k], f_prime.spectrum[k]);
      return out;
    }
  }
  for (std::size_t s = 0; s < f.moments.size(); ++s) {
    if (!values_close(f.moments[s], f_prime.moments[s], cfg.eq_tol)) {
      out.detail = mismatch("J", {static_cast<int>(s + 1)}, f.moments[s], f_prime.moments[s]);
      return out;
    }
  }
  out.spectra_match = true;

  const double count = factorial_product(f.degeneracy_blocks, static_cast<double>(cap));
  if (count > static_cast<double>(cap)) {
    throw Error(ErrorCode::SearchBudgetExceeded,
                "more than " + std::to_string(cap) + " block labelings");
  }

  Labeling identity(f.rank);
  std::iota(identity.begin(), identity.end(), 0);
  const std::string identity_detail = tensor_mismatch(f, f_prime, identity, cfg.eq_tol);
  if (identity_detail.empty()) {
    out.match = true;
    out.labeling = identity;
    return out;
  }

  // Odometer over the permutations of every degeneracy block.
  std::vector<std::vector<int>> perms = f.degeneracy_blocks;
  auto advance = [&]() {
    for (auto &block : perms) {
      if (std::next_permutation(block.begin(), block.end())) return true;
      // Wrapped around to sorted order; carry into the next block.
    }
    return false;
  };
  while (advance()) {
    Labeling p(f.rank);
    for (std::size_t b = 0; b < perms.size(); ++b) {
      for (std::size_t k = 0; k < perms[b].size(); ++k) {
        p[f.degeneracy_blocks[b][k]] = perms[b][k];
      }
    }
    if (tensor_mismatch(f, f_prime, p, cfg.eq_tol).empty()) {
      out.match = true;
      out.labeling = std::move(p);
      return out;
    }
  }
  out.detail = identity_detail;
  return out;
}

Intertwiner solve_intertwiner(std::span<const ComplexMatrix> family,
                              std::span<const ComplexMatrix> family_prime,
                              const ToleranceConfig &cfg) {
  if (family.empty() || family.size() != family_prime.size()) {
    throw Error(ErrorCode::DimensionMismatch, "families must be nonempty and equally long");
  }
  const Eigen::Index n = family[0].rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // Column-major vec: vec(F V) = (I (x) F) vec V and vec(V F') = (F'^T (x) I) vec V.
  ComplexMatrix stacked(static_cast<Eigen::Index>(family.size()) * n * n, n * n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].rows() != n || family_prime[i].rows() != n) {
      throw Error(ErrorCode::DimensionMismatch, "family members differ in size");
    }
    stacked.middleRows(static_cast<Eigen::Index>(i) * n * n, n * n) =
        kron(id, family[i]) - kron(family_prime[i].transpose(), id);
  }

  const ComplexMatrix null = nullspace(stacked, cfg);
  if (null.cols() == 0) {
    throw Error(ErrorCode::NoIntertwiner, "the families are not simultaneously similar");
  }
  if (null.cols() > 1) {
    throw Error(ErrorCode::AmbiguousIntertwiner,
                "intertwiner space has dimension " + std::to_string(null.cols()));
  }

  const ComplexMatrix v = Eigen::Map<const ComplexMatrix>(null.data(), n, n);
  const ComplexMatrix gram = v.adjoint() * v;
  const double scale = gram.trace().real() / static_cast<double>(n);
  Intertwiner out;
  out.scalar_deviation = max_abs(gram / scale - id);
  if (out.scalar_deviation > std::sqrt(cfg.eq_tol)) {
    throw Error(ErrorCode::NotScalar,
                "V^dagger V deviates from a scalar by " + std::to_string(out.scalar_deviation));
  }
  out.v = to_unitary(v);
  fix_phase(out.v);
  for (std::size_t i = 0; i < family.size(); ++i) {
    out.action_residual =
        std::max(out.action_residual, (family[i] * out.v - out.v * family_prime[i]).norm());
  }
  return out;
}

Witness extract_witness(const DensityMatrix &rho, const DensityMatrix &rho_prime,
                        const Labeling &labeling, const ToleranceConfig &cfg) {
  if (rho.dim() != rho_prime.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states have different local dimensions");
  }
  const ReducedPair rp = reduced_pair(eigen_ensemble(rho, cfg));
  const ReducedPair rq = reduced_pair(eigen_ensemble(rho_prime, cfg));
  const std::size_t n = rp.rhos.size();
  if (rq.rhos.size() != n || labeling.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "ensembles and labeling disagree on rank");
  }
  std::vector<ComplexMatrix> rhos_prime, thetas_prime;
  for (int idx : labeling) {
    rhos_prime.push_back(rq.rhos.at(idx));
    thetas_prime.push_back(rq.thetas.at(idx));
  }

  // With A' = u A w^T: rho'_i = u rho_i u^dagger and theta'_i = w* theta_i w^T,
  // so rho_i u^dagger = u^dagger rho'_i and theta_i w^T = w^T theta'_i.
  ComplexMatrix u = solve_intertwiner(rp.rhos, rhos_prime, cfg).v.adjoint();
  ComplexMatrix w = solve_intertwiner(rp.thetas, thetas_prime, cfg).v.transpose();
  fix_phase(u);
  fix_phase(w);

  Witness out{LocalUnitaryPair::validated(std::move(u), std::move(w)), 0.0};
  const ComplexMatrix k = out.pair.kron();
  out.residual = (k * rho.matrix() * k.adjoint() - rho_prime.matrix()).norm();
  if (!(out.residual <= cfg.eq_tol)) {
    throw Error(ErrorCode::VerificationFailed,
                "assembled local unitaries miss the target by " + std::to_string(out.residual));
  }
  return out;
}

EquivalenceVerdict decide_equivalence(const DensityMatrix &rho,
                                      const DensityMatrix &rho_prime,
                                      const ToleranceConfig &cfg,
                                      const std::optional<OracleOptions> &oracle) {
  EquivalenceVerdict verdict;
  auto finish = [&]() {
    if (!oracle) return verdict;
    verdict.oracle = optimize_local(rho, rho_prime, *oracle, cfg);
    const bool found = verdict.oracle->converged;
    char buf[160];
    std::snprintf(buf, sizeof buf, "; oracle best_cost=%.3e (%s)", verdict.oracle->best_cost,
                  found ? "converged" : "not converged");
    verdict.detail += buf;
    const bool disagrees = (verdict.outcome == Outcome::Equivalent && !found) ||
                           (verdict.outcome == Outcome::Inequivalent && found);
    if (disagrees) verdict.detail += "; FLAG: oracle disagrees with verdict";
    return verdict;
  };

  if (rho.dim() != rho_prime.dim()) {
    verdict.outcome = Outcome::Inequivalent;
    verdict.detail = "local dimension: " + std::to_string(rho.dim()) + " vs " +
                     std::to_string(rho_prime.dim());
    return verdict;
  }

  const InvariantFingerprint f = fingerprint(rho, cfg);
  const InvariantFingerprint g = fingerprint(rho_prime, cfg);
  FingerprintMatch match;
  try {
    match = compare_fingerprints(f, g, cfg);
  } catch (const Error &e) {
    verdict.outcome = Outcome::Indeterminate;
    verdict.detail = e.what();
    return finish();
  }

  if (!match.match) {
    const bool degenerate = f.degeneracy_blocks.size() < static_cast<std::size_t>(f.rank);
    if (match.spectra_match && degenerate) {
      // Eigenvectors inside a degenerate block may mix by any block unitary,
      // which a permutation search does not cover.
      verdict.outcome = Outcome::Indeterminate;
      verdict.detail = "degenerate spectrum, no block labeling matches (" + match.detail + ")";
    } else {
      verdict.outcome = Outcome::Inequivalent;
      verdict.detail = match.detail;
    }
    return finish();
  }

  // A mismatch above is conclusive for any state; a match only decides the
  // question when both states are generic.
  for (const auto *fp : {&f, &g}) {
    if (!fp->genericity.generic) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "non-generic %s state (n=%d of %d, Omega ratio %.3e, Theta ratio %.3e): "
                    "invariant set not complete",
                    fp == &f ? "first" : "second", fp->rank, fp->dim * fp->dim,
                    fp->genericity.omega_ratio, fp->genericity.theta_ratio);
      verdict.outcome = Outcome::Indeterminate;
      verdict.detail = buf;
      return finish();
    }
  }

  try {
    Witness w = extract_witness(rho, rho_prime, match.labeling, cfg);
    verdict.outcome = Outcome::Equivalent;
    verdict.residual = w.residual;
    verdict.witness = std::move(w.pair);
    verdict.detail = "invariants match; witness verified";
  } catch (const Error &e) {
    verdict.outcome = Outcome::Indeterminate;
    verdict.detail = std::string("invariants match but witness extraction failed: ") + e.what();
  }
  return finish();
}

EquivalenceVerdict pure_decide(const PureState &psi, const PureState &psi_prime,
                               const ToleranceConfig &cfg) {
  EquivalenceVerdict verdict;
  if (psi.dim() != psi_prime.dim()) {
    verdict.outcome = Outcome::Inequivalent;
    verdict.detail = "local dimension: " + std::to_string(psi.dim()) + " vs " +
                     std::to_string(psi_prime.dim());
    return verdict;
  }

  const std::vector<double> ia = pure_invariants(psi);
  const std::vector<double> ib = pure_invariants(psi_prime);
  for (std::size_t k = 0; k < ia.size(); ++k) {
    if (!values_close(ia[k], ib[k], cfg.eq_tol)) {
      verdict.outcome = Outcome::Inequivalent;
      verdict.detail = mismatch("I", {static_cast<int>(k + 1)}, ia[k], ib[k]);
      return verdict;
    }
  }
  const Svd da = svd(psi.coeffs());
  const Svd db = svd(psi_prime.coeffs());
  for (Eigen::Index k = 0; k < da.singular.size(); ++k) {
    const double la = da.singular(k) * da.singular(k);
    const double lb = db.singular(k) * db.singular(k);
    if (!values_close(la, lb, cfg.eq_tol)) {
      verdict.outcome = Outcome::Inequivalent;
      verdict.detail = mismatch("schmidt", {static_cast<int>(k)}, la, lb);
      return verdict;
    }
  }

  // A = P S Q^dagger, A' = P' S Q'^dagger, and u A w^T = A' for
  // u = P' P^dagger, w^T = Q Q'^dagger. Degenerate Schmidt values are covered
  // because each side uses its own singular vectors.
  ComplexMatrix u = db.u * da.u.adjoint();
  ComplexMatrix w = (da.v * db.v.adjoint()).transpose();
  fix_phase(u);
  fix_phase(w);
  LocalUnitaryPair pair = LocalUnitaryPair::validated(std::move(u), std::move(w));

  // Pure states are rays: compare up to one global phase.
  const ComplexMatrix image = pair.u() * psi.coeffs() * pair.w().transpose();
  const Complex overlap = (psi_prime.coeffs().adjoint() * image).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  const double residual = (image - phase * psi_prime.coeffs()).norm();
  verdict.residual = residual;
  if (residual <= cfg.eq_tol) {
    verdict.outcome = Outcome::Equivalent;
    verdict.witness = std::move(pair);
    verdict.detail = "Schmidt spectra match; witness verified";
  } else {
    verdict.outcome = Outcome::Indeterminate;
    verdict.detail = "Schmidt spectra match but witness residual " + std::to_string(residual);
  }
  return verdict;
}

}  // namespace luinv
