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

#include "luinv/invariants.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

#include "luinv/error.hpp"

namespace luinv {

namespace {

// Tr(a b) without forming the product.
Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
  return a.cwiseProduct(b.transpose()).sum();
}

double sigma_ratio(const RealMatrix &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> solver(m);
  const RealVector &s = solver.singularValues();
  return s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
}

CubicTensor triple_traces(const std::vector<ComplexMatrix> &family) {
  const int n = static_cast<int>(family.size());
  CubicTensor t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix prod = family[i] * family[j];
      for (int k = 0; k < n; ++k) t(i, j, k) = trace_product(prod, family[k]);
    }
  }
  return t;
}

RealMatrix gram(const std::vector<ComplexMatrix> &family) {
  const int n = static_cast<int>(family.size());
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // Real for Hermitian factors; the imaginary part is rounding noise.
      g(i, j) = g(j, i) = trace_product(family[i], family[j]).real();
    }
  }
  return g;
}

void append_number(std::string &out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos) s = "0.0000000000";
  out += s;
}

void append_list(std::string &out, const char *name, const std::vector<double> &values) {
  out += name;
  out += '=';
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    append_number(out, values[k]);
  }
  out += '\n';
}

void append_matrix(std::string &out, const char *name, const RealMatrix &m) {
  std::vector<double> flat;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  }
  append_list(out, name, flat);
}

void append_tensor(std::string &out, const char *name, const CubicTensor &t) {
  std::vector<double> flat;
  for (const Complex &z : t.data()) {
    flat.push_back(z.real());
    flat.push_back(z.imag());
  }
  append_list(out, name, flat);
}

}  // namespace

std::vector<double> pure_invariants(const PureState &psi) {
  const RealVector lambda = schmidt(psi);
  std::vector<double> out;
  for (int alpha = 1; alpha <= psi.dim(); ++alpha) {
    out.push_back(lambda.array().pow(alpha).sum());
  }
  return out;
}

std::vector<double> j_moments(const EigenEnsemble &ens) {
  std::vector<double> out;
  const int count = ens.dim * ens.dim;
  for (int s = 1; s <= count; ++s) {
    double sum = 0.0;
    for (double l : ens.lambdas) sum += std::pow(l, s);
    out.push_back(sum);
  }
  return out;
}

MetricTensors metric_tensors(const ReducedPair &rp) {
  return {gram(rp.rhos), gram(rp.thetas)};
}

CubicTensors cubic_tensors(const ReducedPair &rp) {
  return {triple_traces(rp.rhos), triple_traces(rp.thetas)};
}

GenericityReport is_generic(const RealMatrix &omega, const RealMatrix &theta,
                            int dim, const ToleranceConfig &cfg) {
  GenericityReport r;
  r.full_rank = omega.rows() == static_cast<Eigen::Index>(dim) * dim;
  r.omega_ratio = sigma_ratio(omega);
  r.theta_ratio = sigma_ratio(theta);
  r.generic = r.full_rank && r.omega_ratio > cfg.rank_tol && r.theta_ratio > cfg.rank_tol;
  return r;
}

StructureConstants structure_constants(const RealMatrix &omega, const CubicTensor &x,
                                       const ToleranceConfig &cfg) {
  const int n = x.extent();
  if (omega.rows() != n || omega.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Omega and X disagree on n");
  }
  if (n == 0 || sigma_ratio(omega) <= cfg.rank_tol) {
    throw Error(ErrorCode::SingularOmega, "Omega is not invertible");
  }
  const RealMatrix inv = omega.fullPivLu().inverse();

  StructureConstants sc{CubicTensor(n), CubicTensor(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        Complex acc = 0.0;
        for (int k = 0; k < n; ++k) acc += x(i, j, k) * inv(k, l);
        sc.c(i, j, l) = acc;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) sc.f(i, j, k) = sc.c(i, j, k) - sc.c(j, i, k);
    }
  }
  return sc;
}

Complex reduce_trace(std::span<const int> indices, const StructureConstants &sc,
                     const RealMatrix &omega) {
  const int n = sc.c.extent();
  if (indices.size() < 2) {
    throw std::invalid_argument("reduce_trace needs at least two indices");
  }
  for (int idx : indices) {
    if (idx < 0 || idx >= n) throw std::out_of_range("reduce_trace index out of range");
  }
  // coeffs(a) holds the expansion of rho_{i1} ... rho_{it} in the basis {rho_a}.
  ComplexVector coeffs = ComplexVector::Zero(n);
  coeffs(indices[0]) = 1.0;
  for (std::size_t t = 1; t + 1 < indices.size(); ++t) {
    ComplexVector next = ComplexVector::Zero(n);
    for (int a = 0; a < n; ++a) {
      if (coeffs(a) == Complex(0.0)) continue;
      for (int b = 0; b < n; ++b) next(b) += coeffs(a) * sc.c(a, indices[t], b);
    }
    coeffs = std::move(next);
  }
  Complex out = 0.0;
  for (int a = 0; a < n; ++a) out += coeffs(a) * omega(a, indices.back());
  return out;
}

InvariantFingerprint fingerprint(const EigenEnsemble &ens, const ToleranceConfig &cfg) {
  const ReducedPair rp = reduced_pair(ens);
  MetricTensors metric = metric_tensors(rp);
  CubicTensors cubic = cubic_tensors(rp);

  InvariantFingerprint fp;
  fp.dim = ens.dim;
  fp.rank = ens.rank();
  fp.spectrum = ens.lambdas;
  fp.moments = j_moments(ens);
  fp.genericity = is_generic(metric.omega, metric.theta, ens.dim, cfg);
  fp.omega = std::move(metric.omega);
  fp.theta = std::move(metric.theta);
  fp.x = std::move(cubic.x);
  fp.y = std::move(cubic.y);
  fp.degeneracy_blocks = ens.degeneracy_blocks;
  return fp;
}

InvariantFingerprint fingerprint(const DensityMatrix &rho, const ToleranceConfig &cfg) {
  return fingerprint(eigen_ensemble(rho, cfg), cfg);
}

std::string canonical_serialization(const InvariantFingerprint &fp) {
  std::string out;
  out += "N=" + std::to_string(fp.dim) + '\n';
  out += "n=" + std::to_string(fp.rank) + '\n';
  append_list(out, "spectrum", fp.spectrum);
  append_list(out, "J", fp.moments);
  append_matrix(out, "Omega", fp.omega);
  append_matrix(out, "Theta", fp.theta);
  append_tensor(out, "X", fp.x);
  append_tensor(out, "Y", fp.y);
  return out;
}

std::string fingerprint_key(const InvariantFingerprint &fp) {
  const std::string text = canonical_serialization(fp);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    hex += kHex[digest[k] >> 4];
    hex += kHex[digest[k] & 0xf];
  }
  return hex;
}

}  // namespace luinv
