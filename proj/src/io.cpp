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

#include "luinv/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "luinv/error.hpp"

namespace luinv {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json tensor_to_json(const CubicTensor &t) {
  const int n = t.extent();
  ordered_json out = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    ordered_json plane = ordered_json::array();
    for (int j = 0; j < n; ++j) {
      ordered_json row = ordered_json::array();
      for (int k = 0; k < n; ++k) row.push_back({t(i, j, k).real(), t(i, j, k).imag()});
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

ordered_json real_matrix_to_json(const RealMatrix &m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ordered_json matrix_to_json(const ComplexMatrix &m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

ComplexMatrix matrix_from_json(const json &j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "matrix must be a nonempty array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error(ErrorCode::Parse, "matrix rows must all have length " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json &z = j[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw Error(ErrorCode::Parse, "matrix entries must be [re, im] number pairs");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

State parse_state(const std::string &text, const ToleranceConfig &cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "state file must be a JSON object");
  for (const char *key : {"schema_version", "kind", "dim", "matrix"}) {
    if (!doc.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field ") + key);
  }
  if (!doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != kStateSchemaVersion) {
    throw Error(ErrorCode::Parse, "unsupported schema_version");
  }
  if (!doc["dim"].is_number_integer()) throw Error(ErrorCode::Parse, "dim must be an integer");
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  StateKind k;
  if (kind == "pure") {
    k = StateKind::Pure;
  } else if (kind == "mixed") {
    k = StateKind::Mixed;
  } else {
    throw Error(ErrorCode::Parse, "kind must be \"pure\" or \"mixed\"");
  }
  return validate(matrix_from_json(doc["matrix"]), doc["dim"].get<int>(), k, cfg);
}

State read_state_file(const std::filesystem::path &path, const ToleranceConfig &cfg) {
  return parse_state(read_text(path), cfg);
}

std::string serialize_state(const State &state) {
  ordered_json doc;
  doc["schema_version"] = kStateSchemaVersion;
  std::visit(
      [&](const auto &s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PureState>) {
          doc["kind"] = "pure";
          doc["dim"] = s.dim();
          doc["matrix"] = matrix_to_json(s.coeffs());
        } else {
          doc["kind"] = "mixed";
          doc["dim"] = s.dim();
          doc["matrix"] = matrix_to_json(s.matrix());
        }
      },
      state);
  return doc.dump() + "\n";
}

void write_state_file(const std::filesystem::path &path, const State &state) {
  write_file_atomic(path, serialize_state(state));
}

ordered_json to_json(const InvariantFingerprint &fp) {
  ordered_json out;
  out["N"] = fp.dim;
  out["n"] = fp.rank;
  out["key"] = fingerprint_key(fp);
  out["generic"] = fp.genericity.generic;
  out["omega_sigma_ratio"] = fp.genericity.omega_ratio;
  out["theta_sigma_ratio"] = fp.genericity.theta_ratio;
  out["degeneracy_blocks"] = fp.degeneracy_blocks;
  out["spectrum"] = fp.spectrum;
  out["J"] = fp.moments;
  out["Omega"] = real_matrix_to_json(fp.omega);
  out["Theta"] = real_matrix_to_json(fp.theta);
  out["X"] = tensor_to_json(fp.x);
  out["Y"] = tensor_to_json(fp.y);
  return out;
}

ordered_json to_json(const OracleReport &report) {
  ordered_json out;
  out["best_cost"] = report.best_cost;
  out["converged"] = report.converged;
  out["restarts_used"] = report.restarts_used;
  out["iterations"] = report.iterations;
  if (report.best_pair) {
    out["u"] = matrix_to_json(report.best_pair->u());
    out["w"] = matrix_to_json(report.best_pair->w());
  }
  return out;
}

ordered_json to_json(const EquivalenceVerdict &verdict, bool include_witness) {
  ordered_json out;
  out["outcome"] = std::string(to_string(verdict.outcome));
  out["detail"] = verdict.detail;
  out["residual"] = verdict.residual ? ordered_json(*verdict.residual) : ordered_json(nullptr);
  if (include_witness) {
    if (verdict.witness) {
      out["witness"] = {{"u", matrix_to_json(verdict.witness->u())},
                        {"w", matrix_to_json(verdict.witness->w())}};
    } else {
      out["witness"] = nullptr;
    }
  }
  if (verdict.oracle) out["oracle"] = to_json(*verdict.oracle);
  return out;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
  }
}

}  // namespace luinv
