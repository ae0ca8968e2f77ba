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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "luinv/equivalence.hpp"
#include "luinv/invariants.hpp"
#include "luinv/oracle.hpp"
#include "luinv/states.hpp"

namespace luinv {

inline constexpr int kStateSchemaVersion = 1;

// State file layout (JSON, keys in this order):
//   {"schema_version": 1, "kind": "pure" | "mixed", "dim": N,
//    "matrix": [[[re, im], ...], ...]}
// `matrix` is N x N coefficients for pure states and N^2 x N^2 for mixed
// states, rows in the row-major product basis.

struct StateFile {
  StateKind kind = StateKind::Mixed;
  int dim = 0;
  ComplexMatrix matrix;
};

/// Throws Error(Parse) for malformed documents and the validation errors
/// for matrices that do not describe a state.
State parse_state(const std::string &text, const ToleranceConfig &cfg);
State read_state_file(const std::filesystem::path &path, const ToleranceConfig &cfg);

std::string serialize_state(const State &state);
void write_state_file(const std::filesystem::path &path, const State &state);

nlohmann::ordered_json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::ordered_json to_json(const InvariantFingerprint &fp);
nlohmann::ordered_json to_json(const OracleReport &report);
nlohmann::ordered_json to_json(const EquivalenceVerdict &verdict, bool include_witness);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

}  // namespace luinv
