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
#include <optional>
#include <string>

#include <json.hpp>

#include "luinv/invariants.hpp"

namespace luinv {

/// Flat directory of fingerprint records, one `<key>.json` per LU class.
/// Records hold {key, label, created_at, fingerprint}.
class FingerprintStore {
 public:
  explicit FingerprintStore(std::filesystem::path dir);

  struct InsertResult {
    std::string key;
    bool inserted = false;  // false: a record with this key already existed
  };

  /// Idempotent by key; an existing record is left untouched.
  InsertResult insert(const InvariantFingerprint &fp, const std::string &label);

  bool contains(const std::string &key) const;
  std::optional<nlohmann::json> load(const std::string &key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace luinv
