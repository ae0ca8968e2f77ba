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

#include "luinv/store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "luinv/error.hpp"
#include "luinv/io.hpp"

namespace luinv {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

FingerprintStore::FingerprintStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create store directory " + dir_.string());
}

FingerprintStore::InsertResult FingerprintStore::insert(const InvariantFingerprint &fp,
                                                        const std::string &label) {
  InsertResult result{fingerprint_key(fp), false};
  if (contains(result.key)) return result;

  nlohmann::ordered_json record;
  record["key"] = result.key;
  record["label"] = label;
  record["created_at"] = utc_timestamp();
  record["fingerprint"] = to_json(fp);
  write_file_atomic(dir_ / (result.key + ".json"), record.dump(2) + "\n");
  result.inserted = true;
  return result;
}

bool FingerprintStore::contains(const std::string &key) const {
  return std::filesystem::exists(dir_ / (key + ".json"));
}

std::optional<nlohmann::json> FingerprintStore::load(const std::string &key) const {
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::Parse, "corrupt store record " + key + ": " + e.what());
  }
}

}  // namespace luinv
