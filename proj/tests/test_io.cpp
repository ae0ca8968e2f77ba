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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "luinv/error.hpp"
#include "luinv/store.hpp"
#include "test_util.hpp"

namespace luinv {
namespace {

using testing::kCfg;
namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("luinv_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path &path() const { return path_; }

 private:
  fs::path path_;
};

ErrorCode parse_error(const std::string &text) {
  try {
    parse_state(text, kCfg);
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::Io;
}

TEST(StateFile, RoundTripIsExact) {
  const State mixed = testing::wishart(3, 7);
  const State back = parse_state(serialize_state(mixed), kCfg);
  EXPECT_EQ(std::get<DensityMatrix>(back).matrix(), std::get<DensityMatrix>(mixed).matrix());

  const State pure = random_pure(2, 3);
  const State pure_back = parse_state(serialize_state(pure), kCfg);
  EXPECT_EQ(std::get<PureState>(pure_back).coeffs(), std::get<PureState>(pure).coeffs());
  EXPECT_EQ(serialize_state(pure_back), serialize_state(pure));
}

TEST(StateFile, FieldOrder) {
  const std::string text = serialize_state(State(PureState::validated(
      ComplexMatrix::Identity(2, 2) / std::sqrt(2.0), 2)));
  EXPECT_EQ(text.rfind("{\"schema_version\":1,\"kind\":\"pure\",\"dim\":2,\"matrix\":[[[", 0), 0u);
}

TEST(StateFile, Rejections) {
  EXPECT_EQ(parse_error("not json"), ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"kind":"pure","dim":1,"matrix":[[[1,0]]]})"), ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"schema_version":2,"kind":"pure","dim":1,"matrix":[[[1,0]]]})"),
            ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"schema_version":1,"kind":"odd","dim":1,"matrix":[[[1,0]]]})"),
            ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"schema_version":1,"kind":"pure","dim":1,"matrix":[[1]]})"),
            ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"schema_version":1,"kind":"pure","dim":2,"matrix":[[[1,0]]]})"),
            ErrorCode::BadDimension);
  EXPECT_EQ(parse_error(R"({"schema_version":1,"kind":"pure","dim":1,"matrix":[[[2,0]]]})"),
            ErrorCode::NotNormalized);
}

TEST(StateFile, WriteAndRead) {
  TempDir dir;
  const fs::path p = dir.path() / "state.json";
  write_state_file(p, State(testing::wishart(2, 7)));
  EXPECT_FALSE(fs::exists(dir.path() / "state.json.tmp"));
  const State s = read_state_file(p, kCfg);
  EXPECT_EQ(std::get<DensityMatrix>(s).dim(), 2);
  EXPECT_THROW(read_state_file(dir.path() / "missing.json", kCfg), Error);
}

TEST(Store, InsertIsIdempotent) {
  TempDir dir;
  FingerprintStore store(dir.path());
  const InvariantFingerprint fp = fingerprint(testing::wishart(2, 7), kCfg);
  const auto first = store.insert(fp, "seed 7");
  EXPECT_TRUE(first.inserted);
  const auto again = store.insert(fp, "other label");
  EXPECT_FALSE(again.inserted);
  EXPECT_EQ(first.key, again.key);
  const auto record = store.load(first.key);
  ASSERT_TRUE(record.has_value());
  EXPECT_EQ((*record)["label"], "seed 7");
  EXPECT_EQ((*record)["key"], first.key);
  EXPECT_TRUE(record->contains("created_at"));
  EXPECT_EQ((*record)["fingerprint"]["N"], 2);
}

TEST(Store, LocalUnitaryImageHitsSameKey) {
  TempDir dir;
  FingerprintStore store(dir.path());
  const DensityMatrix rho = testing::wishart(2, 7);
  const auto first = store.insert(fingerprint(rho, kCfg), "orig");
  const auto image = store.insert(fingerprint(apply_local(rho, testing::haar_pair(2, 9)), kCfg), "image");
  EXPECT_EQ(first.key, image.key);
  EXPECT_FALSE(image.inserted);
  const auto other = store.insert(fingerprint(testing::wishart(2, 8), kCfg), "other");
  EXPECT_TRUE(other.inserted);
}

TEST(VerdictJson, Shape) {
  const DensityMatrix rho = testing::wishart(2, 7);
  const EquivalenceVerdict v = decide_equivalence(rho, apply_local(rho, testing::haar_pair(2, 1)), kCfg);
  const auto j = to_json(v, true);
  EXPECT_EQ(j["outcome"], "Equivalent");
  EXPECT_TRUE(j["residual"].is_number());
  EXPECT_EQ(j["witness"]["u"].size(), 2u);
  EXPECT_FALSE(to_json(v, false).contains("witness"));
}

}  // namespace
}  // namespace luinv
