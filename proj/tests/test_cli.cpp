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

// Drives the luinv executable end to end: determinism, exit codes and the
// fingerprint store.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "luinv/io.hpp"
#include "process.hpp"
#include "test_util.hpp"

#ifndef LUINV_BIN
#error "LUINV_BIN must point at the luinv executable"
#endif

namespace luinv {
namespace {

namespace fs = std::filesystem;
using testing::quote;
using testing::run_command;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("luinv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  testing::ProcessResult luinv(const std::string &args) const {
    return run_command(std::string(LUINV_BIN) + " " + args);
  }

  static std::string slurp(const std::string &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(luinv("gen --n 2 --kind mixed --seed 7 --out " + quote(path("a.json"))).exit_code, 0);
  ASSERT_EQ(luinv("gen --n 2 --kind mixed --seed 7 --out " + quote(path("b.json"))).exit_code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const State s = read_state_file(path("a.json"), testing::kCfg);
  EXPECT_EQ(std::get<DensityMatrix>(s).matrix(), random_density(4, 7));

  const auto stdout_gen = luinv("gen --n 3 --kind pure --seed 1");
  EXPECT_EQ(stdout_gen.exit_code, 0);
  EXPECT_NE(stdout_gen.out.find("\"kind\":\"pure\""), std::string::npos);
}

TEST_F(CliTest, GenRejectsSmallN) {
  EXPECT_EQ(luinv("gen --n 1 --kind mixed --seed 7").exit_code, 64);
  EXPECT_EQ(luinv("gen --kind mixed").exit_code, 64);
  EXPECT_EQ(luinv("bogus").exit_code, 64);
}

TEST_F(CliTest, FingerprintOfMaximallyMixed) {
  write_state_file(path("mm.json"),
                   DensityMatrix::validated(ComplexMatrix::Identity(4, 4) / 4.0, 2, testing::kCfg));
  const auto r = luinv("fingerprint " + quote(path("mm.json")));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out)["fingerprint"];
  EXPECT_FALSE(j["generic"].get<bool>());
  const std::vector<double> expected = {1.0, 0.25, 1.0 / 16, 1.0 / 64};
  for (int s = 0; s < 4; ++s) EXPECT_NEAR(j["J"][s].get<double>(), expected[s], 1e-14);
}

TEST_F(CliTest, FingerprintDeterministicAndGeneric) {
  luinv("gen --n 2 --kind mixed --seed 7 --out " + quote(path("s.json")));
  const auto a = luinv("fingerprint " + quote(path("s.json")));
  const auto b = luinv("fingerprint " + quote(path("s.json")));
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out)["fingerprint"]["generic"].get<bool>());
}

TEST_F(CliTest, StoreDedupForLocalUnitaryImage) {
  const DensityMatrix rho = testing::wishart(2, 7);
  write_state_file(path("rho.json"), rho);
  write_state_file(path("img.json"), apply_local(rho, testing::haar_pair(2, 9)));
  const std::string store = quote(path("store"));
  const auto first = nlohmann::json::parse(luinv("fingerprint " + quote(path("rho.json")) + " --store " + store + " --label orig").out);
  const auto second = nlohmann::json::parse(luinv("fingerprint " + quote(path("img.json")) + " --store " + store).out);
  EXPECT_TRUE(first["store"]["inserted"].get<bool>());
  EXPECT_TRUE(second["store"]["dedup_hit"].get<bool>());
  EXPECT_EQ(first["store"]["key"], second["store"]["key"]);
  EXPECT_EQ(std::distance(fs::directory_iterator(path("store")), fs::directory_iterator{}), 1);
}

TEST_F(CliTest, CompareExitCodes) {
  const DensityMatrix rho = testing::wishart(2, 7);
  write_state_file(path("rho.json"), rho);
  write_state_file(path("img.json"), apply_local(rho, testing::haar_pair(2, 9)));
  write_state_file(path("other.json"), testing::wishart(2, 8));
  write_state_file(path("bell1.json"), testing::bell_diagonal({0.4, 0.3, 0.2, 0.1}));
  write_state_file(path("bell2.json"), testing::bell_diagonal({0.1, 0.2, 0.3, 0.4}));

  const auto eq = luinv("compare --witness " + quote(path("rho.json")) + " " + quote(path("img.json")));
  ASSERT_EQ(eq.exit_code, 0);
  const auto eqj = nlohmann::json::parse(eq.out);
  EXPECT_LT(eqj["residual"].get<double>(), 1e-8);
  EXPECT_EQ(eqj["witness"]["w"].size(), 2u);

  const auto ne = luinv("compare " + quote(path("rho.json")) + " " + quote(path("other.json")));
  EXPECT_EQ(ne.exit_code, 1);
  EXPECT_EQ(nlohmann::json::parse(ne.out)["detail"].get<std::string>().rfind("spectrum", 0), 0u);

  const auto ind = luinv("compare " + quote(path("bell1.json")) + " " + quote(path("bell2.json")));
  EXPECT_EQ(ind.exit_code, 2);
  EXPECT_NE(nlohmann::json::parse(ind.out)["detail"].get<std::string>().find("non-generic"),
            std::string::npos);

  EXPECT_EQ(luinv("compare " + quote(path("rho.json")) + " " + quote(path("img.json"))).out,
            luinv("compare " + quote(path("rho.json")) + " " + quote(path("img.json"))).out);
}

TEST_F(CliTest, CompareWithOracleAndWitnessCommand) {
  const DensityMatrix rho = testing::wishart(2, 7);
  write_state_file(path("rho.json"), rho);
  write_state_file(path("img.json"), apply_local(rho, testing::haar_pair(2, 9)));
  const auto r = luinv("compare --oracle --seed 3 " + quote(path("rho.json")) + " " + quote(path("img.json")));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["oracle"]["converged"].get<bool>());

  const auto w = luinv("witness " + quote(path("rho.json")) + " " + quote(path("img.json")));
  EXPECT_EQ(w.exit_code, 0);
  EXPECT_TRUE(nlohmann::json::parse(w.out)["witness"].is_object());

  const auto o = luinv("oracle --restarts 5 " + quote(path("rho.json")) + " " + quote(path("img.json")));
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_LT(nlohmann::json::parse(o.out)["best_cost"].get<double>(), 1e-8);
}

TEST_F(CliTest, PureCompare) {
  luinv("gen --n 3 --kind pure --seed 4 --out " + quote(path("p.json")));
  const PureState psi = std::get<PureState>(read_state_file(path("p.json"), testing::kCfg));
  write_state_file(path("q.json"), apply_local(psi, testing::haar_pair(3, 2)));
  const auto r = luinv("compare --oracle " + quote(path("p.json")) + " " + quote(path("q.json")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["oracle"]["schmidt_match"].get<bool>());
}

TEST_F(CliTest, DataErrorsExit65) {
  std::ofstream(path("bad.json")) << "{\"schema_version\":1,\"kind\":\"mixed\"";
  luinv("gen --n 2 --kind mixed --seed 1 --out " + quote(path("m2.json")));
  luinv("gen --n 3 --kind mixed --seed 1 --out " + quote(path("m3.json")));
  luinv("gen --n 2 --kind pure --seed 1 --out " + quote(path("p2.json")));
  EXPECT_EQ(luinv("fingerprint " + quote(path("bad.json"))).exit_code, 65);
  EXPECT_EQ(luinv("compare " + quote(path("m2.json")) + " " + quote(path("m3.json"))).exit_code, 65);
  EXPECT_EQ(luinv("compare " + quote(path("m2.json")) + " " + quote(path("p2.json"))).exit_code, 65);
}

TEST_F(CliTest, OutputFailureExit70) {
  EXPECT_EQ(luinv("gen --n 2 --seed 1 --out " + quote(path("missing/dir/x.json"))).exit_code, 70);
}

TEST_F(CliTest, SelftestPassesAndDetectsTampering) {
  const auto ok = luinv("selftest --trials 1");
  EXPECT_EQ(ok.exit_code, 0) << ok.out;
  const auto bad = luinv("selftest --trials 2 --tol 1e-30");
  EXPECT_NE(bad.exit_code, 0);
  EXPECT_NE(bad.out.find("FAIL theorem_roundtrip"), std::string::npos) << bad.out;
}

}  // namespace
}  // namespace luinv
