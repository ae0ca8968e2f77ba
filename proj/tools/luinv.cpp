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

// luinv: local-unitary invariants of bipartite states from the command line.
//
// Exit codes: 0 Equivalent / success, 1 Inequivalent (or failed selftest),
// 2 Indeterminate, 64 usage, 65 bad input data, 70 internal or output error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "luinv/equivalence.hpp"
#include "luinv/error.hpp"
#include "luinv/io.hpp"
#include "luinv/oracle.hpp"
#include "luinv/selftest.hpp"
#include "luinv/store.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

// Raised for bad input; carries the exit code to main.
struct Exit {
  int code;
  std::string message;
};

luinv::State load(const std::string &path, const luinv::ToleranceConfig &cfg) {
  try {
    return luinv::read_state_file(path, cfg);
  } catch (const luinv::Error &e) {
    throw Exit{kExitData, path + ": " + e.what()};
  }
}

int verdict_exit(luinv::Outcome o) {
  switch (o) {
    case luinv::Outcome::Equivalent: return 0;
    case luinv::Outcome::Inequivalent: return 1;
    case luinv::Outcome::Indeterminate: return 2;
  }
  return kExitInternal;
}

void print(const nlohmann::ordered_json &j) { std::cout << j.dump(2) << "\n"; }

struct CompareArgs {
  std::string a, b;
  double tol = 1e-8;
  bool witness = false;
  bool oracle = false;
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iter = 500;
};

int run_compare(const CompareArgs &args, bool witness) {
  luinv::ToleranceConfig cfg;
  cfg.eq_tol = args.tol;
  const luinv::State a = load(args.a, cfg);
  const luinv::State b = load(args.b, cfg);
  if (a.index() != b.index()) throw Exit{kExitData, "cannot compare a pure state with a mixed state"};

  luinv::EquivalenceVerdict verdict;
  std::optional<bool> pure_oracle_result;
  if (const auto *psi = std::get_if<luinv::PureState>(&a)) {
    const auto &phi = std::get<luinv::PureState>(b);
    if (psi->dim() != phi.dim()) throw Exit{kExitData, "local dimensions differ"};
    verdict = luinv::pure_decide(*psi, phi, cfg);
    if (args.oracle) pure_oracle_result = luinv::pure_oracle(*psi, phi, cfg);
  } else {
    const auto &rho = std::get<luinv::DensityMatrix>(a);
    const auto &sigma = std::get<luinv::DensityMatrix>(b);
    if (rho.dim() != sigma.dim()) throw Exit{kExitData, "local dimensions differ"};
    std::optional<luinv::OracleOptions> opts;
    if (args.oracle) opts = luinv::OracleOptions{args.restarts, args.max_iter, args.seed};
    verdict = luinv::decide_equivalence(rho, sigma, cfg, opts);
  }

  nlohmann::ordered_json out = luinv::to_json(verdict, witness);
  if (pure_oracle_result) out["oracle"] = {{"schmidt_match", *pure_oracle_result}};
  print(out);
  return verdict_exit(verdict.outcome);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Local-unitary invariants and equivalence of bipartite quantum states"};
  app.require_subcommand(1);

  // gen
  int gen_n = 2;
  std::string gen_kind = "mixed";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto *gen = app.add_subcommand("gen", "Write a random pure (Ginibre) or mixed (Wishart) state");
  gen->add_option("--n", gen_n, "Local dimension N (>= 2)")->required();
  gen->add_option("--kind", gen_kind, "pure or mixed")->check(CLI::IsMember({"pure", "mixed"}));
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output path (default: standard output)");

  // fingerprint
  std::string fp_path, fp_store, fp_label;
  double fp_tol = 1e-8;
  auto *fp = app.add_subcommand("fingerprint", "Print the invariant fingerprint of a state");
  fp->add_option("state", fp_path, "State file")->required();
  fp->add_option("--tol", fp_tol, "Relative comparison tolerance");
  fp->add_option("--store", fp_store, "Store directory for LU-class deduplication");
  fp->add_option("--label", fp_label, "Label saved with a new store record");

  // compare / witness
  CompareArgs cmp;
  auto *compare = app.add_subcommand("compare", "Decide local-unitary equivalence of two states");
  compare->add_option("a", cmp.a, "First state file")->required();
  compare->add_option("b", cmp.b, "Second state file")->required();
  compare->add_option("--tol", cmp.tol, "Relative comparison tolerance");
  compare->add_flag("--witness", cmp.witness, "Print the witness local unitaries");
  compare->add_flag("--oracle", cmp.oracle, "Cross-check with the numerical optimizer");
  compare->add_option("--seed", cmp.seed, "Oracle seed");
  compare->add_option("--restarts", cmp.restarts, "Oracle restarts");

  CompareArgs wit;
  auto *witness = app.add_subcommand("witness", "Extract and verify witness local unitaries");
  witness->add_option("a", wit.a, "First state file")->required();
  witness->add_option("b", wit.b, "Second state file")->required();
  witness->add_option("--tol", wit.tol, "Relative comparison tolerance");

  // oracle
  CompareArgs orc;
  auto *oracle = app.add_subcommand("oracle", "Search U(N) x U(N) numerically for a local map");
  oracle->add_option("a", orc.a, "First state file")->required();
  oracle->add_option("b", orc.b, "Second state file")->required();
  oracle->add_option("--seed", orc.seed, "Restart seed");
  oracle->add_option("--restarts", orc.restarts, "Number of restarts");
  oracle->add_option("--max-iter", orc.max_iter, "Iterations per restart");
  oracle->add_option("--tol", orc.tol, "Success threshold on the Frobenius distance");

  // selftest
  std::uint64_t st_seed = 1;
  int st_trials = 10;
  double st_tol = 1e-8;
  auto *selftest = app.add_subcommand("selftest", "Run the property battery at N = 2, 3");
  selftest->add_option("--seed", st_seed, "Battery seed");
  selftest->add_option("--trials", st_trials, "States per dimension and check")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--tol", st_tol, "Pipeline tolerance (eq_tol and rank_tol)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (double t : {fp_tol, cmp.tol, wit.tol, orc.tol, st_tol}) {
      if (!(t > 0.0 && t < 1.0)) throw Exit{kExitUsage, "--tol must lie strictly between 0 and 1"};
    }
    if (*gen) {
      if (gen_n < 2) throw Exit{kExitUsage, "--n must be at least 2"};
      luinv::State state =
          gen_kind == "pure"
              ? luinv::State(luinv::random_pure(gen_n, gen_seed))
              : luinv::State(luinv::DensityMatrix::validated(
                    luinv::random_density(gen_n * gen_n, gen_seed), gen_n, {}));
      if (gen_out.empty()) {
        std::cout << luinv::serialize_state(state);
      } else {
        luinv::write_state_file(gen_out, state);
      }
      return 0;
    }

    if (*fp) {
      luinv::ToleranceConfig cfg;
      cfg.eq_tol = fp_tol;
      const luinv::State state = load(fp_path, cfg);
      nlohmann::ordered_json out;
      luinv::InvariantFingerprint f;
      if (const auto *psi = std::get_if<luinv::PureState>(&state)) {
        f = luinv::fingerprint(luinv::projector(*psi), cfg);
        out["I"] = luinv::pure_invariants(*psi);
      } else {
        f = luinv::fingerprint(std::get<luinv::DensityMatrix>(state), cfg);
      }
      out["fingerprint"] = luinv::to_json(f);
      if (!fp_store.empty()) {
        luinv::FingerprintStore store(fp_store);
        const auto res = store.insert(f, fp_label);
        out["store"] = {{"key", res.key}, {"inserted", res.inserted}, {"dedup_hit", !res.inserted}};
      }
      print(out);
      return 0;
    }

    if (*compare) return run_compare(cmp, cmp.witness);
    if (*witness) return run_compare(wit, true);

    if (*oracle) {
      luinv::ToleranceConfig cfg;
      cfg.oracle_tol = orc.tol;
      const luinv::State a = load(orc.a, cfg);
      const luinv::State b = load(orc.b, cfg);
      const auto *rho = std::get_if<luinv::DensityMatrix>(&a);
      const auto *sigma = std::get_if<luinv::DensityMatrix>(&b);
      if (!rho || !sigma) throw Exit{kExitData, "oracle needs two mixed states"};
      if (rho->dim() != sigma->dim()) throw Exit{kExitData, "local dimensions differ"};
      const luinv::OracleReport rep = luinv::optimize_local(
          *rho, *sigma, luinv::OracleOptions{orc.restarts, orc.max_iter, orc.seed}, cfg);
      print(luinv::to_json(rep));
      return rep.converged ? 0 : 1;
    }

    if (*selftest) {
      luinv::ToleranceConfig cfg;
      cfg.eq_tol = st_tol;
      cfg.rank_tol = st_tol;
      const auto results = luinv::run_selftest(st_seed, st_trials, cfg);
      bool ok = true;
      for (const auto &r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.message << "\n";
        ok = ok && r.passed;
      }
      std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const Exit &e) {
    std::cerr << "luinv: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument &e) {
    std::cerr << "luinv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "luinv: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
