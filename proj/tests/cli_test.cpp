#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "rsol_cli/cli.hpp"
#include "rsol_cli/corpus.hpp"

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "rsol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int status = rsol::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(RSOL_CORPUS_DIR) + "/" + rel; }

}  // namespace

TEST(Cli, OrbitOracleRefutesSingletons) {
  auto r = run({"eval", "--structure", corpus("structures/two.json"), "--theta", "dsl", "--oracle", "orbits",
                "--sentence", "∀x∃X∀y(X(y)<->x=y)"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "false\n");
}

TEST(Cli, ExpectationMismatchIsACheckFailure) {
  auto r = run({"eval", "--structure", corpus("structures/two.json"), "--theta", "weak-so", "--sentence",
                "forall x exists X forall y (X(y) <-> x = y)", "--expect", "false"});
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, SelfImplicationProofAccepted) {
  auto r = run({"prove-check", "--proof", corpus("proofs/self_impl.prf")});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
  EXPECT_EQ(r.out.rfind("accepted", 0), 0u);
}

TEST(Cli, NonUniformTemplateRejectedWithWitness) {
  auto r = run({"prove-check", "--proof", corpus("nonuniform.prf"), "--spot", "10"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("instance 7"), std::string::npos) << r.out;
}

TEST(Cli, DeductionFromPremiseFile) {
  auto r = run({"prove-check", "--proof", corpus("proofs/mp_chain.prf"), "--sigma", corpus("premises.txt"),
                "--deduce", "1"});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("deduction on premise 1: accepted"), std::string::npos) << r.out;
}

TEST(Cli, RasiowaSikorskiPrincipalDecision) {
  auto r = run({"rs", "--algebra", "fincof", "--family", "atoms", "--avoid", "0", "--steps", "50"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("principal at 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1/1 entries compatible"), std::string::npos) << r.out;
}

TEST(Cli, RasiowaSikorskiFamilyFile) {
  auto r = run({"rs", "--algebra", "powerset:3", "--family", corpus("families/powerset3.fam"), "--avoid", "{0}"});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("ultrafilter: yes"), std::string::npos) << r.out;
}

TEST(Cli, ExitStatuses) {
  EXPECT_EQ(run({"parse", "P0(x0", "--signature", "P0/1"}).status, 2);
  EXPECT_EQ(run({"parse", "P0(x0)", "--signature", "P0/1"}).status, 0);
  EXPECT_EQ(run({"eval", "--structure", "/nonexistent.json", "--sentence", "x0 = x0"}).status, 3);
  EXPECT_EQ(run({"frobnicate"}).status, 3);
  EXPECT_EQ(run({"--help"}).status, 0);
  EXPECT_EQ(run({"rs", "--algebra", "powerset:2", "--avoid", "{0, 1}"}).status, 3);
  EXPECT_EQ(run({"ktheta", "--structure", corpus("structures/blocks.json"), "--theta", "weak-so:3", "--bound",
                 "40", "--arity", "3"})
                .status,
            4);
}

TEST(Cli, ParsePrintsNormalForms) {
  auto r = run({"--ascii", "parse", "exists x0 P0(x0)", "--signature", "P0/1", "--normalize"});
  EXPECT_EQ(r.out, "~forall x0 ~P0(x0)\n");
}

TEST(Cli, JsonlIsDeterministicAndWellFormed) {
  std::vector<std::string> args = {"--format", "jsonl", "suite", "weakso", "--seed", "3"};
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("command"), "suite");
    EXPECT_EQ(j.at("seed"), 3);
    EXPECT_TRUE(j.at("pass").get<bool>());
    ++n;
  }
  EXPECT_EQ(n, 8u);
}

TEST(Cli, ReduceCollapsesPureStructure) {
  auto r = run({"--format", "jsonl", "reduce", "--structure", corpus("structures/two.json")});
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("block_of"), nlohmann::json::array({0, 0}));
  EXPECT_EQ(j.at("quotient").at("domain_size"), 1);
}

TEST(Cli, CompareSoAgreesUnderAllFo) {
  auto r = run({"compare-so", "--structure", corpus("structures/path3.json"), "--theta", "all-fo", "--sentence",
                "exists X forall x (X(x) <-> P0(x))", "--sentence", "forall x exists X forall y (X(y) <-> x = y)"});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
}

TEST(Corpus, EmbeddedProofsAllAccepted) {
  auto proofs = rsol::cli::proof_corpus();
  EXPECT_GE(proofs.size(), 20u);
  std::size_t with_templates = 0;
  for (const auto& np : proofs) {
    if (!np.proof.templates.empty()) ++with_templates;
  }
  EXPECT_GE(with_templates, 3u);
}
