#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliRun {
  int status;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "fqspread");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = fqs::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, SpreadEval) {
  const CliRun r = run({"--field", "5^1", "--d", "2", "spread", "eval", "--apex", "0,0", "--b", "1,0", "--c", "0,1"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Value(1)\n");
  EXPECT_EQ(run({"--field", "5", "spread", "eval", "--apex", "0,0", "--b", "1,2", "--c", "0,1"}).out, "Undefined\n");
}

TEST(Cli, FieldInfo) {
  const CliRun r = run({"--field", "3^2", "field", "info"});
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["q"], 9);
  EXPECT_EQ(j["modulus"], nlohmann::json::parse("[1,0,1]"));
  EXPECT_EQ(j["minus_one_is_square"], true);
}

TEST(Cli, ErrorLines) {
  CliRun r = run({"--field", "2^3", "field", "info"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(first_line(r.err), "ERROR CharacteristicTwo");
  r = run({"--field", "7", "--d", "3", "construct", "con2"});
  EXPECT_EQ(first_line(r.err), "ERROR BadResidue");
  r = run({"--field", "5", "--d", "2", "spread", "eval", "--apex", "0,0", "--b", "1,0,0", "--c", "0,1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(first_line(r.err), "ERROR DimensionMismatch");
  r = run({"--field", "5", "--d", "2", "spread", "eval", "--apex", "0,0", "--b", "1,x", "--c", "0,1"});
  EXPECT_EQ(first_line(r.err), "ERROR ParseError");
  r = run({"--field", "5", "--d", "4", "--budget", "10", "sphere"});
  EXPECT_EQ(first_line(r.err), "ERROR BudgetExceeded");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"--format", "xml", "field", "info"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST(Cli, ConstructionsExperimentPasses) {
  const CliRun r = run({"--field", "5^1", "--d", "3", "experiment", "constructions"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "pass");
}

TEST(Cli, IsoTripleSearch) {
  EXPECT_EQ(run({"--field", "3^1", "--d", "6", "search", "iso-triple"}).out, "NoneFound\n");
  const CliRun r = run({"--field", "5", "--d", "6", "search", "iso-triple"});
  EXPECT_EQ(first_line(r.out), "q=5 d=6");
}

TEST(Cli, PointFileRoundTripThroughCensus) {
  const CliRun con = run({"--field", "5", "--d", "2", "construct", "con1"});
  ASSERT_EQ(con.status, 0);
  const std::string path = temp_file("con1.txt", con.out);
  const CliRun c = run({"census", "--points", path, "spreads"});
  ASSERT_EQ(c.status, 0) << c.err;
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["defined_count"], 0);
  EXPECT_EQ(j["undefined_triples"], 60);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_TRUE(nlohmann::json::parse(run({"--timing", "census", "--points", path, "spreads"}).out).contains("elapsed_ms"));
  EXPECT_EQ(run({"census", "--points", path, "spreads"}).out, c.out);
}

TEST(Cli, CensusCsvAndOccurrences) {
  const std::string path = temp_file("line.txt", "q=5 d=2\n0,0\n1,0\n2,0\n");
  EXPECT_EQ(run({"--format", "csv", "census", "--points", path, "lines"}).out, "lines,max_degree\n1,1\n");
  const auto j = nlohmann::json::parse(run({"census", "--points", path, "occurrences", "--gamma", "0"}).out);
  EXPECT_EQ(j["occurrences"], 6);
}

TEST(Cli, DuplicateRowsRejected) {
  const std::string path = temp_file("dup.txt", "q=5 d=2\n1,1\n1,1\n");
  const CliRun r = run({"census", "--points", path, "distances"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(first_line(r.err), "ERROR ParseError");
}

TEST(Cli, ExperimentSeedFromEnvironmentAndFailingVerdict) {
  const CliRun a = run({"--field", "5", "--seed", "4", "experiment", "beck", "--trials", "3"});
  setenv("FQSPREAD_SEED", "4", 1);
  const CliRun b = run({"--field", "5", "experiment", "beck", "--trials", "3"});
  unsetenv("FQSPREAD_SEED");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.status, 0);
  const std::string path = temp_file("collinear.txt", "q=5 d=2\n0,0\n1,0\n2,0\n3,0\n4,0\n");
  const CliRun f = run({"--field", "5", "experiment", "beck", "--inject", path});
  EXPECT_EQ(f.status, 1);
  EXPECT_EQ(nlohmann::json::parse(f.out)["verdict"], "fail");
}

TEST(Cli, OutFile) {
  const std::string path = testing::TempDir() + "sphere.txt";
  ASSERT_EQ(run({"--field", "5", "--d", "2", "--out", path, "sphere"}).status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "q=5 d=2\n1,0\n4,0\n0,1\n0,4\n");
}
