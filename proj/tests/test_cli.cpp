#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

namespace ugs {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ugs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kNet = test::data_path("paper_network.json");

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

TEST(Cli, SolveWithZeroMetricPrintsEarliestExit) {
  const CliRun r = run({"--network", kNet, "--metric", test::data_path("zero_metric.json"), "solve"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tolerable delay: 11.83"), std::string::npos) << r.out;
}

TEST(Cli, RealizablePrintsTableRows) {
  const CliRun r = run({"--network", kNet, "realizable"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("8 realizable sets"), std::string::npos);
  EXPECT_NE(r.out.find("12.06"), std::string::npos);
  const CliRun j = run({"--network", kNet, "realizable", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["sets"].size(), 8u);
  EXPECT_EQ(doc["log"].size(), 8u);
}

TEST(Cli, PathsOnSingleEdge) {
  const CliRun r = run({"--network", test::data_path("single_edge.json"), "paths"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("path 1: 1 -> 2  length 5.0000"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("path 2"), std::string::npos);
}

TEST(Cli, RequirePositiveSignalsNoGuarantee) {
  const std::string fork = test::data_path("fork_network.json");
  EXPECT_EQ(run({"--network", fork, "--speed", "2", "solve", "--require-positive"}).code, cli::kNoGuarantee);
  EXPECT_EQ(run({"--network", fork, "--speed", "2", "solve"}).code, cli::kOk);
  EXPECT_EQ(run({"--network", kNet, "--speed", "1.62", "solve", "--require-positive"}).code, cli::kOk);
}

TEST(Cli, ValidationErrorsExitWithTwo) {
  const auto cyc = temp_file("ugs_cycle.json", R"({"nodes":[{"id":1},{"id":2}],
    "edges":[{"from":1,"to":2,"time":1},{"from":2,"to":1,"time":1}],"entry":1})");
  CliRun r = run({"--network", cyc.string(), "paths"});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_NE(r.err.find("CycleDetected"), std::string::npos);
  r = run({"--network", kNet, "--speed", "0.9", "solve"});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_NE(r.err.find("SpeedAdvantageViolated"), std::string::npos);
}

TEST(Cli, MalformedJsonReportsLine) {
  const auto bad = temp_file("ugs_bad.json", "{\n  \"nodes\": [\n    {\"id\": 1,}\n  ]\n}\n");
  const CliRun r = run({"--network", bad.string(), "paths"});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  const auto wrong = temp_file("ugs_wrong.json", R"({"nodes":[{"id":1},{"id":2}],
    "edges":[{"from":1,"to":2,"time":"slow"}],"entry":1})");
  const CliRun w = run({"--network", wrong.string(), "paths"});
  EXPECT_EQ(w.code, cli::kInvalid);
  EXPECT_NE(w.err.find("/edges/0/time"), std::string::npos) << w.err;
}

TEST(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run({"--network", "/nonexistent/net.json", "paths"}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"--network", kNet, "solve"}).code, cli::kUsage);
  EXPECT_EQ(run({"--network", kNet, "--speed", "2", "--metric", "x.json", "solve"}).code, cli::kUsage);
  EXPECT_EQ(run({"--network", kNet, "--speed", "2", "tree", "--format", "csv"}).code, cli::kUsage);
}

TEST(Cli, PolicyRoundTripReproducesSimulation) {
  for (const char* extra : {"", "--strict-resolution"}) {
    std::vector<std::string> base = {"--network", kNet, "--speed", "1.62"};
    if (*extra) base.push_back(extra);
    auto with = [&](std::vector<std::string> more) {
      std::vector<std::string> a = base;
      a.insert(a.end(), more.begin(), more.end());
      return run(a);
    };
    const CliRun solved = with({"solve", "--format", "json"});
    ASSERT_EQ(solved.code, 0) << solved.err;
    const auto policy = temp_file("ugs_policy.json", solved.out);
    const double D = nlohmann::json::parse(solved.out)["D"].get<double>();
    std::ostringstream t0;
    t0.precision(17);
    t0 << D;
    for (int k = 1; k <= 4; ++k) {
      const CliRun fresh = with({"simulate", "--path", std::to_string(k), "--t0", t0.str(), "--format", "json"});
      const CliRun loaded = with({"simulate", "--path", std::to_string(k), "--t0", t0.str(), "--policy",
                               policy.string(), "--format", "json"});
      EXPECT_EQ(fresh.code, 0) << fresh.err;
      EXPECT_EQ(fresh.out, loaded.out);
      EXPECT_NE(fresh.out.find("\"captured\""), std::string::npos);
    }
  }
}

TEST(Cli, TreeVerifySweepCritical) {
  CliRun r = run({"--network", kNet, "--speed", "1.62", "tree"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  r = run({"--network", kNet, "--speed", "1.62", "tree", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["ugs"], 1);
  r = run({"--network", kNet, "--speed", "1.62", "verify", "--t0", "4.8"});
  EXPECT_NE(r.out.find("all captured: yes"), std::string::npos) << r.out;
  r = run({"--network", kNet, "sweep", "--grid", "0.9,1.61,1.62"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("V,D,delay,mu\n0.9,,,\n", 0), 0u) << r.out;
  r = run({"--network", kNet, "sweep", "--grid", "1.2:2:5", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 5u);
  r = run({"--network", kNet, "critical-speed", "--lo", "0.5", "--hi", "1.61"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("critical speed"), std::string::npos);
  r = run({"--network", kNet, "critical-speed", "--lo", "1.5", "--hi", "2"});
  EXPECT_EQ(r.code, cli::kInvalid);
}

TEST(Cli, SeedGeneratesANetwork) {
  const CliRun a = run({"--seed", "7", "solve", "--format", "json"});
  const CliRun b = run({"--seed", "7", "solve", "--format", "json"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_GE(doc["n"].get<int>(), 2);
  EXPECT_LE(doc["n"].get<int>(), 4);
}

TEST(Cli, CsvPolicyTable) {
  const CliRun r = run({"--network", kNet, "--speed", "1.62", "solve", "--format", "csv"});
  EXPECT_EQ(r.out.rfind("node,set,D,mu,capture\n", 0), 0u);
  EXPECT_NE(r.out.find("6,\"{2,3}\",16.300000000,6,false"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace ugs
