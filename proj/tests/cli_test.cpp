#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "cliquepool/io.hpp"

namespace cliquepool {
namespace {

const std::string kData = CLIQUEPOOL_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cliquepool");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

TEST(Cli, CliquesWithOracle) {
  const Result r = run({"cliques", kData + "/c4.txt", "--oracle-check", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("clique_count"), 4);
  EXPECT_EQ(j.at("oracle"), "pass");
}

TEST(Cli, Coarsen) {
  const Result r = run({"coarsen", kData + "/c4.txt", "--features", kData + "/c4_features.txt", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("nodes"), 4);
  EXPECT_EQ(j.at("edges").size(), 6u);
  EXPECT_EQ(j.at("pools").size(), 4u);
}

TEST(Cli, HierarchyWritesDocument) {
  const auto path = std::filesystem::temp_directory_path() / "cliquepool_cli_h.json";
  const Result r = run({"hierarchy", kData + "/c4.txt", "--out", path.string(), "--dag", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("node_counts"), nlohmann::json({4, 4, 1}));
  EXPECT_EQ(io::read_hierarchy(path).node_counts(), (std::vector<std::size_t>{4, 4, 1}));
  std::filesystem::remove(path);
}

TEST(Cli, HierarchyStatsTable) {
  const Result r = run({"hierarchy", kData + "/c4.txt", "--stats"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("levels 3: 4 4 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("multi_assigned"), std::string::npos);
}

TEST(Cli, HierarchyBudgetFailure) {
  const Result r = run({"hierarchy", kData + "/c4.txt", "--max-levels", "1"});
  EXPECT_EQ(r.code, cli::kExitFailed);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HierarchyDataset) {
  const Result r = run({"hierarchy", "--dataset", kData, "--name", "TOY", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("graphs"), 3);
  EXPECT_EQ(j.at("diverged"), 0);
}

TEST(Cli, GridVerify) {
  const Result r = run({"grid", "verify", "--width", "8", "--height", "8", "--levels", "3", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("pass").get<bool>());
}

TEST(Cli, Chain) {
  const Result r = run({"chain", "--length", "32", "--pools", "5"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, TrainSyntheticIsDeterministic) {
  const std::vector<std::string> args{"train", "--synthetic", "--samples", "20", "--epochs", "3",
                                      "--hidden", "8", "--seed", "5"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto lines = json_lines(a.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_TRUE(lines.back().at("final").get<bool>());
  EXPECT_EQ(lines.back().at("pooling_parameters"), 0);
}

TEST(Cli, TrainDataset) {
  const Result r = run({"train", "--dataset", kData, "--name", "BARE", "--epochs", "2", "--hidden", "4"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"cliques", kData + "/missing.txt"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"cliques", kData + "/c4.txt", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"coarsen", kData + "/c4.txt", "--readout", "sum"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"hierarchy"}).code, cli::kExitUsage);
}

TEST(Cli, MalformedInputFailsValidation) {
  const auto path = std::filesystem::temp_directory_path() / "cliquepool_bad_edges.txt";
  std::ofstream(path) << "0 one\n";
  const Result r = run({"cliques", path.string()});
  EXPECT_EQ(r.code, cli::kExitFailed);
  EXPECT_NE(r.err.find(":1:"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace cliquepool
