#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gbs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gbs_cli_test_" + name);
}

}  // namespace

TEST(Cli, AnalyzeText) {
  const auto r = run({"analyze", "--builtin", "bs:2,3"});
  ASSERT_EQ(r.code, gbs::cli::kOk) << r.err;
  EXPECT_NE(r.out.find("amenable: NonAmenable"), std::string::npos);
  EXPECT_NE(r.out.find("haagerup: yes"), std::string::npos);
  EXPECT_NE(r.out.find("mu(t_e) = [[3/2]]"), std::string::npos);
}

TEST(Cli, AnalyzeJsonRoundTripsAndIsDeterministic) {
  const auto a = run({"analyze", "--builtin", "z2-f2", "--json"});
  const auto b = run({"analyze", "--builtin", "z2-f2", "--json"});
  ASSERT_EQ(a.code, gbs::cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::ordered_json::parse(a.out);
  EXPECT_EQ(doc.at("schema"), 1);
  EXPECT_EQ(doc.at("amenable").at("status"), "NonAmenable");
  EXPECT_EQ(doc.at("haagerup"), "no");
  EXPECT_TRUE(doc.at("certificates").contains("schottky"));
  EXPECT_EQ(doc.dump(2) + "\n", a.out);
}

TEST(Cli, InputFileMatchesBuiltin) {
  const auto path = temp_path("bs23.gbs");
  {
    std::ofstream f(path);
    f << "rank n = 1\nvertex v\nedge e: v -> v sigma = [2] sigma_bar = [3]\n";
  }
  const auto file = run({"mu", path.string(), "--json"});
  const auto named = run({"mu", "--input", path.string(), "--json"});
  const auto builtin = run({"mu", "--builtin", "bs:2,3", "--json"});
  ASSERT_EQ(file.code, gbs::cli::kOk) << file.err;
  EXPECT_EQ(nlohmann::json::parse(file.out).at("modular"), nlohmann::json::parse(builtin.out).at("modular"));
  EXPECT_EQ(file.out, named.out);
  std::filesystem::remove(path);
}

TEST(Cli, NormalFormAndBall) {
  const auto nf = run({"nf", "--builtin", "bs:2,3", "--word", "t*b^2*t^-1"});
  ASSERT_EQ(nf.code, gbs::cli::kOk) << nf.err;
  EXPECT_NE(nf.out.find("normal form: (3)"), std::string::npos);
  const auto b = run({"ball", "--builtin", "bs:1,2", "--radius", "3", "--json"});
  ASSERT_EQ(b.code, gbs::cli::kOk) << b.err;
  EXPECT_TRUE(nlohmann::json::parse(b.out).is_object());
}

TEST(Cli, TreeBallDot) {
  const auto path = temp_path("tree.dot");
  const auto r = run({"tree-ball", "--builtin", "bs:2,3", "--radius", "2", "--dot", path.string()});
  ASSERT_EQ(r.code, gbs::cli::kOk) << r.err;
  std::ifstream f(path);
  const std::string dot((std::istreambuf_iterator<char>(f)), {});
  EXPECT_EQ(dot.rfind("digraph tree {", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, CompressionWritesCsv) {
  const auto path = temp_path("rho.csv");
  const auto r = run({"compression", "--builtin", "bs:2,3", "--radius", "4", "--csv", path.string(), "--json"});
  ASSERT_EQ(r.code, gbs::cli::kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.is_object());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "r,rho");
  std::filesystem::remove(path);
}

TEST(Cli, EmbedAndProperness) {
  EXPECT_EQ(run({"embed", "--builtin", "bs:1,2", "--case", "n1", "--word", "b^4"}).code, gbs::cli::kOk);
  EXPECT_EQ(run({"properness", "--builtin", "bs:2,3", "--radius", "3"}).code, gbs::cli::kOk);
  EXPECT_EQ(run({"embed", "--builtin", "heisenberg", "--case", "d1", "--word", "t"}).code, gbs::cli::kFailure);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, gbs::cli::kOk);
  EXPECT_EQ(run({"analyze", "--builtin", "nope"}).code, gbs::cli::kFailure);
  EXPECT_EQ(run({"nf", "--builtin", "bs:2,3", "--word", "x"}).code, gbs::cli::kFailure);
  EXPECT_EQ(run({"analyze", temp_path("missing.gbs").string()}).code, gbs::cli::kFailure);
  EXPECT_EQ(run({"analyze", "--builtin", "bs:2,3", "--p", "1/2"}).code, gbs::cli::kFailure);
  EXPECT_EQ(run({"frobnicate"}).code, gbs::cli::kFailure);
  const auto big = run({"ball", "--builtin", "z2-f2", "--radius", "30"});
  EXPECT_EQ(big.code, gbs::cli::kResourceLimit);
  EXPECT_NE(big.err.find("ResourceLimit"), std::string::npos);
}
