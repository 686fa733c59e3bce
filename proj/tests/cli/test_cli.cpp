#include "hcox_cli/run.hpp"
#include "hcox/types.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using hcox::cli::main_entry;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hcox");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Parameters, Tokens) {
  const double th = std::sqrt(2.0);
  EXPECT_EQ(hcox::cli::parse_parameter("th", th), th);
  EXPECT_EQ(hcox::cli::parse_parameter("2th", th), 2 * th);
  EXPECT_EQ(hcox::cli::parse_parameter("2*th", th), 2 * th);
  EXPECT_EQ(hcox::cli::parse_parameter("th/4", th), th / 4);
  EXPECT_EQ(hcox::cli::parse_parameter("0.25", th), 0.25);
  EXPECT_THROW(hcox::cli::parse_parameter("tth", th), hcox::InputError);
  EXPECT_THROW(hcox::cli::parse_parameter("", th), hcox::InputError);
  EXPECT_EQ(hcox::cli::parse_list("1,2.5,4"), (std::vector<double>{1, 2.5, 4}));
}

TEST(Cli, Classify) {
  const Result r = run({"classify", "--graph", "n=2;m01=4;m12=4;m02=4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tag"], "Lanner");
  EXPECT_EQ(j["has_loop"], true);
  EXPECT_EQ(j["circuit"], nlohmann::json({0, 1, 2}));
  EXPECT_EQ(j["signature"], nlohmann::json({2, 0, 1}));
}

TEST(Cli, Family) {
  const Result r = run({"family", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0][1].get<double>(), -0.5);
  EXPECT_EQ(j[1][0].get<double>(), -1.0);
  EXPECT_EQ(run({"family", "--graph", "n=2;m01=3;m12=3;m02=3", "--t", "1"}).code, 2);
}

TEST(Cli, Equiv) {
  const std::string a = temp_path("a.json"), b = temp_path("b.json"), c = temp_path("c.json");
  std::ofstream(a) << "[[1,2],[3,1]]";
  std::ofstream(b) << "[[1,6],[1,1]]";
  std::ofstream(c) << "[[1,6],[2,1]]";
  const Result yes = run({"equiv", "--a", a, "--b", b});
  ASSERT_EQ(yes.code, 0) << yes.err;
  const auto j = nlohmann::json::parse(yes.out);
  EXPECT_NEAR(j["lambda"][1].get<double>(), 1.0 / 3.0, 1e-15);
  const Result no = run({"equiv", "--a", a, "--b", c});
  EXPECT_EQ(no.code, 0);
  EXPECT_EQ(no.out, "inequivalent\n");
  EXPECT_EQ(run({"equiv", "--a", a, "--b", temp_path("missing.json")}).code, 2);
}

TEST(Cli, Enumerate) {
  const Result r = run({"enumerate", "--depth", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"depth,count", "0,1", "1,3", "2,6", "3,12", "4,21"}));
  const Result j = run({"enumerate", "--depth", "2", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)[2]["count"], 6);
}

TEST(Cli, Distance) {
  const Result r = run({"distance", "--t", "th", "--depth", "10", "--x", "1/3,1/3,1/3", "--y", "1/2,1/4,1/4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "lower,upper");
  double lo = 0, up = 0;
  ASSERT_EQ(std::sscanf(ls[1].c_str(), "%lf,%lf", &lo, &up), 2);
  EXPECT_LE(lo, up);
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(up, 0.5 * std::log(2.0));
  EXPECT_EQ(run({"distance", "--t", "th", "--x", "1,0", "--y", "0,1"}).code, 2);
}

TEST(Cli, SweepAndDeterminism) {
  const std::vector<std::string> args = {"sweep", "--t-list", "th,2th,4th", "--depth", "12"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto ls = lines(a.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "t,delta_lower,delta_upper,gap_max,count_at_Rmax,delta_hat,R_min,R_max,ball_size");
  std::vector<double> upper;
  for (std::size_t k = 1; k < ls.size(); ++k) {
    double t, lo, hi;
    ASSERT_EQ(std::sscanf(ls[k].c_str(), "%lf,%lf,%lf", &t, &lo, &hi), 3);
    upper.push_back(hi);
  }
  EXPECT_GT(upper[0], upper[1]);
  EXPECT_GT(upper[1], upper[2]);
  EXPECT_NE(ls[1].find("1.41421356237,"), std::string::npos);
}

TEST(Cli, EntropyWindow) {
  const Result ok = run({"entropy", "--t", "th", "--depth", "12", "--window", "2,4", "--seed", "3"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(lines(ok.out)[1].find(",2,4,"), std::string::npos);
  EXPECT_EQ(run({"entropy", "--t", "th", "--depth", "8", "--window", "2,40"}).code, 2);
  EXPECT_EQ(run({"entropy", "--t", "th", "--window", "4,2"}).code, 2);
}

TEST(Cli, Render) {
  const std::string path = temp_path("tiles.svg");
  const Result r = run({"render", "--t", "th", "--depth", "10", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["polygons"].get<std::size_t>(), j["ball_size"].get<std::size_t>() - j["degenerate"].get<std::size_t>());
  std::ifstream f(path);
  std::stringstream svg;
  svg << f.rdbuf();
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
  EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
  EXPECT_EQ(run({"render", "--t", "th"}).code, 2);
}

TEST(Cli, VerifySuite) {
  const Result r = run({"verify", "--suite", "lemmas", "--seed", "5", "--depth", "10", "--samples", "60"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS lemmas/star convexity"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "lemmas"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope", "--seed", "1"}).code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--depth", "0"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--depth", "x"}).code, 2);
  EXPECT_EQ(run({"classify", "--graph", "n=2;m01=1"}).code, 2);
  EXPECT_EQ(run({"family", "--t", "-1"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--depth", "12", "--max-elements", "100"}).code, 2);
  EXPECT_EQ(run({"classify", "--format", "svg"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--format", "xml"}).code, 2);
}

TEST(Cli, ConfigWithOverrides) {
  const std::string cfg = temp_path("run.json");
  std::ofstream(cfg) << R"({"command": "enumerate", "depth": 3, "graph": "n=2;m01=4;m12=4;m02=4"})";
  const Result base = run({"--config", cfg});
  ASSERT_EQ(base.code, 0) << base.err;
  EXPECT_EQ(lines(base.out).size(), 5u);
  const Result over = run({"enumerate", "--config", cfg, "--depth", "2"});
  ASSERT_EQ(over.code, 0) << over.err;
  EXPECT_EQ(lines(over.out).size(), 4u);
  std::ofstream(cfg) << R"({"command": "enumerate", "depth": "three"})";
  EXPECT_EQ(run({"--config", cfg}).code, 2);
  std::ofstream(cfg) << R"({"command": "enumerate", "colour": 1})";
  EXPECT_EQ(run({"--config", cfg}).code, 2);
}
