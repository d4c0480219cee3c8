#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bbd/cli.hpp"
#include "bbd/error.hpp"
#include "oracle.hpp"

namespace bbd::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::ostringstream out;
  std::ostringstream err;
  std::istringstream in(stdin_text);
  const int code = run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("bbd_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(Compute, GaussianExample) {
  const auto r = invoke({"compute", "--alpha", "2", "-p", "gaussian:mu=0,sigma=1", "-q", "gaussian:mu=1,sigma=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"rho\":0.8824969"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  const oracle::Real rho = std::exp(-0.125L);
  EXPECT_NEAR(j["rho"].get<double>(), static_cast<double>(rho), 1e-15);
  EXPECT_NEAR(j["bbd"].get<double>(), static_cast<double>(oracle::zeta(rho)), 1e-15);
  EXPECT_EQ(j["alpha"].get<double>(), 2.0);
}

TEST(Compute, DiscreteFilesWithMeasures) {
  const auto p = temp_file("p.json", R"({"probs":[1,0]})");
  const auto q = temp_file("q.csv", "0\n1\n");
  const auto r = invoke({"compute", "--alpha", "inf", "-p", p, "-q", q, "--measures", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rho"].get<double>(), 0.0);
  EXPECT_EQ(j["bbd"].get<double>(), 1.0);
  EXPECT_EQ(j["alpha"], "inf");
  EXPECT_EQ(j["kld"], "inf");
  EXPECT_EQ(j["bhattacharyya"], "inf");
  EXPECT_NEAR(j["jsd"].get<double>(), std::log(2.0), 1e-15);
}

TEST(Compute, CsvFormat) {
  const auto r = invoke({"compute", "-p", "poisson:lambda=1", "-q", "poisson:lambda=4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "rho,bbd,alpha,method");
}

TEST(Compute, CrossFamilyFallsBackToQuadrature) {
  const auto r = invoke({"compute", "-p", "exponential:rate=1", "-q", "gaussian:mu=1,sigma=0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["method"], "numeric");
}

TEST(Errors, ExitOneWithOneLineDiagnostic) {
  const std::vector<std::vector<std::string>> cases = {
       {"compute", "-p", "gaussian:mu=0", "-q", "gaussian:mu=0,sigma=1"},
        {"compute", "-p", "poisson:lambda=1", "-q", "gaussian:mu=0,sigma=1"},
        {"compute", "-p", "/nonexistent.csv", "-q", "/nonexistent.csv"},
        {"compute", "--alpha", "0.5", "-p", "poisson:lambda=1", "-q", "poisson:lambda=2"},
        {"compute", "--bogus"},
        {"table", "--rho-steps", "1"},
        {"verify", "--suite", "nope"},
        {"verify", "--tolerance", "slack"},
        {"frobnicate"},
        {}};
  for (const auto& args : cases) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_TRUE(r.out.empty());
    ASSERT_FALSE(r.err.empty());
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
  }
}

TEST(Table, Example) {
  const auto r = invoke({"table", "--alphas", "2,-1,inf", "--rho-steps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "rho,hellinger_sq,bbd_alpha_2,bbd_alpha_-1,bbd_alpha_inf");
  std::getline(lines, line);
  EXPECT_EQ(line, "0,1,1,1,1");
  std::getline(lines, line);
  double rho, h2, b2, bm1, binf;
  char c;
  std::istringstream row(line);
  row >> rho >> c >> h2 >> c >> b2 >> c >> bm1 >> c >> binf;
  EXPECT_EQ(rho, 0.5);
  EXPECT_NEAR(b2, 0.4150375, 1e-7);
  EXPECT_NEAR(bm1, 0.5849625, 1e-7);
  EXPECT_EQ(binf, 0.5);
  std::getline(lines, line);
  EXPECT_EQ(line, "1,0,0,0,0");
}

TEST(Table, JsonFormat) {
  const auto r = invoke({"table", "--rho-steps", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["rho"].get<double>(), 1.0);
}

TEST(Bounds, FromRhoPriorAndFiles) {
  auto r = invoke({"bounds", "--rho", "0.6"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["lower"].get<double>(), 0.1, 1e-15);
  EXPECT_NEAR(j["upper"].get<double>(), 0.3, 1e-15);
  EXPECT_TRUE(j["pe"].is_null());

  const auto p = temp_file("b1.json", R"({"probs":[0.3,0.7]})");
  r = invoke({"bounds", "-p", p, "-q", p, "--prior", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["pe"].get<double>(), 0.1, 1e-15);
  EXPECT_NEAR(j["lower"].get<double>(), 0.1, 1e-12);

  EXPECT_EQ(invoke({"bounds", "--rho", "0.5", "--from-bbd", "0.3", "--alpha", "2"}).code, 1);
  EXPECT_EQ(invoke({"bounds", "--rho", "1.5"}).code, 1);
  EXPECT_EQ(invoke({"bounds", "--from-bbd", "0.3"}).code, 1);
}

TEST(Bounds, RoundTripFromCompute) {
  for (const std::string alpha : {"2", "-1", "1.5", "10", "inf"}) {
    const auto c = invoke({"compute", "--alpha", alpha, "-p", "poisson:lambda=1.3", "-q", "poisson:lambda=2.9"});
    ASSERT_EQ(c.code, 0) << c.err;
    const auto b = invoke({"bounds", "--from-bbd", "-"}, c.out);
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_NEAR(nlohmann::json::parse(b.out)["rho"].get<double>(),
                nlohmann::json::parse(c.out)["rho"].get<double>(), 1e-10)
        << alpha;
  }
  EXPECT_EQ(invoke({"bounds", "--from-bbd", "-"}, "not json").code, 1);
}

TEST(Multi, UniformAndExplicitWeights) {
  const auto a = temp_file("m1.json", R"({"probs":[0.5,0.5]})");
  const auto b = temp_file("m2.json", R"({"probs":[0.9,0.1]})");
  auto r = invoke({"multi", a, b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["rho_beta"].get<double>(), 0.8944271909999159, 1e-15);
  r = invoke({"multi", "--weights", "1,0", a, b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["rho_beta"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(invoke({"multi", "--weights", "1", a, b}).code, 1);
  EXPECT_EQ(invoke({"multi", a}).code, 1);
}

TEST(Curvature, ScalarAndMatrix) {
  auto r = invoke({"curvature", "--family", "poisson", "--theta", "2", "--alpha", "2", "--h", "1e-3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["fd_curvature"][0].get<double>(), 0.0901685, 1e-6);
  r = invoke({"curvature", "--family", "gaussian", "--theta", "0,1", "--alpha", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["fd_curvature"].size(), 4u);
  EXPECT_NEAR(j["fd_curvature"][3].get<double>(), 0.3606738, 1e-6);
  EXPECT_EQ(invoke({"curvature", "--family", "poisson", "--theta", "2", "--h", "1e-9"}).code, 1);
}

TEST(Verify, ExitCodesAndDeterminism) {
  const std::vector<std::string> args = {"verify", "--suite", "bounded", "--trials", "100", "--seed", "9"};
  const auto first = invoke(args);
  const auto second = invoke(args);
  ASSERT_EQ(first.code, 0) << first.out;
  EXPECT_EQ(first.out, second.out);
  const auto strict = invoke({"verify", "--suite", "closed-forms", "--trials", "5", "--tolerance",
                              "closed-form=1e-300"});
  EXPECT_EQ(strict.code, 2);
  EXPECT_FALSE(nlohmann::json::parse(strict.out)["passed"].get<bool>());
}

TEST(Determinism, IdenticalArgvGivesIdenticalBytes) {
  const std::vector<std::vector<std::string>> runs = {
      {"compute", "-p", "pareto:shape=2,xm=1", "-q", "pareto:shape=3,xm=1", "--measures", "zeta,hellinger_sq"},
      {"table", "--rho-steps", "11", "--alphas", "1.5,-10"},
      {"verify", "--suite", "multiway", "--trials", "50", "--seed", "3"},
  };
  for (const auto& args : runs) EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(FigureTable, RowOrdering) {
  const std::vector<Alpha> alphas = {Alpha::finite(2), Alpha::finite(-1)};
  std::istringstream csv(emit_figure_table(alphas, 101));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    double rho, h2, b2, bm1;
    char c;
    std::istringstream row(line);
    row >> rho >> c >> h2 >> c >> b2 >> c >> bm1;
    EXPECT_LE(b2, h2);
    EXPECT_LE(h2, bm1);
    ++rows;
  }
  EXPECT_EQ(rows, 101);
  EXPECT_THROW(emit_figure_table(alphas, 1), DomainError);
}

}  // namespace
}  // namespace bbd::cli
