#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbd/error.hpp"
#include "bbd/io.hpp"

namespace bbd {
namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("bbd_io_test_" + name);
  std::ofstream(path) << text;
  return path;
}

TEST(ModelSpec, ParsesEveryFamily) {
  EXPECT_EQ(parse_model_spec("gaussian:mu=0,sigma=1").as<Gaussian>()->sigma, 1.0);
  EXPECT_EQ(parse_model_spec("gaussian:sigma=2,mu=-1.5").as<Gaussian>()->mu, -1.5);
  EXPECT_EQ(parse_model_spec("poisson:lambda=4").as<Poisson>()->lambda, 4.0);
  EXPECT_EQ(parse_model_spec("binomial:n=10,p=0.3").as<Binomial>()->n, 10u);
  EXPECT_EQ(parse_model_spec("exponential:rate=2.5").as<Exponential>()->rate, 2.5);
  EXPECT_EQ(parse_model_spec("pareto:shape=3,xm=0.5").as<Pareto>()->xm, 0.5);
}

TEST(ModelSpec, RejectsMalformedText) {
  EXPECT_THROW(parse_model_spec("gaussian:mu=0"), ParseError);
  EXPECT_THROW(parse_model_spec("gaussian:mu=0,sigma=1,nu=3"), ParseError);
  EXPECT_THROW(parse_model_spec("gaussian:mu=0,mu=1,sigma=1"), ParseError);
  EXPECT_THROW(parse_model_spec("gaussian:mu=zero,sigma=1"), ParseError);
  EXPECT_THROW(parse_model_spec("binomial:n=2.5,p=0.5"), ParseError);
  EXPECT_THROW(parse_model_spec("cauchy:x0=0"), ParseError);
  EXPECT_THROW(parse_model_spec("poisson:lambda=-1"), DomainError);
}

TEST(DistributionJson, DiscreteAndGridded) {
  const auto d = parse_distribution_json(R"({"probs":[0.25,0.75]})");
  ASSERT_TRUE(std::holds_alternative<DiscreteDistribution>(d));
  EXPECT_EQ(std::get<DiscreteDistribution>(d)[1], 0.75);
  const auto g = parse_distribution_json(R"({"x0":0,"dx":0.5,"values":[1,1,1]})");
  ASSERT_TRUE(std::holds_alternative<GriddedDensity>(g));
  EXPECT_EQ(std::get<GriddedDensity>(g).dx(), 0.5);
  EXPECT_THROW(parse_distribution_json("[1,2]"), ParseError);
  EXPECT_THROW(parse_distribution_json("{"), ParseError);
  EXPECT_THROW(parse_distribution_json(R"({"probs":["a"]})"), ParseError);
  EXPECT_THROW(parse_distribution_json(R"({"probs":[0.5,0.4]})"), DomainError);
}

TEST(DistributionCsv, SkipsHeaderAndBlankLines) {
  std::istringstream in("p\n0.5\n\n0.5\n");
  EXPECT_EQ(parse_distribution_csv(in).size(), 2u);
  std::istringstream bad("0.5\nx\n");
  EXPECT_THROW(parse_distribution_csv(bad), ParseError);
  std::istringstream empty("p\n");
  EXPECT_THROW(parse_distribution_csv(empty), ParseError);
}

TEST(LoadDistribution, DispatchesOnExtension) {
  const auto json = write_temp("d.json", R"({"probs":[1.0]})");
  const auto csv = write_temp("d.csv", "0.3\n0.7\n");
  EXPECT_EQ(std::get<DiscreteDistribution>(load_distribution(json)).size(), 1u);
  EXPECT_EQ(std::get<DiscreteDistribution>(load_distribution(csv)).size(), 2u);
  EXPECT_THROW(load_distribution("/nonexistent/bbd.csv"), ParseError);
  EXPECT_TRUE(std::holds_alternative<ParametricModel>(resolve_input("poisson:lambda=1")));
  EXPECT_TRUE(std::holds_alternative<DiscreteDistribution>(resolve_input(csv.string())));
}

TEST(FormatDouble, SeventeenDigitsAndSentinels) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(0.8824969025845955)), 0.8824969025845955);
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

}  // namespace
}  // namespace bbd
