#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bbd/error.hpp"
#include "bbd/info_geometry.hpp"
#include "oracle.hpp"

namespace bbd {
namespace {

// Fisher information by the extended-precision score integral.
oracle::Real poisson_fisher_oracle(oracle::Real lambda) {
  const auto pmf = oracle::poisson_pmf(lambda, 400);
  oracle::Real s = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const oracle::Real score = static_cast<oracle::Real>(k) / lambda - 1;
    s += pmf[k] * score * score;
  }
  return s;
}

TEST(ScalarFamily, ParsesNames) {
  EXPECT_EQ(parse_scalar_family("gaussian-mean"), ScalarFamily::GaussianMean);
  EXPECT_EQ(parse_scalar_family("pareto"), ScalarFamily::Pareto);
  EXPECT_EQ(scalar_family_name(ScalarFamily::GaussianSigma), "gaussian-sigma");
  EXPECT_THROW(parse_scalar_family("cauchy"), ParseError);
}

TEST(Fisher, Examples) {
  EXPECT_DOUBLE_EQ(fisher_information({ScalarFamily::Poisson}, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(fisher_information({ScalarFamily::GaussianMean, 1.0}, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(fisher_information({ScalarFamily::Exponential}, 1.0), 1.0);
  EXPECT_NEAR(static_cast<double>(poisson_fisher_oracle(2.0L)), 0.5, 1e-15);
  EXPECT_THROW(fisher_information({ScalarFamily::Poisson}, -1.0), DomainError);
  EXPECT_THROW(fisher_information({ScalarFamily::Binomial, 5.0}, 1.0), DomainError);
}

TEST(Fisher, NumericModeAgrees) {
  const std::vector<std::pair<FamilySlice, double>> cases = {
      {{ScalarFamily::Poisson}, 2.0},           {{ScalarFamily::Poisson}, 0.4},
      {{ScalarFamily::GaussianMean, 1.0}, 0.0}, {{ScalarFamily::GaussianMean, 0.3}, -2.0},
      {{ScalarFamily::GaussianSigma, 0.0}, 1.7}, {{ScalarFamily::Exponential}, 1.0},
      {{ScalarFamily::Exponential}, 4.0},       {{ScalarFamily::Binomial, 12.0}, 0.35},
      {{ScalarFamily::Pareto, 1.0}, 2.0},       {{ScalarFamily::Pareto, 3.0}, 0.7},
  };
  for (const auto& [slice, theta] : cases) {
    const double analytic = fisher_information(slice, theta);
    const double numeric = fisher_information(slice, theta, FisherMode::Numeric);
    EXPECT_NEAR(numeric, analytic, 1e-5 * analytic) << scalar_family_name(slice.family) << " " << theta;
  }
}

TEST(CAlpha, Examples) {
  EXPECT_NEAR(c_alpha(Alpha::finite(2.0)), 1.0 / (8.0 * std::numbers::ln2), 1e-15);
  EXPECT_NEAR(c_alpha(Alpha::finite(2.0)), 0.1803369, 1e-7);
  EXPECT_NEAR(c_alpha(Alpha::finite(-1.0)), 1.0 / (4.0 * std::numbers::ln2), 1e-15);
  EXPECT_NEAR(c_alpha(Alpha::finite(-1.0)), 0.3606738, 1e-7);
  EXPECT_NEAR(c_alpha(Alpha::finite(1e8)), 0.25, 1e-7);
  EXPECT_EQ(c_alpha(Alpha::pos_infinity()), 0.25);
}

TEST(CAlpha, PositiveAcrossDomain) {
  for (double a : {-1e9, -100.0, -1.0, -1e-3, 1.0 + 1e-6, 1.1, 3.0, 1e9}) {
    EXPECT_GT(c_alpha(Alpha::finite(a)), 0.0) << a;
  }
}

TEST(CurvatureCheck, Examples) {
  const auto poisson = curvature_check({ScalarFamily::Poisson}, 2.0, Alpha::finite(2), 1e-3);
  EXPECT_NEAR(poisson.fd_curvature[0], 0.0901685, 1e-6);
  EXPECT_LE(poisson.rel_error, 1e-4);
  EXPECT_EQ(poisson.z_at_theta, 0.0);
  EXPECT_EQ(poisson.dim, 1u);

  const auto gauss = curvature_check({ScalarFamily::GaussianMean, 1.0}, 0.0, Alpha::finite(2), 1e-3);
  EXPECT_NEAR(gauss.fd_curvature[0], 0.1803369, 1e-6);
  EXPECT_LE(gauss.rel_error, 1e-4);

  const auto neg = curvature_check({ScalarFamily::GaussianMean, 1.0}, 0.0, Alpha::finite(-1), 1e-3);
  EXPECT_NEAR(neg.fd_curvature[0], 0.3606738, 1e-6);
}

TEST(CurvatureCheck, MatchesIndependentSecondDifference) {
  // Second difference of B_2 along the Poisson slice from the oracle formulas.
  const oracle::Real theta = 3.0L;
  auto z = [&](oracle::Real phi) {
    const oracle::Real d = std::sqrt(theta) - std::sqrt(phi);
    return oracle::zeta(std::exp(-d * d / 2));
  };
  const double fd = static_cast<double>(oracle::second_difference(z, theta, 1e-3L));
  const auto report = curvature_check({ScalarFamily::Poisson}, 3.0, Alpha::finite(2), 1e-3);
  EXPECT_NEAR(report.fd_curvature[0], fd, 1e-6 * fd);
}

TEST(CurvatureCheck, Errors) {
  EXPECT_THROW(curvature_check({ScalarFamily::Poisson}, 2.0, Alpha::finite(2), 0.0), DomainError);
  EXPECT_THROW(curvature_check({ScalarFamily::Poisson}, 0.5, Alpha::finite(2), 1.0), DomainError);
  EXPECT_THROW(curvature_check({ScalarFamily::Poisson}, 2.0, Alpha::finite(2), 1e-9),
               NumericInstabilityError);
}

TEST(CurvatureMatrix, Examples) {
  const auto unit = curvature_matrix(0.0, 1.0, Alpha::finite(2), 1e-3);
  ASSERT_EQ(unit.fd_curvature.size(), 4u);
  EXPECT_NEAR(unit.fd_curvature[0], 0.1803369, 1e-6);
  EXPECT_NEAR(unit.fd_curvature[3], 0.3606738, 1e-6);
  EXPECT_LE(unit.max_off_diagonal, 1e-6);
  EXPECT_NEAR(unit.fd_curvature[1], unit.fd_curvature[2], 1e-10);

  const auto wide = curvature_matrix(0.0, 2.0, Alpha::finite(2), 1e-3);
  EXPECT_NEAR(wide.fd_curvature[0], 0.0450842, 1e-6);
  EXPECT_NEAR(wide.fd_curvature[3], 0.0901685, 1e-6);
  EXPECT_LE(wide.rel_error, 1e-3);
  EXPECT_THROW(curvature_matrix(0.0, 1e-4, Alpha::finite(2), 1e-3), DomainError);
}

TEST(RhoAlong, DerivativesAtCoincidence) {
  const FamilySlice slice{ScalarFamily::Exponential};
  const double theta = 2.0;
  const double h = 1e-4;
  const double first = (rho_along(slice, theta, theta + h) - rho_along(slice, theta, theta - h)) / (2 * h);
  EXPECT_LE(std::abs(first), 1e-8);
  const double hs = 1e-3;
  const double second =
      (rho_along(slice, theta, theta + hs) - 2.0 + rho_along(slice, theta, theta - hs)) / (hs * hs);
  EXPECT_NEAR(second, -fisher_information(slice, theta) / 4.0, 1e-3 * fisher_information(slice, theta) / 4.0);
}

}  // namespace
}  // namespace bbd
