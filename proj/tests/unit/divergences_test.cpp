#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bbd/divergences.hpp"
#include "bbd/error.hpp"
#include "oracle.hpp"

namespace bbd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const DiscreteDistribution kHalf({0.5, 0.5});
const DiscreteDistribution kSkew({0.9, 0.1});
const DiscreteDistribution kLeft({1.0, 0.0});
const DiscreteDistribution kRight({0.0, 1.0});

TEST(Alpha, RejectsUnitInterval) {
  EXPECT_THROW(Alpha::finite(0.0), DomainError);
  EXPECT_THROW(Alpha::finite(0.5), DomainError);
  EXPECT_THROW(Alpha::finite(1.0), DomainError);
  EXPECT_THROW(Alpha::finite(NAN), DomainError);
  EXPECT_NO_THROW(Alpha::finite(1.0000001));
  EXPECT_NO_THROW(Alpha::finite(-1e-9));
}

TEST(Alpha, ParsesInfinityAndLabels) {
  EXPECT_EQ(Alpha::parse("inf"), Alpha::pos_infinity());
  EXPECT_EQ(Alpha::parse("+Inf"), Alpha::pos_infinity());
  EXPECT_EQ(Alpha::parse("-infinity"), Alpha::neg_infinity());
  EXPECT_EQ(Alpha::parse("-1").label(), "-1");
  EXPECT_EQ(Alpha::parse("1.5").label(), "1.5");
  EXPECT_EQ(Alpha::finite(kInf).label(), "inf");
  EXPECT_THROW(Alpha::parse("two"), ParseError);
  EXPECT_THROW(Alpha::parse("0.5"), DomainError);
}

TEST(Alpha, BaseMatchesDefinition) {
  EXPECT_DOUBLE_EQ(Alpha::finite(2.0).base(), 4.0);
  EXPECT_DOUBLE_EQ(Alpha::finite(-1.0).base(), 2.0);
  EXPECT_NEAR(Alpha::finite(1e9).base(), std::numbers::e, 1e-8);
}

TEST(Rho, ClampsWithinSlackOnly) {
  EXPECT_EQ(Rho(1.0 + 5e-13).value(), 1.0);
  EXPECT_EQ(Rho(-5e-13).value(), 0.0);
  EXPECT_THROW(Rho(1.0 + 1e-9), DomainError);
  EXPECT_THROW(Rho(-1e-9), DomainError);
  EXPECT_THROW(Rho(NAN), DomainError);
}

TEST(RhoDiscrete, Examples) {
  EXPECT_DOUBLE_EQ(rho_discrete(kHalf, kHalf).value(), 1.0);
  EXPECT_EQ(rho_discrete(kLeft, kRight).value(), 0.0);
  const double expected = static_cast<double>(oracle::rho({0.5, 0.5}, {0.9, 0.1}));
  EXPECT_NEAR(rho_discrete(kHalf, kSkew).value(), expected, 1e-15);
  EXPECT_NEAR(expected, 0.8944272, 1e-7);
  EXPECT_THROW(rho_discrete(kHalf, DiscreteDistribution({1.0})), ShapeError);
}

TEST(RhoGridded, Examples) {
  const auto a = discretize(Gaussian{0, 1}, -12.0, 13.0, 8192);
  const auto b = discretize(Gaussian{1, 1}, -12.0, 13.0, 8192);
  EXPECT_NEAR(rho_gridded(a, a).value(), 1.0, 1e-9);
  EXPECT_NEAR(rho_gridded(a, b).value(), std::exp(-0.125), 1e-6);

  const GriddedDensity even(0.0, 1.0, {0.0, 0.5, 0.0, 0.5, 0.0});
  const GriddedDensity odd(0.0, 1.0, {0.5, 0.0, 0.5, 0.0, 0.5});
  EXPECT_EQ(rho_gridded(even, odd).value(), 0.0);
  EXPECT_THROW(rho_gridded(a, GriddedDensity(0.0, 1.0, {1.0, 1.0})), ShapeError);
}

TEST(Bbd, Examples) {
  EXPECT_NEAR(bbd(Rho(0.5), Alpha::finite(2)), -std::log2(0.75), 1e-15);
  EXPECT_NEAR(bbd(Rho(0.5), Alpha::finite(2)), 0.4150375, 1e-7);
  EXPECT_NEAR(bbd(Rho(0.5), Alpha::finite(-1)), std::log2(1.5), 1e-15);
  EXPECT_NEAR(bbd(Rho(0.5), Alpha::finite(-1)), 0.5849625, 1e-7);
  EXPECT_EQ(bbd(Rho(0.3), Alpha::pos_infinity()), 0.7);
  EXPECT_EQ(bbd(Rho(0.3), Alpha::neg_infinity()), 0.7);
}

TEST(Bbd, EndpointsAreExact) {
  for (double a : {-1e6, -10.0, -1.0, 1.0001, 1.5, 2.0, 10.0, 1e6, 1e13}) {
    EXPECT_EQ(bbd(Rho(1.0), Alpha::finite(a)), 0.0) << a;
    EXPECT_EQ(bbd(Rho(0.0), Alpha::finite(a)), 1.0) << a;
  }
}

TEST(Bbd, AgreesWithExtendedPrecisionOracle) {
  for (double a : {-1e3, -10.0, -1.0, -0.25, 1.01, 1.5, 2.0, 10.0, 1e3}) {
    for (int k = 0; k <= 200; ++k) {
      const double r = k / 200.0;
      const double expected = static_cast<double>(oracle::bbd(r, a));
      ASSERT_NEAR(bbd(Rho(r), Alpha::finite(a)), expected, 1e-13) << "alpha " << a << " rho " << r;
    }
  }
}

TEST(Bbd, LargeAlphaApproachesHellinger) {
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    ASSERT_NEAR(bbd(Rho(r), Alpha::finite(1e8)), 1.0 - r, 1e-7);
    ASSERT_NEAR(bbd(Rho(r), Alpha::finite(-1e8)), 1.0 - r, 1e-7);
  }
}

TEST(PsiAndBase, Examples) {
  const auto one = psi_and_base(Rho(1.0), Alpha::finite(2));
  EXPECT_DOUBLE_EQ(one.psi, 1.0);
  EXPECT_DOUBLE_EQ(one.base, 4.0);
  const auto zero = psi_and_base(Rho(0.0), Alpha::finite(2));
  EXPECT_NEAR(zero.psi, 0.25, 1e-15);
  const auto mid = psi_and_base(Rho(0.5), Alpha::finite(-1));
  EXPECT_NEAR(mid.psi, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(mid.base, 2.0);
  EXPECT_NEAR(-std::log2(mid.psi), 0.5849625, 1e-7);
  EXPECT_THROW(psi_and_base(Rho(0.5), Alpha::pos_infinity()), DomainError);
}

TEST(FDivergence, Examples) {
  const Alpha two = Alpha::finite(2);
  EXPECT_EQ(bbd_via_fdivergence(kHalf, kHalf, two), 0.0);
  EXPECT_NEAR(bbd_via_fdivergence(kLeft, kRight, two), 1.0, 1e-15);
  EXPECT_NEAR(bbd_via_fdivergence(kHalf, kSkew, two), bbd(rho_discrete(kHalf, kSkew), two), 1e-12);
  EXPECT_NEAR(bbd_via_fdivergence(kHalf, kSkew, two), static_cast<double>(oracle::zeta(std::sqrt(0.45L) + std::sqrt(0.05L))),
              1e-15);
  EXPECT_NEAR(bbd_via_fdivergence(kHalf, kSkew, two), 0.0782383, 1e-7);
  EXPECT_THROW(bbd_via_fdivergence(kHalf, kSkew, Alpha::finite(-1)), DomainError);
  EXPECT_THROW(bbd_via_fdivergence(kHalf, kSkew, Alpha::pos_infinity()), DomainError);
}

TEST(FDivergence, GeneratorSecondDerivative) {
  for (double a : {-3.0, 2.0, 7.5}) {
    const double fd = static_cast<double>(oracle::second_difference(
        [&](oracle::Real x) { return -1 + (1 - std::sqrt(x)) / a; }, 1.0L, 1e-4L));
    EXPECT_NEAR(fdivergence_generator_second_derivative(1.0, a), 1.0 / (4.0 * a), 1e-15);
    EXPECT_NEAR(fd, 1.0 / (4.0 * a), 1e-6);
    EXPECT_DOUBLE_EQ(fdivergence_generator(1.0, a), -1.0);
  }
}

TEST(Companions, HellingerAndBhattacharyya) {
  EXPECT_EQ(hellinger_squared(Rho(1.0)), 0.0);
  EXPECT_EQ(bhattacharyya_distance(Rho(1.0)), 0.0);
  EXPECT_EQ(hellinger_squared(Rho(0.0)), 1.0);
  EXPECT_EQ(bhattacharyya_distance(Rho(0.0)), kInf);
  EXPECT_EQ(hellinger_squared(Rho(0.5)), 0.5);
  EXPECT_NEAR(bhattacharyya_distance(Rho(0.5)), std::numbers::ln2, 1e-15);
}

TEST(Chernoff, Examples) {
  EXPECT_NEAR(chernoff(kSkew, kSkew, 0.3), 0.0, 1e-15);
  EXPECT_NEAR(chernoff(kHalf, kSkew, 0.5), -std::log(0.8944271909999159), 1e-12);
  EXPECT_NEAR(chernoff(kHalf, kSkew, 0.5), 0.1115718, 1e-7);
  EXPECT_EQ(chernoff(kLeft, kRight, 0.2), kInf);
  EXPECT_THROW(chernoff(kHalf, kSkew, 0.0), DomainError);
  EXPECT_THROW(chernoff(kHalf, kSkew, 1.0), DomainError);
}

TEST(Kld, Examples) {
  EXPECT_EQ(kld(kSkew, kSkew), 0.0);
  EXPECT_EQ(jsd(kSkew, kSkew), 0.0);
  EXPECT_EQ(kld(kLeft, kRight), kInf);
  EXPECT_FALSE(absolutely_continuous(kLeft, kRight));
  EXPECT_NEAR(jsd(kLeft, kRight), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(kld(kHalf, kSkew), 0.5 * std::log(5.0 / 9.0) + 0.5 * std::log(5.0), 1e-15);
  EXPECT_NEAR(kld(kHalf, kSkew), 0.5108256, 1e-7);
  EXPECT_NEAR(kld_symmetrized(kHalf, kSkew),
              static_cast<double>((oracle::kld({0.5, 0.5}, {0.9, 0.1}) + oracle::kld({0.9, 0.1}, {0.5, 0.5})) / 2),
              1e-15);
  // Absolute continuity holds in one direction only.
  const DiscreteDistribution sub({1.0, 0.0});
  EXPECT_TRUE(absolutely_continuous(sub, kHalf));
  EXPECT_NEAR(kld(sub, kHalf), std::numbers::ln2, 1e-15);
  EXPECT_EQ(kld(kHalf, sub), kInf);
}

TEST(Jsd, UnsymmetrizedFormMatchesOracle) {
  EXPECT_NEAR(jsd(kHalf, kSkew, false), static_cast<double>(oracle::js_unsym({0.5, 0.5}, {0.9, 0.1})), 1e-15);
  EXPECT_NEAR(jsd(kHalf, kSkew, true), static_cast<double>(oracle::js_sym({0.5, 0.5}, {0.9, 0.1})), 1e-15);
}

TEST(Jsd, CorrectedBoundAndLiteralConstant) {
  // Orthogonal pair: JS = ln 2, zeta = 1.
  EXPECT_NEAR(jsd_lower_bound_from_zeta(1.0), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(jsd_lower_bound_from_zeta(1.0, true), 2.0 / std::numbers::ln2 - std::numbers::ln2, 1e-15);
  EXPECT_GT(jsd_lower_bound_from_zeta(1.0, true), jsd(kLeft, kRight, false));
}

TEST(InvertBbd, Examples) {
  EXPECT_EQ(invert_bbd(0.0, Alpha::finite(2)).value(), 1.0);
  EXPECT_NEAR(invert_bbd(1.0, Alpha::finite(2)).value(), 0.0, 1e-15);
  EXPECT_NEAR(invert_bbd(0.4150375, Alpha::finite(2)).value(), 0.5, 1e-7);
  EXPECT_EQ(invert_bbd(0.25, Alpha::pos_infinity()).value(), 0.75);
  EXPECT_THROW(invert_bbd(1.5, Alpha::finite(2)), DomainError);
  EXPECT_THROW(invert_bbd(-0.1, Alpha::finite(2)), DomainError);
}

TEST(InvertBbd, RoundTrip) {
  for (double a : {-1e7, -10.0, -1.0, -0.01, 1.001, 1.5, 2.0, 10.0, 1e7}) {
    for (int k = 0; k <= 500; ++k) {
      const double r = k / 500.0;
      const Alpha alpha = Alpha::finite(a);
      ASSERT_NEAR(invert_bbd(bbd(Rho(r), alpha), alpha).value(), r, 1e-10) << a << " " << r;
    }
  }
}

// Random-pair properties checked against the long double oracle.
TEST(DivergenceProperty, RandomPairsAgreeWithOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const auto pv = oracle::random_simplex(rng, n);
    const auto qv = oracle::random_simplex(rng, n);
    const auto p = DiscreteDistribution::normalized(pv);
    const auto q = DiscreteDistribution::normalized(qv);
    const Rho rho = rho_discrete(p, q);
    ASSERT_NEAR(rho.value(), static_cast<double>(oracle::rho(pv, qv)), 1e-14);
    ASSERT_EQ(rho.value(), rho_discrete(q, p).value());
    const double zeta = bbd(rho, Alpha::finite(2));
    ASSERT_GE(jsd(p, q, false), jsd_lower_bound_from_zeta(zeta) - 1e-12);
    ASSERT_GE(jsd(p, q, true), jsd_lower_bound_from_zeta(zeta) - 1e-12);
    ASSERT_NEAR(jsd(p, q, true), static_cast<double>(oracle::js_sym(pv, qv)), 1e-13);
    for (double a : {1.5, 2.0, 10.0}) {
      ASSERT_NEAR(bbd_via_fdivergence(p, q, Alpha::finite(a)), bbd(rho, Alpha::finite(a)), 1e-10);
    }
    if (rho.value() > 0) {
      ASSERT_NEAR(chernoff(p, q, 0.5), bhattacharyya_distance(rho), 1e-12);
    }
  }
}

}  // namespace
}  // namespace bbd
