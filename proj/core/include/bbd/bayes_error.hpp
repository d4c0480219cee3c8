#pragma once

#include <cstddef>
#include <optional>

#include "bbd/distributions.hpp"
#include "bbd/divergences.hpp"

namespace bbd {

/// Prior probabilities of the two hypotheses.
class PriorPair {
 public:
  /// Both in [0, 1] and summing to one within 1e-12, else DomainError.
  PriorPair(double pi1, double pi2);

  /// (pi1, 1 - pi1).
  static PriorPair from_first(double pi1);
  static PriorPair equal() { return PriorPair(0.5, 0.5); }

  double pi1() const noexcept { return pi1_; }
  double pi2() const noexcept { return pi2_; }

 private:
  double pi1_;
  double pi2_;
};

/// Bounds on the Bayes error implied by an overlap coefficient.
struct BoundsReport {
  double rho;
  /// 1/2 [1 - sqrt(1 - 4 pi1 pi2 rho^2)].
  double lower;
  /// sqrt(pi1 pi2) rho.
  double upper;
  /// 1/2 [2 pi1 - sqrt(1 - 4 pi1 pi2 rho^2)], kept for comparison only; it is
  /// not a valid lower bound when pi1 > 1/2.
  double lower_paper_literal;
  /// Exact Bayes error when the distributions themselves were available.
  std::optional<double> pe;
};

/// Optimal Bayes error sum_x min(pi1 p1(x), pi2 p2(x)). ShapeError on length
/// mismatch. Result lies in [0, min(pi1, pi2)].
double bayes_error(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                   const PriorPair& prior);

/// Gridded variant, trapezoid rule; grids must match.
double bayes_error(const GriddedDensity& p1, const GriddedDensity& p2, const PriorPair& prior);

/// Kailath-style bounds from rho. At equal priors they reduce to
/// 1/2 [1 - sqrt(1 - rho^2)] <= Pe <= rho / 2.
BoundsReport kailath_bounds(Rho rho, const PriorPair& prior) noexcept;

/// invert_bbd() followed by kailath_bounds().
BoundsReport bounds_from_bbd(double b_value, Alpha alpha, const PriorPair& prior);

/// A pair of hypotheses' distributions under one signal set.
struct HypothesisPair {
  DiscreteDistribution p1;
  DiscreteDistribution p2;
};

inline constexpr std::size_t kDefaultWitnessGrid = 999;

/// A witness must beat `worse` by more than this, so exact ties such as
/// Pe = pi1 on both pairs are not decided by rounding.
inline constexpr double kWitnessMargin = 1e-12;

/// Scans pi1 = k / (grid_steps + 1), k = 1..grid_steps, and returns the first
/// prior under which `better` has Bayes error below that of `worse` by more
/// than kWitnessMargin.
/// Requires rho(better) < rho(worse), else DomainError. An empty result means
/// no witness at this resolution, not that none exists.
std::optional<PriorPair> bradt_karlin_witness(const HypothesisPair& better,
                                              const HypothesisPair& worse,
                                              std::size_t grid_steps = kDefaultWitnessGrid);

}  // namespace bbd
