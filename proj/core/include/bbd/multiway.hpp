#pragma once

#include <span>
#include <vector>

#include "bbd/distributions.hpp"
#include "bbd/divergences.hpp"

namespace bbd {

/// Non-negative weights summing to one, one per distribution (at least two).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> betas);

  /// 1/n for each of n >= 2 components.
  static WeightVector uniform(std::size_t n);

  std::span<const double> betas() const noexcept { return betas_; }
  std::size_t size() const noexcept { return betas_.size(); }
  double operator[](std::size_t i) const noexcept { return betas_[i]; }

 private:
  std::vector<double> betas_;
};

/// Generalized coefficient sum_x prod_i p_i(x)^beta_i. A zero weight makes its
/// factor 1 (0^0 = 1); a zero probability under a positive weight zeroes the
/// term. Throws ShapeError on mismatched lengths or counts.
Rho generalized_rho(std::span<const DiscreteDistribution> dists, const WeightVector& w);

/// Gridded variant integrated with the trapezoid rule; all grids must match.
Rho generalized_rho(std::span<const GriddedDensity> dists, const WeightVector& w);

/// Same functional form as bbd() applied to the generalized coefficient.
double generalized_bbd(Rho rho_beta, Alpha alpha) noexcept;

}  // namespace bbd
