#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace bbd {

/// Tolerance on the sum of a probability vector.
inline constexpr double kSimplexTolerance = 1e-12;
/// Tolerance on the trapezoid integral of a gridded density.
inline constexpr double kGridNormTolerance = 1e-6;

/// Finite probability vector. Entries are non-negative and sum to one.
class DiscreteDistribution {
 public:
  /// Throws DomainError if the vector is empty, has a negative or non-finite
  /// entry, or does not sum to one within kSimplexTolerance.
  explicit DiscreteDistribution(std::vector<double> probs);

  /// Divides by the sum first. Useful for histograms and random draws.
  static DiscreteDistribution normalized(std::vector<double> weights);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Density sampled on a uniform grid x0, x0 + dx, ..., integrated with the
/// trapezoid rule.
class GriddedDensity {
 public:
  /// Throws DomainError unless dx > 0, there are at least two samples, every
  /// sample is finite and non-negative, and the trapezoid integral lies within
  /// kGridNormTolerance of one.
  GriddedDensity(double x0, double dx, std::vector<double> values,
                 double renormalization = 1.0);

  double x0() const noexcept { return x0_; }
  double dx() const noexcept { return dx_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double x_at(std::size_t i) const noexcept { return x0_ + dx_ * static_cast<double>(i); }

  /// Factor the raw samples were divided by when this grid came from
  /// discretize(); 1 for grids supplied directly.
  double renormalization() const noexcept { return renormalization_; }

  bool same_grid(const GriddedDensity& other) const noexcept;

 private:
  double x0_;
  double dx_;
  std::vector<double> values_;
  double renormalization_;
};

/// Trapezoid rule on uniformly spaced samples.
double trapezoid(std::span<const double> values, double dx) noexcept;

struct Binomial {
  unsigned n;
  double p;
};
struct Poisson {
  double lambda;
};
struct Gaussian {
  double mu;
  double sigma;
};
struct Exponential {
  double rate;
};
struct Pareto {
  double shape;
  double xm;
};

/// One of the five families with closed-form overlap coefficients.
class ParametricModel {
 public:
  using Params = std::variant<Binomial, Poisson, Gaussian, Exponential, Pareto>;

  /// Throws DomainError when a parameter is outside its range. Binomial p must
  /// lie strictly inside (0,1); degenerate laws belong in DiscreteDistribution.
  ParametricModel(Params params);  // NOLINT(google-explicit-constructor)

  template <typename T>
    requires std::is_constructible_v<Params, T>
  ParametricModel(T params) : ParametricModel(Params(std::move(params))) {}  // NOLINT

  const Params& params() const noexcept { return params_; }
  bool is_discrete() const noexcept;
  std::string family_name() const;

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&params_);
  }

 private:
  Params params_;
};

bool same_family(const ParametricModel& a, const ParametricModel& b) noexcept;

/// pmf or pdf at x. Throws DomainError when x is outside the support
/// (non-integer or out-of-range k for the discrete families, x < 0 for
/// Exponential, x < xm for Pareto).
double evaluate(const ParametricModel& model, double x);

/// Like evaluate() but returns zero outside the support instead of throwing.
double density_or_zero(const ParametricModel& model, double x) noexcept;

/// Probability mass of [lo, hi] for a continuous model.
double interval_mass(const ParametricModel& model, double lo, double hi);

/// Minimum fraction of mass discretize() insists on.
inline constexpr double kDiscretizeCoverage = 1.0 - 1e-8;

/// Samples a continuous model at steps + 1 equally spaced points on [lo, hi]
/// and rescales so the trapezoid integral is one. Throws TypeError for the
/// discrete families, DomainError for steps < 64 or hi <= lo, and
/// TruncationError when [lo, hi] holds less than kDiscretizeCoverage of the
/// mass.
GriddedDensity discretize(const ParametricModel& model, double lo, double hi,
                          std::size_t steps);

/// Closed-form Bhattacharyya coefficient for two models of the same family.
/// Throws UnsupportedError across families or for Binomials with different
/// n, and DomainError for Pareto models with different xm.
double closed_form_rho(const ParametricModel& a, const ParametricModel& b);

/// The alpha = 2 bounded distance written per family in base-2 form.
/// Same preconditions as closed_form_rho.
double closed_form_zeta(const ParametricModel& a, const ParametricModel& b);

/// Result of a numerically integrated or summed overlap coefficient.
struct NumericRho {
  double rho;
  /// Bound on the neglected tail contribution (discrete families) or on the
  /// mass outside the integration window (continuous families).
  double error_bound;
};

/// Overlap coefficient by direct summation (discrete families) or composite
/// Simpson quadrature over the union of the models' windows (continuous
/// families). Works across continuous families.
/// Throws UnsupportedError when mixing a pmf with a pdf.
NumericRho numeric_rho(const ParametricModel& a, const ParametricModel& b);

}  // namespace bbd
