#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bbd/distributions.hpp"
#include "bbd/divergences.hpp"

namespace bbd {

/// One-parameter slice through a parametric family. The remaining parameter
/// is held at `fixed`: sigma for GaussianMean, mu for GaussianSigma, n for
/// Binomial, xm for Pareto; ignored for Poisson and Exponential.
enum class ScalarFamily { GaussianMean, GaussianSigma, Poisson, Exponential, Binomial, Pareto };

struct FamilySlice {
  ScalarFamily family;
  double fixed = 1.0;
};

/// Parses "gaussian-mean", "gaussian-sigma", "poisson", "exponential",
/// "binomial", "pareto". Throws ParseError otherwise.
ScalarFamily parse_scalar_family(std::string_view name);
std::string scalar_family_name(ScalarFamily family);

/// The model at parameter value theta. DomainError if theta is invalid.
ParametricModel model_at(const FamilySlice& slice, double theta);

/// rho(theta, phi) along the slice, by closed form.
double rho_along(const FamilySlice& slice, double theta, double phi);

enum class FisherMode { Analytic, Numeric };

/// Fisher information of the slice at theta. Numeric mode sums or integrates
/// f (d log f / d theta)^2 with a central-difference score, step
/// 1e-5 max(1, |theta|).
double fisher_information(const FamilySlice& slice, double theta,
                          FisherMode mode = FisherMode::Analytic);

/// Curvature constant C(alpha) = -1 / (4 alpha log(1 - 1/alpha)); 1/4 for
/// infinite alpha.
double c_alpha(Alpha alpha) noexcept;

/// Second-order behaviour of Z_theta(phi) = B_alpha(rho(theta, phi)) at
/// phi = theta. Matrices are row-major dim x dim; dim is 1 for scalar slices.
struct CurvatureReport {
  Alpha alpha;
  std::vector<double> theta;
  std::size_t dim = 1;
  /// Richardson-extrapolated central second differences at h and h/2.
  std::vector<double> fd_curvature;
  /// c_alpha(alpha) times the Fisher information (matrix).
  std::vector<double> predicted;
  /// Largest relative deviation on the diagonal.
  double rel_error = 0.0;
  /// Z_theta(theta), zero by construction.
  double z_at_theta = 0.0;
  /// Central first differences of Z at phi = theta, one per parameter.
  std::vector<double> first_derivative;
  /// Largest |off-diagonal| entry of fd_curvature.
  double max_off_diagonal = 0.0;
};

/// Finite-difference check of the curvature identity for a scalar slice.
/// Throws DomainError for h <= 0 or an invalid theta +- h, and
/// NumericInstabilityError when the estimates at h and h/2 differ by more
/// than 10%.
CurvatureReport curvature_check(const FamilySlice& slice, double theta, Alpha alpha, double h);

/// 2x2 Hessian of Z for the Gaussian family in (mu, sigma); predicted is
/// c_alpha(alpha) diag(1/sigma^2, 2/sigma^2). Same error contract as
/// curvature_check.
CurvatureReport curvature_matrix(double mu, double sigma, Alpha alpha, double h);

}  // namespace bbd
