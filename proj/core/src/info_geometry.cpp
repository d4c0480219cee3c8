#include "bbd/info_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bbd/error.hpp"

namespace bbd {

namespace {

double log_density(const ParametricModel& m, double x) { return std::log(density_or_zero(m, x)); }

// Richardson-combined second differences must agree this well.
constexpr double kRichardsonAgreement = 0.10;

// Composite Simpson, even number of intervals.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t intervals) {
  const double h = (hi - lo) / static_cast<double>(intervals);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < intervals; ++i) {
    sum += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

double numeric_fisher(const FamilySlice& slice, double theta) {
  const double h = 1e-5 * std::max(1.0, std::abs(theta));
  const ParametricModel at = model_at(slice, theta);
  const ParametricModel up = model_at(slice, theta + h);
  const ParametricModel down = model_at(slice, theta - h);
  auto weighted_score = [&](double x) {
    const double f = density_or_zero(at, x);
    if (f == 0.0) return 0.0;
    const double score = (log_density(up, x) - log_density(down, x)) / (2.0 * h);
    return f * score * score;
  };

  switch (slice.family) {
    case ScalarFamily::Binomial: {
      const auto n = static_cast<unsigned>(slice.fixed);
      double sum = 0.0;
      for (unsigned k = 0; k <= n; ++k) sum += weighted_score(k);
      return sum;
    }
    case ScalarFamily::Poisson: {
      // Past the mode the pmf falls geometrically; 40 standard deviations is
      // far beyond double precision.
      const double last = theta + 40.0 * std::sqrt(theta) + 40.0;
      double sum = 0.0;
      for (double k = 0.0; k <= last; k += 1.0) sum += weighted_score(k);
      return sum;
    }
    case ScalarFamily::GaussianMean:
    case ScalarFamily::GaussianSigma: {
      const auto& g = *at.as<Gaussian>();
      return simpson(weighted_score, g.mu - 12.0 * g.sigma, g.mu + 12.0 * g.sigma, 1u << 16);
    }
    case ScalarFamily::Exponential:
      return simpson(weighted_score, 0.0, 45.0 / theta, 1u << 18);
    case ScalarFamily::Pareto: {
      const double xm = slice.fixed;
      auto in_log = [&](double u) {
        const double x = xm * std::exp(u);
        return weighted_score(x) * x;
      };
      return simpson(in_log, 0.0, 45.0 / theta, 1u << 18);
    }
  }
  return 0.0;
}

struct SecondDifference {
  double plain;  // at step h
  double half;   // at step h/2
  double extrapolated() const { return (4.0 * half - plain) / 3.0; }
};

void require_agreement(const SecondDifference& d, const std::string& what) {
  const bool finite = std::isfinite(d.plain) && std::isfinite(d.half);
  if (!finite || d.half == 0.0 ||
      std::abs(d.plain - d.half) > kRichardsonAgreement * std::abs(d.half)) {
    throw NumericInstabilityError(what + ": second differences at h and h/2 disagree (" +
                                  std::to_string(d.plain) + " vs " + std::to_string(d.half) +
                                  "); choose a different step");
  }
}

}  // namespace

ScalarFamily parse_scalar_family(std::string_view name) {
  if (name == "gaussian-mean") return ScalarFamily::GaussianMean;
  if (name == "gaussian-sigma") return ScalarFamily::GaussianSigma;
  if (name == "poisson") return ScalarFamily::Poisson;
  if (name == "exponential") return ScalarFamily::Exponential;
  if (name == "binomial") return ScalarFamily::Binomial;
  if (name == "pareto") return ScalarFamily::Pareto;
  throw ParseError("unknown family '" + std::string(name) + "'");
}

std::string scalar_family_name(ScalarFamily family) {
  switch (family) {
    case ScalarFamily::GaussianMean:
      return "gaussian-mean";
    case ScalarFamily::GaussianSigma:
      return "gaussian-sigma";
    case ScalarFamily::Poisson:
      return "poisson";
    case ScalarFamily::Exponential:
      return "exponential";
    case ScalarFamily::Binomial:
      return "binomial";
    case ScalarFamily::Pareto:
      return "pareto";
  }
  return "unknown";
}

ParametricModel model_at(const FamilySlice& slice, double theta) {
  switch (slice.family) {
    case ScalarFamily::GaussianMean:
      return Gaussian{theta, slice.fixed};
    case ScalarFamily::GaussianSigma:
      return Gaussian{slice.fixed, theta};
    case ScalarFamily::Poisson:
      return Poisson{theta};
    case ScalarFamily::Exponential:
      return Exponential{theta};
    case ScalarFamily::Binomial:
      if (!(slice.fixed >= 1.0) || slice.fixed != std::floor(slice.fixed)) {
        throw DomainError("binomial slice needs a positive integer n");
      }
      return Binomial{static_cast<unsigned>(slice.fixed), theta};
    case ScalarFamily::Pareto:
      return Pareto{theta, slice.fixed};
  }
  throw DomainError("unknown family");
}

double rho_along(const FamilySlice& slice, double theta, double phi) {
  return closed_form_rho(model_at(slice, theta), model_at(slice, phi));
}

double fisher_information(const FamilySlice& slice, double theta, FisherMode mode) {
  const ParametricModel model = model_at(slice, theta);  // validates theta
  if (mode == FisherMode::Numeric) return numeric_fisher(slice, theta);
  switch (slice.family) {
    case ScalarFamily::GaussianMean:
      return 1.0 / (slice.fixed * slice.fixed);
    case ScalarFamily::GaussianSigma:
      return 2.0 / (theta * theta);
    case ScalarFamily::Poisson:
      return 1.0 / theta;
    case ScalarFamily::Exponential:
      return 1.0 / (theta * theta);
    case ScalarFamily::Binomial:
      return model.as<Binomial>()->n / (theta * (1.0 - theta));
    case ScalarFamily::Pareto:
      return 1.0 / (theta * theta);
  }
  return 0.0;
}

double c_alpha(Alpha alpha) noexcept {
  if (!alpha.is_finite()) return 0.25;
  const double a = alpha.value();
  return -1.0 / (4.0 * a * std::log1p(-1.0 / a));
}

CurvatureReport curvature_check(const FamilySlice& slice, double theta, Alpha alpha, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("finite-difference step must be positive");
  const ParametricModel center = model_at(slice, theta);
  model_at(slice, theta - h);
  model_at(slice, theta + h);

  auto z = [&](double phi) { return bbd(Rho(closed_form_rho(center, model_at(slice, phi))), alpha); };
  const double z0 = z(theta);
  auto second = [&](double step) {
    return (z(theta + step) - 2.0 * z0 + z(theta - step)) / (step * step);
  };
  const SecondDifference d{second(h), second(0.5 * h)};
  require_agreement(d, scalar_family_name(slice.family));

  const double fd = d.extrapolated();
  const double predicted = c_alpha(alpha) * fisher_information(slice, theta);
  return CurvatureReport{
      .alpha = alpha,
      .theta = {theta},
      .dim = 1,
      .fd_curvature = {fd},
      .predicted = {predicted},
      .rel_error = std::abs(fd - predicted) / std::abs(predicted),
      .z_at_theta = z0,
      .first_derivative = {(z(theta + h) - z(theta - h)) / (2.0 * h)},
      .max_off_diagonal = 0.0,
  };
}

CurvatureReport curvature_matrix(double mu, double sigma, Alpha alpha, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("finite-difference step must be positive");
  if (!(sigma > h)) throw DomainError("sigma must exceed the finite-difference step");
  const ParametricModel center = Gaussian{mu, sigma};
  auto z = [&](double dm, double ds) {
    return bbd(Rho(closed_form_rho(center, Gaussian{mu + dm, sigma + ds})), alpha);
  };
  const double z0 = z(0.0, 0.0);

  auto hessian = [&](double s) {
    const double mm = (z(s, 0.0) - 2.0 * z0 + z(-s, 0.0)) / (s * s);
    const double ss = (z(0.0, s) - 2.0 * z0 + z(0.0, -s)) / (s * s);
    const double ms = (z(s, s) - z(s, -s) - z(-s, s) + z(-s, -s)) / (4.0 * s * s);
    return std::array<double, 3>{mm, ss, ms};
  };
  const auto coarse = hessian(h);
  const auto fine = hessian(0.5 * h);
  const SecondDifference dmm{coarse[0], fine[0]};
  const SecondDifference dss{coarse[1], fine[1]};
  require_agreement(dmm, "gaussian (mu, mu)");
  require_agreement(dss, "gaussian (sigma, sigma)");
  const double off = (4.0 * fine[2] - coarse[2]) / 3.0;

  const double c = c_alpha(alpha);
  const double var = sigma * sigma;
  const double mm = dmm.extrapolated();
  const double ss = dss.extrapolated();
  return CurvatureReport{
      .alpha = alpha,
      .theta = {mu, sigma},
      .dim = 2,
      .fd_curvature = {mm, off, off, ss},
      .predicted = {c / var, 0.0, 0.0, 2.0 * c / var},
      .rel_error = std::max(std::abs(mm - c / var) / (c / var),
                            std::abs(ss - 2.0 * c / var) / (2.0 * c / var)),
      .z_at_theta = z0,
      .first_derivative = {(z(h, 0.0) - z(-h, 0.0)) / (2.0 * h),
                           (z(0.0, h) - z(0.0, -h)) / (2.0 * h)},
      .max_off_diagonal = std::abs(off),
  };
}

}  // namespace bbd
