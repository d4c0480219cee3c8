#include "bbd/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "bbd/error.hpp"

namespace bbd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string describe(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Mass each window helper leaves outside, per side.
constexpr double kWindowTail = 1e-15;

double log_binomial_pmf(unsigned n, double p, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(p) + (n - k) * std::log1p(-p);
}

double log_poisson_pmf(double lambda, double k) {
  return k * std::log(lambda) - lambda - std::lgamma(k + 1.0);
}

// log pmf for integer k >= 0; -inf outside the support.
double log_pmf(const ParametricModel& m, double k) {
  if (const auto* b = m.as<Binomial>()) {
    if (k > b->n) return -std::numeric_limits<double>::infinity();
    return log_binomial_pmf(b->n, b->p, k);
  }
  return log_poisson_pmf(m.as<Poisson>()->lambda, k);
}

// Upper bound on P(K > k) given the pmf value at k + 1.
double tail_after(const ParametricModel& m, double k, double log_pmf_next) {
  if (const auto* b = m.as<Binomial>()) {
    if (k >= b->n) return 0.0;
    // pmf ratio (n-j)/(j+1) * p/(1-p) is decreasing in j, so geometric bound
    // applies once it drops below one.
    const double ratio = (b->n - (k + 1.0)) / (k + 2.0) * b->p / (1.0 - b->p);
    if (ratio >= 1.0) return 1.0;
    return std::exp(log_pmf_next) / (1.0 - ratio);
  }
  const double lambda = m.as<Poisson>()->lambda;
  const double ratio = lambda / (k + 2.0);
  if (ratio >= 1.0) return 1.0;
  return std::exp(log_pmf_next) / (1.0 - ratio);
}

struct Window {
  double lo;
  double hi;
};

// Interval holding all but ~2*kWindowTail of the mass, in x.
Window linear_window(const ParametricModel& m) {
  return std::visit(
      overloaded{
          [](const Gaussian& g) {
            constexpr double z = 8.0;
            return Window{g.mu - z * g.sigma, g.mu + z * g.sigma};
          },
          [](const Exponential& e) { return Window{0.0, -std::log(kWindowTail) / e.rate}; },
          [](const Pareto& p) {
            return Window{p.xm, p.xm * std::exp(-std::log(kWindowTail) / p.shape)};
          },
          [](const auto&) -> Window { return {0.0, 0.0}; },
      },
      m.params());
}

// log of the upper window edge; stays finite for very small pareto shapes.
double log_upper(const ParametricModel& m) {
  if (const auto* p = m.as<Pareto>()) return std::log(p->xm) - std::log(kWindowTail) / p->shape;
  const double hi = linear_window(m).hi;
  return hi > 0.0 ? std::log(hi) : -std::numeric_limits<double>::infinity();
}

// Characteristic length for grid resolution.
double resolution_scale(const ParametricModel& m) {
  return std::visit(overloaded{
                        [](const Gaussian& g) { return g.sigma; },
                        [](const Exponential& e) { return 1.0 / e.rate; },
                        [](const Pareto& p) { return p.xm / (p.shape + 1.0); },
                        [](const auto&) { return 1.0; },
                    },
                    m.params());
}

// Composite Simpson over [lo, hi] with an even number of intervals.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (hi - lo) / static_cast<double>(intervals);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    (i % 2 ? odd : even) += v;
  }
  // Endpoints one ulp inward give the one-sided limits at a support edge.
  const double f_lo = f(std::nextafter(lo, hi));
  const double f_hi = f(std::nextafter(hi, lo));
  return h / 3.0 * (f_lo + 4.0 * odd + 2.0 * even + f_hi);
}

NumericRho discrete_numeric_rho(const ParametricModel& a, const ParametricModel& b) {
  constexpr double kTailTarget = 1e-12;
  constexpr double kMaxTerms = 1e8;
  double rho = 0.0;
  double k = 0.0;
  for (;; k += 1.0) {
    const double la = log_pmf(a, k);
    const double lb = log_pmf(b, k);
    if (std::isfinite(la) && std::isfinite(lb)) rho += std::exp(0.5 * (la + lb));
    const double ta = tail_after(a, k, log_pmf(a, k + 1.0));
    const double tb = tail_after(b, k, log_pmf(b, k + 1.0));
    if ((ta <= kTailTarget && tb <= kTailTarget) || k >= kMaxTerms) {
      return {std::clamp(rho, 0.0, 1.0), std::sqrt(std::min(ta, 1.0) * std::min(tb, 1.0))};
    }
  }
}

NumericRho continuous_numeric_rho(const ParametricModel& a, const ParametricModel& b) {
  const Window wa = linear_window(a);
  const Window wb = linear_window(b);
  // Outside the union of the windows each density keeps at most
  // 2 kWindowTail, so by Cauchy-Schwarz the dropped overlap is tiny too.
  const double dropped = 2.0 * kWindowTail;

  auto integrand = [&](double x) {
    const double pa = density_or_zero(a, x);
    const double pb = density_or_zero(b, x);
    return std::sqrt(pa * pb);
  };

  const bool heavy = a.as<Pareto>() != nullptr || b.as<Pareto>() != nullptr;
  double rho = 0.0;
  if (heavy) {
    // Below the larger lower edge one density is zero or negligible; above
    // it x = lo e^u turns the power-law tail into an exponential one.
    const double lo = std::max(wa.lo, wb.lo);
    const double umax = std::max(log_upper(a), log_upper(b)) - std::log(lo);
    if (!(umax > 0.0)) return {0.0, dropped};
    auto in_log = [&](double u) {
      const double x = lo * std::exp(u);
      return integrand(x) * x;
    };
    rho = simpson(in_log, 0.0, umax, std::size_t{1} << 17);
  } else {
    // Window edges are panel boundaries so a support edge such as the
    // exponential jump at 0 never falls inside a Simpson panel.
    std::array<double, 4> edges{wa.lo, wa.hi, wb.lo, wb.hi};
    std::sort(edges.begin(), edges.end());
    const double scale = std::min(resolution_scale(a), resolution_scale(b));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double lo = edges[i];
      const double hi = edges[i + 1];
      if (!(hi > lo)) continue;
      const double wanted = (hi - lo) / (scale / 32.0);
      const auto intervals = static_cast<std::size_t>(
          std::clamp(wanted, double(std::size_t{1} << 12), double(std::size_t{1} << 22)));
      rho += simpson(integrand, lo, hi, intervals);
    }
  }
  return {std::clamp(rho, 0.0, 1.0), dropped};
}

}  // namespace

// --- DiscreteDistribution -------------------------------------------------

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("discrete distribution must have at least one entry");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw DomainError("probability " + std::to_string(i) + " is negative or not finite: " +
                        describe(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw DomainError("probabilities sum to " + describe(total) + ", expected 1");
  }
}

DiscreteDistribution DiscreteDistribution::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw DomainError("weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("weights sum to zero");
  for (double& w : weights) w /= total;
  return DiscreteDistribution(std::move(weights));
}

// --- GriddedDensity -------------------------------------------------------

double trapezoid(std::span<const double> values, double dx) noexcept {
  if (values.size() < 2) return 0.0;
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) inner += values[i];
  return dx * (inner + 0.5 * (values.front() + values.back()));
}

GriddedDensity::GriddedDensity(double x0, double dx, std::vector<double> values,
                               double renormalization)
    : x0_(x0), dx_(dx), values_(std::move(values)), renormalization_(renormalization) {
  if (!std::isfinite(x0_)) throw DomainError("grid origin must be finite");
  if (!positive_finite(dx_)) throw DomainError("grid spacing must be positive, got " + describe(dx_));
  if (values_.size() < 2) throw DomainError("gridded density needs at least two samples");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("density samples must be finite and >= 0");
  }
  const double mass = trapezoid(values_, dx_);
  if (std::abs(mass - 1.0) > kGridNormTolerance) {
    throw DomainError("gridded density integrates to " + describe(mass) + ", expected 1");
  }
}

bool GriddedDensity::same_grid(const GriddedDensity& other) const noexcept {
  return x0_ == other.x0_ && dx_ == other.dx_ && values_.size() == other.values_.size();
}

// --- ParametricModel ------------------------------------------------------

ParametricModel::ParametricModel(Params params) : params_(params) {
  std::visit(overloaded{
                 [](const Binomial& b) {
                   if (b.n == 0) throw DomainError("binomial n must be positive");
                   if (!(b.p > 0.0 && b.p < 1.0))
                     throw DomainError("binomial p must lie in (0,1), got " + describe(b.p));
                 },
                 [](const Poisson& p) {
                   if (!positive_finite(p.lambda))
                     throw DomainError("poisson lambda must be positive, got " + describe(p.lambda));
                 },
                 [](const Gaussian& g) {
                   if (!std::isfinite(g.mu)) throw DomainError("gaussian mu must be finite");
                   if (!positive_finite(g.sigma))
                     throw DomainError("gaussian sigma must be positive, got " + describe(g.sigma));
                 },
                 [](const Exponential& e) {
                   if (!positive_finite(e.rate))
                     throw DomainError("exponential rate must be positive, got " + describe(e.rate));
                 },
                 [](const Pareto& p) {
                   if (!positive_finite(p.shape))
                     throw DomainError("pareto shape must be positive, got " + describe(p.shape));
                   if (!positive_finite(p.xm))
                     throw DomainError("pareto xm must be positive, got " + describe(p.xm));
                 },
             },
             params_);
}

bool ParametricModel::is_discrete() const noexcept {
  return std::holds_alternative<Binomial>(params_) || std::holds_alternative<Poisson>(params_);
}

std::string ParametricModel::family_name() const {
  static constexpr const char* kNames[] = {"binomial", "poisson", "gaussian", "exponential",
                                           "pareto"};
  return kNames[params_.index()];
}

bool same_family(const ParametricModel& a, const ParametricModel& b) noexcept {
  return a.params().index() == b.params().index();
}

double evaluate(const ParametricModel& model, double x) {
  if (!std::isfinite(x)) throw DomainError("evaluation point must be finite");
  if (model.is_discrete()) {
    if (x < 0.0 || x != std::floor(x)) {
      throw DomainError(model.family_name() + " is defined on non-negative integers, got " +
                        describe(x));
    }
    if (const auto* b = model.as<Binomial>(); b && x > b->n) {
      throw DomainError("binomial support is {0..n}, got " + describe(x));
    }
    return std::exp(log_pmf(model, x));
  }
  if (const auto* e = model.as<Exponential>(); e && x < 0.0) {
    throw DomainError("exponential support is x >= 0, got " + describe(x));
  }
  if (const auto* p = model.as<Pareto>(); p && x < p->xm) {
    throw DomainError("pareto support is x >= xm, got " + describe(x));
  }
  return density_or_zero(model, x);
}

double density_or_zero(const ParametricModel& model, double x) noexcept {
  return std::visit(
      overloaded{
          [&](const Gaussian& g) {
            const double z = (x - g.mu) / g.sigma;
            return std::exp(-0.5 * z * z) / (g.sigma * std::sqrt(2.0 * std::numbers::pi));
          },
          [&](const Exponential& e) { return x < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * x); },
          [&](const Pareto& p) {
            return x < p.xm ? 0.0 : p.shape * std::exp(p.shape * std::log(p.xm / x)) / x;
          },
          [&](const auto&) {
            if (!(x >= 0.0) || x != std::floor(x)) return 0.0;
            return std::exp(log_pmf(model, x));
          },
      },
      model.params());
}

double interval_mass(const ParametricModel& model, double lo, double hi) {
  if (model.is_discrete()) throw TypeError("interval_mass applies to continuous families only");
  if (!(hi > lo)) return 0.0;
  return std::visit(overloaded{
                        [&](const Gaussian& g) {
                          const double s = g.sigma * std::numbers::sqrt2;
                          const double below = 0.5 * std::erfc((g.mu - lo) / s);
                          const double above = 0.5 * std::erfc((hi - g.mu) / s);
                          return 1.0 - below - above;
                        },
                        [&](const Exponential& e) {
                          const double a = std::max(lo, 0.0);
                          const double b = std::max(hi, 0.0);
                          return std::exp(-e.rate * a) - std::exp(-e.rate * b);
                        },
                        [&](const Pareto& p) {
                          const double a = std::max(lo, p.xm);
                          const double b = std::max(hi, p.xm);
                          return std::pow(p.xm / a, p.shape) - std::pow(p.xm / b, p.shape);
                        },
                        [&](const auto&) { return 0.0; },
                    },
                    model.params());
}

GriddedDensity discretize(const ParametricModel& model, double lo, double hi, std::size_t steps) {
  if (model.is_discrete()) {
    throw TypeError("cannot discretize the discrete family " + model.family_name());
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw DomainError("discretize needs a finite interval with lo < hi");
  }
  if (steps < 64) throw DomainError("discretize needs at least 64 steps");
  const double mass = interval_mass(model, lo, hi);
  if (mass < kDiscretizeCoverage) {
    throw TruncationError("[" + describe(lo) + ", " + describe(hi) + "] holds only " +
                          describe(mass) + " of the " + model.family_name() + " mass");
  }
  const double dx = (hi - lo) / static_cast<double>(steps);
  std::vector<double> values(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    values[i] = density_or_zero(model, lo + dx * static_cast<double>(i));
  }
  const double integral = trapezoid(values, dx);
  for (double& v : values) v /= integral;
  return GriddedDensity(lo, dx, std::move(values), integral);
}

// --- closed forms ---------------------------------------------------------

namespace {

void require_comparable(const ParametricModel& a, const ParametricModel& b) {
  if (!same_family(a, b)) {
    throw UnsupportedError("no closed form for " + a.family_name() + " vs " + b.family_name() +
                           "; use numeric_rho");
  }
  if (const auto* ba = a.as<Binomial>(); ba && ba->n != b.as<Binomial>()->n) {
    throw UnsupportedError("binomial closed form needs equal n");
  }
  if (const auto* pa = a.as<Pareto>(); pa && pa->xm != b.as<Pareto>()->xm) {
    throw DomainError("pareto closed form needs equal xm");
  }
}

// 2 sqrt(ab) / (a + b), shared by the exponential and pareto families.
double scale_family_rho(double a, double b) { return 2.0 * std::sqrt(a * b) / (a + b); }

}  // namespace

double closed_form_rho(const ParametricModel& a, const ParametricModel& b) {
  require_comparable(a, b);
  const double rho = std::visit(
      overloaded{
          [&](const Binomial& p) {
            const auto& q = *b.as<Binomial>();
            const double base = std::sqrt(p.p * q.p) + std::sqrt((1.0 - p.p) * (1.0 - q.p));
            return std::pow(base, static_cast<double>(p.n));
          },
          [&](const Poisson& p) {
            const double d = std::sqrt(p.lambda) - std::sqrt(b.as<Poisson>()->lambda);
            return std::exp(-0.5 * d * d);
          },
          [&](const Gaussian& p) {
            const auto& q = *b.as<Gaussian>();
            const double var_sum = p.sigma * p.sigma + q.sigma * q.sigma;
            const double d = p.mu - q.mu;
            return std::sqrt(2.0 * p.sigma * q.sigma / var_sum) *
                   std::exp(-d * d / (4.0 * var_sum));
          },
          [&](const Exponential& p) { return scale_family_rho(p.rate, b.as<Exponential>()->rate); },
          [&](const Pareto& p) { return scale_family_rho(p.shape, b.as<Pareto>()->shape); },
      },
      a.params());
  return std::clamp(rho, 0.0, 1.0);
}

double closed_form_zeta(const ParametricModel& a, const ParametricModel& b) {
  require_comparable(a, b);
  const double zeta = std::visit(
      overloaded{
          [&](const Binomial& p) {
            const auto& q = *b.as<Binomial>();
            const double base = std::sqrt(p.p * q.p) + std::sqrt((1.0 - p.p) * (1.0 - q.p));
            return -std::log2((1.0 + std::pow(base, static_cast<double>(p.n))) / 2.0);
          },
          [&](const Poisson& p) {
            const double d = std::sqrt(p.lambda) - std::sqrt(b.as<Poisson>()->lambda);
            return -std::log2((1.0 + std::exp(-0.5 * d * d)) / 2.0);
          },
          [&](const Gaussian& p) {
            const auto& q = *b.as<Gaussian>();
            const double var_sum = p.sigma * p.sigma + q.sigma * q.sigma;
            const double d = p.mu - q.mu;
            return 1.0 - std::log2(1.0 + std::sqrt(2.0 * p.sigma * q.sigma / var_sum) *
                                             std::exp(-d * d / (4.0 * var_sum)));
          },
          [&](const Exponential& p) {
            const double la = p.rate;
            const double lb = b.as<Exponential>()->rate;
            const double s = std::sqrt(la) + std::sqrt(lb);
            return -std::log2(s * s / (2.0 * (la + lb)));
          },
          [&](const Pareto& p) {
            const double aa = p.shape;
            const double ab = b.as<Pareto>()->shape;
            const double s = std::sqrt(aa) + std::sqrt(ab);
            return -std::log2(s * s / (2.0 * (aa + ab)));
          },
      },
      a.params());
  return std::clamp(zeta, 0.0, 1.0);
}

NumericRho numeric_rho(const ParametricModel& a, const ParametricModel& b) {
  if (a.is_discrete() != b.is_discrete()) {
    throw UnsupportedError("cannot compare a pmf (" +
                           (a.is_discrete() ? a.family_name() : b.family_name()) +
                           ") with a pdf");
  }
  return a.is_discrete() ? discrete_numeric_rho(a, b) : continuous_numeric_rho(a, b);
}

}  // namespace bbd
