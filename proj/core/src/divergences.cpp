#include "bbd/divergences.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bbd/error.hpp"

namespace bbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) {
    throw ShapeError("distributions have different lengths: " + std::to_string(p.size()) +
                     " vs " + std::to_string(q.size()));
  }
}

// 0 ln(0/x) = 0.
double xlogy_ratio(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

}  // namespace

// --- Alpha ----------------------------------------------------------------

Alpha Alpha::finite(double value) {
  if (std::isnan(value)) throw DomainError("alpha must not be NaN");
  if (value == kInf) return pos_infinity();
  if (value == -kInf) return neg_infinity();
  if (value >= 0.0 && value <= 1.0) {
    throw DomainError("alpha must lie in [-inf, 0) or (1, inf], got " + std::to_string(value));
  }
  return Alpha(Kind::Finite, value);
}

Alpha Alpha::parse(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity" || lowered == "+infinity") {
    return pos_infinity();
  }
  if (lowered == "-inf" || lowered == "-infinity") return neg_infinity();
  double value = 0.0;
  const char* first = lowered.data();
  const char* last = first + lowered.size();
  if (!lowered.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError("not a valid alpha: '" + std::string(text) + "'");
  return finite(value);
}

double Alpha::value() const noexcept {
  switch (kind_) {
    case Kind::NegInfinity:
      return -kInf;
    case Kind::PosInfinity:
      return kInf;
    case Kind::Finite:
      break;
  }
  return value_;
}

double Alpha::base() const noexcept {
  if (!is_finite()) return std::numbers::e;
  // (alpha / (alpha - 1))^alpha = (1 - 1/alpha)^(-alpha)
  return std::exp(-value_ * std::log1p(-1.0 / value_));
}

std::string Alpha::label() const {
  switch (kind_) {
    case Kind::NegInfinity:
      return "-inf";
    case Kind::PosInfinity:
      return "inf";
    case Kind::Finite:
      break;
  }
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, ptr);
}

// --- Rho ------------------------------------------------------------------

Rho::Rho(double value) : value_(value) {
  if (std::isnan(value) || value < -kClampSlack || value > 1.0 + kClampSlack) {
    throw DomainError("Bhattacharyya coefficient must lie in [0,1], got " + std::to_string(value));
  }
  value_ = std::clamp(value, 0.0, 1.0);
}

Rho rho_discrete(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_length(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::sqrt(p[i] * q[i]);
  return Rho(sum);
}

Rho rho_gridded(const GriddedDensity& p, const GriddedDensity& q) {
  if (!p.same_grid(q)) throw ShapeError("gridded densities must share x0, dx and length");
  const auto pv = p.values();
  const auto qv = q.values();
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < pv.size(); ++i) inner += std::sqrt(pv[i] * qv[i]);
  const double ends = std::sqrt(pv.front() * qv.front()) + std::sqrt(pv.back() * qv.back());
  const double integral = p.dx() * (inner + 0.5 * ends);
  // Each density integrates to one only within kGridNormTolerance, so the
  // Cauchy-Schwarz ceiling is enforced by clamping.
  return Rho(std::min(integral, 1.0));
}

// --- bounded family ---------------------------------------------------------

double bbd(Rho rho, Alpha alpha) noexcept {
  const double r = rho.value();
  if (r == 1.0) return 0.0;
  if (r == 0.0) return 1.0;
  if (!alpha.is_finite() || std::abs(alpha.value()) >= kAlphaLimitCutoff) return 1.0 - r;
  const double a = alpha.value();
  const double value = std::log1p(-(1.0 - r) / a) / std::log1p(-1.0 / a);
  return std::clamp(value, 0.0, 1.0);
}

PsiAndBase psi_and_base(Rho rho, Alpha alpha) {
  if (!alpha.is_finite()) throw DomainError("psi and base are defined for finite alpha only");
  const double a = alpha.value();
  const double psi = std::exp(a * std::log1p(-(1.0 - rho.value()) / a));
  return {psi, alpha.base()};
}

double fdivergence_generator(double x, double alpha) noexcept {
  return -1.0 + (1.0 - std::sqrt(x)) / alpha;
}

double fdivergence_generator_second_derivative(double x, double alpha) noexcept {
  return 1.0 / (4.0 * alpha * x * std::sqrt(x));
}

double bbd_via_fdivergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                           Alpha alpha) {
  if (!alpha.is_finite() || alpha.value() <= 1.0) {
    throw DomainError("the f-divergence form needs finite alpha > 1");
  }
  require_same_length(p, q);
  const double a = alpha.value();
  double F = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) F += fdivergence_generator(p[i] / q[i], a) * q[i];
  }
  // g(F) = log(-F) / log(1 - 1/alpha); -F lies in [1 - 1/alpha, 1].
  const double value = std::log(-F) / std::log1p(-1.0 / a);
  return std::clamp(value, 0.0, 1.0);
}

double hellinger_squared(Rho rho) noexcept { return 1.0 - rho.value(); }

double bhattacharyya_distance(Rho rho) noexcept {
  return rho.value() == 0.0 ? kInf : -std::log(rho.value());
}

double chernoff(const DiscreteDistribution& p, const DiscreteDistribution& q, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("chernoff order t must lie in (0,1)");
  require_same_length(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] > 0.0) sum += std::pow(p[i], t) * std::pow(q[i], 1.0 - t);
  }
  if (sum == 0.0) return kInf;
  return std::max(0.0, -std::log(std::min(sum, 1.0)));
}

bool absolutely_continuous(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_length(p, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0 && p[i] > 0.0) return false;
  }
  return true;
}

double kld(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (!absolutely_continuous(p, q)) return kInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += xlogy_ratio(p[i], q[i]);
  return std::max(sum, 0.0);
}

double kld_symmetrized(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  return 0.5 * (kld(p, q) + kld(q, p));
}

double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q, bool symmetrized) {
  require_same_length(p, q);
  double forward = 0.0;
  double backward = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double half_mix = 0.5 * (p[i] + q[i]);
    forward += xlogy_ratio(p[i], half_mix);
    backward += xlogy_ratio(q[i], half_mix);
  }
  const double value = symmetrized ? 0.5 * (forward + backward) : forward;
  return std::max(value, 0.0);
}

double jsd_lower_bound_from_zeta(double zeta, bool paper_literal) noexcept {
  constexpr double ln2 = std::numbers::ln2;
  const double slope = paper_literal ? 2.0 / ln2 : 2.0 * ln2;
  return slope * zeta - ln2;
}

Rho invert_bbd(double b_value, Alpha alpha) {
  if (!(b_value >= 0.0 && b_value <= 1.0)) {
    throw DomainError("bounded distance must lie in [0,1], got " + std::to_string(b_value));
  }
  if (!alpha.is_finite() || std::abs(alpha.value()) >= kAlphaLimitCutoff) return Rho(1.0 - b_value);
  const double a = alpha.value();
  // rho = 1 - alpha (1 - (1 - 1/alpha)^b)
  const double rho = 1.0 + a * std::expm1(b_value * std::log1p(-1.0 / a));
  return Rho(std::clamp(rho, 0.0, 1.0));
}

}  // namespace bbd
