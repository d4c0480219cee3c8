#pragma once

#include <string>
#include <string_view>

#include "bbd/distributions.hpp"

namespace bbd {

/// Order parameter of the bounded Bhattacharyya family. Valid values are
/// -inf, +inf and finite values outside [0, 1].
class Alpha {
 public:
  enum class Kind { NegInfinity, Finite, PosInfinity };

  /// Throws DomainError for NaN and for values in [0, 1]. Infinite inputs map
  /// to the matching infinite kind.
  static Alpha finite(double value);
  static Alpha pos_infinity() noexcept { return Alpha(Kind::PosInfinity, 0.0); }
  static Alpha neg_infinity() noexcept { return Alpha(Kind::NegInfinity, 0.0); }

  /// Accepts a decimal number, "inf", "+inf", "-inf", "infinity" (any case).
  static Alpha parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  /// The finite value; +-infinity for the infinite kinds.
  double value() const noexcept;

  /// Logarithm base b = (alpha / (alpha - 1))^alpha; e for the infinite kinds.
  double base() const noexcept;

  /// Short label such as "2", "-1", "1.5", "inf", "-inf".
  std::string label() const;

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  Alpha(Kind kind, double value) noexcept : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// Bhattacharyya coefficient, always in [0, 1].
class Rho {
 public:
  /// Values within kClampSlack outside [0, 1] are clamped, anything farther
  /// (or NaN) throws DomainError.
  explicit Rho(double value);

  double value() const noexcept { return value_; }

  static constexpr double kClampSlack = 1e-12;

 private:
  double value_;
};

/// |alpha| at or beyond this is evaluated as the Hellinger limit 1 - rho.
inline constexpr double kAlphaLimitCutoff = 1e12;

/// sum_i sqrt(p_i q_i). Throws ShapeError on length mismatch.
Rho rho_discrete(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Trapezoid integral of sqrt(p q). Throws ShapeError unless the grids match.
Rho rho_gridded(const GriddedDensity& p, const GriddedDensity& q);

/// Bounded Bhattacharyya distance
///   B_alpha(rho) = log(1 - (1 - rho)/alpha) / log(1 - 1/alpha),
/// equal to 1 - rho for infinite alpha. Always in [0, 1], B(1) = 0, B(0) = 1.
double bbd(Rho rho, Alpha alpha) noexcept;

struct PsiAndBase {
  double psi;
  double base;
};

/// psi(rho) = (1 - (1 - rho)/alpha)^alpha and b = (alpha/(alpha - 1))^alpha,
/// so that bbd = -log_b psi. Throws DomainError for infinite alpha.
PsiAndBase psi_and_base(Rho rho, Alpha alpha);

/// Generator f(x) = -1 + (1 - sqrt(x))/alpha of the f-divergence form.
double fdivergence_generator(double x, double alpha) noexcept;

/// Closed-form f''(x) = 1 / (4 alpha x^{3/2}).
double fdivergence_generator_second_derivative(double x, double alpha) noexcept;

/// Evaluates B_alpha as g(sum_i f(p_i/q_i) q_i) with g(F) = log(-F)/log(1 - 1/alpha).
/// Cells with q_i = 0 contribute their limit, zero. Requires finite alpha > 1
/// (DomainError otherwise) and equal lengths (ShapeError).
double bbd_via_fdivergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                           Alpha alpha);

/// Squared Hellinger distance 1 - rho.
double hellinger_squared(Rho rho) noexcept;

/// -ln rho; +infinity when rho = 0.
double bhattacharyya_distance(Rho rho) noexcept;

/// Chernoff distance -ln sum_i p_i^t q_i^(1-t) for t in (0,1); +infinity for
/// disjoint supports. Throws DomainError for t outside (0,1).
double chernoff(const DiscreteDistribution& p, const DiscreteDistribution& q, double t);

/// True when q_i = 0 implies p_i = 0.
bool absolutely_continuous(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Kullback-Leibler divergence sum_i p_i ln(p_i/q_i) in nats. Returns
/// +infinity when !absolutely_continuous(p, q).
double kld(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// (I(P,Q) + I(Q,P)) / 2.
double kld_symmetrized(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Jensen-Shannon divergence in nats. The symmetrized form averages both
/// halves; the un-symmetrized form keeps only sum_i p_i ln(2 p_i/(p_i + q_i)).
double jsd(const DiscreteDistribution& p, const DiscreteDistribution& q, bool symmetrized = true);

/// Lower bound on the Jensen-Shannon divergence from zeta = B_2:
/// (2 ln 2) zeta - ln 2. With paper_literal the printed constant
/// 2/ln 2 is used instead; that form is not a valid bound.
double jsd_lower_bound_from_zeta(double zeta, bool paper_literal = false) noexcept;

/// Inverse of bbd in rho. Throws DomainError unless b_value is in [0, 1].
Rho invert_bbd(double b_value, Alpha alpha);

}  // namespace bbd
