#include "bbd/bayes_error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bbd/error.hpp"
#include "bbd/parallel.hpp"

namespace bbd {

PriorPair::PriorPair(double pi1, double pi2) : pi1_(pi1), pi2_(pi2) {
  if (!(pi1 >= 0.0 && pi1 <= 1.0) || !(pi2 >= 0.0 && pi2 <= 1.0)) {
    throw DomainError("priors must lie in [0,1]");
  }
  if (std::abs(pi1 + pi2 - 1.0) > 1e-12) {
    throw DomainError("priors must sum to 1, got " + std::to_string(pi1 + pi2));
  }
}

PriorPair PriorPair::from_first(double pi1) { return PriorPair(pi1, 1.0 - pi1); }

double bayes_error(const DiscreteDistribution& p1, const DiscreteDistribution& p2,
                   const PriorPair& prior) {
  if (p1.size() != p2.size()) throw ShapeError("distributions have different lengths");
  double sum = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    sum += std::min(prior.pi1() * p1[i], prior.pi2() * p2[i]);
  }
  return std::clamp(sum, 0.0, std::min(prior.pi1(), prior.pi2()));
}

double bayes_error(const GriddedDensity& p1, const GriddedDensity& p2, const PriorPair& prior) {
  if (!p1.same_grid(p2)) throw ShapeError("gridded densities must share x0, dx and length");
  std::vector<double> pointwise(p1.size());
  for (std::size_t i = 0; i < pointwise.size(); ++i) {
    pointwise[i] = std::min(prior.pi1() * p1.values()[i], prior.pi2() * p2.values()[i]);
  }
  return std::clamp(trapezoid(pointwise, p1.dx()), 0.0, std::min(prior.pi1(), prior.pi2()));
}

BoundsReport kailath_bounds(Rho rho, const PriorPair& prior) noexcept {
  const double r = rho.value();
  const double p1 = prior.pi1();
  const double p2 = prior.pi2();
  // 1 - 4 pi1 pi2 rho^2 rewritten with (pi1 + pi2)^2 = 1 so that it stays
  // accurate near rho = 1 and pi1 = pi2.
  const double gap = p1 - p2;
  const double disc = std::max(0.0, gap * gap + 4.0 * p1 * p2 * (1.0 - r) * (1.0 + r));
  const double root = std::sqrt(disc);
  BoundsReport report{};
  report.rho = r;
  report.lower = std::max(0.0, 0.5 * (1.0 - root));
  report.upper = std::sqrt(p1 * p2) * r;
  report.lower_paper_literal = 0.5 * (2.0 * p1 - root);
  return report;
}

BoundsReport bounds_from_bbd(double b_value, Alpha alpha, const PriorPair& prior) {
  return kailath_bounds(invert_bbd(b_value, alpha), prior);
}

std::optional<PriorPair> bradt_karlin_witness(const HypothesisPair& better,
                                              const HypothesisPair& worse,
                                              std::size_t grid_steps) {
  const double rho_better = rho_discrete(better.p1, better.p2).value();
  const double rho_worse = rho_discrete(worse.p1, worse.p2).value();
  if (!(rho_better < rho_worse)) {
    throw DomainError("witness search needs rho(better) < rho(worse), got " +
                      std::to_string(rho_better) + " >= " + std::to_string(rho_worse));
  }
  if (grid_steps == 0) throw DomainError("witness grid needs at least one point");

  const double step = 1.0 / static_cast<double>(grid_steps + 1);
  std::vector<char> hit(grid_steps, 0);
  parallel_for(grid_steps, [&](std::size_t k) {
    const auto prior = PriorPair::from_first(static_cast<double>(k + 1) * step);
    hit[k] = bayes_error(better.p1, better.p2, prior) < bayes_error(worse.p1, worse.p2, prior) - kWitnessMargin;
  });
  const auto first = std::find(hit.begin(), hit.end(), 1);
  if (first == hit.end()) return std::nullopt;
  return PriorPair::from_first(static_cast<double>(first - hit.begin() + 1) * step);
}

}  // namespace bbd
