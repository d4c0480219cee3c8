#include "bbd/multiway.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbd/error.hpp"

namespace bbd {

namespace {

// Weighted geometric mean of column x across the inputs.
template <class Sampler>
double weighted_geometric_mean(std::size_t n, const WeightVector& w, Sampler&& sample) {
  double product = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double beta = w[i];
    if (beta == 0.0) continue;
    const double p = sample(i);
    if (p == 0.0) return 0.0;
    product *= std::pow(p, beta);
  }
  return product;
}

void require_count(std::size_t dists, const WeightVector& w) {
  if (dists != w.size()) {
    throw ShapeError("got " + std::to_string(dists) + " distributions but " +
                     std::to_string(w.size()) + " weights");
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<double> betas) : betas_(std::move(betas)) {
  if (betas_.size() < 2) throw DomainError("multiway measures need at least two weights");
  double total = 0.0;
  for (double b : betas_) {
    if (!std::isfinite(b) || b < 0.0) throw DomainError("weights must be finite and non-negative");
    total += b;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw DomainError("weights sum to " + std::to_string(total) + ", expected 1");
  }
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Rho generalized_rho(std::span<const DiscreteDistribution> dists, const WeightVector& w) {
  require_count(dists.size(), w);
  const std::size_t len = dists.front().size();
  for (const auto& d : dists) {
    if (d.size() != len) throw ShapeError("all distributions must have the same length");
  }
  double sum = 0.0;
  for (std::size_t x = 0; x < len; ++x) {
    sum += weighted_geometric_mean(dists.size(), w, [&](std::size_t i) { return dists[i][x]; });
  }
  return Rho(std::min(sum, 1.0));
}

Rho generalized_rho(std::span<const GriddedDensity> dists, const WeightVector& w) {
  require_count(dists.size(), w);
  for (const auto& d : dists) {
    if (!d.same_grid(dists.front())) throw ShapeError("all grids must share x0, dx and length");
  }
  const std::size_t len = dists.front().size();
  std::vector<double> column(len);
  for (std::size_t x = 0; x < len; ++x) {
    column[x] = weighted_geometric_mean(dists.size(), w,
                                        [&](std::size_t i) { return dists[i].values()[x]; });
  }
  return Rho(std::min(trapezoid(column, dists.front().dx()), 1.0));
}

double generalized_bbd(Rho rho_beta, Alpha alpha) noexcept { return bbd(rho_beta, alpha); }

}  // namespace bbd
