#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bbd/divergences.hpp"

namespace bbd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolations = 2;

/// Runs one invocation. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`; `in` feeds `bounds --from-bbd -`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

/// CSV with columns rho, hellinger_sq, bbd_alpha_<label>... on the grid
/// rho = k / (steps - 1). DomainError if steps < 2.
std::string emit_figure_table(std::span<const Alpha> alphas, std::size_t steps);

}  // namespace bbd::cli
