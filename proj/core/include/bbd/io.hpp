#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <variant>

#include "bbd/distributions.hpp"

namespace bbd {

/// Parses `gaussian:mu=<f>,sigma=<f>`, `poisson:lambda=<f>`,
/// `binomial:n=<u>,p=<f>`, `exponential:rate=<f>`, `pareto:shape=<f>,xm=<f>`.
/// Keys may appear in any order; every key is required. Throws ParseError on
/// malformed text and DomainError on out-of-range parameters.
ParametricModel parse_model_spec(std::string_view spec);

/// True when the text starts with one of the five family prefixes.
bool looks_like_model_spec(std::string_view text) noexcept;

using SampledDistribution = std::variant<DiscreteDistribution, GriddedDensity>;

/// JSON `{"probs":[...]}` gives a DiscreteDistribution, JSON
/// `{"x0":f,"dx":f,"values":[...]}` a GriddedDensity.
SampledDistribution parse_distribution_json(std::string_view text);

/// One probability per line; blank lines and a non-numeric header line are
/// skipped.
DiscreteDistribution parse_distribution_csv(std::istream& in);

/// Dispatches on the file extension: `.json` to the JSON reader, anything else
/// to the CSV reader. Throws ParseError if the file cannot be read.
SampledDistribution load_distribution(const std::filesystem::path& path);

using DistributionInput = std::variant<ParametricModel, DiscreteDistribution, GriddedDensity>;

/// A model spec string or a path to a distribution file.
DistributionInput resolve_input(std::string_view text);

/// 17 significant digits, so the text reads back to the same double; "inf",
/// "-inf", "nan" for the non-finite values.
std::string format_double(double value);

}  // namespace bbd
