#include "bbd/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bbd/error.hpp"

namespace bbd {

namespace {

constexpr std::array<std::string_view, 5> kFamilies = {"gaussian", "poisson", "binomial",
                                                       "exponential", "pareto"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

double require_number(const std::map<std::string, std::string, std::less<>>& kv,
                      std::string_view key, std::string_view spec) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw ParseError("missing '" + std::string(key) + "' in '" + std::string(spec) + "'");
  }
  double value = 0.0;
  if (!parse_number(it->second, value)) {
    throw ParseError("'" + std::string(key) + "' is not a number in '" + std::string(spec) + "'");
  }
  return value;
}

std::vector<double> number_array(const nlohmann::json& node, const char* key) {
  if (!node.contains(key) || !node.at(key).is_array()) {
    throw ParseError(std::string("expected an array field '") + key + "'");
  }
  std::vector<double> out;
  out.reserve(node.at(key).size());
  for (const auto& v : node.at(key)) {
    if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

double number_field(const nlohmann::json& node, const char* key) {
  if (!node.contains(key) || !node.at(key).is_number()) {
    throw ParseError(std::string("expected a numeric field '") + key + "'");
  }
  return node.at(key).get<double>();
}

}  // namespace

bool looks_like_model_spec(std::string_view text) noexcept {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return false;
  const auto family = text.substr(0, colon);
  for (auto f : kFamilies) {
    if (family == f) return true;
  }
  return false;
}

ParametricModel parse_model_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos || !looks_like_model_spec(spec)) {
    throw ParseError("not a model spec: '" + std::string(spec) + "'");
  }
  const auto family = spec.substr(0, colon);
  std::map<std::string, std::string, std::less<>> kv;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected key=value in '" + std::string(spec) + "'");
    }
    const auto [it, inserted] = kv.emplace(std::string(trim(item.substr(0, eq))),
                                           std::string(trim(item.substr(eq + 1))));
    if (!inserted) throw ParseError("duplicate key '" + it->first + "' in '" + std::string(spec) + "'");
  }

  auto check_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (auto a : allowed) ok = ok || k == a;
      if (!ok) throw ParseError("unknown key '" + k + "' for " + std::string(family));
    }
  };

  if (family == "gaussian") {
    check_keys({"mu", "sigma"});
    return Gaussian{require_number(kv, "mu", spec), require_number(kv, "sigma", spec)};
  }
  if (family == "poisson") {
    check_keys({"lambda"});
    return Poisson{require_number(kv, "lambda", spec)};
  }
  if (family == "binomial") {
    check_keys({"n", "p"});
    const double n = require_number(kv, "n", spec);
    if (!(n >= 1.0) || n != std::floor(n) || n > 4294967295.0) {
      throw ParseError("binomial n must be a positive integer in '" + std::string(spec) + "'");
    }
    return Binomial{static_cast<unsigned>(n), require_number(kv, "p", spec)};
  }
  if (family == "exponential") {
    check_keys({"rate"});
    return Exponential{require_number(kv, "rate", spec)};
  }
  check_keys({"shape", "xm"});
  return Pareto{require_number(kv, "shape", spec), require_number(kv, "xm", spec)};
}

SampledDistribution parse_distribution_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("distribution JSON must be an object");
  if (doc.contains("probs")) return DiscreteDistribution(number_array(doc, "probs"));
  if (doc.contains("values")) {
    return GriddedDensity(number_field(doc, "x0"), number_field(doc, "dx"),
                          number_array(doc, "values"));
  }
  throw ParseError("distribution JSON needs 'probs' or 'x0'/'dx'/'values'");
}

DiscreteDistribution parse_distribution_csv(std::istream& in) {
  std::vector<double> probs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cell = trim(line);
    if (cell.empty()) continue;
    double value = 0.0;
    if (!parse_number(cell, value)) {
      if (probs.empty() && line_no == 1) continue;  // header
      throw ParseError("line " + std::to_string(line_no) + " is not a number: '" +
                       std::string(cell) + "'");
    }
    probs.push_back(value);
  }
  if (probs.empty()) throw ParseError("CSV contains no probabilities");
  return DiscreteDistribution(std::move(probs));
}

SampledDistribution load_distribution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  if (path.extension() == ".json") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_distribution_json(buffer.str());
  }
  return parse_distribution_csv(in);
}

DistributionInput resolve_input(std::string_view text) {
  if (looks_like_model_spec(text)) return parse_model_spec(text);
  auto loaded = load_distribution(std::filesystem::path(std::string(text)));
  return std::visit([](auto&& d) -> DistributionInput { return std::move(d); }, std::move(loaded));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace bbd
