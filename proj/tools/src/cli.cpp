#include "bbd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bbd/bayes_error.hpp"
#include "bbd/distributions.hpp"
#include "bbd/error.hpp"
#include "bbd/info_geometry.hpp"
#include "bbd/io.hpp"
#include "bbd/multiway.hpp"
#include "bbd/verify.hpp"

namespace bbd::cli {

namespace {

enum class Format { Json, Csv };

// Flat record printed either as one JSON object or as a two-line CSV.
class Record {
 public:
  using Value = std::variant<std::nullptr_t, bool, double, std::string, std::vector<double>>;

  Record& add(std::string key, Value value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  void write(std::ostream& out, Format format) const {
    if (format == Format::Json) {
      out << '{';
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out << ',';
        out << quote(fields_[i].first) << ':' << json_value(fields_[i].second);
      }
      out << "}\n";
      return;
    }
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out << (i ? "," : "") << csv_value(fields_[i].second);
    }
    out << '\n';
  }

  static std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

  static std::string json_number(double v) {
    return std::isfinite(v) ? format_double(v) : quote(format_double(v));
  }

 private:
  static std::string json_value(const Value& v) {
    struct Visitor {
      std::string operator()(std::nullptr_t) const { return "null"; }
      std::string operator()(bool b) const { return b ? "true" : "false"; }
      std::string operator()(double d) const { return json_number(d); }
      std::string operator()(const std::string& s) const { return quote(s); }
      std::string operator()(const std::vector<double>& xs) const {
        std::string out = "[";
        for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + json_number(xs[i]);
        return out + "]";
      }
    };
    return std::visit(Visitor{}, v);
  }

  static std::string csv_value(const Value& v) {
    struct Visitor {
      std::string operator()(std::nullptr_t) const { return ""; }
      std::string operator()(bool b) const { return b ? "true" : "false"; }
      std::string operator()(double d) const { return format_double(d); }
      std::string operator()(const std::string& s) const { return s; }
      std::string operator()(const std::vector<double>& xs) const {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_double(xs[i]);
        return out;
      }
    };
    return std::visit(Visitor{}, v);
  }

  std::vector<std::pair<std::string, Value>> fields_;
};

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw ParseError("--format must be json or csv, got '" + text + "'");
}

Record::Value alpha_value(Alpha a) {
  if (a.is_finite()) return a.value();
  return a.label();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParseError(what + " is not a number: '" + text + "'");
  return value;
}

std::vector<Alpha> parse_alpha_list(const std::string& text) {
  std::vector<Alpha> out;
  for (const auto& item : split(text, ',')) out.push_back(Alpha::parse(item));
  if (out.empty()) throw ParseError("empty alpha list");
  return out;
}

// --- compute ----------------------------------------------------------------

struct Overlap {
  double rho;
  std::string method;
  std::optional<double> error_bound;
};

Overlap parametric_overlap(const ParametricModel& a, const ParametricModel& b) {
  if (same_family(a, b)) {
    try {
      return {closed_form_rho(a, b), "closed-form", std::nullopt};
    } catch (const UnsupportedError&) {
    } catch (const DomainError&) {
    }
  }
  const NumericRho n = numeric_rho(a, b);
  return {n.rho, "numeric", n.error_bound};
}

const char* kind_name(const DistributionInput& d) {
  if (std::holds_alternative<ParametricModel>(d)) return "parametric model";
  if (std::holds_alternative<DiscreteDistribution>(d)) return "discrete distribution";
  return "gridded density";
}

Overlap overlap(const DistributionInput& p, const DistributionInput& q) {
  if (p.index() != q.index()) {
    throw TypeError(std::string("cannot compare a ") + kind_name(p) + " with a " + kind_name(q));
  }
  if (const auto* a = std::get_if<ParametricModel>(&p)) {
    return parametric_overlap(*a, std::get<ParametricModel>(q));
  }
  if (const auto* a = std::get_if<DiscreteDistribution>(&p)) {
    return {rho_discrete(*a, std::get<DiscreteDistribution>(q)).value(), "discrete", std::nullopt};
  }
  return {rho_gridded(std::get<GriddedDensity>(p), std::get<GriddedDensity>(q)).value(), "gridded",
          std::nullopt};
}

const std::vector<std::string> kAllMeasures = {"zeta",        "hellinger_sq", "bhattacharyya",
                                               "kld",         "kld_sym",      "jsd",
                                               "chernoff"};

std::vector<std::string> parse_measures(const std::string& text) {
  if (text.empty()) return {};
  if (text == "all") return kAllMeasures;
  auto out = split(text, ',');
  for (const auto& m : out) {
    if (std::find(kAllMeasures.begin(), kAllMeasures.end(), m) == kAllMeasures.end()) {
      throw ParseError("unknown measure '" + m + "'");
    }
  }
  return out;
}

struct ComputeArgs {
  std::string alpha = "2";
  std::string p;
  std::string q;
  std::string measures;
  std::string format = "json";
};

int do_compute(const ComputeArgs& args, std::ostream& out) {
  const Format format = parse_format(args.format);
  const Alpha alpha = Alpha::parse(args.alpha);
  const auto measures = parse_measures(args.measures);
  const DistributionInput p = resolve_input(args.p);
  const DistributionInput q = resolve_input(args.q);
  const Overlap ov = overlap(p, q);
  const Rho rho(ov.rho);

  Record rec;
  rec.add("rho", rho.value()).add("bbd", bbd(rho, alpha)).add("alpha", alpha_value(alpha));
  rec.add("method", ov.method);
  if (ov.error_bound) rec.add("rho_error_bound", *ov.error_bound);

  const auto* dp = std::get_if<DiscreteDistribution>(&p);
  const auto* dq = std::get_if<DiscreteDistribution>(&q);
  for (const auto& m : measures) {
    if (m == "zeta") {
      rec.add(m, bbd(rho, Alpha::finite(2.0)));
    } else if (m == "hellinger_sq") {
      rec.add(m, hellinger_squared(rho));
    } else if (m == "bhattacharyya") {
      rec.add(m, bhattacharyya_distance(rho));
    } else if (dp == nullptr) {
      throw TypeError("measure '" + m + "' needs discrete distributions");
    } else if (m == "kld") {
      rec.add(m, kld(*dp, *dq));
    } else if (m == "kld_sym") {
      rec.add(m, kld_symmetrized(*dp, *dq));
    } else if (m == "jsd") {
      rec.add(m, jsd(*dp, *dq));
    } else if (m == "chernoff") {
      rec.add(m, chernoff(*dp, *dq, 0.5));
    }
  }
  rec.write(out, format);
  return kExitOk;
}

// --- multi ------------------------------------------------------------------

struct MultiArgs {
  std::string alpha = "2";
  std::string weights;
  std::vector<std::string> inputs;
  std::string format = "json";
};

int do_multi(const MultiArgs& args, std::ostream& out) {
  const Format format = parse_format(args.format);
  const Alpha alpha = Alpha::parse(args.alpha);
  if (args.inputs.size() < 2) throw ShapeError("multi needs at least two distributions");

  std::vector<SampledDistribution> loaded;
  for (const auto& path : args.inputs) loaded.push_back(load_distribution(path));

  std::vector<double> raw;
  if (args.weights.empty()) {
    raw.assign(loaded.size(), 1.0 / static_cast<double>(loaded.size()));
  } else {
    for (const auto& w : split(args.weights, ',')) raw.push_back(parse_double(w, "weight"));
  }
  if (raw.size() != loaded.size()) {
    throw ShapeError("got " + std::to_string(raw.size()) + " weights for " +
                     std::to_string(loaded.size()) + " distributions");
  }
  const WeightVector w(raw);

  double rho = 0.0;
  if (std::holds_alternative<DiscreteDistribution>(loaded.front())) {
    std::vector<DiscreteDistribution> ds;
    for (auto& d : loaded) {
      auto* p = std::get_if<DiscreteDistribution>(&d);
      if (!p) throw TypeError("cannot mix discrete and gridded inputs");
      ds.push_back(std::move(*p));
    }
    rho = generalized_rho(ds, w).value();
  } else {
    std::vector<GriddedDensity> gs;
    for (auto& d : loaded) {
      auto* g = std::get_if<GriddedDensity>(&d);
      if (!g) throw TypeError("cannot mix discrete and gridded inputs");
      gs.push_back(std::move(*g));
    }
    rho = generalized_rho(gs, w).value();
  }

  Record rec;
  rec.add("rho_beta", rho)
      .add("bbd", generalized_bbd(Rho(rho), alpha))
      .add("alpha", alpha_value(alpha))
      .add("weights", raw);
  rec.write(out, format);
  return kExitOk;
}

// --- bounds -----------------------------------------------------------------

struct BoundsArgs {
  std::string p;
  std::string q;
  std::optional<double> rho;
  std::string from_bbd;
  std::string alpha;
  double prior = 0.5;
  std::string format = "json";
};

// Reads the "bbd" and "alpha" fields of a compute result.
std::pair<double, std::optional<Alpha>> read_compute_output(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("stdin is not a JSON object from 'compute'");
  }
  if (!doc.is_object() || !doc.contains("bbd") || !doc.at("bbd").is_number()) {
    throw ParseError("stdin JSON has no numeric 'bbd' field");
  }
  std::optional<Alpha> alpha;
  if (doc.contains("alpha")) {
    const auto& a = doc.at("alpha");
    if (a.is_number()) alpha = Alpha::finite(a.get<double>());
    if (a.is_string()) alpha = Alpha::parse(a.get<std::string>());
  }
  return {doc.at("bbd").get<double>(), alpha};
}

int do_bounds(const BoundsArgs& args, std::ostream& out, std::istream& in) {
  const Format format = parse_format(args.format);
  const PriorPair prior = PriorPair::from_first(args.prior);
  const int sources = (!args.p.empty() || !args.q.empty()) + args.rho.has_value() +
                      !args.from_bbd.empty();
  if (sources != 1) throw ParseError("give exactly one of -p/-q, --rho, --from-bbd");

  BoundsReport report{};
  if (!args.from_bbd.empty()) {
    double value = 0.0;
    std::optional<Alpha> alpha;
    if (args.from_bbd == "-") {
      std::tie(value, alpha) = read_compute_output(in);
    } else {
      value = parse_double(args.from_bbd, "--from-bbd");
    }
    if (!args.alpha.empty()) alpha = Alpha::parse(args.alpha);
    if (!alpha) throw ParseError("--from-bbd needs --alpha");
    report = bounds_from_bbd(value, *alpha, prior);
  } else if (args.rho) {
    report = kailath_bounds(Rho(*args.rho), prior);
  } else {
    if (args.p.empty() || args.q.empty()) throw ParseError("-p and -q must be given together");
    const DistributionInput p = resolve_input(args.p);
    const DistributionInput q = resolve_input(args.q);
    report = kailath_bounds(Rho(overlap(p, q).rho), prior);
    if (const auto* dp = std::get_if<DiscreteDistribution>(&p)) {
      report.pe = bayes_error(*dp, std::get<DiscreteDistribution>(q), prior);
    } else if (const auto* gp = std::get_if<GriddedDensity>(&p)) {
      report.pe = bayes_error(*gp, std::get<GriddedDensity>(q), prior);
    }
  }

  Record rec;
  rec.add("rho", report.rho)
      .add("lower", report.lower)
      .add("upper", report.upper)
      .add("lower_paper_literal", report.lower_paper_literal);
  if (report.pe) {
    rec.add("pe", *report.pe);
  } else {
    rec.add("pe", nullptr);
  }
  rec.add("pi1", prior.pi1()).add("pi2", prior.pi2());
  rec.write(out, format);
  return kExitOk;
}

// --- curvature --------------------------------------------------------------

struct CurvatureArgs {
  std::string family;
  std::string theta;
  std::string alpha = "2";
  std::optional<double> h;
  std::optional<double> fixed;
  std::string format = "json";
};

int do_curvature(const CurvatureArgs& args, std::ostream& out) {
  const Format format = parse_format(args.format);
  const Alpha alpha = Alpha::parse(args.alpha);
  const auto theta_items = split(args.theta, ',');
  std::vector<double> theta;
  for (const auto& t : theta_items) theta.push_back(parse_double(t, "--theta"));

  CurvatureReport report = [&] {
    if (args.family == "gaussian") {
      if (theta.size() != 2) throw ParseError("--family gaussian needs --theta mu,sigma");
      const double h = args.h.value_or(1e-3 * std::max(1.0, theta[1]));
      return curvature_matrix(theta[0], theta[1], alpha, h);
    }
    if (theta.size() != 1) throw ParseError("--theta takes one value for a scalar family");
    FamilySlice slice{parse_scalar_family(args.family)};
    if (args.fixed) slice.fixed = *args.fixed;
    const double h = args.h.value_or(1e-3 * std::max(1.0, std::abs(theta[0])));
    return curvature_check(slice, theta[0], alpha, h);
  }();

  Record rec;
  rec.add("family", args.family)
      .add("alpha", alpha_value(alpha))
      .add("theta", report.theta)
      .add("c_alpha", c_alpha(alpha))
      .add("fd_curvature", report.fd_curvature)
      .add("predicted", report.predicted)
      .add("rel_error", report.rel_error)
      .add("z_at_theta", report.z_at_theta)
      .add("first_derivative", report.first_derivative)
      .add("max_off_diagonal", report.max_off_diagonal);
  rec.write(out, format);
  return kExitOk;
}

// --- table ------------------------------------------------------------------

struct TableArgs {
  std::string alphas = "2,-1,inf";
  std::size_t steps = 101;
  std::string format = "csv";
};

int do_table(const TableArgs& args, std::ostream& out) {
  const Format format = parse_format(args.format);
  const auto alphas = parse_alpha_list(args.alphas);
  const std::string csv = emit_figure_table(alphas, args.steps);
  if (format == Format::Csv) {
    out << csv;
    return kExitOk;
  }
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  const auto columns = split(header, ',');
  out << '[';
  std::string line;
  bool first = true;
  while (std::getline(lines, line)) {
    const auto cells = split(line, ',');
    out << (first ? "" : ",") << '{';
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << Record::quote(columns[i]) << ':' << cells[i];
    }
    out << '}';
    first = false;
  }
  out << "]\n";
  return kExitOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::vector<std::string> tolerances;
  std::string format = "json";
};

void apply_tolerance(VerifyOptions& opt, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw ParseError("--tolerance expects key=value, got '" + item + "'");
  const std::string key = item.substr(0, eq);
  const double value = parse_double(item.substr(eq + 1), "--tolerance " + key);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("--tolerance " + key + " must be positive");
  }
  if (key == "slack") {
    opt.slack = value;
  } else if (key == "fdiv") {
    opt.fdiv_tolerance = value;
  } else if (key == "closed-form") {
    opt.closed_form_tolerance = value;
  } else if (key == "curvature") {
    opt.curvature_tolerance = value;
  } else if (key == "witness-fraction") {
    if (value > 1.0) throw DomainError("witness-fraction must not exceed 1");
    opt.witness_fraction = value;
  } else {
    throw ParseError("unknown tolerance '" + key +
                     "' (slack, fdiv, closed-form, curvature, witness-fraction)");
  }
}

int do_verify(const VerifyArgs& args, std::ostream& out) {
  const Format format = parse_format(args.format);
  VerifyOptions opt;
  opt.trials = args.trials;
  opt.seed = args.seed;
  for (const auto& t : args.tolerances) apply_tolerance(opt, t);
  if (args.suite != "all" &&
      std::find(suite_names().begin(), suite_names().end(), args.suite) == suite_names().end()) {
    throw ParseError("unknown suite '" + args.suite + "'");
  }

  const auto results = run_suites(args.suite, opt);
  const bool passed =
      std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });

  if (format == Format::Csv) {
    out << "suite,checks,violations,passed\n";
    for (const auto& r : results) {
      out << r.name << ',' << r.checks << ',' << r.violations << ',' << (r.passed() ? "true" : "false")
          << '\n';
    }
  } else {
    auto strings = [](const std::vector<std::string>& xs) {
      std::string s = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + Record::quote(xs[i]);
      return s + "]";
    };
    out << "{\"seed\":" << opt.seed << ",\"trials\":" << opt.trials << ",\"passed\":"
        << (passed ? "true" : "false") << ",\"suites\":[";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      out << (i ? "," : "") << "{\"name\":" << Record::quote(r.name) << ",\"checks\":" << r.checks
          << ",\"violations\":" << r.violations << ",\"passed\":" << (r.passed() ? "true" : "false")
          << ",\"failures\":" << strings(r.failures) << ",\"notes\":" << strings(r.notes) << '}';
    }
    out << "]}\n";
  }
  return passed ? kExitOk : kExitViolations;
}

}  // namespace

std::string emit_figure_table(std::span<const Alpha> alphas, std::size_t steps) {
  if (steps < 2) throw DomainError("the table needs at least 2 rho steps");
  std::string csv = "rho,hellinger_sq";
  for (const Alpha& a : alphas) csv += ",bbd_alpha_" + a.label();
  csv += '\n';
  for (std::size_t k = 0; k < steps; ++k) {
    const Rho rho(static_cast<double>(k) / static_cast<double>(steps - 1));
    csv += format_double(rho.value()) + ',' + format_double(hellinger_squared(rho));
    for (const Alpha& a : alphas) csv += ',' + format_double(bbd(rho, a));
    csv += '\n';
  }
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Bounded Bhattacharyya distances and related measures", "bbd"};
  app.require_subcommand(1, 1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Distances between two distributions");
  c->add_option("--alpha", compute.alpha, "Alpha, e.g. 2, -1, inf");
  c->add_option("-p", compute.p, "Model spec or distribution file")->required();
  c->add_option("-q", compute.q, "Model spec or distribution file")->required();
  c->add_option("--measures", compute.measures,
                "Extra measures: zeta,hellinger_sq,bhattacharyya,kld,kld_sym,jsd,chernoff or all");
  c->add_option("--format", compute.format, "json or csv");

  MultiArgs multi;
  auto* m = app.add_subcommand("multi", "Generalized coefficient of several distributions");
  m->add_option("--alpha", multi.alpha, "Alpha");
  m->add_option("--weights", multi.weights, "Comma-separated weights (default uniform)");
  m->add_option("inputs", multi.inputs, "Distribution files")->required();
  m->add_option("--format", multi.format, "json or csv");

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Bayes error bounds");
  b->add_option("-p", bounds.p, "First hypothesis distribution");
  b->add_option("-q", bounds.q, "Second hypothesis distribution");
  b->add_option("--rho", bounds.rho, "Overlap coefficient")->check(CLI::Range(0.0, 1.0));
  b->add_option("--from-bbd", bounds.from_bbd, "Bounded distance value, or - for compute JSON on stdin");
  b->add_option("--alpha", bounds.alpha, "Alpha of the --from-bbd value");
  b->add_option("--prior", bounds.prior, "Prior of the first hypothesis")->check(CLI::Range(0.0, 1.0));
  b->add_option("--format", bounds.format, "json or csv");

  CurvatureArgs curv;
  auto* k = app.add_subcommand("curvature", "Finite-difference curvature against Fisher information");
  k->set_help_flag("--help", "Print this help message and exit");
  k->add_option("--family", curv.family,
                "gaussian-mean, gaussian-sigma, poisson, exponential, binomial, pareto, gaussian")
      ->required();
  k->add_option("--theta", curv.theta, "Parameter value (mu,sigma for gaussian)")->required();
  k->add_option("--alpha", curv.alpha, "Alpha");
  k->add_option("--h", curv.h, "Finite-difference step")->check(CLI::PositiveNumber);
  k->add_option("--fixed", curv.fixed, "Value of the held parameter");
  k->add_option("--format", curv.format, "json or csv");

  TableArgs table;
  auto* t = app.add_subcommand("table", "Hellinger and bounded distances over a rho grid");
  t->add_option("--alphas", table.alphas, "Comma-separated alphas");
  t->add_option("--rho-steps", table.steps, "Grid points")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  t->add_option("--format", table.format, "csv or json");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Property suites");
  v->add_option("--suite", verify.suite, "Suite name or all");
  v->add_option("--trials", verify.trials, "Random instances per suite")->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed, "Seed");
  v->add_option("--tolerance", verify.tolerances, "Override, key=value (repeatable)");
  v->add_option("--format", verify.format, "json or csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "bbd: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (c->parsed()) return do_compute(compute, out);
    if (m->parsed()) return do_multi(multi, out);
    if (b->parsed()) return do_bounds(bounds, out, in);
    if (k->parsed()) return do_curvature(curv, out);
    if (t->parsed()) return do_table(table, out);
    return do_verify(verify, out);
  } catch (const std::exception& e) {
    err << "bbd: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace bbd::cli
