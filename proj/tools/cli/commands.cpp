#include "commands.hpp"

#include <fstream>
#include <set>

namespace nabla::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

json error_report(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"schema", kReportSchema}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::set<std::string> given_flags(const CommandOptions& o) {
  std::set<std::string> f;
  if (o.depth) f.insert("--depth");
  if (!o.radius.empty()) f.insert("--radius");
  if (o.eta) f.insert("--eta");
  if (o.lambda) f.insert("--lambda");
  if (o.direction) f.insert("--direction");
  if (!o.point.empty()) f.insert("--point");
  if (o.trials) f.insert("--trials");
  if (o.seed) f.insert("--seed");
  if (o.tol) f.insert("--tol");
  if (o.window) f.insert("--window");
  if (o.alpha) f.insert("--alpha");
  if (o.beta) f.insert("--beta");
  if (o.samples) f.insert("--samples");
  if (o.max_depth) f.insert("--max-depth");
  return f;
}

void check_flags(const CommandOptions& o, const std::set<std::string>& allowed, const std::set<std::string>& required) {
  auto given = given_flags(o);
  for (const auto& f : given) {
    if (!allowed.count(f)) throw UsageError("flag " + f + " conflicts with subcommand '" + o.command + "'");
  }
  for (const auto& f : required) {
    if (!given.count(f)) throw UsageError("subcommand '" + o.command + "' requires " + f);
  }
}

Rational parse_flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

LogRadius parse_radius(const std::string& flag, const std::string& text) {
  if (text == "inf") return LogRadius::disc_center();
  Rational r = parse_flag_rational(flag, text);
  if (r < 0) throw UsageError(flag + " exponents must be >= 0");
  return LogRadius(r);
}

IterationLimits limits_from(const CommandOptions& o) {
  IterationLimits limits;
  if (o.max_depth) limits.max_depth = *o.max_depth;
  return limits;
}

RadiusOptions radius_options_from(const CommandOptions& o) {
  RadiusOptions ro;
  ro.limits = limits_from(o);
  if (o.window) ro.window = parse_flag_rational("--window", *o.window);
  if (ro.window <= 0 || ro.window > 1) throw UsageError("--window must lie in (0, 1]");
  return ro;
}

OcOptions oc_options_from(const CommandOptions& o) {
  OcOptions oc;
  oc.radius = radius_options_from(o);
  if (o.tol) oc.tol = parse_flag_rational("--tol", *o.tol);
  if (oc.tol <= 0) throw UsageError("--tol must be positive");
  return oc;
}

std::size_t direction_index(const CommandOptions& o, std::size_t nvars) {
  if (*o.direction < 1 || *o.direction > nvars) {
    throw UsageError("--direction must lie in 1.." + std::to_string(nvars));
  }
  return *o.direction - 1;
}

json base_report(const CommandOptions& o, const std::string& hash, const std::optional<std::string>& label) {
  json r = {{"schema", kReportSchema}, {"command", o.command}, {"descriptor_hash", hash}};
  r["label"] = label ? json(*label) : json(nullptr);
  return r;
}

int verdict_exit(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kOverconvergentEvidence:
      return kExitOk;
    case VerdictKind::kNotOverconvergentEvidence:
      return kExitNegative;
    case VerdictKind::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

int probe_exit(ProbeOutcome outcome) {
  switch (outcome) {
    case ProbeOutcome::kPass:
      return kExitOk;
    case ProbeOutcome::kFail:
      return kExitNegative;
    case ProbeOutcome::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

CommandResult run_techlemma(const CommandOptions& o, const json& doc) {
  check_flags(o, {"--alpha", "--beta", "--direction", "--samples"}, {"--alpha", "--beta"});
  PolyDescriptor pd = parse_poly_descriptor(doc);
  const auto& sig = pd.poly.signature();
  Rational r_alpha = parse_flag_rational("--alpha", *o.alpha);
  Rational r_beta = parse_flag_rational("--beta", *o.beta);
  AlignedInterval interval = [&] {
    try {
      return AlignedInterval(r_alpha, r_beta);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  if (!interval.has_positive_length()) throw UsageError("interval must have positive length");
  if (pd.poly.is_zero()) throw UsageError("the polynomial must be nonzero");
  std::size_t samples = o.samples.value_or(20);
  if (samples < 2) throw UsageError("--samples must be >= 2");

  LineFamily lines;
  std::optional<std::size_t> var;
  if (sig.nvars() == 1) {
    if (o.direction && *o.direction != 1) throw UsageError("--direction must be 1 for a one-variable polynomial");
    lines = lines_from_scalar(pd.poly);
  } else {
    if (!o.direction) throw UsageError("techlemma on a multivariable polynomial requires --direction");
    var = direction_index(o, sig.nvars());
    lines = lines_on_unit_locus(pd.poly, *var);
  }

  auto cert = shrink_interval(lines, interval);
  json result = {{"sup_norm_exponent", exponent_to_json(sup_norm_on_interval(lines, interval).exponent())},
                 {"dominant", to_json(dominant_term(lines, interval))},
                 {"certificate", to_json(cert)},
                 {"coefficients", var ? "unit-locus" : "scalar"}};
  if (!var) {
    auto check = unit_certificate_check(pd.poly, cert, samples);
    result["unit_check"] = {{"ok", check.ok},
                            {"samples", samples},
                            {"counterexample", check.counterexample ? json(format_rational(*check.counterexample))
                                                                    : json(nullptr)}};
  } else {
    result["unit_check"] = nullptr;
  }

  json report = base_report(o, descriptor_hash(poly_to_json(pd.poly)), pd.label);
  report["parameters"] = {{"alpha", format_rational(r_alpha)},
                          {"beta", format_rational(r_beta)},
                          {"direction", var ? json(*var + 1) : json(1)},
                          {"samples", samples}};
  report["result"] = std::move(result);
  return {kExitOk, std::move(report)};
}

CommandResult run_module_command(const CommandOptions& o, const json& doc) {
  ModuleDescriptor md = parse_module_descriptor(doc);
  const ConnectionModule& module = md.module;
  json report = base_report(o, descriptor_hash(module_to_json(module)), md.label);

  if (o.command == "validate") {
    check_flags(o, {}, {});
    auto violation = integrability_check(module);
    report["result"] = {{"valid_schema", true}, {"integrable", !violation}};
    report["result"]["violation"] = violation ? to_json(*violation) : json(nullptr);
    return {violation ? kExitNonIntegrable : kExitOk, std::move(report)};
  }

  if (auto violation = integrability_check(module)) {
    report["error"] = {{"kind", "non_integrable"}, {"message", "connection is not integrable"}};
    report["violation"] = to_json(*violation);
    return {kExitNonIntegrable, std::move(report)};
  }

  if (o.command == "ir") {
    check_flags(o, {"--depth", "--radius", "--window", "--max-depth"}, {"--depth"});
    std::vector<LogRadius> radii(module.nvars(), LogRadius::unit());
    if (!o.radius.empty()) {
      if (o.radius.size() != module.nvars()) {
        throw UsageError("--radius must be given once per variable (" + std::to_string(module.nvars()) + ")");
      }
      for (std::size_t k = 0; k < radii.size(); ++k) radii[k] = parse_radius("--radius", o.radius[k]);
    }
    RadiusVector rho = [&] {
      try {
        return RadiusVector(module.signature(), radii);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }();
    auto ro = radius_options_from(o);
    auto rr = intrinsic_radius(module, rho, *o.depth, ro);
    report["parameters"] = {{"depth", *o.depth}, {"window", format_rational(ro.window)},
                            {"max_depth", ro.limits.max_depth}};
    report["result"] = to_json(rr);
    return {kExitOk, std::move(report)};
  }

  if (o.command == "oc") {
    check_flags(o, {"--depth", "--tol", "--window", "--max-depth"}, {"--depth"});
    auto oc = oc_options_from(o);
    auto verdict = oc_ir_test(module, *o.depth, oc);
    report["parameters"] = {{"depth", *o.depth}, {"tol", format_rational(oc.tol)},
                            {"window", format_rational(oc.radius.window)},
                            {"max_depth", oc.radius.limits.max_depth}};
    report["result"] = to_json(verdict);
    return {verdict_exit(verdict.kind), std::move(report)};
  }

  if (o.command == "specialize") {
    check_flags(o, {"--direction", "--point"}, {"--direction", "--point"});
    std::size_t i = direction_index(o, module.nvars());
    if (o.point.size() + 1 != module.nvars()) {
      throw UsageError("--point must be given once per variable other than the direction (" +
                       std::to_string(module.nvars() - 1) + ")");
    }
    std::vector<Rational> coords;
    for (const auto& c : o.point) coords.push_back(parse_flag_rational("--point", c));
    UnitPoint point = [&] {
      try {
        return UnitPoint(coords, module.prime());
      } catch (const NonUnitError& e) {
        throw UsageError(e.what());
      }
    }();
    auto curve = specialize(module, i, point);
    report["parameters"] = {{"direction", i + 1}, {"point", o.point}};
    report["result"] = {{"module", module_to_json(curve)}};
    return {kExitOk, std::move(report)};
  }

  if (o.command == "cutcheck") {
    check_flags(o, {"--depth", "--trials", "--seed", "--tol", "--window", "--max-depth"},
                {"--depth", "--trials", "--seed"});
    WitnessOptions wo;
    wo.oc = oc_options_from(o);
    auto result = curve_witness_search(module, *o.depth, *o.trials, *o.seed, wo);
    report["parameters"] = {{"depth", *o.depth}, {"trials", *o.trials}, {"seed", *o.seed},
                            {"tol", format_rational(wo.oc.tol)}, {"window", format_rational(wo.oc.radius.window)},
                            {"range", wo.range}};
    report["result"] = to_json(result, *o.depth, *o.trials, *o.seed);
    int code = kExitOk;
    if (result.witness) {
      code = kExitNegative;
    } else if (result.full_verdict.kind != VerdictKind::kOverconvergentEvidence) {
      code = kExitInconclusive;
    }
    return {code, std::move(report)};
  }

  if (o.command == "taylor") {
    check_flags(o, {"--depth", "--eta", "--lambda", "--max-depth"}, {"--depth", "--eta", "--lambda"});
    LogRadius eta = parse_radius("--eta", *o.eta);
    LogRadius lambda = parse_radius("--lambda", *o.lambda);
    if (eta.is_disc_center() || eta.exponent() == Exponent(0)) throw UsageError("--eta must lie in (0, 1)");
    if (lambda.is_disc_center()) throw UsageError("--lambda must lie in (0, 1]");
    if (*o.depth < 8) throw UsageError("--depth (the multi-index bound) must be >= 8");
    auto tr = taylor_probe(module, eta, lambda, *o.depth, limits_from(o));
    report["parameters"] = {{"bound", *o.depth}, {"eta", *o.eta}, {"lambda", *o.lambda}};
    report["result"] = to_json(tr);
    return {probe_exit(tr.outcome), std::move(report)};
  }

  throw UsageError("unknown subcommand '" + o.command + "'");
}

}  // namespace

CommandResult execute(const CommandOptions& options, const json& descriptor) {
  try {
    if (options.command == "techlemma") return run_techlemma(options, descriptor);
    return run_module_command(options, descriptor);
  } catch (const SchemaError& e) {
    return {kExitInvalid, error_report(options.command, "schema", e.what())};
  } catch (const UsageError& e) {
    return {kExitInvalid, error_report(options.command, "usage", e.what())};
  } catch (const NonIntegrableError& e) {
    return {kExitNonIntegrable, error_report(options.command, "non_integrable", e.what())};
  } catch (const DepthLimitError& e) {
    return {kExitInvalid, error_report(options.command, "depth_limit", e.what())};
  } catch (const Error& e) {
    return {kExitInvalid, error_report(options.command, "invalid", e.what())};
  }
}

CommandResult execute(const CommandOptions& options) {
  std::ifstream in(options.path);
  if (!in) return {kExitInvalid, error_report(options.command, "io", "cannot read '" + options.path + "'")};
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    return {kExitInvalid, error_report(options.command, "parse", e.what())};
  }
  return execute(options, doc);
}

std::string render(const json& report) {
  return report.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace nabla::cli
