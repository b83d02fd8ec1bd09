#include "opcone_cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "opcone_cli/reproduce.hpp"

namespace opcone::cli {

namespace {

const std::vector<std::string> kCommands{"max-pos",     "min-pos",   "spatial-min", "quotient-pos",
                                         "interpolate", "tr-check",  "cross-check", "reproduce"};

std::size_t level_of(const Options& opts, const json& payload) {
  if (opts.level) return *opts.level;
  return payload.contains("level") ? size_field(payload, "level") : 1;
}

bool bool_field(const json& payload, const char* key, bool fallback) {
  if (!payload.contains(key)) return fallback;
  const json& v = payload[key];
  if (!v.is_boolean()) throw ParseError(std::string("field \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

json coords_json(const std::vector<double>& x) { return json(x); }

/// Status, witness coordinates, certificate and solver stats of one decision.
json outcome_json(const LmiProblem& problem, const FeasibilityOutcome& o, const SolverConfig& config) {
  json out{{"status", to_string(o.status)}, {"stats", stats_json(o.stats)}};
  if (o.feasible()) {
    json w{{"coords", coords_json(o.witness)}};
    if (o.exact) w["exact"] = rationals_json(o.exact->witness);
    out["witness"] = std::move(w);
  }
  if (o.certificate) {
    json c{{"multipliers", matrices_json(o.certificate->multipliers)},
           {"verified", check_certificate(problem, *o.certificate, config)}};
    if (o.exact) {
      json ex = json::array();
      for (const auto& block : o.exact->multipliers) ex.push_back(rationals_json(block));
      c["exact"] = std::move(ex);
    }
    out["certificate"] = std::move(c);
  }
  return out;
}

TensorElement parse_tensor(const Options& opts, const json& p) {
  const OperatorSubsystem system = parse_system(field(p, "system"));
  const QuotientSystem quotient = parse_quotient(field(p, "quotient"));
  const std::size_t level = level_of(opts, p);
  if (p.contains("extended")) return normalize_extended(system, quotient, level, parse_matrices(p["extended"]));
  return make_tensor_element(system, quotient, level, parse_matrices(field(p, "coeffs")));
}

CommandResult tensor_command(const Options& opts, const SolverConfig& config, const json& p, bool max_cone) {
  const TensorElement u = parse_tensor(opts, p);
  const bool strict = bool_field(p, "strict", false);
  const OperatorSubsystem space = max_cone ? u.system : u.system.ambient();
  const LmiProblem problem = tensor_problem(u, space, strict, config);
  const FeasibilityOutcome o = max_cone ? max_positive(u, strict, config) : min_positive(u, strict, config);
  json result = outcome_json(problem, o, config);
  result["cone"] = max_cone ? "max" : "min";
  result["strict"] = strict;
  result["level"] = u.level;
  if (o.feasible()) result["witness"]["matrix"] = matrix_json(max_cone ? max_witness(u, o) : min_witness(u, o));
  return {exit_code(o.status), std::move(result)};
}

CommandResult spatial_command(const Options& opts, const json& p) {
  const OperatorSubsystem s1 = parse_system(field(p, "s1"));
  const OperatorSubsystem s2 = parse_system(field(p, "s2"));
  const json& terms_json = field(p, "terms");
  if (!terms_json.is_array() || terms_json.empty()) throw ParseError("\"terms\" must be a nonempty array");
  std::vector<std::pair<HermitianMatrix, HermitianMatrix>> terms;
  for (const auto& t : terms_json) terms.emplace_back(parse_matrix(field(t, "left")), parse_matrix(field(t, "right")));
  const double tol = opts.tol.value_or(1e-7);
  const bool positive = min_positive_spatial(s1, s2, terms, tol);
  HermitianMatrix sum(s1.ambient_dim() * s2.ambient_dim());
  for (const auto& [x, y] : terms) sum += kron(x, y);
  json result{{"status", positive ? "Positive" : "NotPositive"},
              {"min_eigenvalue", min_eigenvalue(sum)},
              {"tol", tol}};
  return {positive ? kExitOk : kExitNegative, std::move(result)};
}

CommandResult quotient_command(const Options& opts, const SolverConfig& config, const json& p) {
  const QuotientSystem q = parse_quotient(field(p, "quotient"));
  QuotientElement e;
  if (p.contains("coords")) {
    const json& c = p["coords"];
    if (!c.is_array()) throw ParseError("\"coords\" must be an array");
    std::vector<double> x;
    for (const auto& v : c) x.push_back(to_double(parse_rational(v)));
    e = scalar_element(q, x);
  } else {
    e = make_quotient_element(q, parse_matrices(field(p, "blocks")));
  }
  if (opts.level && *opts.level != e.level) throw ParseError("--level does not match the element level");
  const bool strict = bool_field(p, "strict", false);
  const double margin = strict ? opts.delta : 0.0;
  const FeasibilityOutcome o = quotient_positive(e, margin, config);
  json result = outcome_json(quotient_positive_problem(e, margin), o, config);
  result["strict"] = strict;
  result["margin"] = margin;
  if (o.feasible()) result["witness"]["representative"] = matrices_json(lifted_representative(e, o.witness).blocks);
  return {exit_code(o.status), std::move(result)};
}

InterpolationInstance parse_instance(const Options& opts, const json& p, const OperatorSubsystem& system,
                                     std::size_t level) {
  InterpolationInstance inst{system, level, parse_matrices(field(p, "lower")), parse_matrices(field(p, "upper")),
                             opts.delta};
  inst.validate();
  return inst;
}

json instance_json(const InterpolationInstance& inst) {
  return json{{"level", inst.level}, {"lower", matrices_json(inst.lower)}, {"upper", matrices_json(inst.upper)}};
}

CommandResult interpolate_command(const Options& opts, const SolverConfig& config, const json& p) {
  const InterpolationInstance inst = parse_instance(opts, p, parse_system(field(p, "system")), level_of(opts, p));
  const std::string side = p.contains("side") ? p["side"].get<std::string>() : "subsystem";
  if (side != "subsystem" && side != "ambient") throw ParseError("\"side\" must be \"subsystem\" or \"ambient\"");
  const bool ambient = side == "ambient";
  const LmiProblem problem = interpolation_problem(inst, ambient ? inst.system.ambient() : inst.system);
  const FeasibilityOutcome o = ambient ? ambient_interpolate(inst, config) : subsystem_interpolate(inst, config);
  json result = outcome_json(problem, o, config);
  result["side"] = side;
  result["level"] = inst.level;
  if (o.feasible())
    result["witness"]["matrix"] = matrix_json(ambient ? ambient_interpolant(inst, o) : subsystem_interpolant(inst, o));
  return {exit_code(o.status), std::move(result)};
}

json tr_report_json(const TrReport& r) {
  json records = json::array();
  for (const auto& t : r.records) {
    json rec{{"index", t.index}, {"ambient", to_string(t.ambient)}, {"certified", t.certified}};
    if (t.label.empty()) {
      rec["seed"] = t.seed;
    } else {
      rec["label"] = t.label;
    }
    if (t.ambient == Status::Feasible) rec["subsystem"] = to_string(t.subsystem);
    records.push_back(std::move(rec));
  }
  json out{{"k", r.k},
           {"m", r.m},
           {"level", r.level},
           {"seed", r.seed},
           {"trials", r.trials},
           {"ambient_feasible", r.ambient_feasible},
           {"subsystem_feasible", r.subsystem_feasible},
           {"subsystem_infeasible", r.subsystem_infeasible},
           {"unknown", r.unknown},
           {"records", std::move(records)}};
  out["first_counterexample"] = r.first_counterexample ? instance_json(*r.first_counterexample) : json(nullptr);
  return out;
}

CommandResult tr_command(const Options& opts, const SolverConfig& config, const json& p) {
  const OperatorSubsystem system = parse_system(field(p, "system"));
  const std::size_t k = size_field(p, "k");
  const std::size_t m = size_field(p, "m");
  const std::size_t level = level_of(opts, p);
  const std::size_t trials = p.contains("trials") ? size_field(p, "trials") : 50;
  std::vector<std::pair<std::string, InterpolationInstance>> extra;
  if (bool_field(p, "inject_records", true)) extra = catalog::instances_of_record(system, k, m, level, opts.delta);
  if (p.contains("extra")) {
    const json& list = p["extra"];
    if (!list.is_array()) throw ParseError("\"extra\" must be an array");
    for (const auto& item : list) {
      const std::string label = item.contains("label") ? item["label"].get<std::string>() : "extra";
      extra.emplace_back(label, parse_instance(opts, item, system, level));
      if (extra.back().second.lower.size() != m || extra.back().second.upper.size() != k)
        throw ParseError("extra instance \"" + label + "\" must have m lower and k upper elements");
    }
  }
  const TrReport r = tr_property_check(system, k, m, level, trials, opts.seed, config, extra);
  json result = tr_report_json(r);
  if (r.subsystem_infeasible > 0) {
    result["status"] = "Counterexample";
    return {kExitNegative, std::move(result)};
  }
  result["status"] = r.unknown > 0 ? "Unknown" : "NoCounterexample";
  return {r.unknown > 0 ? kExitUnknown : kExitOk, std::move(result)};
}

CommandResult cross_command(const Options& opts, const SolverConfig& config, const json& p) {
  const InterpolationInstance inst = parse_instance(opts, p, parse_system(field(p, "system")), level_of(opts, p));
  const ConsistencyVerdict v = cross_check_theorem(inst, config);
  json result{{"status", to_string(v.verdict)},
              {"interpolation", to_string(v.interpolation)},
              {"tensor", to_string(v.tensor)},
              {"level", inst.level}};
  if (!v.details.empty()) result["details"] = v.details;
  const int code = v.verdict == Verdict::Agree ? kExitOk : v.verdict == Verdict::Disagree ? kExitNegative : kExitUnknown;
  return {code, std::move(result)};
}

}  // namespace

SolverConfig make_config(const Options& opts) {
  SolverConfig c;
  c.delta_strict = opts.delta;
  if (opts.tol) {
    c.tol_feas = *opts.tol;
    c.tol_cert = *opts.tol;
  }
  if (opts.max_iters) c.max_iters = *opts.max_iters;
  return c;
}

json config_json(const Options& opts, const SolverConfig& c) {
  json out{{"delta", opts.delta},
           {"seed", opts.seed},
           {"max_iters", c.max_iters},
           {"check_every", c.check_every},
           {"tol_feas", c.tol_feas},
           {"tol_cert", c.tol_cert},
           {"tol_eig", c.tol_eig},
           {"tol_sym", kTolSym},
           {"tol_span", kTolSpan},
           {"tol_bisect", c.tol_bisect},
           {"delta_strict", c.delta_strict},
           {"exact_diagonal", c.exact_diagonal}};
  out["tol"] = opts.tol ? json(*opts.tol) : json(nullptr);
  out["level"] = opts.level ? json(*opts.level) : json(nullptr);
  return out;
}

int exit_code(Status s) {
  switch (s) {
    case Status::Feasible:
      return kExitOk;
    case Status::Infeasible:
      return kExitNegative;
    case Status::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

CommandResult run_command(const Options& opts, const json& problem, std::ostream* log) {
  if (!(opts.delta > 0.0)) throw ParseError("--delta must be positive");
  if (opts.tol && !(*opts.tol > 0.0)) throw ParseError("--tol must be positive");
  if (opts.max_iters && *opts.max_iters == 0) throw ParseError("--max-iters must be positive");
  if (opts.level && *opts.level == 0) throw ParseError("--level must be positive");
  const SolverConfig config = make_config(opts);
  const auto start = std::chrono::steady_clock::now();

  CommandResult r;
  if (opts.command == "reproduce") {
    r = reproduce_command(opts, config, log);
  } else {
    if (!problem.is_object()) throw ParseError("problem file must hold a JSON object");
    const json& version = field(problem, "schema_version");
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
      throw ParseError(std::string("unsupported schema_version, expected \"") + kSchemaVersion + "\"");
    const json& kind = field(problem, "kind");
    if (!kind.is_string() || kind.get<std::string>() != opts.command)
      throw ParseError("problem kind " + kind.dump() + " does not match command \"" + opts.command + "\"");
    const json& p = field(problem, "payload");
    if (!p.is_object()) throw ParseError("\"payload\" must be an object");

    if (opts.command == "max-pos") {
      r = tensor_command(opts, config, p, true);
    } else if (opts.command == "min-pos") {
      r = tensor_command(opts, config, p, false);
    } else if (opts.command == "spatial-min") {
      r = spatial_command(opts, p);
    } else if (opts.command == "quotient-pos") {
      r = quotient_command(opts, config, p);
    } else if (opts.command == "interpolate") {
      r = interpolate_command(opts, config, p);
    } else if (opts.command == "tr-check") {
      r = tr_command(opts, config, p);
    } else if (opts.command == "cross-check") {
      r = cross_command(opts, config, p);
    } else {
      throw ParseError("unknown command \"" + opts.command + "\"");
    }
  }

  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json report{{"schema_version", kSchemaVersion}, {"kind", opts.command}, {"exit_code", r.exit_code}};
  for (auto& [key, value] : r.report.items()) report[key] = std::move(value);
  report["timing_ms"] = ms;
  report["config"] = config_json(opts, config);
  r.report = std::move(report);
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Positivity in operator-system tensor products and relative Riesz interpolation", "opcone"};
  app.add_option("command", opts.command, "Subcommand")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--input", opts.input, "Problem file (JSON), - for standard input");
  app.add_option("--delta", opts.delta, "Strictness margin")->capture_default_str();
  app.add_option("--tol", opts.tol, "Witness and certificate tolerance");
  app.add_option("--max-iters", opts.max_iters, "Iteration budget of the numeric solver");
  app.add_option("--seed", opts.seed, "Seed for sampled instances")->capture_default_str();
  app.add_option("--level", opts.level, "Matrix level r");
  bool compact = false;
  app.add_flag("--json", compact, "Compact JSON output (default)");
  app.add_flag("--pretty", opts.pretty, "Indented JSON output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }
  if (compact && opts.pretty) {
    err << "opcone: --json and --pretty are mutually exclusive\n";
    return kExitUsage;
  }

  json problem;
  try {
    if (opts.command != "reproduce") {
      if (opts.input.empty()) throw ParseError("--input is required for " + opts.command);
      if (opts.input == "-") {
        problem = json::parse(std::cin);
      } else {
        std::ifstream in(opts.input);
        if (!in) throw ParseError("cannot open " + opts.input);
        problem = json::parse(in);
      }
    }
    CommandResult r;
    try {
      r = run_command(opts, problem, &err);
    } catch (const NoConvergence& e) {
      r.exit_code = kExitUnknown;
      r.report = json{{"schema_version", kSchemaVersion},
                      {"kind", opts.command},
                      {"exit_code", r.exit_code},
                      {"status", "Unknown"},
                      {"error", e.what()},
                      {"config", config_json(opts, make_config(opts))}};
    }
    out << r.report.dump(opts.pretty ? 2 : -1) << '\n';
    return r.exit_code;
  } catch (const ParseError& e) {
    err << "opcone: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "opcone: malformed JSON: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "opcone: invalid problem: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace opcone::cli
