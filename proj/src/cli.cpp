#include "orbitmetric/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "orbitmetric/acceptance.hpp"
#include "orbitmetric/analysis.hpp"
#include "orbitmetric/errors.hpp"
#include "orbitmetric/pseudometrics.hpp"

#ifndef ORBITMETRIC_VERSION
#define ORBITMETRIC_VERSION "0.0.0"
#endif

namespace orbitmetric {

namespace {

const double kGoldenAlpha = (std::sqrt(5.0) - 1.0) / 2.0;

struct Flags {
  std::string config, system, system_json, x, y, checkpoints, n_list, observable, a, output;
  std::string format = "csv";
  double alpha = 0.0, r = 0.0, delta = 0.0, cluster_tol = kDefaultClusterTol;
  int horizon = kDefaultShiftHorizon, blocks = 6, criterion = 0;
  std::int64_t n = 0, cap = 0;
  std::size_t samples = 0, tail_start = 0;
  std::uint64_t seed = 0;
  bool strict = false;
};

struct Parsed {
  std::string command;
  std::map<std::string, bool> given;  // option name (without dashes) -> present
  Flags flags;
};

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      require(used == item.size(), "");
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, what + " must be a comma-separated list of integers");
    }
  }
  require(!out.empty(), what + " must not be empty");
  return out;
}

std::string system_kind_from_name(const std::string& name) {
  static const std::map<std::string, std::string> names{
      {"circle", "circle_rotation"},   {"rotation", "circle_rotation"},
      {"circle_rotation", "circle_rotation"}, {"doubling", "doubling_map"},
      {"doubling_map", "doubling_map"}, {"tent", "tent_map"},
      {"tent_map", "tent_map"},         {"logistic", "logistic_map"},
      {"logistic_map", "logistic_map"}, {"shift", "binary_shift"},
      {"binary_shift", "binary_shift"}};
  const auto it = names.find(name);
  require(it != names.end(), "unknown --system '" + name +
                                 "' (expected circle, doubling, tent, logistic or shift)");
  return it->second;
}

Parsed parse_args(const std::vector<std::string>& args, std::string& help) {
  Parsed p;
  Flags& f = p.flags;
  CLI::App app{"Orbit pseudo-metrics and finite-scale diagnostics for topological dynamical systems",
               "orbitmetric"};
  app.set_version_flag("--version", std::string(ORBITMETRIC_VERSION));
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::vector<CLI::Option*>>> registry;
  auto command = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    registry.push_back({sub, {}});
    return sub;
  };
  auto opt = [&](CLI::App* sub, const std::string& name, auto& target, const std::string& desc) {
    registry.back().second.push_back(sub->add_option(name, target, desc));
  };
  auto common = [&](CLI::App* sub) {
    opt(sub, "--config", f.config, "JSON configuration file; flags override its values");
    opt(sub, "--output", f.output, "output path (default: standard output)");
    registry.back().second.push_back(
        sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"})));
    opt(sub, "--seed", f.seed, "random seed (default 0)");
    registry.back().second.push_back(sub->add_flag("--strict", f.strict, "exit 1 when the verdict is violated"));
  };
  auto system_opts = [&](CLI::App* sub) {
    opt(sub, "--system", f.system, "circle | doubling | tent | logistic | shift");
    opt(sub, "--system-json", f.system_json, "full system specification as JSON");
    opt(sub, "--alpha", f.alpha, "rotation number for circle");
    opt(sub, "--r", f.r, "logistic parameter");
    opt(sub, "--horizon", f.horizon, "symbol lookahead K for shifts (1..64)");
  };
  auto schedule_opts = [&](CLI::App* sub) {
    opt(sub, "--cap", f.cap, "geometric schedule up to this n (ratio 1.5)");
    opt(sub, "--checkpoints", f.checkpoints, "explicit increasing checkpoints, e.g. 10,100,1000");
    opt(sub, "--tail-start", f.tail_start, "index of the first tail checkpoint");
  };

  CLI::App* pair = command("pair", "Ebar_n, Besicovitch and optional Delta_n for one pair of points");
  common(pair);
  system_opts(pair);
  schedule_opts(pair);
  opt(pair, "--x", f.x, "first point");
  opt(pair, "--y", f.y, "second point");
  opt(pair, "--n", f.n, "single orbit length");
  opt(pair, "--delta", f.delta, "threshold for Delta_n");

  CLI::App* modulus = command("modulus", "empirical Ebar-continuity modulus");
  common(modulus);
  system_opts(modulus);
  schedule_opts(modulus);
  opt(modulus, "--delta", f.delta, "closeness of sampled pairs");
  opt(modulus, "--samples", f.samples, "number of random pairs");

  CLI::App* ue = command("ue", "unique-ergodicity diagnostic (empirical Ebar-diameter)");
  common(ue);
  system_opts(ue);
  schedule_opts(ue);
  opt(ue, "--samples", f.samples, "number of sample points");

  CLI::App* birkhoff = command("birkhoff", "Birkhoff-average uniformity profile");
  common(birkhoff);
  system_opts(birkhoff);
  schedule_opts(birkhoff);
  opt(birkhoff, "--observable", f.observable,
      "constant[:c] | coordinate | cos2pi | sin2pi | bump | first_symbol | cylinder:<word>");
  opt(birkhoff, "--samples", f.samples, "number of sample points");

  CLI::App* meaneq = command("meaneq", "mean equicontinuity via the product system");
  common(meaneq);
  system_opts(meaneq);
  schedule_opts(meaneq);
  opt(meaneq, "--delta", f.delta, "closeness of sampled pairs");
  opt(meaneq, "--samples", f.samples, "number of random pairs");

  CLI::App* ex31 = command("example31", "block counterexample with equal omega-hat and Ebar near 1");
  common(ex31);
  opt(ex31, "--blocks", f.blocks, "number of blocks");
  opt(ex31, "--a", f.a, "custom block lengths a_1,a_2,... (default n!)");
  opt(ex31, "--horizon", f.horizon, "symbol lookahead K (1..64)");
  opt(ex31, "--cluster-tol", f.cluster_tol, "clustering tolerance for omega-hat");

  CLI::App* selftest = command("selftest", "run the built-in acceptance suite");
  opt(selftest, "--criterion", f.criterion, "run a single criterion (1..13)");
  opt(selftest, "--output", f.output, "output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError&) {
    help = app.help();
    for (const auto& [sub, opts] : registry) {
      if (sub->parsed()) help = sub->help();
    }
    throw;
  }

  for (const auto& [sub, opts] : registry) {
    if (!sub->parsed()) continue;
    p.command = sub->get_name();
    for (const CLI::Option* o : opts) {
      std::string name = o->get_name();
      while (!name.empty() && name.front() == '-') name.erase(name.begin());
      p.given[name] = o->count() > 0;
    }
  }
  return p;
}

bool given(const Parsed& p, const std::string& name) {
  const auto it = p.given.find(name);
  return it != p.given.end() && it->second;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = parse_json_text(buf.str(), path);
  require(j.is_object(), path + ": configuration must be a JSON object");
  return j;
}

void resolve_system(const Parsed& p, Json& config) {
  const Flags& f = p.flags;
  Json sys;
  if (config.contains("system")) {
    sys = config["system"];
    if (sys.is_string()) sys = Json{{"kind", system_kind_from_name(sys.get<std::string>())}};
    require(sys.is_object(), "'system' must be an object or a system name");
  }
  if (given(p, "system-json")) {
    require(!given(p, "system"), "conflicting system definitions: --system and --system-json");
    Json flag_sys = parse_json_text(f.system_json, "--system-json");
    require(flag_sys.is_object(), "--system-json must be a JSON object");
    if (!sys.is_null()) {
      require(sys.value("kind", "") == flag_sys.value("kind", ""),
              "conflicting system definitions: --system-json kind differs from the config file");
    }
    sys = flag_sys;
  }
  if (given(p, "system")) {
    const std::string kind = system_kind_from_name(f.system);
    if (!sys.is_null()) {
      require(sys.value("kind", "") == kind,
              "conflicting system definitions: --system " + f.system + " vs config file kind '" +
                  sys.value("kind", "") + "'");
    } else {
      sys = Json{{"kind", kind}};
    }
  }
  const bool any_param = given(p, "alpha") || given(p, "r") || given(p, "horizon");
  require(!sys.is_null() || !any_param, "--alpha, --r and --horizon need a system (--system)");
  require(!sys.is_null(), "a system is required (--system, --system-json or 'system' in --config)");

  const std::string kind = sys.value("kind", "");
  if (given(p, "alpha")) {
    require(kind == "circle_rotation", "--alpha applies only to the circle rotation");
    sys["alpha"] = f.alpha;
  }
  if (given(p, "r")) {
    require(kind == "logistic_map", "--r applies only to the logistic map");
    sys["r"] = f.r;
  }
  if (given(p, "horizon")) {
    require(kind != "product", "--horizon does not apply to product systems");
    sys["shift_horizon"] = f.horizon;
  }
  if (kind == "circle_rotation" && !sys.contains("alpha")) sys["alpha"] = kGoldenAlpha;
  if (kind == "logistic_map" && !sys.contains("r")) sys["r"] = 4.0;
  config["system"] = system_to_json(system_from_json(sys));
}

void resolve_schedule(const Parsed& p, Json& config, std::int64_t default_cap) {
  const Flags& f = p.flags;
  if (given(p, "checkpoints")) {
    config["checkpoints"] = parse_int_list(f.checkpoints, "--checkpoints");
    config.erase("cap");
  }
  if (given(p, "cap")) {
    require(!given(p, "checkpoints"), "--cap and --checkpoints are mutually exclusive");
    config["cap"] = f.cap;
    config.erase("checkpoints");
  }
  if (given(p, "tail-start")) config["tail_start"] = f.tail_start;

  std::vector<std::int64_t> cps;
  std::size_t tail = 0;
  if (config.contains("checkpoints")) {
    require(config["checkpoints"].is_array(), "'checkpoints' must be an array of integers");
    cps = config["checkpoints"].get<std::vector<std::int64_t>>();
    tail = cps.size() > 5 ? cps.size() - 5 : 0;
    if (config.contains("tail_start")) tail = config["tail_start"].get<std::size_t>();
    const Schedule s(cps, tail);
  } else {
    const std::int64_t cap = config.value("cap", default_cap);
    require(cap >= 1, "--cap must be at least 1");
    const Schedule s = Schedule::geometric(cap);
    cps.assign(s.checkpoints().begin(), s.checkpoints().end());
    tail = config.contains("tail_start") ? config["tail_start"].get<std::size_t>() : s.tail_start();
    const Schedule check(cps, tail);
    config["cap"] = cap;
  }
  config["checkpoints"] = cps;
  config["tail_start"] = tail;
}

Schedule schedule_from(const Json& config) {
  return Schedule(config["checkpoints"].get<std::vector<std::int64_t>>(),
                  config["tail_start"].get<std::size_t>());
}

Point point_from_config(const SystemSpec& system, const Json& value, const std::string& what) {
  require(!value.is_null(), "missing point " + what);
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    if (system.is_scalar() && text.find('/') == std::string::npos) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        require(used == text.size(), "");
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument, "point " + what + " must be a number or p/q: '" + text + "'");
      }
      return point_from_json(system, v);
    }
    if (system.geometry() == Geometry::Product) return point_from_json(system, parse_json_text(text, what));
  }
  return point_from_json(system, value);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "command", "system", "x", "y", "n", "delta", "samples", "seed", "cap", "checkpoints",
      "tail_start", "observable", "blocks", "a", "shift_horizon", "cluster_tol", "format",
      "output", "strict", "criterion"};
  return keys;
}

Json build_config(const Parsed& p) {
  const Flags& f = p.flags;
  Json config = Json::object();
  if (given(p, "config")) {
    config = load_config_file(f.config);
    for (const auto& item : config.items()) {
      require(known_keys().count(item.key()) > 0, f.config + ": unknown key '" + item.key() + "'");
    }
    if (config.contains("command")) {
      require(config["command"] == p.command, f.config + ": file is for command '" +
                                                  config["command"].dump() + "', not '" + p.command + "'");
    }
  }
  Json out = Json::object();
  out["command"] = p.command;
  for (const auto& item : config.items()) {
    if (item.key() != "command") out[item.key()] = item.value();
  }
  config = std::move(out);

  auto set_if = [&](const char* flag, const char* key, auto value) {
    if (given(p, flag)) config[key] = value;
  };
  set_if("seed", "seed", f.seed);
  set_if("format", "format", f.format);
  set_if("output", "output", f.output);
  if (f.strict) config["strict"] = true;
  if (!config.contains("seed")) config["seed"] = 0;
  if (!config.contains("format")) config["format"] = "csv";
  require(config["format"] == "csv" || config["format"] == "json", "format must be csv or json");

  const std::string& cmd = p.command;
  if (cmd == "selftest") {
    set_if("criterion", "criterion", f.criterion);
    return config;
  }
  if (cmd == "example31") {
    set_if("blocks", "blocks", f.blocks);
    set_if("horizon", "shift_horizon", f.horizon);
    set_if("cluster-tol", "cluster_tol", f.cluster_tol);
    if (given(p, "a")) config["a"] = parse_int_list(f.a, "--a");
    if (!config.contains("blocks")) config["blocks"] = 6;
    if (!config.contains("shift_horizon")) config["shift_horizon"] = kDefaultShiftHorizon;
    if (!config.contains("cluster_tol")) config["cluster_tol"] = kDefaultClusterTol;
    return config;
  }

  resolve_system(p, config);
  set_if("x", "x", f.x);
  set_if("y", "y", f.y);
  set_if("n", "n", f.n);
  set_if("delta", "delta", f.delta);
  set_if("samples", "samples", f.samples);
  set_if("observable", "observable", f.observable);

  const std::map<std::string, std::int64_t> default_cap{
      {"pair", 1000}, {"modulus", 500}, {"ue", 1000}, {"birkhoff", 1000}, {"meaneq", 300}};
  const std::map<std::string, std::size_t> default_samples{
      {"modulus", 20}, {"ue", 20}, {"birkhoff", 100}, {"meaneq", 10}};
  if (cmd != "pair" || !config.contains("n")) resolve_schedule(p, config, default_cap.at(cmd));
  if (default_samples.count(cmd) && !config.contains("samples")) config["samples"] = default_samples.at(cmd);
  if ((cmd == "modulus" || cmd == "meaneq") && !config.contains("delta")) {
    fail(ErrorKind::InvalidArgument, cmd + " requires --delta");
  }
  if (cmd == "birkhoff") require(config.contains("observable"), "birkhoff requires --observable");
  if (cmd == "pair") require(config.contains("x") && config.contains("y"), "pair requires --x and --y");
  return config;
}

void emit(const Json& config, const std::string& text, std::ostream& out) {
  const std::string path = config.value("output", "");
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  require(static_cast<bool>(file), "cannot write output file '" + path + "'");
  file << text;
}

std::string render_report(const DiagnosticReport& r, const Json& config) {
  if (config["format"] == "json") return report_to_json(r, config).dump(2) + "\n";
  return report_to_csv(r, config);
}

int run_pair(const Json& config, std::ostream& out) {
  const SystemSpec system = system_from_json(config["system"]);
  const Point x = point_from_config(system, config["x"], "x");
  const Point y = point_from_config(system, config["y"], "y");
  std::vector<std::int64_t> ns;
  if (config.contains("n")) {
    ns.push_back(config["n"].get<std::int64_t>());
  } else {
    ns = config["checkpoints"].get<std::vector<std::int64_t>>();
  }
  const bool with_delta = config.contains("delta");
  std::vector<std::string> columns{"n", "ebar_n", "besicovitch_n"};
  if (with_delta) columns.push_back("delta_n");
  std::vector<std::vector<double>> rows;
  for (auto n : ns) {
    std::vector<double> row{static_cast<double>(n), ebar_n(system, x, y, n), besicovitch_n(system, x, y, n)};
    if (with_delta) row.push_back(static_cast<double>(delta_n(system, x, y, n, config["delta"].get<double>())));
    rows.push_back(std::move(row));
  }
  DiagnosticReport r;
  r.name = "pair";
  r.parameters = Json{{"system", config["system"]}};
  r.columns = columns;
  r.rows = rows;
  if (config["format"] == "json") {
    Json j = report_to_json(r, config);
    j.erase("verdict");
    j.erase("witnesses");
    j.erase("summary");
    emit(config, j.dump(2) + "\n", out);
  } else {
    std::string text = "# metric=pair system=" + config["system"].dump() + "\n# config=" + config.dump() + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) text += (c ? "," : "") + columns[c];
    text += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) text += (c ? "," : "") + format_number(row[c]);
      text += "\n";
    }
    emit(config, text, out);
  }
  return kExitOk;
}

int finish(const DiagnosticReport& r, const Json& config, std::ostream& out) {
  emit(config, render_report(r, config), out);
  return config.value("strict", false) && r.verdict == Verdict::Violated ? kExitViolated : kExitOk;
}

int run_command(const Json& config, std::ostream& out) {
  const std::string cmd = config["command"];
  const auto seed = config["seed"].get<std::uint64_t>();
  if (cmd == "selftest") {
    std::ostringstream text;
    bool ok = true;
    if (config.contains("criterion")) {
      const auto r = run_criterion(config["criterion"].get<int>());
      text << format_result(r) << '\n';
      ok = r.passed;
    } else {
      for (const auto& r : run_acceptance(config.value("output", "").empty() ? &out : nullptr)) {
        if (!config.value("output", "").empty()) text << format_result(r) << '\n';
        ok &= r.passed;
      }
    }
    emit(config, text.str(), out);
    return ok ? kExitOk : kExitViolated;
  }
  if (cmd == "example31") {
    Example31Config c;
    const int blocks = config["blocks"].get<int>();
    if (config.contains("a")) {
      c.block_rule = config["a"].get<std::vector<std::int64_t>>();
      c.n_blocks = blocks;
    } else {
      c = Example31Config::factorial(blocks);
    }
    c.shift_horizon = config["shift_horizon"].get<int>();
    c.cluster_tol = config["cluster_tol"].get<double>();
    return finish(example31_report(c), config, out);
  }
  if (cmd == "pair") return run_pair(config, out);

  const SystemSpec system = system_from_json(config["system"]);
  const Schedule schedule = schedule_from(config);
  const auto samples = config["samples"].get<std::size_t>();
  if (cmd == "modulus") {
    return finish(continuity_modulus(system, config["delta"].get<double>(), samples, schedule, seed), config, out);
  }
  if (cmd == "ue") return finish(unique_ergodicity_diagnostic(system, samples, schedule, seed), config, out);
  if (cmd == "birkhoff") {
    return finish(birkhoff_profile(system, config["observable"].get<std::string>(), samples, schedule, seed),
                  config, out);
  }
  if (cmd == "meaneq") {
    return finish(mean_equicontinuity_diagnostic(system, config["delta"].get<double>(), samples, schedule, seed),
                  config, out);
  }
  fail(ErrorKind::InvalidArgument, "unknown command '" + cmd + "'");
}

}  // namespace

Json parse_config(const std::vector<std::string>& args) {
  std::string help;
  try {
    return build_config(parse_args(args, help));
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::InvalidArgument, e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string help;
  try {
    const Parsed parsed = parse_args(args, help);
    const Json config = build_config(parsed);
    return run_command(config, out);
  } catch (const CLI::CallForHelp&) {
    out << help;
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ORBITMETRIC_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << help;
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error (invalid-argument): " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace orbitmetric
