#include "geopump/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "geopump/asymptotics.hpp"
#include "geopump/band_model.hpp"
#include "geopump/errors.hpp"
#include "geopump/loop_evolution.hpp"
#include "geopump/parallel.hpp"
#include "geopump/rng.hpp"
#include "geopump/stability.hpp"
#include "geopump/verify.hpp"

namespace geopump {

namespace {

constexpr Command kAllCommands[] = {Command::Simulate, Command::Asymptote,
                                    Command::PhaseDiagram, Command::BandScan,
                                    Command::Verify};

// Slack on angle range checks so that decimal renderings of pi/2 etc. pass.
constexpr double kAngleSlack = 1e-9;

std::string to_flag(std::string name) {
  for (char& ch : name) {
    if (ch == '_') ch = '-';
  }
  return name;
}

std::string to_key(std::string name) {
  for (char& ch : name) {
    if (ch == '-') ch = '_';
  }
  return name;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--" + to_flag(what) + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError("--" + to_flag(what) + ": not a finite number: '" + text + "'");
  }
  return value;
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("--format must be csv or json, got '" + name + "'");
}

std::string_view format_name(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

double param(const RunConfig& cfg, const char* name) {
  return cfg.params.at(name).get<double>();
}

std::size_t count_param(const RunConfig& cfg, const char* name) {
  return cfg.params.at(name).get<std::size_t>();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void check_ranges(const RunConfig& cfg) {
  const auto in = [&](const char* name, double lo, double hi) {
    const double v = param(cfg, name);
    require(v >= lo - kAngleSlack && v <= hi + kAngleSlack,
            "--" + to_flag(name) + " = " + format_number(v) + " outside [" +
                format_number(lo) + ", " + format_number(hi) + "]");
  };
  const auto at_least = [&](const char* name, double lo) {
    const double v = param(cfg, name);
    require(v >= lo, "--" + to_flag(name) + " must be >= " + format_number(lo));
  };

  switch (cfg.command) {
    case Command::Simulate:
      in("theta", 0.0, kPi);
      in("omega", 0.0, kTwoPi);
      in("phi", -0.5 * kPi, 0.5 * kPi);
      at_least("cycles", 1);
      break;
    case Command::Asymptote:
      in("omega", 0.0, kTwoPi);
      at_least("theta_grid", 2);
      at_least("phi_grid", 2);
      break;
    case Command::PhaseDiagram:
      at_least("theta_grid", 2);
      at_least("phi_grid", 2);
      at_least("n_max", 1);
      require(param(cfg, "tol") > 0.0, "--tol must be > 0");
      in("boundary", 0, 1);
      break;
    case Command::BandScan:
      require(param(cfg, "omega") > 0.0, "--omega must be > 0");
      require(param(cfg, "w") != 0.0, "--w must be nonzero");
      require(param(cfg, "l") > 0.0, "--l must be > 0");
      at_least("k_grid", 16);
      at_least("time_samples", 8);
      break;
    case Command::Verify:
      break;
  }
}

std::runtime_error module_failure(const RunConfig& cfg, const std::exception& e) {
  return std::runtime_error(std::string(command_name(cfg.command)) + " failed: " + e.what() +
                            " (params: " + cfg.params.dump() + ")");
}

ResultTable run_simulate(const RunConfig& cfg) {
  const LoopParams lp{param(cfg, "theta"), param(cfg, "omega"), param(cfg, "phi")};
  const PumpTrace trace = pump_trace(lp, count_param(cfg, "cycles"));
  ResultTable t;
  t.columns = {"j", "q", "p"};
  t.rows.reserve(trace.cycles());
  for (std::size_t j = 0; j < trace.cycles(); ++j) {
    t.add_row({static_cast<double>(j + 1), trace.q[j], trace.p[j]});
  }
  return t;
}

ResultTable run_asymptote(const RunConfig& cfg) {
  const double omega = param(cfg, "omega");
  std::vector<std::pair<double, double>> points;
  if (const std::size_t samples = count_param(cfg, "samples"); samples > 0) {
    CounterRng rng(cfg.seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const double theta = rng.uniform(0.0, kPi);
      const double phi = rng.uniform(-0.5 * kPi, 0.5 * kPi);
      points.emplace_back(theta, phi);
    }
  } else {
    const std::size_t nt = count_param(cfg, "theta_grid");
    const std::size_t np = count_param(cfg, "phi_grid");
    for (std::size_t i = 0; i < nt; ++i) {
      for (std::size_t j = 0; j < np; ++j) {
        points.emplace_back((i + 0.5) * kPi / static_cast<double>(nt),
                            -0.5 * kPi + (j + 0.5) * kPi / static_cast<double>(np));
      }
    }
  }

  std::vector<std::vector<double>> rows(points.size());
  parallel_for_index(points.size(), cfg.threads, [&](std::size_t i) {
    const auto [theta, phi] = points[i];
    const LoopParams lp{theta, omega, phi};
    rows[i] = {theta, phi, p_infinity(lp), p_infinity_axis_route(lp), p_geometric(theta)};
  });
  ResultTable t;
  t.columns = {"theta", "phi", "p_inf", "p_inf_axis", "p_g"};
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

ResultTable run_phase_diagram(const RunConfig& cfg) {
  PhaseDiagramSpec spec;
  spec.theta_cells = count_param(cfg, "theta_grid");
  spec.phi_cells = count_param(cfg, "phi_grid");
  spec.n_max = count_param(cfg, "n_max");
  spec.tol = param(cfg, "tol");
  spec.include_boundary = count_param(cfg, "boundary") != 0;
  spec.threads = cfg.threads;
  const PhaseDiagram d = phase_diagram(spec);

  ResultTable t;
  t.columns = {"theta", "phi", "stable", "order", "marginal", "boundary"};
  for (std::size_t r = 0; r < d.theta.size(); ++r) {
    for (std::size_t c = 0; c < d.phi.size(); ++c) {
      const auto& v = d.at(r, c);
      t.add_row({d.theta[r], d.phi[c], v.stable() ? 1.0 : 0.0,
                 static_cast<double>(v.stable() ? v.order : 0), v.marginal ? 1.0 : 0.0,
                 d.is_boundary(r, c) ? 1.0 : 0.0});
    }
  }
  t.metadata["interior_stable_fraction"] = d.interior_stable_fraction();
  return t;
}

ResultTable run_band_scan(const RunConfig& cfg) {
  DriveCycle dc;
  dc.a = param(cfg, "a");
  dc.omega = param(cfg, "omega");
  dc.w = param(cfg, "w");
  dc.l = param(cfg, "l");
  dc.time_samples = count_param(cfg, "time_samples");
  const PumpProfile prof = pump_profile(dc, count_param(cfg, "k_grid"), cfg.threads);

  ResultTable t;
  t.columns = {"k", "theta_k", "p_g"};
  for (std::size_t j = 0; j < prof.k_values.size(); ++j) {
    t.add_row({prof.k_values[j], prof.theta_of_k[j], prof.p_g_of_k[j]});
  }
  t.metadata["tpt_count"] = prof.tpt_count;
  const auto events = tpt_events(dc);
  const auto flips = winding_flips(dc, events);
  nlohmann::json ev = nlohmann::json::array();
  for (std::size_t i = 0; i < events.size(); ++i) {
    ev.push_back({{"time_fraction", events[i].time_fraction},
                  {"k_star", events[i].k_star},
                  {"transversal", events[i].transversal},
                  {"winding_flip", static_cast<bool>(flips[i])}});
  }
  t.metadata["tpt_events"] = ev;
  return t;
}

ResultTable run_verify(const RunConfig& cfg) {
  const auto checks = run_invariant_suite(cfg.seed, cfg.threads);
  ResultTable t;
  t.columns = {"check", "passed", "measured", "threshold"};
  nlohmann::json names = nlohmann::json::array();
  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    t.add_row({static_cast<double>(i), checks[i].passed ? 1.0 : 0.0, checks[i].measured,
               checks[i].threshold});
    names.push_back(checks[i].name);
    all = all && checks[i].passed;
  }
  t.metadata["check_names"] = names;
  t.metadata["all_passed"] = all;
  return t;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Asymptote: return "asymptote";
    case Command::PhaseDiagram: return "phase-diagram";
    case Command::BandScan: return "band-scan";
    case Command::Verify: return "verify";
  }
  return "?";
}

Command command_from_name(std::string_view name) {
  for (Command c : kAllCommands) {
    if (command_name(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<ParamSpec>& param_specs(Command c) {
  static const std::map<Command, std::vector<ParamSpec>> specs = {
      {Command::Simulate,
       {{"theta", kPi / 2, false, "loop opening angle Theta [0, pi]"},
        {"omega", 0.0, false, "loop-plane azimuth Omega [0, 2pi)"},
        {"phi", 0.0, false, "dynamic phase per cycle Phi [-pi/2, pi/2]"},
        {"cycles", 10000, true, "number of cycles n"}}},
      {Command::Asymptote,
       {{"theta_grid", 50, true, "Theta cells (half-cell centres)"},
        {"phi_grid", 50, true, "Phi cells (half-cell centres)"},
        {"omega", 0.0, false, "loop-plane azimuth Omega"},
        {"samples", 0, true, "if > 0, seeded random points instead of the grid"}}},
      {Command::PhaseDiagram,
       {{"theta_grid", 100, true, "interior Theta cells"},
        {"phi_grid", 100, true, "interior Phi cells"},
        {"n_max", 200, true, "largest order searched"},
        {"tol", kDefaultStabilityTol, false, "diagonality tolerance"},
        {"boundary", 1, true, "1 to add the Theta in {0,pi}, Phi = +-pi/2 frame"}}},
      {Command::BandScan,
       {{"a", 1.0, false, "drive offset, v(t) = a + cos(omega t)"},
        {"omega", 1.0, false, "drive angular frequency"},
        {"w", 1.0, false, "inter-cell hopping"},
        {"l", 1.0, false, "lattice constant"},
        {"k_grid", 256, true, "Brillouin-zone samples"},
        {"time_samples", 64, true, "samples per drive cycle"}}},
      {Command::Verify, {}},
  };
  return specs.at(c);
}

RunConfig validated(RunConfig cfg) {
  if (!cfg.params.is_object()) throw ConfigError("params must be an object");
  const auto& specs = param_specs(cfg.command);
  for (const auto& [key, value] : cfg.params.items()) {
    const bool known = std::any_of(specs.begin(), specs.end(),
                                   [&](const ParamSpec& s) { return s.name == key; });
    require(known, "unknown parameter --" + to_flag(key) + " for command " +
                       std::string(command_name(cfg.command)));
    require(value.is_number(), "--" + to_flag(key) + " must be numeric");
  }
  nlohmann::json resolved = nlohmann::json::object();
  for (const auto& s : specs) {
    const double v = cfg.params.contains(s.name) ? cfg.params[s.name].get<double>()
                                                 : s.default_value;
    require(std::isfinite(v), "--" + to_flag(s.name) + " must be finite");
    if (s.integral) {
      require(v >= 0.0 && std::floor(v) == v && v < 9.0e15,
              "--" + to_flag(s.name) + " must be a non-negative integer");
      resolved[s.name] = static_cast<std::uint64_t>(v);
    } else {
      resolved[s.name] = v;
    }
  }
  cfg.params = std::move(resolved);
  require(cfg.threads >= 1, "--threads must be >= 1");
  require(!cfg.output_path.empty(), "--out is required ('-' for stdout)");
  check_ranges(cfg);
  return cfg;
}

namespace {

std::string command_summary(Command c) {
  switch (c) {
    case Command::Simulate: return "pump probabilities q_j and running means p_j for one loop";
    case Command::Asymptote: return "closed-form n -> infinity pumping over a (Theta, Phi) grid";
    case Command::PhaseDiagram: return "stability verdicts on a (Theta, Phi) grid";
    case Command::BandScan: return "per-momentum geometric pumping of the driven two-site chain";
    case Command::Verify: return "run the built-in invariant checks";
  }
  return {};
}

}  // namespace

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"geopump: geometric pumping simulation and verification"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out;
  std::string format;
  std::string seed;
  std::string threads;
  app.add_option("--config", config_path, "JSON file mirroring the flags");
  auto* out_opt = app.add_option("--out", out, "output path, '-' for stdout");
  auto* format_opt = app.add_option("--format", format, "csv or json");
  auto* seed_opt = app.add_option("--seed", seed, "64-bit seed for randomized sampling");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads for sweeps");

  std::map<Command, CLI::App*> subs;
  std::map<Command, std::map<std::string, std::string>> raw;
  for (Command c : kAllCommands) {
    auto* sub = app.add_subcommand(std::string(command_name(c)), command_summary(c));
    sub->fallthrough();
    for (const auto& s : param_specs(c)) {
      sub->add_option("--" + to_flag(s.name), raw[c][s.name], s.help);
    }
    subs[c] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  std::optional<Command> command;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
    nlohmann::json file;
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file '" + config_path + "': " + e.what());
    }
    require(file.is_object(), "config file must hold a JSON object");
    try {
      for (const auto& [raw_key, value] : file.items()) {
        const std::string key = to_key(raw_key);
        if (key == "command") {
          command = command_from_name(value.get<std::string>());
        } else if (key == "out") {
          cfg.output_path = value.get<std::string>();
        } else if (key == "format") {
          cfg.format = format_from_name(value.get<std::string>());
        } else if (key == "seed") {
          cfg.seed = value.get<std::uint64_t>();
        } else if (key == "threads") {
          cfg.threads = value.get<unsigned>();
        } else {
          cfg.params[key] = value;
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file '" + config_path + "': " + e.what());
    }
  }

  for (const auto& [c, sub] : subs) {
    if (sub->parsed()) command = c;
  }
  if (!command) throw ConfigError("no command given; see --help");
  cfg.command = *command;

  for (const auto& [name, text] : raw[cfg.command]) {
    if (subs[cfg.command]->count("--" + to_flag(name)) > 0) {
      cfg.params[name] = parse_number(text, name);
    }
  }
  if (out_opt->count() > 0) cfg.output_path = out;
  if (format_opt->count() > 0) cfg.format = format_from_name(format);
  if (seed_opt->count() > 0) {
    try {
      std::size_t used = 0;
      require(!seed.empty() && seed.front() != '-', "");
      cfg.seed = std::stoull(seed, &used);
      require(used == seed.size(), "");
    } catch (const std::exception&) {
      throw ConfigError("--seed must be an unsigned 64-bit integer");
    }
  }
  if (threads_opt->count() > 0) {
    const double t = parse_number(threads, "threads");
    require(t >= 1 && std::floor(t) == t && t <= 1024, "--threads must be in [1, 1024]");
    cfg.threads = static_cast<unsigned>(t);
  }
  return validated(std::move(cfg));
}

nlohmann::json config_echo(const RunConfig& cfg) {
  return {{"command", command_name(cfg.command)},
          {"params", cfg.params},
          {"seed", cfg.seed},
          {"format", format_name(cfg.format)}};
}

ResultTable run(const RunConfig& cfg) {
  ResultTable t;
  try {
    switch (cfg.command) {
      case Command::Simulate: t = run_simulate(cfg); break;
      case Command::Asymptote: t = run_asymptote(cfg); break;
      case Command::PhaseDiagram: t = run_phase_diagram(cfg); break;
      case Command::BandScan: t = run_band_scan(cfg); break;
      case Command::Verify: t = run_verify(cfg); break;
    }
  } catch (const std::domain_error& e) {
    throw module_failure(cfg, e);
  } catch (const std::invalid_argument& e) {
    throw module_failure(cfg, e);
  }
  t.metadata["config"] = config_echo(cfg);
  t.metadata["artifact"] = kArtifactName;
  t.metadata["version"] = kArtifactVersion;
  return t;
}

void emit(const ResultTable& table, const RunConfig& cfg) {
  if (cfg.output_path == "-") {
    std::cout << (cfg.format == OutputFormat::Csv ? to_csv(table) : to_json(table));
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  write_table(table, cfg.output_path, cfg.format);
}

}  // namespace geopump
