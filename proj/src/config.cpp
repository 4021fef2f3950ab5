#include <spinwire/config.hpp>

#include <spinwire/io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace spinwire {

std::string to_string(Command command) {
  switch (command) {
    case Command::spectrum: return "spectrum";
    case Command::evolve: return "evolve";
    case Command::fidelity: return "fidelity";
    case Command::sweep: return "sweep";
    case Command::optimize: return "optimize";
    case Command::bscan: return "bscan";
    case Command::verify: return "verify";
  }
  return "?";
}

std::string to_string(FidelityMethod method) {
  return method == FidelityMethod::exact ? "exact" : "analytic";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

namespace {

std::string trimmed(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

Real parse_real(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  Real value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (...) {
    pos = std::string::npos;
  }
  if (text.empty() || pos != text.size()) {
    throw UsageError(key + ": cannot parse '" + text + "' as a number");
  }
  return value;
}

long parse_long(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(text, &pos);
  } catch (...) {
    pos = std::string::npos;
  }
  if (text.empty() || pos != text.size()) {
    throw UsageError(key + ": cannot parse '" + text + "' as an integer");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (...) {
    pos = std::string::npos;
  }
  if (text.empty() || pos != text.size()) {
    throw UsageError(key + ": cannot parse '" + text + "' as an unsigned integer");
  }
  return value;
}

std::vector<Real> parse_real_list(const std::string& key, const std::string& text) {
  std::vector<Real> out;
  if (trimmed(text).empty()) return out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_real(key, trimmed(item)));
  return out;
}

struct FieldBinder {
  std::string key;
  std::string description;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

FieldBinder real_binder(std::string key, std::string desc, Real RunConfig::*member) {
  FieldBinder binder{std::move(key), std::move(desc), {}, {}};
  const std::string k = binder.key;
  binder.set = [k, member](RunConfig& c, const std::string& v) { c.*member = parse_real(k, v); };
  binder.get = [member](const RunConfig& c) { return format_double(c.*member); };
  return binder;
}

FieldBinder long_binder(std::string key, std::string desc, long RunConfig::*member) {
  FieldBinder binder{std::move(key), std::move(desc), {}, {}};
  const std::string k = binder.key;
  binder.set = [k, member](RunConfig& c, const std::string& v) { c.*member = parse_long(k, v); };
  binder.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
  return binder;
}

FieldBinder u64_binder(std::string key, std::string desc, std::uint64_t RunConfig::*member) {
  FieldBinder binder{std::move(key), std::move(desc), {}, {}};
  const std::string k = binder.key;
  binder.set = [k, member](RunConfig& c, const std::string& v) { c.*member = parse_u64(k, v); };
  binder.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
  return binder;
}

FieldBinder string_binder(std::string key, std::string desc, std::string RunConfig::*member) {
  FieldBinder binder{std::move(key), std::move(desc), {}, {}};
  binder.set = [member](RunConfig& c, const std::string& v) { c.*member = v; };
  binder.get = [member](const RunConfig& c) { return c.*member; };
  return binder;
}

FieldBinder list_binder(std::string key, std::string desc, std::vector<Real> RunConfig::*member) {
  FieldBinder binder{std::move(key), std::move(desc), {}, {}};
  const std::string k = binder.key;
  binder.set = [k, member](RunConfig& c, const std::string& v) {
    c.*member = parse_real_list(k, v);
  };
  binder.get = [member](const RunConfig& c) { return format_real_list(c.*member); };
  return binder;
}

FieldBinder method_binder() {
  FieldBinder binder{"method", "fidelity method: exact | analytic", {}, {}};
  binder.set = [](RunConfig& c, const std::string& v) {
    if (v == "exact") {
      c.method = FidelityMethod::exact;
    } else if (v == "analytic") {
      c.method = FidelityMethod::analytic;
    } else {
      throw UsageError("method: expected 'exact' or 'analytic', got '" + v + "'");
    }
  };
  binder.get = [](const RunConfig& c) { return to_string(c.method); };
  return binder;
}

FieldBinder format_binder() {
  FieldBinder binder{"format", "output format: csv | json", {}, {}};
  binder.set = [](RunConfig& c, const std::string& v) {
    if (v == "csv") {
      c.format = OutputFormat::csv;
    } else if (v == "json") {
      c.format = OutputFormat::json;
    } else {
      throw UsageError("format: expected 'csv' or 'json', got '" + v + "'");
    }
  };
  binder.get = [](const RunConfig& c) { return to_string(c.format); };
  return binder;
}

std::vector<FieldBinder> binders_for(Command command) {
  std::vector<FieldBinder> binders;
  binders.push_back(long_binder("n", "number of sites N", &RunConfig::n));
  binders.push_back(real_binder("j", "exchange coupling J", &RunConfig::j));
  binders.push_back(real_binder("d", "Dzyaloshinskii-Moriya coupling D", &RunConfig::d));
  binders.push_back(real_binder("b", "uniform magnetic field B", &RunConfig::b));
  binders.push_back(
      list_binder("field", "per-site field B_1,...,B_N; overrides b", &RunConfig::field));
  binders.push_back(
      real_binder("alpha", "time-scale factor in exp(-i alpha H t)", &RunConfig::alpha));

  const auto add_t_grid = [&binders] {
    binders.push_back(real_binder("t-min", "first grid time", &RunConfig::t_min));
    binders.push_back(real_binder("t-max", "last grid time", &RunConfig::t_max));
    binders.push_back(long_binder("t-steps", "number of grid times", &RunConfig::t_steps));
  };

  switch (command) {
    case Command::spectrum:
      break;
    case Command::evolve:
      add_t_grid();
      binders.push_back(long_binder("site-in", "site carrying the excitation at t = 0",
                                    &RunConfig::site_in));
      binders.push_back(long_binder("site-out", "site whose amplitude is reported (default N)",
                                    &RunConfig::site_out));
      break;
    case Command::fidelity:
      binders.push_back(method_binder());
      add_t_grid();
      binders.push_back(
          long_binder("nodes", "initial quadrature node count", &RunConfig::nodes));
      binders.push_back(
          real_binder("quad-tol", "quadrature refinement tolerance", &RunConfig::quad_tol));
      binders.push_back(
          long_binder("max-refine", "maximum node doublings", &RunConfig::max_refine));
      break;
    case Command::sweep:
      add_t_grid();
      binders.push_back(real_binder("d-min", "first D value", &RunConfig::d_min));
      binders.push_back(real_binder("d-max", "last D value", &RunConfig::d_max));
      binders.push_back(long_binder("d-steps", "number of D values", &RunConfig::d_steps));
      break;
    case Command::optimize:
      binders.push_back(real_binder("t-min", "lower end of the t search range", &RunConfig::t_min));
      binders.push_back(real_binder("t-max", "upper end of the t search range", &RunConfig::t_max));
      binders.push_back(real_binder("d-min", "lower end of the D search range", &RunConfig::d_min));
      binders.push_back(real_binder("d-max", "upper end of the D search range", &RunConfig::d_max));
      binders.push_back(long_binder("budget", "maximum fidelity evaluations", &RunConfig::budget));
      break;
    case Command::bscan:
      binders.push_back(
          list_binder("b-list", "uniform field values to scan", &RunConfig::b_list));
      add_t_grid();
      break;
    case Command::verify:
      binders.push_back(long_binder("n-max", "largest chain length tested", &RunConfig::n_max));
      binders.push_back(long_binder("sets", "number of random parameter sets", &RunConfig::sets));
      binders.push_back(long_binder("times", "random times per set", &RunConfig::times));
      binders.push_back(real_binder("tol", "amplitude agreement tolerance", &RunConfig::tol));
      break;
  }

  binders.push_back(u64_binder("seed", "seed for randomized verification states", &RunConfig::seed));
  binders.push_back(format_binder());
  binders.push_back(string_binder("output", "output path (empty = stdout)", &RunConfig::output));
  return binders;
}

std::string env_name_for(const std::string& key) {
  std::string name = "SPINWIRE_";
  for (const char c : key) {
    name += (c == '-') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::map<std::string, std::string> pairs;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) {
      throw UsageError("config: line " + std::to_string(lineno) + " has an empty key");
    }
    if (!pairs.emplace(key, value).second) {
      throw UsageError("config: duplicate key '" + key + "'");
    }
  }
  return pairs;
}

OutputFormat default_format(Command command) {
  switch (command) {
    case Command::optimize:
    case Command::bscan:
    case Command::verify:
      return OutputFormat::json;
    default:
      return OutputFormat::csv;
  }
}

void validate(const RunConfig& cfg) {
  (void)cfg.chain_params();  // field invariants; error messages name the field

  const bool has_t_grid = cfg.command == Command::evolve || cfg.command == Command::fidelity ||
                          cfg.command == Command::sweep || cfg.command == Command::bscan;
  if (has_t_grid) {
    if (cfg.t_steps < 1) throw InvalidParams("t_steps: must be >= 1");
    if (!(cfg.t_max >= cfg.t_min)) throw InvalidParams("t_max: must be >= t_min");
    if (cfg.t_steps > 1 && !(cfg.t_max > cfg.t_min)) {
      throw InvalidParams("t_max: must be > t_min when t_steps > 1");
    }
  }

  switch (cfg.command) {
    case Command::spectrum:
      break;
    case Command::evolve:
      if (cfg.site_in < 1 || cfg.site_in > cfg.n) {
        throw InvalidParams("site_in: must lie in [1, n_sites]");
      }
      if (cfg.site_out < 1 || cfg.site_out > cfg.n) {
        throw InvalidParams("site_out: must lie in [1, n_sites]");
      }
      break;
    case Command::fidelity:
      if (cfg.method == FidelityMethod::analytic) cfg.quadrature_spec().validate();
      break;
    case Command::sweep:
      if (cfg.d_steps < 1) throw InvalidParams("d_steps: must be >= 1");
      if (!(cfg.d_max >= cfg.d_min)) throw InvalidParams("d_max: must be >= d_min");
      if (cfg.d_steps > 1 && !(cfg.d_max > cfg.d_min)) {
        throw InvalidParams("d_max: must be > d_min when d_steps > 1");
      }
      break;
    case Command::optimize:
      if (!(cfg.t_max > cfg.t_min)) throw InvalidParams("t_max: must be > t_min");
      if (!(cfg.d_max >= cfg.d_min)) throw InvalidParams("d_max: must be >= d_min");
      if (cfg.budget < 100) throw InvalidParams("budget: must be >= 100");
      break;
    case Command::bscan:
      if (cfg.b_list.empty()) throw InvalidParams("b_list: must be non-empty");
      break;
    case Command::verify:
      if (cfg.n_max < 2 || cfg.n_max > 14) throw InvalidParams("n_max: must lie in [2, 14]");
      if (cfg.sets < 1) throw InvalidParams("sets: must be >= 1");
      if (cfg.times < 1) throw InvalidParams("times: must be >= 1");
      if (!(cfg.tol > 0.0)) throw InvalidParams("tol: must be > 0");
      break;
  }

  if (cfg.format == OutputFormat::csv &&
      (cfg.command == Command::optimize || cfg.command == Command::bscan ||
       cfg.command == Command::verify)) {
    throw InvalidParams("format: " + to_string(cfg.command) + " reports are json only");
  }
}

}  // namespace

ChainParams RunConfig::chain_params() const {
  if (field.empty()) return ChainParams::uniform(n, j, d, b, alpha);
  RealVector values(static_cast<Index>(field.size()));
  for (std::size_t i = 0; i < field.size(); ++i) values[static_cast<Index>(i)] = field[i];
  return ChainParams(n, j, d, FieldProfile(std::move(values)), alpha);
}

RealVector RunConfig::t_axis() const { return linspace(t_min, t_max, t_steps); }

RealVector RunConfig::d_axis() const { return linspace(d_min, d_max, d_steps); }

QuadratureSpec RunConfig::quadrature_spec() const {
  return QuadratureSpec{nodes, quad_tol, max_refine};
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;

  CLI::App app{"spin-chain state transfer: exact spectral dynamics, the continuum "
               "fidelity integral, sweeps and a brute-force verifier"};
  app.name("spinwire");
  app.require_subcommand(1);

  struct CommandEntry {
    Command command;
    CLI::App* sub = nullptr;
    std::vector<FieldBinder> binders;
    std::vector<CLI::Option*> options;
    std::string config_path;
  };
  std::vector<CommandEntry> entries;
  entries.reserve(7);

  constexpr std::pair<Command, const char*> kCommands[] = {
      {Command::spectrum, "exact eigenvalues (CSV: k,eigenvalue)"},
      {Command::evolve, "site-to-site amplitude over a time grid (CSV: t,F_re,F_im,F_abs)"},
      {Command::fidelity, "transfer fidelity F(t), exact or analytic"},
      {Command::sweep, "fidelity magnitudes over a (t, D) grid (CSV: t,D,F_abs)"},
      {Command::optimize, "grid-refinement maximization of |F| over (t, D) (JSON)"},
      {Command::bscan, "pairwise |F| deviations across uniform field values (JSON)"},
      {Command::verify, "full-space vs single-excitation equivalence suite (JSON)"},
  };

  for (const auto& [command, description] : kCommands) {
    entries.push_back(CommandEntry{command, nullptr, binders_for(command), {}, ""});
    CommandEntry& entry = entries.back();
    entry.sub = app.add_subcommand(to_string(command), description);
    for (const FieldBinder& binder : entry.binders) {
      const auto set = binder.set;
      entry.options.push_back(entry.sub->add_option_function<std::string>(
          "--" + binder.key,
          [&cfg, set](const std::string& value) { set(cfg, value); },
          binder.description));
    }
    entry.sub->add_option("--config", entry.config_path,
                          "flat 'key = value' config file ('#' comments)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    for (const CommandEntry& entry : entries) {
      if (entry.sub->parsed()) throw HelpRequested{entry.sub->help()};
    }
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CommandEntry* active = nullptr;
  for (CommandEntry& entry : entries) {
    if (entry.sub->parsed()) active = &entry;
  }
  if (active == nullptr) throw UsageError("missing subcommand");
  cfg.command = active->command;

  // Merge precedence: flags already applied; then environment, then file.
  std::map<std::string, std::string> file_pairs;
  if (!active->config_path.empty()) file_pairs = read_config_file(active->config_path);

  std::set<std::string> known;
  std::set<std::string> resolved;
  for (std::size_t i = 0; i < active->binders.size(); ++i) {
    const FieldBinder& binder = active->binders[i];
    known.insert(binder.key);
    if (active->options[i]->count() > 0) {
      resolved.insert(binder.key);
      continue;
    }
    if (const char* env = std::getenv(env_name_for(binder.key).c_str())) {
      binder.set(cfg, env);
      resolved.insert(binder.key);
      continue;
    }
    const auto in_file = file_pairs.find(binder.key);
    if (in_file != file_pairs.end()) {
      binder.set(cfg, in_file->second);
      resolved.insert(binder.key);
    }
  }
  for (const auto& [key, value] : file_pairs) {
    if (!known.contains(key)) throw UsageError("config: unknown key '" + key + "'");
  }

  if (!resolved.contains("format")) cfg.format = default_format(cfg.command);
  if (cfg.command == Command::evolve && !resolved.contains("site-out")) cfg.site_out = cfg.n;

  validate(cfg);
  return cfg;
}

std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const FieldBinder& binder : binders_for(config.command)) {
    pairs.emplace_back(binder.key, binder.get(config));
  }
  return pairs;
}

}  // namespace spinwire
