#include "rqichan/cli/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>

#include "rqichan/optimize/sweep.hpp"

namespace rqichan::cli {

namespace {

const std::vector<std::string> kCommon = {"output", "format", "threads", "eps", "tail-mass", "k-max",
                                          "series-eps", "max-terms"};

struct CommandSpec {
  Command command;
  const char* help;
  std::vector<std::string> keys;
};

const std::vector<CommandSpec>& specs() {
  static const std::vector<CommandSpec> s = {
      {Command::capacity, "Holevo or coherent information against squeezing",
       {"rail", "payload", "method", "r", "r-grid", "a", "omega", "q-r", "alpha2"}},
      {Command::fidelity, "fidelity between Rob's images of logical 0 and 1",
       {"rail", "method", "r", "r-grid", "a", "omega"}},
      {Command::fisher, "amplitude-estimation Fisher information",
       {"setup", "method", "r", "r-grid", "a", "omega", "theta", "theta-grid"}},
      {Command::noon, "NOON-state phase-estimation Fisher information",
       {"N", "n-grid", "rail", "r", "r-grid", "a", "omega", "theta"}},
      {Command::sweep, "one quantity over a grid of (r, q_R, alpha2)",
       {"quantity", "rail", "r", "r-grid", "q-r", "q-grid", "alpha2", "alpha2-grid"}},
      {Command::optimize, "Holevo information maximised over (alpha2, q_R)",
       {"r", "r-grid", "a", "omega", "coarse-step", "fine-step"}},
      {Command::verify, "run the invariant suites", {}},
  };
  return s;
}

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> h = {
      {"rail", "single | dual (default single)"},
      {"payload", "classical | quantum (default classical)"},
      {"method", "closed | numeric"},
      {"setup", "single_rob | dual_rob | single_joint | dual_joint | classical_joint"},
      {"quantity", "holevo | coherent | fidelity (default holevo)"},
      {"r", "squeezing parameter"},
      {"r-grid", "start:stop:step over r"},
      {"a", "Rob's acceleration, converted with tanh r = exp(-pi omega / a)"},
      {"omega", "mode frequency for --a (default 1)"},
      {"q-r", "right-wedge weight q_R in [0,1] (default 1)"},
      {"q-grid", "start:stop:step over q_R"},
      {"alpha2", "probability of logical 0 (default 0.5)"},
      {"alpha2-grid", "start:stop:step over alpha2"},
      {"theta", "encoded parameter"},
      {"theta-grid", "start:stop:step over theta"},
      {"N", "excitation number"},
      {"n-grid", "start:stop:step over N"},
      {"coarse-step", "first grid step over (alpha2, q_R) (default 0.05)"},
      {"fine-step", "refinement step (default 0.005)"},
      {"output", "write here instead of stdout"},
      {"format", "csv | json (default csv)"},
      {"threads", "worker threads, 0 = RQICHAN_THREADS or all cores"},
      {"eps", "relative change that stops the cutoff search (default 1e-6)"},
      {"tail-mass", "squeezing tail mass that picks the first cutoff (default 1e-7)"},
      {"k-max", "largest cutoff tried per mode (default 20000)"},
      {"series-eps", "series stopping tolerance (default 1e-10)"},
      {"max-terms", "series term budget (default 100000)"},
  };
  return h;
}

const CommandSpec& spec_for(Command c) {
  for (const auto& s : specs()) {
    if (s.command == c) return s;
  }
  throw std::logic_error("unknown command");
}

double to_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) {
    throw UsageError("--" + key + ": '" + text + "' is not a finite number");
  }
  return v;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::capacity: return "capacity";
    case Command::fidelity: return "fidelity";
    case Command::fisher: return "fisher";
    case Command::noon: return "noon";
    case Command::sweep: return "sweep";
    case Command::optimize: return "optimize";
    case Command::verify: return "verify";
  }
  return "?";
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double RunConfig::number(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : to_number(key, it->second);
}

long RunConfig::integer(const std::string& key, long fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  long v = 0;
  const std::string& t = it->second;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw UsageError("--" + key + ": '" + t + "' is not an integer");
  return v;
}

const std::vector<std::string>& command_keys(Command c) {
  static std::map<Command, std::vector<std::string>> cache;
  auto it = cache.find(c);
  if (it != cache.end()) return it->second;
  std::vector<std::string> keys = spec_for(c).keys;
  keys.insert(keys.end(), kCommon.begin(), kCommon.end());
  return cache.emplace(c, std::move(keys)).first->second;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {to_number("grid", parts[0])};
  if (parts.size() != 3) throw UsageError("grid '" + spec + "' must look like start:stop:step");
  try {
    return optimize::make_grid(to_number("grid", parts[0]), to_number("grid", parts[1]), to_number("grid", parts[2]));
  } catch (const std::invalid_argument& e) {
    throw UsageError("grid '" + spec + "': " + e.what());
  }
}

std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& help) {
  std::string usage = "usage: rqichan <command> [options]\ncommands:\n";
  for (const auto& s : specs()) usage += "  " + std::string(command_name(s.command)) + "  " + s.help + "\n";
  if (argc < 2) throw UsageError("missing command\n" + usage);
  const std::string name = argv[1];
  if (name == "-h" || name == "--help") {
    help << usage;
    return std::nullopt;
  }
  const CommandSpec* spec = nullptr;
  for (const auto& s : specs()) {
    if (command_name(s.command) == name) spec = &s;
  }
  if (!spec) throw UsageError("unknown command '" + name + "'\n" + usage);

  CLI::App app{spec->help, "rqichan " + name};
  app.set_config("--config", "", "key=value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  for (const auto& key : command_keys(spec->command)) {
    opts[key] = app.add_option("--" + key, values[key], key_help().at(key));
  }

  std::vector<const char*> rest(argv + 1, argv + argc);
  rest[0] = argv[0];
  try {
    app.parse(static_cast<int>(rest.size()), rest.data());
  } catch (const CLI::CallForHelp&) {
    help << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  cfg.command = spec->command;
  for (const auto& [key, opt] : opts) {
    if (opt->count() == 0) continue;
    if (key == "output") {
      cfg.output = values[key];
    } else if (key == "format") {
      if (values[key] == "csv") {
        cfg.format = Format::csv;
      } else if (values[key] == "json") {
        cfg.format = Format::json;
      } else {
        throw UsageError("--format must be csv or json");
      }
    } else {
      cfg.params[key] = values[key];
    }
  }
  return cfg;
}

}  // namespace rqichan::cli
