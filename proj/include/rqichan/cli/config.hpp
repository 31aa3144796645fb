#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rqichan::cli {

enum class Command { capacity, fidelity, fisher, noon, sweep, optimize, verify };
enum class Format { csv, json };

std::string_view command_name(Command c);

struct RunConfig {
  Command command = Command::verify;
  std::map<std::string, std::string> params;  // option name without dashes -> value
  std::string output;                         // empty -> stdout
  Format format = Format::csv;

  bool has(const std::string& key) const { return params.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
};

/// Bad flags, bad values, or a parameter that does not belong to the command.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Keys each command accepts (common ones included).
const std::vector<std::string>& command_keys(Command c);

/// Parses `rqichan <command> [flags]`. A `--config file` of key=value lines is
/// read first and flags override it. Returns nullopt after printing help.
std::optional<RunConfig> parse_run_config(int argc, const char* const* argv, std::ostream& help);

/// "start:stop:step" or a single number.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace rqichan::cli
