#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "rqichan/cli/config.hpp"

namespace rqichan::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kNotConverged = 2, kInvariant = 3 };

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> comments;  // written as '# ' lines
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> diagnostics;  // one per failed row
  bool converged = true;
  bool invariants_ok = true;
};

/// 12 significant digits, shortest form (printf %.12g), "nan"/"inf" spelled out.
std::string format_number(double v);

Table execute(const RunConfig& config);
std::string render(const Table& table, Format format);

/// Parses, executes and writes; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant checks across all modules (seconds).
std::vector<SuiteResult> run_verify_suites();

}  // namespace rqichan::cli
