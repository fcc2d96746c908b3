#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdeco/cli/config.hpp"

namespace qdeco::cli {

inline constexpr std::string_view kVersion = "0.1.0";

using Cell = std::variant<double, std::string, bool>;

struct RunReport {
  Command command;
  nlohmann::json scenario;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary = nlohmann::json::object();
  double wall_time_seconds = 0;
  bool record_wall_time = false;
};

/// Runs one scenario. Library errors propagate as qdeco::Error.
RunReport run(const ScenarioConfig& config);

/// Header row, then one line per row; numbers in shortest round-trip form.
void write_csv(const RunReport& report, std::ostream& out);

/// {tool, version, command, scenario, columns, rows, summary}; the summary
/// carries wall_time_seconds only when the config opts in.
nlohmann::json report_json(const RunReport& report);

/// Summary scalars as "key = value" lines, six decimals for numbers.
void write_summary(const RunReport& report, std::ostream& out);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::string& path, const std::string& content);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 invalid config, 3 numeric failure, 4 I/O failure).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdeco::cli
