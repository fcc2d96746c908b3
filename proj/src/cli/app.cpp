#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "qdeco/cli/run.hpp"

namespace qdeco::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string_view describe(Command command) {
  switch (command) {
    case Command::ChannelSweep: return "Entanglement and coherence measures across a channel parameter";
    case Command::Esd: return "First parameter where entanglement vanishes (scan, then bisection)";
    case Command::Thermal: return "Finite-temperature steady-state concurrence over an n_bar grid";
    case Command::Collision: return "Coherence decay against the number of scattering collisions";
    case Command::Spatial: return "Spatial decoherence rate against separation";
    case Command::EmSweep: return "Oscillator/field negativity against detuning and time";
    case Command::Protect: return "Negativity and success probability of protection schemes under CAD";
    case Command::Schema: return "Print the config schema with defaults";
  }
  return "";
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence and entanglement scenarios for small open quantum systems", "qdeco"};
  std::string config_path;
  std::string out_csv;
  std::string out_json;
  bool quiet = false;
  app.add_option("--config", config_path, "Scenario JSON file");
  app.add_option("--out-csv", out_csv, "Result table (default: standard output)");
  app.add_option("--out-json", out_json, "Full report with scenario echo and summary");
  app.add_flag("--quiet", quiet, "Suppress the summary and timing lines");
  app.set_version_flag("--version", std::string(kVersion));
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.footer("Exit codes: 0 ok, 2 invalid config, 3 numeric failure, 4 I/O failure.");
  for (Command c : {Command::ChannelSweep, Command::Esd, Command::Thermal, Command::Collision, Command::Spatial,
                    Command::EmSweep, Command::Protect, Command::Schema}) {
    app.add_subcommand(std::string(to_string(c)), std::string(describe(c)));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::optional<Command> command;
  if (!app.get_subcommands().empty()) command = parse_command(app.get_subcommands().front()->get_name());

  try {
    if (command == Command::Schema) {
      const std::string text = config_schema().dump(2) + "\n";
      if (out_json.empty()) {
        out << text;
      } else {
        write_file_atomically(out_json, text);
      }
      return kExitOk;
    }
    if (config_path.empty()) {
      err << "error: --config is required\n";
      return kExitConfig;
    }

    ScenarioConfig config = parse_config_text(read_file(config_path), command);
    if (config.command == Command::Schema) {
      out << config_schema().dump(2) << '\n';
      return kExitOk;
    }
    if (!out_csv.empty()) config.out_csv = out_csv;
    if (!out_json.empty()) config.out_json = out_json;

    const RunReport report = run(config);

    std::ostringstream csv;
    write_csv(report, csv);
    if (config.out_csv) {
      write_file_atomically(*config.out_csv, csv.str());
    } else {
      out << csv.str();
    }
    if (config.out_json) write_file_atomically(*config.out_json, report_json(report).dump(2) + "\n");
    if (!quiet) {
      write_summary(report, err);
      err << "wall_time_seconds = " << std::fixed << std::setprecision(3) << report.wall_time_seconds << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O failure: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace qdeco::cli
