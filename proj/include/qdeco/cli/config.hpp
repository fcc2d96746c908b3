#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdeco/channels.hpp"
#include "qdeco/dynamics.hpp"
#include "qdeco/measures.hpp"
#include "qdeco/protection.hpp"

namespace qdeco::cli {

/// Invalid scenario; the message starts with the JSON path of the offending
/// field, e.g. "$.range.steps: must be >= 1".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Command { ChannelSweep, Esd, Thermal, Collision, Spatial, EmSweep, Protect, Schema };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

/// `steps` evenly spaced points from start to stop inclusive (one point when
/// steps == 1).
struct Range {
  double start = 0;
  double stop = 0;
  std::size_t steps = 1;

  std::vector<double> points() const;
};

struct StateSpec {
  std::string label;  // builtin name or "inline"
  DensityMatrix state;
};

/// One of the built-in channels with a swept parameter; the remaining
/// parameters (only d1/d2 for cad) are fixed.
struct ChannelSpec {
  std::string kind;       // amplitude-damping | phase-damping | depolarizing | cad
  std::string parameter;  // gamma | lambda | p | d1 | d2
  double fixed = 0;       // the other cad parameter
  std::vector<std::size_t> targets;

  KrausChannel make(double value) const;
  DensityMatrix apply(const DensityMatrix& rho, double value) const;
};

struct ChannelSweepScenario {
  StateSpec state;
  ChannelSpec channel;
  Range range;
  std::vector<std::string> measures;
};

struct ThermalFamily {
  double omega_bar;
  double delta;
};

struct EsdScenario {
  std::optional<StateSpec> state;  // channel family
  std::optional<ChannelSpec> channel;
  std::optional<ThermalFamily> thermal;
  EntanglementMeasure measure = EntanglementMeasure::Concurrence;
  Range range;
  EsdOptions options;
};

struct ThermalScenario {
  ThermalFamily params;
  Range range;  // over n_bar
};

struct CollisionScenario {
  StateSpec state;
  CollisionModel model;
  Range k;
};

struct SpatialScenario {
  ScatteringEnvironment environment;
  Range dx;
  double time = 1.0;
  std::vector<double> positions;  // optional; equal superposition evolved for `time`
};

struct EmSweepScenario {
  EMOscillatorModel base;
  std::vector<double> detunings;
  Range times;
};

struct ProtectScenario {
  StateSpec state;
  double d1;
  double d2;
  std::vector<Scheme> schemes;
  ProtectionStrengths strengths;
  Sides sides = Sides::Both;
  bool optimize = true;
};

using Scenario = std::variant<std::monostate, ChannelSweepScenario, EsdScenario, ThermalScenario, CollisionScenario,
                              SpatialScenario, EmSweepScenario, ProtectScenario>;

struct ScenarioConfig {
  Command command;
  Scenario scenario;
  nlohmann::json echo;  // input with defaults applied
  std::optional<std::string> out_csv;
  std::optional<std::string> out_json;
  bool record_wall_time = false;
};

/// Full schema check. `command` overrides / must agree with the "command" key.
ScenarioConfig parse_config(const nlohmann::json& raw, std::optional<Command> command = std::nullopt);
ScenarioConfig parse_config_text(std::string_view text, std::optional<Command> command = std::nullopt);

/// Machine-readable description of every command's keys and defaults.
nlohmann::json config_schema();

/// Names accepted for "state".
std::vector<std::string> builtin_states();

}  // namespace qdeco::cli
