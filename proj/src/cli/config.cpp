#include "qdeco/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdeco/io.hpp"

namespace qdeco::cli {

using nlohmann::json;

namespace {

constexpr std::array kCommands{
    std::pair{Command::ChannelSweep, "channel-sweep"}, std::pair{Command::Esd, "esd"},
    std::pair{Command::Thermal, "thermal"},            std::pair{Command::Collision, "collision"},
    std::pair{Command::Spatial, "spatial"},            std::pair{Command::EmSweep, "em-sweep"},
    std::pair{Command::Protect, "protect"},            std::pair{Command::Schema, "schema"},
};

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string nearest(std::string_view key, std::span<const std::string> candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(key, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// A JSON object with a fixed key set. Unknown keys are rejected on
// construction with the nearest valid key as a hint.
class Object {
 public:
  Object(const json& j, std::string path, std::vector<std::string> allowed)
      : j_(j), path_(std::move(path)), allowed_(std::move(allowed)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      if (std::find(allowed_.begin(), allowed_.end(), key) == allowed_.end()) {
        throw ConfigError(child(key), "unknown key \"" + key + "\"; did you mean \"" + nearest(key, allowed_) + "\"?");
      }
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const {
    if (!has(key)) throw ConfigError(child(key), "required key is missing");
    return j_.at(key);
  }
  std::string child(const std::string& key) const { return path_ + "." + key; }
  const std::string& path() const { return path_; }

  double number(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(child(key), "must be finite");
    return x;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::size_t count(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(child(key), "expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }
  std::size_t count(const std::string& key, std::size_t fallback) const { return has(key) ? count(key) : fallback; }

  std::string text(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ConfigError(child(key), "expected true or false");
    return j_.at(key).get<bool>();
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string> allowed_;
};

void require_range(const std::string& path, double x, double lo, double hi, bool hi_open) {
  if (x < lo || x > hi || (hi_open && x == hi)) {
    throw ConfigError(path, "must lie in [" + format_number(lo) + ", " + format_number(hi) + (hi_open ? ")" : "]"));
  }
}

Range parse_range(const json& j, const std::string& path, std::optional<std::size_t> default_steps, json& echo) {
  const Object o(j, path, {"start", "stop", "steps"});
  Range r;
  r.start = o.number("start");
  r.stop = o.number("stop");
  r.steps = default_steps ? o.count("steps", *default_steps) : o.count("steps");
  if (r.steps < 1) throw ConfigError(o.child("steps"), "must be >= 1");
  if (r.start > r.stop) throw ConfigError(path, "start > stop");
  echo = {{"start", r.start}, {"stop", r.stop}, {"steps", r.steps}};
  return r;
}

ComplexMatrix parse_matrix(const json& j, const std::string& path) {
  auto rows_of = [&](const json& m, const std::string& p) {
    if (!m.is_array() || m.empty()) throw ConfigError(p, "expected a non-empty array of rows");
    const std::size_t n = m.size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m[0].is_array() ? m[0].size() : 0));
    for (std::size_t r = 0; r < n; ++r) {
      if (!m[r].is_array() || m[r].size() != static_cast<std::size_t>(out.cols())) {
        throw ConfigError(p + "[" + std::to_string(r) + "]", "rows must be arrays of equal length");
      }
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        if (!m[r][c].is_number()) throw ConfigError(p, "entries must be numbers");
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c].get<double>();
      }
    }
    return out;
  };
  if (j.is_array()) return rows_of(j, path).cast<Complex>();
  const Object o(j, path, {"re", "im"});
  const Eigen::MatrixXd re = rows_of(o.at("re"), o.child("re"));
  ComplexMatrix m = re.cast<Complex>();
  if (o.has("im")) {
    const Eigen::MatrixXd im = rows_of(o.at("im"), o.child("im"));
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw ConfigError(o.child("im"), "shape differs from re");
    m.imag() = im;
  }
  return m;
}

ComplexVector parse_vector(const json& j, const std::string& path) {
  auto values_of = [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.empty()) throw ConfigError(p, "expected a non-empty array of numbers");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number()) throw ConfigError(p, "entries must be numbers");
      out(static_cast<Eigen::Index>(k)) = v[k].get<double>();
    }
    return out;
  };
  if (j.is_array()) return values_of(j, path).cast<Complex>();
  const Object o(j, path, {"re", "im"});
  const Eigen::VectorXd re = values_of(o.at("re"), o.child("re"));
  ComplexVector v = re.cast<Complex>();
  if (o.has("im")) {
    const Eigen::VectorXd im = values_of(o.at("im"), o.child("im"));
    if (im.size() != re.size()) throw ConfigError(o.child("im"), "length differs from re");
    v.imag() = im;
  }
  return v;
}

std::optional<DensityMatrix> builtin(const std::string& name) {
  const double h = 1 / std::sqrt(2.0);
  if (name == "bell-phi-plus") return bell_state(BellKind::PhiPlus);
  if (name == "bell-phi-minus") return bell_state(BellKind::PhiMinus);
  if (name == "bell-psi-plus") return bell_state(BellKind::PsiPlus);
  if (name == "bell-psi-minus") return bell_state(BellKind::PsiMinus);
  if (name == "qutrit-max-entangled") return maximally_entangled(3);
  if (name == "qubit-plus") {
    ComplexVector v(2);
    v << h, h;
    return pure_state(v, {2});
  }
  if (name == "qubit-excited") return pure_state(basis_ket(1, 2), {2});
  return std::nullopt;
}

StateSpec parse_state(const json& j, const std::string& path, json& echo) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (auto s = builtin(name)) {
      echo = name;
      return {name, *s};
    }
    throw ConfigError(path, "unknown builtin state \"" + name + "\"; did you mean \"" +
                                nearest(name, builtin_states()) + "\"?");
  }
  if (!j.is_object()) throw ConfigError(path, "expected a builtin name or {dims, re, im}");
  try {
    DensityMatrix rho = state_from_json(j);
    echo = state_to_json(rho);
    return {"inline", std::move(rho)};
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

StateSpec state_or(const Object& top, const std::string& fallback, json& echo) {
  return top.has("state") ? parse_state(top.at("state"), top.child("state"), echo)
                          : parse_state(json(fallback), top.child("state"), echo);
}

ChannelSpec parse_channel(const json& j, const std::string& path, const DensityMatrix& rho, json& echo) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError(path + ".kind", "expected a channel name");
  const std::string kind = j.at("kind").get<std::string>();
  static const std::vector<std::string> kinds{"amplitude-damping", "phase-damping", "depolarizing", "cad"};
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw ConfigError(path + ".kind", "unknown channel \"" + kind + "\"; did you mean \"" + nearest(kind, kinds) + "\"?");
  }
  std::vector<std::string> allowed{"kind", "parameter", "targets"};
  if (kind == "cad") {
    allowed.emplace_back("d1");
    allowed.emplace_back("d2");
  }
  const Object o(j, path, allowed);

  ChannelSpec spec;
  spec.kind = kind;
  const std::string primary = kind == "amplitude-damping" ? "gamma"
                              : kind == "phase-damping"   ? "lambda"
                              : kind == "depolarizing"    ? "p"
                                                          : "d1";
  spec.parameter = o.text("parameter", primary);
  echo = {{"kind", kind}, {"parameter", spec.parameter}};
  if (kind == "cad") {
    if (spec.parameter != "d1" && spec.parameter != "d2") {
      throw ConfigError(o.child("parameter"), "cad sweeps d1 or d2");
    }
    const std::string other = spec.parameter == "d1" ? "d2" : "d1";
    if (o.has(spec.parameter)) throw ConfigError(o.child(spec.parameter), "swept parameter is given by the range");
    spec.fixed = o.number(other);
    require_range(o.child(other), spec.fixed, 0, 1, false);
    echo[other] = spec.fixed;
  } else if (spec.parameter != primary) {
    throw ConfigError(o.child("parameter"), kind + " has the single parameter \"" + primary + "\"");
  }

  if (o.has("targets")) {
    const json& t = o.at("targets");
    if (!t.is_array() || t.empty()) throw ConfigError(o.child("targets"), "expected a non-empty array of subsystems");
    for (const auto& x : t) {
      if (!x.is_number_integer() || x.get<long long>() < 0) {
        throw ConfigError(o.child("targets"), "subsystem indices are non-negative integers");
      }
      spec.targets.push_back(x.get<std::size_t>());
    }
  } else {
    spec.targets = {0};
  }
  std::vector<std::size_t> sorted = spec.targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError(o.child("targets"), "duplicate subsystem");
  }
  const std::size_t channel_dim = kind == "cad" ? 3 : 2;
  for (std::size_t t : spec.targets) {
    if (t >= rho.dims().size()) throw ConfigError(o.child("targets"), "subsystem " + std::to_string(t) + " out of range");
    if (rho.dims()[t] != channel_dim) {
      throw ConfigError(o.child("targets"), "subsystem " + std::to_string(t) + " has dimension " +
                                                std::to_string(rho.dims()[t]) + ", channel acts on " +
                                                std::to_string(channel_dim));
    }
  }
  echo["targets"] = spec.targets;
  return spec;
}

void check_channel_range(const ChannelSpec& spec, const Range& range, const std::string& path) {
  for (double x : {range.start, range.stop}) {
    try {
      (void)spec.make(x);
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
  }
}

EntanglementMeasure parse_measure(const Object& o, const DensityMatrix& rho, json& echo) {
  const bool qubits = rho.dims() == Dims{2, 2};
  const std::string name = o.text("measure", qubits ? "concurrence" : "negativity");
  echo["measure"] = name;
  if (name == "concurrence") {
    if (!qubits) throw ConfigError(o.child("measure"), "concurrence needs a two-qubit state");
    return EntanglementMeasure::Concurrence;
  }
  if (name == "negativity") {
    if (rho.dims().size() < 2) throw ConfigError(o.child("measure"), "negativity needs a multipartite state");
    return EntanglementMeasure::Negativity;
  }
  throw ConfigError(o.child("measure"), "expected \"concurrence\" or \"negativity\"");
}

ThermalFamily parse_thermal(const json& j, const std::string& path, json& echo) {
  const Object o(j, path, {"omega_bar", "delta"});
  ThermalFamily t{o.number("omega_bar"), o.number("delta")};
  echo = {{"omega_bar", t.omega_bar}, {"delta", t.delta}};
  return t;
}

std::vector<std::string> common_keys(std::vector<std::string> specific) {
  for (const char* k : {"command", "outputs", "record_wall_time"}) specific.emplace_back(k);
  return specific;
}

Scenario parse_channel_sweep(const Object& o, json& echo) {
  StateSpec state = state_or(o, "bell-phi-plus", echo["state"]);
  ChannelSpec channel = parse_channel(o.at("channel"), o.child("channel"), state.state, echo["channel"]);
  Range range = parse_range(o.at("range"), o.child("range"), std::nullopt, echo["range"]);
  check_channel_range(channel, range, o.child("range"));

  std::vector<std::string> measures;
  if (o.has("measures")) {
    const json& m = o.at("measures");
    if (!m.is_array() || m.empty()) throw ConfigError(o.child("measures"), "expected a non-empty array of names");
    for (const auto& x : m) {
      if (!x.is_string()) throw ConfigError(o.child("measures"), "expected names");
      measures.push_back(x.get<std::string>());
    }
  } else {
    measures = default_observables(state.state.dims());
  }
  static const std::vector<std::string> known{"concurrence", "negativity", "coherence", "purity", "entropy", "ppt"};
  for (const auto& name : measures) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError(o.child("measures"),
                        "unknown measure \"" + name + "\"; did you mean \"" + nearest(name, known) + "\"?");
    }
    try {
      (void)evaluate_observable(name, state.state);
    } catch (const Error& e) {
      throw ConfigError(o.child("measures"), name + ": " + e.what());
    }
  }
  echo["measures"] = measures;
  return ChannelSweepScenario{std::move(state), std::move(channel), range, std::move(measures)};
}

Scenario parse_esd(const Object& o, json& echo) {
  const std::string family = o.text("family", "channel");
  echo["family"] = family;
  EsdScenario s;
  s.range = parse_range(o.at("range"), o.child("range"), 64, echo["range"]);
  if (s.range.steps < 2) throw ConfigError(o.child("range.steps"), "esd scans need at least 2 points");
  if (!(s.range.start < s.range.stop)) throw ConfigError(o.child("range"), "esd needs start < stop");
  s.options.scan_points = s.range.steps;

  if (o.has("options")) {
    const Object opt(o.at("options"), o.child("options"), {"tolerance", "zero_threshold"});
    s.options.tolerance = opt.number("tolerance", s.options.tolerance);
    s.options.zero_threshold = opt.number("zero_threshold", s.options.zero_threshold);
    if (!(s.options.tolerance > 0)) throw ConfigError(opt.child("tolerance"), "must be > 0");
    if (!(s.options.zero_threshold >= 0)) throw ConfigError(opt.child("zero_threshold"), "must be >= 0");
  }
  echo["options"] = {{"tolerance", s.options.tolerance}, {"zero_threshold", s.options.zero_threshold}};

  if (family == "channel") {
    for (const char* k : {"thermal"}) {
      if (o.has(k)) throw ConfigError(o.child(k), "only used with \"family\": \"thermal\"");
    }
    s.state = state_or(o, "bell-phi-plus", echo["state"]);
    s.channel = parse_channel(o.at("channel"), o.child("channel"), s.state->state, echo["channel"]);
    check_channel_range(*s.channel, s.range, o.child("range"));
    s.measure = parse_measure(o, s.state->state, echo);
  } else if (family == "thermal") {
    for (const char* k : {"state", "channel", "measure"}) {
      if (o.has(k)) throw ConfigError(o.child(k), "only used with \"family\": \"channel\"");
    }
    s.thermal = parse_thermal(o.at("thermal"), o.child("thermal"), echo["thermal"]);
    if (s.range.start < 0) throw ConfigError(o.child("range.start"), "n_bar must be >= 0");
  } else {
    throw ConfigError(o.child("family"), "expected \"channel\" or \"thermal\"");
  }
  return s;
}

Scenario parse_thermal_command(const Object& o, json& echo) {
  ThermalScenario s{parse_thermal(o.at("thermal"), o.child("thermal"), echo["thermal"]),
                    parse_range(o.at("range"), o.child("range"), std::nullopt, echo["range"])};
  if (s.range.start < 0) throw ConfigError(o.child("range.start"), "n_bar must be >= 0");
  return s;
}

ComplexMatrix rotation(double angle) {
  ComplexMatrix m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return m;
}

Scenario parse_collision(const Object& o, json& echo) {
  StateSpec state = state_or(o, "qubit-plus", echo["state"]);
  const Object c(o.at("collision"), o.child("collision"), {"branches", "branch_angles", "env_in"});
  json& ce = echo["collision"];
  std::vector<ComplexMatrix> branches;
  if (c.has("branches") == c.has("branch_angles")) {
    throw ConfigError(c.path(), "give exactly one of \"branches\" and \"branch_angles\"");
  }
  if (c.has("branch_angles")) {
    const json& a = c.at("branch_angles");
    if (!a.is_array() || a.empty()) throw ConfigError(c.child("branch_angles"), "expected a non-empty array");
    for (const auto& x : a) {
      if (!x.is_number()) throw ConfigError(c.child("branch_angles"), "angles must be numbers");
      branches.push_back(rotation(x.get<double>()));
    }
    ce["branch_angles"] = a;
  } else {
    const json& b = c.at("branches");
    if (!b.is_array() || b.empty()) throw ConfigError(c.child("branches"), "expected a non-empty array of matrices");
    for (std::size_t k = 0; k < b.size(); ++k) {
      branches.push_back(parse_matrix(b[k], c.child("branches") + "[" + std::to_string(k) + "]"));
    }
    ce["branches"] = b;
  }
  ComplexVector env = ComplexVector::Zero(branches.front().rows());
  if (c.has("env_in")) {
    env = parse_vector(c.at("env_in"), c.child("env_in"));
    ce["env_in"] = c.at("env_in");
  } else {
    env(0) = 1;
    ce["env_in"] = json::array();
    for (Eigen::Index k = 0; k < env.size(); ++k) ce["env_in"].push_back(env(k).real());
  }
  if (branches.size() != state.state.dim()) {
    throw ConfigError(c.path(), "need one branch per system basis state (" + std::to_string(state.state.dim()) + ")");
  }
  for (std::size_t k = 0; k < branches.size(); ++k) {
    if (branches[k].rows() != env.size() || branches[k].cols() != env.size()) {
      throw ConfigError(c.path(), "branch " + std::to_string(k) + " does not act on the environment space");
    }
  }
  std::optional<CollisionModel> model;
  try {
    model.emplace(std::move(branches), env);
  } catch (const Error& e) {
    throw ConfigError(c.path(), e.what());
  }

  Range k = parse_range(o.at("k"), o.child("k"), std::nullopt, echo["k"]);
  for (double x : k.points()) {
    if (x < 0 || x != std::round(x)) throw ConfigError(o.child("k"), "collision counts must be non-negative integers");
  }
  return CollisionScenario{std::move(state), std::move(*model), k};
}

Scenario parse_spatial(const Object& o, json& echo) {
  const Object e(o.at("environment"), o.child("environment"), {"number_density", "momentum", "speed", "amplitude"});
  ScatteringEnvironment env{e.number("number_density"), e.number("momentum"), e.number("speed"), e.number("amplitude")};
  for (const char* k : {"number_density", "momentum", "speed", "amplitude"}) {
    if (e.number(k) < 0) throw ConfigError(e.child(k), "must be >= 0");
  }
  echo["environment"] = {{"number_density", env.number_density},
                         {"momentum", env.momentum},
                         {"speed", env.speed},
                         {"amplitude", env.amplitude}};
  SpatialScenario s{env, parse_range(o.at("dx"), o.child("dx"), std::nullopt, echo["dx"]), o.number("time", 1.0), {}};
  if (s.time < 0) throw ConfigError(o.child("time"), "must be >= 0");
  echo["time"] = s.time;
  if (o.has("positions")) {
    const json& x = o.at("positions");
    if (!x.is_array() || x.size() < 2 || x.size() > kMaxDimension) {
      throw ConfigError(o.child("positions"), "expected 2.." + std::to_string(kMaxDimension) + " numbers");
    }
    for (const auto& v : x) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ConfigError(o.child("positions"), "entries must be finite numbers");
      }
      s.positions.push_back(v.get<double>());
    }
    echo["positions"] = s.positions;
  }
  return s;
}

Scenario parse_em_sweep(const Object& o, json& echo) {
  const Object m(o.at("model"), o.child("model"), {"omega", "beta", "n_max"});
  EMOscillatorModel base{0, m.number("omega"), m.number("beta"), m.count("n_max", 3)};
  base.omega_c = base.omega;
  if (!(base.beta > 0)) throw ConfigError(m.child("beta"), "must be > 0");
  if (base.n_max < 1) throw ConfigError(m.child("n_max"), "must be >= 1");
  if ((base.n_max + 1) * (base.n_max + 1) > kMaxDimension) {
    throw ConfigError(m.child("n_max"), "(n_max + 1)^2 exceeds the dimension limit " + std::to_string(kMaxDimension));
  }
  echo["model"] = {{"omega", base.omega}, {"beta", base.beta}, {"n_max", base.n_max}};

  const json& d = o.at("detunings");
  if (!d.is_array() || d.empty()) throw ConfigError(o.child("detunings"), "expected a non-empty array of numbers");
  std::vector<double> detunings;
  for (const auto& x : d) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      throw ConfigError(o.child("detunings"), "entries must be finite numbers");
    }
    detunings.push_back(x.get<double>());
  }
  echo["detunings"] = detunings;
  Range times = parse_range(o.at("times"), o.child("times"), std::nullopt, echo["times"]);
  if (times.start < 0) throw ConfigError(o.child("times.start"), "must be >= 0");
  return EmSweepScenario{base, std::move(detunings), times};
}

Scenario parse_protect(const Object& o, json& echo) {
  StateSpec state = state_or(o, "qutrit-max-entangled", echo["state"]);
  if (state.state.dims() != Dims{3, 3}) throw ConfigError(o.child("state"), "protection needs a two-qutrit state");

  const Object cad(o.at("cad"), o.child("cad"), {"d1", "d2"});
  const double d1 = cad.number("d1");
  const double d2 = cad.number("d2");
  require_range(cad.child("d1"), d1, 0, 1, false);
  require_range(cad.child("d2"), d2, 0, 1, false);
  echo["cad"] = {{"d1", d1}, {"d2", d2}};

  std::vector<Scheme> schemes{Scheme::None, Scheme::WmQmr, Scheme::EamQmr};
  if (o.has("schemes")) {
    schemes.clear();
    const json& s = o.at("schemes");
    if (!s.is_array() || s.empty()) throw ConfigError(o.child("schemes"), "expected a non-empty array of names");
    for (const auto& x : s) {
      const std::string name = x.is_string() ? x.get<std::string>() : "";
      if (name == "none") {
        schemes.push_back(Scheme::None);
      } else if (name == "wm_qmr") {
        schemes.push_back(Scheme::WmQmr);
      } else if (name == "eam_qmr") {
        schemes.push_back(Scheme::EamQmr);
      } else {
        throw ConfigError(o.child("schemes"), "expected \"none\", \"wm_qmr\" or \"eam_qmr\"");
      }
    }
  }
  echo["schemes"] = json::array();
  for (Scheme s : schemes) echo["schemes"].push_back(std::string(to_string(s)));

  ProtectionStrengths strengths;
  if (o.has("wm")) {
    const Object wm(o.at("wm"), o.child("wm"), {"p1", "p2"});
    strengths.p1 = wm.number("p1", 0);
    strengths.p2 = wm.number("p2", 0);
    require_range(wm.child("p1"), strengths.p1, 0, 1, true);
    require_range(wm.child("p2"), strengths.p2, 0, 1, true);
  }
  echo["wm"] = {{"p1", strengths.p1}, {"p2", strengths.p2}};

  const bool optimize = o.flag("optimize", true);
  echo["optimize"] = optimize;
  if (o.has("qmr")) {
    if (optimize) throw ConfigError(o.child("qmr"), "reversal strengths are optimized; set \"optimize\": false to fix them");
    const Object q(o.at("qmr"), o.child("qmr"), {"q1", "q2"});
    strengths.q1 = q.number("q1", 0);
    strengths.q2 = q.number("q2", 0);
    require_range(q.child("q1"), strengths.q1, 0, 1, true);
    require_range(q.child("q2"), strengths.q2, 0, 1, true);
  }
  if (!optimize) echo["qmr"] = {{"q1", strengths.q1}, {"q2", strengths.q2}};

  const std::string sides = o.text("sides", "both");
  echo["sides"] = sides;
  Sides side = Sides::Both;
  if (sides == "first") {
    side = Sides::First;
  } else if (sides == "second") {
    side = Sides::Second;
  } else if (sides != "both") {
    throw ConfigError(o.child("sides"), "expected \"both\", \"first\" or \"second\"");
  }
  return ProtectScenario{std::move(state), d1, d2, std::move(schemes), strengths, side, optimize};
}

std::vector<std::string> specific_keys(Command command) {
  switch (command) {
    case Command::ChannelSweep: return {"state", "channel", "range", "measures"};
    case Command::Esd: return {"family", "state", "channel", "measure", "thermal", "range", "options"};
    case Command::Thermal: return {"thermal", "range"};
    case Command::Collision: return {"state", "collision", "k"};
    case Command::Spatial: return {"environment", "dx", "time", "positions"};
    case Command::EmSweep: return {"model", "detunings", "times"};
    case Command::Protect: return {"state", "cad", "schemes", "wm", "qmr", "optimize", "sides"};
    case Command::Schema: return {};
  }
  return {};
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::vector<double> Range::points() const {
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = steps == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  if (steps > 1) out.back() = stop;
  return out;
}

KrausChannel ChannelSpec::make(double value) const {
  if (kind == "amplitude-damping") return amplitude_damping(value);
  if (kind == "phase-damping") return phase_damping(value);
  if (kind == "depolarizing") return depolarizing(value);
  return parameter == "d1" ? correlated_amplitude_damping(value, fixed) : correlated_amplitude_damping(fixed, value);
}

DensityMatrix ChannelSpec::apply(const DensityMatrix& rho, double value) const {
  const KrausChannel channel = make(value);
  DensityMatrix out = rho;
  for (std::size_t t : targets) out = apply_to_subsystem(channel, out, t);
  return out;
}

std::vector<std::string> builtin_states() {
  return {"bell-phi-plus", "bell-phi-minus", "bell-psi-plus", "bell-psi-minus",
          "qutrit-max-entangled", "qubit-plus", "qubit-excited"};
}

ScenarioConfig parse_config(const json& raw, std::optional<Command> command) {
  if (!raw.is_object()) throw ConfigError("$", "expected a JSON object");
  if (raw.contains("command")) {
    const json& c = raw.at("command");
    std::vector<std::string> names;
    for (const auto& [cmd, name] : kCommands) names.emplace_back(name);
    const auto parsed = c.is_string() ? parse_command(c.get<std::string>()) : std::nullopt;
    if (!parsed) {
      const std::string given = c.is_string() ? c.get<std::string>() : c.dump();
      throw ConfigError("$.command", "unknown command \"" + given + "\"; did you mean \"" + nearest(given, names) + "\"?");
    }
    if (command && *command != *parsed) {
      throw ConfigError("$.command", "config is for \"" + std::string(to_string(*parsed)) + "\" but \"" +
                                         std::string(to_string(*command)) + "\" was requested");
    }
    command = parsed;
  }
  if (!command) throw ConfigError("$.command", "no command given on the command line or in the config");

  const Object top(raw, "$", common_keys(specific_keys(*command)));
  ScenarioConfig cfg;
  cfg.command = *command;
  cfg.echo = json::object();
  cfg.echo["command"] = std::string(to_string(*command));
  cfg.record_wall_time = top.flag("record_wall_time", false);
  if (top.has("outputs")) {
    const Object out(top.at("outputs"), top.child("outputs"), {"csv", "json"});
    if (out.has("csv")) cfg.out_csv = out.text("csv");
    if (out.has("json")) cfg.out_json = out.text("json");
  }

  switch (*command) {
    case Command::ChannelSweep: cfg.scenario = parse_channel_sweep(top, cfg.echo); break;
    case Command::Esd: cfg.scenario = parse_esd(top, cfg.echo); break;
    case Command::Thermal: cfg.scenario = parse_thermal_command(top, cfg.echo); break;
    case Command::Collision: cfg.scenario = parse_collision(top, cfg.echo); break;
    case Command::Spatial: cfg.scenario = parse_spatial(top, cfg.echo); break;
    case Command::EmSweep: cfg.scenario = parse_em_sweep(top, cfg.echo); break;
    case Command::Protect: cfg.scenario = parse_protect(top, cfg.echo); break;
    case Command::Schema: break;
  }
  return cfg;
}

ScenarioConfig parse_config_text(std::string_view text, std::optional<Command> command) {
  json raw;
  try {
    raw = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(raw, command);
}

json config_schema() {
  auto key = [](std::string type, json fallback, std::string note) {
    json k = {{"type", std::move(type)}, {"description", std::move(note)}};
    if (!fallback.is_null()) k["default"] = std::move(fallback);
    return k;
  };
  const json range = key("range", nullptr, "{start, stop, steps}: steps >= 1 evenly spaced points, start <= stop");
  const json state = "builtin name or {dims, re, im}";
  const json channel =
      key("object", nullptr,
          "{kind: amplitude-damping|phase-damping|depolarizing|cad, parameter, targets = [0], d1/d2 (cad, the "
          "unswept one)}");

  json s;
  s["common"] = {
      {"command", key("string", nullptr, "must match the subcommand when both are given")},
      {"outputs", key("object", nullptr, "{csv, json}: output paths; command-line flags take precedence")},
      {"record_wall_time", key("boolean", false, "include wall time in the JSON report")},
  };
  s["builtin_states"] = builtin_states();
  s["commands"]["channel-sweep"] = {
      {"state", key("state", "bell-phi-plus", state)},
      {"channel", channel},
      {"range", range},
      {"measures", key("array", "coherence, purity, plus negativity/concurrence when applicable",
                       "any of concurrence, negativity, coherence, purity, entropy, ppt")},
  };
  s["commands"]["esd"] = {
      {"family", key("string", "channel", "channel | thermal")},
      {"state", key("state", "bell-phi-plus", state)},
      {"channel", channel},
      {"measure", key("string", "concurrence for two qubits, else negativity", "concurrence | negativity")},
      {"thermal", key("object", nullptr, "{omega_bar, delta}; scan over n_bar (thermal family)")},
      {"range", key("range", json{{"steps", 64}}, "scan interval; steps is the coarse scan size")},
      {"options", key("object", json{{"tolerance", 1e-7}, {"zero_threshold", 1e-9}}, "bisection settings")},
  };
  s["commands"]["thermal"] = {
      {"thermal", key("object", nullptr, "{omega_bar, delta}")},
      {"range", key("range", nullptr, "n_bar grid, start >= 0")},
  };
  s["commands"]["collision"] = {
      {"state", key("state", "qubit-plus", state)},
      {"collision", key("object", nullptr,
                        "{branches: [matrix] | branch_angles: [angle], env_in = |0>}; one branch per system basis "
                        "state, angle a gives [[cos a, -sin a], [sin a, cos a]]")},
      {"k", key("range", nullptr, "collision counts, integer points")},
  };
  s["commands"]["spatial"] = {
      {"environment", key("object", nullptr, "{number_density, momentum, speed, amplitude}, all >= 0")},
      {"dx", range},
      {"time", key("number", 1.0, "evolution time for the suppression column and positional state")},
      {"positions", key("array", nullptr,
                        "optional grid; an equal superposition over it is evolved and summarized")},
  };
  s["commands"]["em-sweep"] = {
      {"model", key("object", json{{"n_max", 3}}, "{omega, beta > 0, n_max}")},
      {"detunings", key("array", nullptr, "oscillator minus field frequency")},
      {"times", range},
  };
  s["commands"]["protect"] = {
      {"state", key("state", "qutrit-max-entangled", state)},
      {"cad", key("object", nullptr, "{d1, d2} in [0, 1]")},
      {"schemes", key("array", json{"none", "wm_qmr", "eam_qmr"}, "pipelines to compare")},
      {"wm", key("object", json{{"p1", 0}, {"p2", 0}}, "weak measurement strengths in [0, 1)")},
      {"qmr", key("object", json{{"q1", 0}, {"q2", 0}}, "reversal strengths in [0, 1) when optimize is false")},
      {"optimize", key("boolean", true, "grid search plus refinement over q1, q2")},
      {"sides", key("string", "both", "both | first | second")},
  };
  return s;
}

}  // namespace qdeco::cli
