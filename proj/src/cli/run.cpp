#include "qdeco/cli/run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "qdeco/io.hpp"

namespace qdeco::cli {

using nlohmann::json;

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void run_channel_sweep(const ChannelSweepScenario& s, RunReport& r) {
  r.columns = {s.channel.parameter};
  r.columns.insert(r.columns.end(), s.measures.begin(), s.measures.end());
  for (double x : s.range.points()) {
    const DensityMatrix rho = s.channel.apply(s.state.state, x);
    std::vector<Cell> row{x};
    for (const auto& m : s.measures) row.emplace_back(evaluate_observable(m, rho));
    r.rows.push_back(std::move(row));
  }
  r.summary["rows"] = r.rows.size();
}

void run_esd(const EsdScenario& s, RunReport& r) {
  EsdResult result;
  std::string parameter;
  std::string measure;
  if (s.thermal) {
    parameter = "n_bar";
    measure = "clamped_concurrence";
    const ThermalFamily t = *s.thermal;
    result = find_first_zero(
        [t](double n) { return thermal_steady_concurrence({t.omega_bar, t.delta, n}).clamped; }, s.range.start,
        s.range.stop, s.options);
  } else {
    parameter = s.channel->parameter;
    measure = s.measure == EntanglementMeasure::Concurrence ? "concurrence" : "negativity";
    const ChannelSpec channel = *s.channel;
    const DensityMatrix rho0 = s.state->state;
    result = find_esd([&](double x) { return channel.apply(rho0, x); }, s.measure, s.range.start, s.range.stop,
                      s.options);
  }
  r.columns = {parameter, measure};
  for (std::size_t k = 0; k < result.scan_parameters.size(); ++k) {
    r.rows.push_back({result.scan_parameters[k], result.scan_values[k]});
  }
  r.summary[s.thermal ? "n_bar_star" : "p_star"] = optional_number(result.threshold);
}

void run_thermal(const ThermalScenario& s, RunReport& r) {
  r.columns = {"n_bar", "raw", "clamped", "out_of_range"};
  std::size_t flagged = 0;
  bool monotone = true;
  double last = 0;
  for (double n : s.range.points()) {
    const auto c = thermal_steady_concurrence({s.params.omega_bar, s.params.delta, n});
    if (!r.rows.empty() && c.clamped > last) monotone = false;
    last = c.clamped;
    flagged += c.out_of_range ? 1 : 0;
    r.rows.push_back({n, c.raw, c.clamped, c.out_of_range});
  }
  std::optional<double> star;
  auto value = [&](double n) { return thermal_steady_concurrence({s.params.omega_bar, s.params.delta, n}).clamped; };
  const EsdOptions options;
  if (s.range.start < s.range.stop && value(s.range.start) > options.zero_threshold) {
    star = find_first_zero(value, s.range.start, s.range.stop, options).threshold;
  }
  r.summary["n_bar_star"] = optional_number(star);
  r.summary["monotone_non_increasing"] = monotone;
  r.summary["out_of_range_count"] = flagged;
}

void run_collision(const CollisionScenario& s, RunReport& r) {
  r.columns = {"k", "coherence", "purity", "max_offdiagonal"};
  for (double k : s.k.points()) {
    const DensityMatrix rho = collision_apply(s.model, s.state.state, static_cast<std::size_t>(k));
    double max_off = 0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      for (std::size_t j = 0; j < rho.dim(); ++j) {
        if (i != j) max_off = std::max(max_off, std::abs(rho(i, j)));
      }
    }
    r.rows.push_back({k, l1_coherence(rho), purity(rho), max_off});
  }
  double min_overlap = 1;
  for (std::size_t m = 0; m < s.model.system_dim(); ++m) {
    for (std::size_t n = 0; n < s.model.system_dim(); ++n) {
      min_overlap = std::min(min_overlap, std::abs(collision_factor(s.model, m, n)));
    }
  }
  r.summary["min_overlap_modulus"] = min_overlap;
}

void run_spatial(const SpatialScenario& s, RunReport& r) {
  r.columns = {"dx", "rate", "one_minus_sinc2", "suppression"};
  for (double dx : s.dx.points()) {
    const double f = spatial_decoherence_factor(s.environment, dx);
    r.rows.push_back({dx, f, one_minus_sinc_squared(s.environment.momentum * dx), std::exp(-f * s.time)});
  }
  r.summary["saturation_rate"] = saturation_rate(s.environment);
  r.summary["time"] = s.time;
  if (s.positions.empty()) return;
  const auto n = static_cast<Eigen::Index>(s.positions.size());
  const ComplexMatrix uniform = ComplexMatrix::Constant(n, n, Complex(1.0 / double(n), 0));
  const DensityMatrix rho = evolve_positional(DensityMatrix(uniform, {s.positions.size()}), s.positions,
                                              s.environment, s.time);
  std::vector<double> first_row;
  for (std::size_t j = 0; j < s.positions.size(); ++j) first_row.push_back(std::abs(rho(0, j)) * double(n));
  r.summary["positional_purity"] = purity(rho);
  r.summary["positional_relative_coherence"] = first_row;
}

void run_em_sweep(const EmSweepScenario& s, RunReport& r) {
  const std::vector<double> times = s.times.points();
  const EmSweepResult result = em_resonance_sweep(s.base, s.detunings, times);
  r.columns = {"detuning", "t", "negativity", "excitation"};
  for (std::size_t d = 0; d < result.detunings.size(); ++d) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      r.rows.push_back({result.detunings[d], times[k], result.negativity[d][k], result.excitation[d][k]});
    }
  }
  r.summary["best_detuning"] = result.detunings[result.best_index()];
  r.summary["max_negativity"] = result.max_negativity;
  r.summary["time_of_max"] = result.time_of_max;
  r.summary["mean_negativity"] = result.mean_negativity;
}

void run_protect(const ProtectScenario& s, RunReport& r) {
  r.columns = {"scheme", "negativity", "success_probability", "p1", "p2", "q1", "q2"};
  const double unprotected = run_scheme(Scheme::None, s.state.state, s.d1, s.d2, {}, s.sides).negativity;
  bool restored = true;
  std::string best;
  double best_n = -1;
  for (Scheme scheme : s.schemes) {
    const ProtectionReport p = s.optimize ? optimize_qmr(scheme, s.state.state, s.d1, s.d2, s.strengths, s.sides).report
                                          : run_scheme(scheme, s.state.state, s.d1, s.d2, s.strengths, s.sides);
    if (scheme != Scheme::None && p.negativity < unprotected) restored = false;
    if (p.negativity > best_n) {
      best_n = p.negativity;
      best = std::string(to_string(scheme));
    }
    const ProtectionStrengths used = scheme == Scheme::None          ? ProtectionStrengths{}
                                     : scheme == Scheme::EamQmr      ? ProtectionStrengths{0, 0, p.strengths.q1, p.strengths.q2}
                                                                     : p.strengths;
    r.rows.push_back(
        {std::string(to_string(scheme)), p.negativity, p.success_probability, used.p1, used.p2, used.q1, used.q2});
  }
  r.summary["unprotected_negativity"] = unprotected;
  r.summary["best_scheme"] = best;
  r.summary["restored"] = restored;
}

std::string cell_text(const Cell& c) {
  return std::visit(Overloaded{[](double x) { return format_number(x); }, [](const std::string& s) { return s; },
                               [](bool b) { return std::string(b ? "true" : "false"); }},
                    c);
}

std::string summary_text(const json& v) {
  if (v.is_null()) return "none";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6f", v.get<double>());
    return buf.data();
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + summary_text(x);
    return out;
  }
  return v.dump();
}

}  // namespace

RunReport run(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = config.command;
  r.scenario = config.echo;
  r.record_wall_time = config.record_wall_time;
  std::visit(Overloaded{[](std::monostate) {}, [&](const ChannelSweepScenario& s) { run_channel_sweep(s, r); },
                        [&](const EsdScenario& s) { run_esd(s, r); },
                        [&](const ThermalScenario& s) { run_thermal(s, r); },
                        [&](const CollisionScenario& s) { run_collision(s, r); },
                        [&](const SpatialScenario& s) { run_spatial(s, r); },
                        [&](const EmSweepScenario& s) { run_em_sweep(s, r); },
                        [&](const ProtectScenario& s) { run_protect(s, r); }},
             config.scenario);
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_csv(const RunReport& report, std::ostream& out) {
  for (std::size_t k = 0; k < report.columns.size(); ++k) out << (k ? "," : "") << report.columns[k];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << cell_text(row[k]);
    out << '\n';
  }
}

json report_json(const RunReport& report) {
  json j;
  j["tool"] = "qdeco";
  j["version"] = std::string(kVersion);
  j["command"] = std::string(to_string(report.command));
  j["scenario"] = report.scenario;
  j["columns"] = report.columns;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json cells = json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { cells.push_back(v); }, c);
    j["rows"].push_back(std::move(cells));
  }
  j["summary"] = report.summary;
  if (report.record_wall_time) j["summary"]["wall_time_seconds"] = report.wall_time_seconds;
  return j;
}

void write_summary(const RunReport& report, std::ostream& out) {
  for (const auto& [key, value] : report.summary.items()) out << key << " = " << summary_text(value) << '\n';
}

void write_file_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

}  // namespace qdeco::cli
