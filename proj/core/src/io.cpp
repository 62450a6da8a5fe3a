// Copyright 2026 The cztheta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cztheta/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace cztheta {

namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kKHz = 1e3;

// Reads fields of one JSON object and rejects keys that were never asked for.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  // Stores value * scale.
  void scaled(const std::string& key, double& out, double scale) {
    double v = out / scale;
    get(key, v);
    if (!std::isfinite(v)) throw ConfigError(where_ + "." + key + ": not finite");
    out = v * scale;
  }

  void mark(const std::string& key) { seen_.insert(key); }

  const Json& child(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

ConfusionMatrix confusion_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return symmetric_confusion(j.get<double>());
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected a 3x3 matrix");
  ConfusionMatrix m;
  for (int r = 0; r < 3; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != 3) throw ConfigError(where + ": expected a 3x3 matrix");
    for (int c = 0; c < 3; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

Json confusion_to_json(const ConfusionMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

void read_optional(Reader& rd, const std::string& key, std::optional<double>& out,
                   double scale) {
  double v = std::numeric_limits<double>::quiet_NaN();
  if (rd.has(key)) {
    rd.scaled(key, v, scale);
    out = v;
  } else {
    rd.get(key, v);
  }
}

SweepRange range_from_json(const Json& j, const std::string& where, double scale) {
  Reader rd(j, where);
  SweepRange r;
  rd.get("min", r.min);
  rd.get("max", r.max);
  rd.get("points", r.points);
  rd.finish();
  r.min *= scale;
  r.max *= scale;
  if (r.points < 1) throw ConfigError(where + ": points must be positive");
  if (r.points > 1 && !(r.max > r.min)) throw ConfigError(where + ": max must exceed min");
  return r;
}

Json range_to_json(const SweepRange& r, double scale) {
  return Json{{"min", r.min / scale}, {"max", r.max / scale}, {"points", r.points}};
}

ModelKind model_from_string(const std::string& s) {
  if (s == "two_level") return ModelKind::two_level;
  if (s == "six_level") return ModelKind::six_level;
  throw ConfigError("unknown model '" + s + "'");
}

PulseShape shape_from_string(const std::string& s) {
  if (s == "rectangular") return PulseShape::rectangular;
  if (s == "filtered") return PulseShape::filtered;
  if (s == "sampled") return PulseShape::sampled;
  throw ConfigError("unknown pulse shape '" + s + "'");
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) { os_ << std::setprecision(12); }
  Csv& operator<<(double v) {
    sep();
    os_ << v;
    return *this;
  }
  Csv& operator<<(const std::string& s) {
    sep();
    os_ << s;
    return *this;
  }
  void end() {
    os_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

}  // namespace

std::vector<double> SweepRange::values() const {
  std::vector<double> v;
  if (points == 1) return {min};
  for (int i = 0; i < points; ++i) v.push_back(min + (max - min) * i / (points - 1));
  return v;
}

std::string to_string(ModelKind m) {
  return m == ModelKind::two_level ? "two_level" : "six_level";
}

std::string to_string(PulseShape s) {
  switch (s) {
    case PulseShape::rectangular:
      return "rectangular";
    case PulseShape::filtered:
      return "filtered";
    case PulseShape::sampled:
      return "sampled";
  }
  return "sampled";
}

DeviceParams device_from_json(const Json& j) {
  Reader rd(j, "device");
  DeviceParams d;
  const double ghz2 = kTwoPi * kGHz;
  const double mhz2 = kTwoPi * kMHz;
  rd.scaled("omega_idle_high_ghz", d.omega_idle_high, ghz2);
  rd.scaled("omega_idle_low_ghz", d.omega_idle_low, ghz2);
  rd.scaled("alpha_high_ghz", d.alpha_high, ghz2);
  rd.scaled("alpha_low_ghz", d.alpha_low, ghz2);
  rd.scaled("j2_mhz", d.j2, mhz2);
  rd.scaled("t1_high_us", d.t1_high, 1e-6);
  rd.scaled("t1_low_us", d.t1_low, 1e-6);
  rd.scaled("t1_2_high_us", d.t1_2_high, 1e-6);
  rd.scaled("t1_2_low_us", d.t1_2_low, 1e-6);
  rd.scaled("t2_star_high_us", d.t2_star_high, 1e-6);
  rd.scaled("t2_star_low_us", d.t2_star_low, 1e-6);
  rd.scaled("t_phi_us", d.t_phi, 1e-6);
  rd.scaled("sigma_high_ns", d.sigma_high, 1e-9);
  rd.scaled("sigma_low_ns", d.sigma_low, 1e-9);
  rd.scaled("sigma_digital_ns", d.sigma_digital, 1e-9);
  double rate = 1.0 / d.sample_period / kGHz;
  rd.get("sample_rate_gsps", rate);
  if (!(rate > 0.0)) throw ConfigError("device.sample_rate_gsps must be positive");
  d.sample_period = 1.0 / (rate * kGHz);
  for (const char* key : {"readout_confusion_high", "readout_confusion_low"}) {
    if (rd.has(key)) {
      const ConfusionMatrix m = confusion_from_json(rd.child(key), std::string("device.") + key);
      (std::string(key).ends_with("high") ? d.confusion_high : d.confusion_low) = m;
    } else {
      rd.mark(key);
    }
  }
  rd.get("eps_1q_high", d.eps_1q_high);
  rd.get("eps_1q_low", d.eps_1q_low);
  rd.scaled("omega_low_interaction_ghz", d.omega_low_interaction, ghz2);

  // Optional redundant couplings, checked against j2.
  std::optional<double> g1;
  std::optional<double> g2;
  read_optional(rd, "g1_mhz", g1, mhz2);
  read_optional(rd, "g2_mhz", g2, mhz2);
  constexpr double kRel = 1e-6;
  if (g2 && std::abs(*g2 - d.g2()) > kRel * d.g2())
    throw ConfigError("device.g2_mhz is inconsistent with 2 * j2_mhz");
  if (g1 && std::abs(*g1 - d.g1()) > kRel * d.g1())
    throw ConfigError("device.g1_mhz is inconsistent with g2 / sqrt(2)");

  read_optional(rd, "zz_reference_high_khz", d.zz_reference_high, kTwoPi * kKHz);
  read_optional(rd, "zz_reference_low_khz", d.zz_reference_low, kTwoPi * kKHz);
  read_optional(rd, "residual_population_high", d.residual_population_high, 1.0);
  read_optional(rd, "residual_population_low", d.residual_population_low, 1.0);
  rd.finish();
  validate(d);
  return d;
}

Json device_to_json(const DeviceParams& d) {
  const double ghz2 = kTwoPi * kGHz;
  const double mhz2 = kTwoPi * kMHz;
  Json j;
  j["omega_idle_high_ghz"] = d.omega_idle_high / ghz2;
  j["omega_idle_low_ghz"] = d.omega_idle_low / ghz2;
  j["alpha_high_ghz"] = d.alpha_high / ghz2;
  j["alpha_low_ghz"] = d.alpha_low / ghz2;
  j["j2_mhz"] = d.j2 / mhz2;
  j["t1_high_us"] = d.t1_high / 1e-6;
  j["t1_low_us"] = d.t1_low / 1e-6;
  j["t1_2_high_us"] = d.t1_2_high / 1e-6;
  j["t1_2_low_us"] = d.t1_2_low / 1e-6;
  j["t2_star_high_us"] = d.t2_star_high / 1e-6;
  j["t2_star_low_us"] = d.t2_star_low / 1e-6;
  j["t_phi_us"] = d.t_phi / 1e-6;
  j["sigma_high_ns"] = d.sigma_high / 1e-9;
  j["sigma_low_ns"] = d.sigma_low / 1e-9;
  j["sigma_digital_ns"] = d.sigma_digital / 1e-9;
  j["sample_rate_gsps"] = 1.0 / d.sample_period / kGHz;
  j["readout_confusion_high"] = confusion_to_json(d.confusion_high);
  j["readout_confusion_low"] = confusion_to_json(d.confusion_low);
  j["eps_1q_high"] = d.eps_1q_high;
  j["eps_1q_low"] = d.eps_1q_low;
  j["omega_low_interaction_ghz"] = d.omega_low_interaction / ghz2;
  if (d.zz_reference_high) j["zz_reference_high_khz"] = *d.zz_reference_high / (kTwoPi * kKHz);
  if (d.zz_reference_low) j["zz_reference_low_khz"] = *d.zz_reference_low / (kTwoPi * kKHz);
  if (d.residual_population_high) j["residual_population_high"] = *d.residual_population_high;
  if (d.residual_population_low) j["residual_population_low"] = *d.residual_population_low;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  Reader rd(j, "config");
  RunConfig c;
  rd.get("seed", c.seed);
  if (rd.has("device")) c.device = device_from_json(rd.child("device"));
  rd.mark("device");

  if (rd.has("simulator")) {
    Reader s(rd.child("simulator"), "simulator");
    std::string model = to_string(c.simulator.model);
    std::string shape = to_string(c.simulator.shape);
    s.get("model", model);
    s.get("shape", shape);
    c.simulator.model = model_from_string(model);
    c.simulator.shape = shape_from_string(shape);
    s.get("substeps", c.simulator.substeps);
    std::uint64_t shots = 0;
    s.get("shots", shots);
    if (shots > 0) c.simulator.shots = shots;
    s.get("adaptive", c.simulator.propagation.adaptive);
    s.get("tolerance", c.simulator.propagation.tolerance);
    s.finish();
    if (c.simulator.substeps < 1) throw ConfigError("simulator.substeps must be positive");
  }
  rd.mark("simulator");

  if (rd.has("calibration")) {
    Reader s(rd.child("calibration"), "calibration");
    CalibrationConfig& k = c.calibration;
    s.get("sweep_points", k.sweep_points);
    s.get("sweep_span", k.sweep_span);
    s.get("tolerance", k.tolerance);
    s.get("max_iterations", k.max_iterations);
    s.get("amplification_gates", k.amplification_gates);
    s.get("detuning_step", k.detuning_step);
    s.get("detuning_steps", k.detuning_steps);
    s.get("separation_points", k.separation_points);
    s.get("table_points", k.table_points);
    s.scaled("idle_base_ns", k.idle_base, 1e-9);
    s.scaled("buffer_ns", k.buffer, 1e-9);
    s.get("residual_limit_rad", k.residual_limit);
    s.get("virtual_z_limit_rad", k.virtual_z_limit);
    s.finish();
    if (k.sweep_points < 3 || k.max_iterations < 1 || k.table_points < 4 ||
        k.detuning_steps < 1 || k.separation_points < 1 || k.amplification_gates < 1)
      throw ConfigError("calibration: counts out of range");
  }
  rd.mark("calibration");

  if (rd.has("chevron")) {
    Reader s(rd.child("chevron"), "chevron");
    if (s.has("half_duration_ns"))
      c.chevron.half_duration = range_from_json(s.child("half_duration_ns"), "chevron.half_duration_ns", 1e-9);
    s.mark("half_duration_ns");
    if (s.has("phi_low_offset"))
      c.chevron.phi_low_offset = range_from_json(s.child("phi_low_offset"), "chevron.phi_low_offset", 1.0);
    s.mark("phi_low_offset");
    s.get("half_waveform", c.chevron.half_waveform);
    s.finish();
  }
  rd.mark("chevron");

  if (rd.has("leakage_amp")) {
    Reader s(rd.child("leakage_amp"), "leakage_amp");
    if (s.has("phi_low_offset"))
      c.leakage_amp.phi_low_offset =
          range_from_json(s.child("phi_low_offset"), "leakage_amp.phi_low_offset", 1.0);
    s.mark("phi_low_offset");
    if (s.has("separation_ns"))
      c.leakage_amp.separation =
          range_from_json(s.child("separation_ns"), "leakage_amp.separation_ns", 1e-9);
    s.mark("separation_ns");
    s.get("gates", c.leakage_amp.gates);
    s.finish();
    if (c.leakage_amp.gates < 1) throw ConfigError("leakage_amp.gates must be positive");
  }
  rd.mark("leakage_amp");

  if (rd.has("xeb")) {
    Reader s(rd.child("xeb"), "xeb");
    XebConfig& x = c.xeb.config;
    s.get("depths", x.depths);
    s.get("circuits", x.circuits);
    s.get("shots", x.shots);
    if (s.has("theta_rad")) {
      double t = 0.0;
      s.get("theta_rad", t);
      x.theta = t;
    } else if (s.has("random_theta")) {
      bool random = false;
      s.get("random_theta", random);
      if (random) x.theta.reset();
    }
    s.mark("theta_rad");
    s.mark("random_theta");
    s.get("ideal_uses_calibrated", x.ideal_uses_calibrated);
    s.get("library_size", c.xeb.library_size);
    s.get("noise", c.xeb.noise);
    s.get("injected_depolarizing", c.xeb.injected_depolarizing);
    s.finish();
    validate(x);
    if (c.xeb.library_size < 1) throw ConfigError("xeb.library_size must be positive");
    if (!(c.xeb.injected_depolarizing >= 0.0 && c.xeb.injected_depolarizing < 0.75))
      throw ConfigError("xeb.injected_depolarizing must lie in [0, 0.75)");
  }
  rd.mark("xeb");

  rd.get("verify_targets_rad", c.verify_targets);
  rd.finish();
  c.xeb.config.seed = c.seed;
  c.simulator.seed = c.seed;
  return c;
}

Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["device"] = device_to_json(c.device);
  j["simulator"] = {{"model", to_string(c.simulator.model)},
                    {"shape", to_string(c.simulator.shape)},
                    {"substeps", c.simulator.substeps},
                    {"shots", c.simulator.shots.value_or(0)},
                    {"adaptive", c.simulator.propagation.adaptive},
                    {"tolerance", c.simulator.propagation.tolerance}};
  const CalibrationConfig& k = c.calibration;
  j["calibration"] = {{"sweep_points", k.sweep_points},
                      {"sweep_span", k.sweep_span},
                      {"tolerance", k.tolerance},
                      {"max_iterations", k.max_iterations},
                      {"amplification_gates", k.amplification_gates},
                      {"detuning_step", k.detuning_step},
                      {"detuning_steps", k.detuning_steps},
                      {"separation_points", k.separation_points},
                      {"table_points", k.table_points},
                      {"idle_base_ns", k.idle_base / 1e-9},
                      {"buffer_ns", k.buffer / 1e-9},
                      {"residual_limit_rad", k.residual_limit},
                      {"virtual_z_limit_rad", k.virtual_z_limit}};
  j["chevron"] = {{"half_duration_ns", range_to_json(c.chevron.half_duration, 1e-9)},
                  {"phi_low_offset", range_to_json(c.chevron.phi_low_offset, 1.0)},
                  {"half_waveform", c.chevron.half_waveform}};
  j["leakage_amp"] = {{"phi_low_offset", range_to_json(c.leakage_amp.phi_low_offset, 1.0)},
                      {"separation_ns", range_to_json(c.leakage_amp.separation, 1e-9)},
                      {"gates", c.leakage_amp.gates}};
  Json x;
  x["depths"] = c.xeb.config.depths;
  x["circuits"] = c.xeb.config.circuits;
  x["shots"] = c.xeb.config.shots;
  if (c.xeb.config.theta) {
    x["theta_rad"] = *c.xeb.config.theta;
  } else {
    x["random_theta"] = true;
  }
  x["ideal_uses_calibrated"] = c.xeb.config.ideal_uses_calibrated;
  x["library_size"] = c.xeb.library_size;
  x["noise"] = c.xeb.noise;
  x["injected_depolarizing"] = c.xeb.injected_depolarizing;
  j["xeb"] = x;
  j["verify_targets_rad"] = c.verify_targets;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(read_json_file(path));
}

Json gate_params_to_json(const GateParams& p) {
  return Json{{"phi_high", p.phi_high},          {"phi_low", p.phi_low},
              {"t_int_s", p.t_int},              {"t_idle_s", p.t_idle},
              {"buffer_s", p.buffer},            {"t_idle_max_s", p.t_idle_max},
              {"single_half", p.single_half}};
}

GateParams gate_params_from_json(const Json& j) {
  Reader rd(j, "params");
  GateParams p;
  rd.get("phi_high", p.phi_high);
  rd.get("phi_low", p.phi_low);
  rd.get("t_int_s", p.t_int);
  rd.get("t_idle_s", p.t_idle);
  rd.get("buffer_s", p.buffer);
  rd.get("t_idle_max_s", p.t_idle_max);
  rd.get("single_half", p.single_half);
  rd.finish();
  try {
    validate(p);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  return p;
}

Json record_to_json(const CalibrationRecord& r) {
  Json j;
  j["params"] = gate_params_to_json(r.params);
  j["idle_times_s"] = r.idle_times;
  j["phases_rad"] = r.phases;
  j["slope_rad_per_s"] = r.slope;
  j["intercept_rad"] = r.intercept;
  j["residuals_rad"] = r.residuals;
  j["vz_high_rad"] = r.vz_high;
  j["vz_low_rad"] = r.vz_low;
  j["interpolator"] = r.interpolator;
  j["trace"] = r.trace;
  return j;
}

CalibrationRecord record_from_json(const Json& j) {
  Reader rd(j, "record");
  CalibrationRecord r;
  r.params = gate_params_from_json(rd.child("params"));
  rd.get("idle_times_s", r.idle_times);
  rd.get("phases_rad", r.phases);
  rd.get("slope_rad_per_s", r.slope);
  rd.get("intercept_rad", r.intercept);
  rd.get("residuals_rad", r.residuals);
  rd.get("vz_high_rad", r.vz_high);
  rd.get("vz_low_rad", r.vz_low);
  rd.get("interpolator", r.interpolator);
  rd.get("trace", r.trace);
  rd.finish();
  if (r.idle_times.size() != r.phases.size() || r.idle_times.size() < 4)
    throw ConfigError("record: phase table needs at least 4 matching entries");
  return r;
}

Json gate_checks_to_json(const std::vector<GateCheck>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    a.push_back({{"target_rad", c.target},
                 {"t_idle_s", c.t_idle},
                 {"measured_rad", c.measured_phase},
                 {"error_rad", c.phase_error},
                 {"leakage", c.leakage}});
  }
  return a;
}

Json xeb_series_to_json(const XebSeries& s) {
  Json j;
  j["depths"] = s.depths;
  j["fidelity"] = s.fidelity;
  j["fidelity_stderr"] = s.fidelity_stderr;
  j["leaked_fraction"] = s.leaked_fraction;
  j["decay"] = {{"a", s.decay.a},
                {"b", s.decay.b},
                {"eps", s.decay.eps},
                {"eps_raw", s.decay.eps_raw},
                {"a_stderr", s.decay.a_stderr},
                {"b_stderr", s.decay.b_stderr},
                {"eps_stderr", s.decay.eps_stderr},
                {"offset_fixed", s.decay.offset_fixed}};
  j["leakage"] = {{"offset", s.leakage.offset},
                  {"l_inf", s.leakage.l_inf},
                  {"lambda", s.leakage.lambda},
                  {"leakage_per_cycle", s.leakage.leakage_per_cycle},
                  {"seepage_per_cycle", s.leakage.seepage_per_cycle},
                  {"leakage_stderr", s.leakage.leakage_stderr}};
  j["leaked_run_fraction"] = s.leaked_run_fraction;
  return j;
}

Json xeb_run_to_json(const XebRun& run) {
  Json j;
  Json cfg;
  cfg["depths"] = run.config.depths;
  cfg["circuits"] = run.config.circuits;
  cfg["shots"] = run.config.shots;
  cfg["theta_rad"] = run.config.theta ? Json(*run.config.theta) : Json(nullptr);
  cfg["seed"] = run.config.seed;
  cfg["ideal_uses_calibrated"] = run.config.ideal_uses_calibrated;
  j["config"] = cfg;
  j["reference"] = xeb_series_to_json(run.reference);
  j["interleaved"] = xeb_series_to_json(run.interleaved);
  j["eps_umix"] = run.eps_umix;
  j["eps_tot"] = run.eps_tot;
  j["eps_cz"] = run.gate.eps_cz;
  j["eps_cz_clamped"] = run.gate.clamped;
  j["gate_leakage_per_cycle"] = run.gate_leakage;
  return j;
}

Json sweep_to_json(const SweepResult& s) {
  Json j;
  j["axis1_name"] = s.axis1_name;
  j["axis2_name"] = s.axis2_name;
  j["axis1"] = s.axis1;
  j["axis2"] = s.axis2;
  j["recovery"] = s.recovery;
  j["leakage"] = s.leakage;
  j["phase_rad"] = s.phase;
  if (s.shots) {
    j["shots"] = *s.shots;
  } else {
    j["shots"] = nullptr;
  }
  return j;
}

void write_sweep_csv(std::ostream& os, const SweepResult& s) {
  Csv csv(os);
  csv << s.axis1_name << s.axis2_name << std::string("recovery") << std::string("leakage")
      << std::string("phase_rad");
  csv.end();
  for (std::size_t i = 0; i < s.axis1.size(); ++i) {
    for (std::size_t k = 0; k < s.axis2.size(); ++k) {
      const std::size_t idx = i * s.axis2.size() + k;
      csv << s.axis1[i] << s.axis2[k];
      csv << (idx < s.recovery.size() ? s.recovery[idx] : std::nan(""));
      csv << (idx < s.leakage.size() ? s.leakage[idx] : std::nan(""));
      csv << (idx < s.phase.size() ? s.phase[idx] : std::nan(""));
      csv.end();
    }
  }
}

void write_waveform_csv(std::ostream& os, const FluxDrive& drive, double step) {
  if (!(step > 0.0)) throw DomainError("waveform step must be positive");
  Csv csv(os);
  csv << std::string("time_s") << std::string("flux_high_phi0") << std::string("flux_low_phi0");
  csv.end();
  const auto n = static_cast<std::size_t>(std::floor(drive.duration / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * step;
    csv << t << drive.high(t) << drive.low(t);
    csv.end();
  }
}

void write_phase_table_csv(std::ostream& os, const CalibrationRecord& r) {
  Csv csv(os);
  csv << std::string("t_idle_s") << std::string("phase_rad") << std::string("fit_rad")
      << std::string("residual_rad");
  csv.end();
  for (std::size_t i = 0; i < r.idle_times.size(); ++i) {
    const double fit = r.slope * r.idle_times[i] + r.intercept;
    csv << r.idle_times[i] << r.phases[i] << fit
        << (i < r.residuals.size() ? r.residuals[i] : r.phases[i] - fit);
    csv.end();
  }
}

void write_gate_checks_csv(std::ostream& os, const std::vector<GateCheck>& checks) {
  Csv csv(os);
  csv << std::string("target_rad") << std::string("t_idle_s") << std::string("measured_rad")
      << std::string("error_rad") << std::string("leakage");
  csv.end();
  for (const auto& c : checks) {
    csv << c.target << c.t_idle << c.measured_phase << c.phase_error << c.leakage;
    csv.end();
  }
}

void write_xeb_csv(std::ostream& os, const XebRun& run) {
  Csv csv(os);
  csv << std::string("series") << std::string("depth") << std::string("fidelity")
      << std::string("fidelity_stderr") << std::string("leaked_fraction");
  csv.end();
  for (const auto* s : {&run.reference, &run.interleaved}) {
    const std::string name = s == &run.reference ? "reference" : "interleaved";
    for (std::size_t i = 0; i < s->depths.size(); ++i) {
      csv << name << static_cast<double>(s->depths[i]) << s->fidelity[i]
          << s->fidelity_stderr[i] << s->leaked_fraction[i];
      csv.end();
    }
  }
}

}  // namespace cztheta
