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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "svg.hpp"

namespace cztheta::cli {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class Writer, class Arg>
std::string to_csv(Writer writer, const Arg& arg) {
  std::ostringstream os;
  writer(os, arg);
  return os.str();
}

void emit_summary(OutputDir& out, const Json& summary) {
  out.write("summary.json", dump(summary));
  std::cout << summary.dump(2) << '\n';
}

void write_sweep(OutputDir& out, const Options& opts, const std::string& stem,
                 const SweepResult& s) {
  if (opts.format == Format::json) {
    out.write(stem + ".json", dump(sweep_to_json(s)));
  } else {
    out.write(stem + ".csv", to_csv(write_sweep_csv, s));
  }
}

void write_phase_table(OutputDir& out, const Options& opts, const CalibrationRecord& r) {
  if (opts.format == Format::json) {
    Json j;
    j["idle_times_s"] = r.idle_times;
    j["phases_rad"] = r.phases;
    j["residuals_rad"] = r.residuals;
    j["slope_rad_per_s"] = r.slope;
    j["intercept_rad"] = r.intercept;
    out.write("phase_table.json", dump(j));
  } else {
    out.write("phase_table.csv", to_csv(write_phase_table_csv, r));
  }
}

void write_checks(OutputDir& out, const Options& opts, const std::vector<GateCheck>& checks) {
  if (opts.format == Format::json) {
    out.write("gate_checks.json", dump(gate_checks_to_json(checks)));
  } else {
    out.write("gate_checks.csv", to_csv(write_gate_checks_csv, checks));
  }
}

std::vector<double> scaled(const std::vector<double>& v, double factor) {
  std::vector<double> r(v.size());
  std::transform(v.begin(), v.end(), r.begin(), [factor](double x) { return x * factor; });
  return r;
}

void plot_phase_table(OutputDir& out, const CalibrationRecord& r) {
  Series measured{"measured", scaled(r.idle_times, 1e9), r.phases, true};
  Series fit{"linear fit", measured.x, {}, false};
  for (double t : r.idle_times) fit.y.push_back(r.slope * t + r.intercept);
  out.write("phase_table.svg", line_plot("Conditional phase vs idle time", "t_idle (ns)",
                                         "phase (rad)", {measured, fit}));
}

struct Reference {
  CalibrationRecord record;
  bool calibrated_here = false;
};

CalibrationRecord load_record(const std::string& path) {
  return record_from_json(read_json_file(path));
}

Reference reference_record(const DeviceSimulator& sim, const RunConfig& cfg,
                           const Options& opts) {
  if (!opts.record_path.empty()) return {load_record(opts.record_path), false};
  return {calibrate(sim, cfg.calibration), true};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct CheckSummary {
  double max_phase_error = 0.0;
  double max_leakage = 0.0;
};

CheckSummary summarize(const std::vector<GateCheck>& checks) {
  CheckSummary s;
  for (const auto& c : checks) {
    s.max_phase_error = std::max(s.max_phase_error, std::abs(c.phase_error));
    s.max_leakage = std::max(s.max_leakage, c.leakage);
  }
  return s;
}

// Thresholds of the calibrated gate set.
constexpr double kSlopeTolerance = 0.01;
constexpr double kMaxGateLeakage = 1e-4;

Json gate_set_thresholds(const RunConfig& cfg, const CalibrationRecord& r,
                         const std::vector<GateCheck>& checks, bool& ok) {
  const double slope_ratio = -r.slope / cfg.device.delta_max();
  const CheckSummary cs = summarize(checks);
  const double max_residual = max_abs(r.residuals);
  Json j;
  j["max_residual_rad"] = max_residual;
  j["slope_over_delta_max"] = slope_ratio;
  j["max_phase_error_rad"] = cs.max_phase_error;
  j["max_leakage"] = cs.max_leakage;
  const bool residual_ok = max_residual < cfg.calibration.residual_limit;
  const bool slope_ok = std::abs(slope_ratio - 1.0) < kSlopeTolerance;
  const bool phase_ok = cs.max_phase_error < cfg.calibration.residual_limit;
  const bool leak_ok = cs.max_leakage < kMaxGateLeakage;
  j["thresholds"] = {{"residual", residual_ok},
                     {"slope", slope_ok},
                     {"phase_error", phase_ok},
                     {"leakage", leak_ok}};
  ok = residual_ok && slope_ok && phase_ok && leak_ok;
  return j;
}

}  // namespace

Json Options::to_json() const {
  Json j;
  j["shots"] = shots ? Json(*shots) : Json(nullptr);
  j["exact"] = exact;
  j["full_scale"] = full_scale;
  j["format"] = format == Format::json ? "json" : "csv";
  j["plot"] = plot;
  j["record"] = record_path;
  j["theta"] = theta;
  j["gates"] = gates ? Json(*gates) : Json(nullptr);
  return j;
}

RunConfig resolve_config(const Options& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_run_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.simulator.seed = cfg.seed;
  cfg.xeb.config.seed = cfg.seed;
  if (opts.full_scale) {
    const XebConfig paper;
    cfg.xeb.config.depths = paper.depths;
    cfg.xeb.config.circuits = paper.circuits;
    cfg.xeb.config.shots = paper.shots;
  }
  if (opts.shots) {
    if (*opts.shots == 0) throw ConfigError("--shots must be positive; use --exact");
    cfg.simulator.shots = *opts.shots;
    cfg.xeb.config.shots = *opts.shots;
  }
  if (opts.exact) {
    cfg.simulator.shots.reset();
    cfg.xeb.config.shots = 0;
  }
  if (!opts.theta.empty()) {
    if (opts.theta == "random") {
      cfg.xeb.config.theta.reset();
    } else {
      std::size_t used = 0;
      double theta = 0.0;
      try {
        theta = std::stod(opts.theta, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != opts.theta.size() || !std::isfinite(theta)) {
        throw ConfigError("--theta must be 'random' or an angle in radians");
      }
      cfg.xeb.config.theta = theta;
    }
  }
  if (opts.gates) {
    if (*opts.gates < 1) throw ConfigError("--gates must be >= 1");
    cfg.leakage_amp.gates = *opts.gates;
  }
  validate(cfg.xeb.config);
  return cfg;
}

int cmd_chevron(const RunConfig& cfg, const Options& opts, OutputDir& out) {
  const DeviceSimulator sim(cfg.device, cfg.simulator);
  const GateParams base = initial_gate(cfg.device, cfg.calibration);
  const auto durations = cfg.chevron.half_duration.values();
  std::vector<double> phis;
  for (double off : cfg.chevron.phi_low_offset.values()) phis.push_back(base.phi_low + off);
  const SweepResult s =
      chevron_scan(sim, base, durations, phis, cfg.chevron.half_waveform);
  write_sweep(out, opts, "chevron", s);

  Json summary;
  summary["command"] = "chevron";
  summary["half_waveform"] = cfg.chevron.half_waveform;
  summary["resonant_phi_low_phi0"] = base.phi_low;
  bool ok = true;
  const std::size_t nt = s.axis1.size();
  const std::size_t np = s.axis2.size();
  const auto& signal = cfg.chevron.half_waveform ? s.leakage : s.recovery;
  if (cfg.chevron.half_waveform && nt >= 5) {
    // The column with the deepest exchange sits on resonance.
    std::size_t best = 0;
    double best_peak = -1.0;
    for (std::size_t k = 0; k < np; ++k) {
      double peak = 0.0;
      for (std::size_t i = 0; i < nt; ++i) peak = std::max(peak, signal[i * np + k]);
      if (peak > best_peak) {
        best_peak = peak;
        best = k;
      }
    }
    std::vector<double> column(nt);
    for (std::size_t i = 0; i < nt; ++i) column[i] = signal[i * np + best];
    const double g2 = cfg.device.g2();
    const double fitted = extract_coupling(s.axis1, column, g2);
    const double ratio = fitted / g2;
    summary["resonance_phi_low_phi0"] = s.axis2[best];
    summary["peak_p2"] = best_peak;
    summary["fitted_g2_mhz"] = fitted / mhz(1.0);
    summary["device_g2_mhz"] = g2 / mhz(1.0);
    ok = std::abs(ratio - 1.0) < 0.05;
    summary["thresholds"] = {{"coupling_within_5pct", ok}};
  }
  if (opts.plot) {
    out.write("chevron.svg",
              heatmap(cfg.chevron.half_waveform ? "P2 after half pulse" : "Recovery",
                      "half duration (ns)", "phi_low (Phi0)", scaled(s.axis1, 1e9), s.axis2,
                      signal));
  }
  summary["passed"] = ok;
  emit_summary(out, summary);
  return ok ? kOk : kThreshold;
}

int cmd_calibrate(const RunConfig& cfg, const Options& opts, OutputDir& out) {
  const DeviceSimulator sim(cfg.device, cfg.simulator);
  std::optional<GateParams> start;
  if (!opts.record_path.empty()) start = load_record(opts.record_path).params;
  const CalibrationRecord r = calibrate(sim, cfg.calibration, start);
  const auto checks = verify_gate_set(sim, r, cfg.verify_targets);

  out.write("record.json", dump(record_to_json(r)));
  write_phase_table(out, opts, r);
  write_checks(out, opts, checks);
  const FluxDrive drive = make_drive(gate_for_phase(r, kPi), cfg.device, cfg.simulator.shape,
                                     cfg.simulator.substeps);
  out.write("waveform.csv",
            [&] {
              std::ostringstream os;
              write_waveform_csv(os, drive, cfg.device.sample_period / 4.0);
              return os.str();
            }());
  if (opts.plot) plot_phase_table(out, r);

  bool ok = false;
  Json summary;
  summary["command"] = "calibrate";
  summary["params"] = gate_params_to_json(r.params);
  summary.update(gate_set_thresholds(cfg, r, checks, ok));
  summary["passed"] = ok;
  emit_summary(out, summary);
  return ok ? kOk : kThreshold;
}

int cmd_leakage_amp(const RunConfig& cfg, const Options& opts, OutputDir& out) {
  const DeviceSimulator sim(cfg.device, cfg.simulator);
  GateParams p;
  if (!opts.record_path.empty()) {
    p = gate_for_phase(load_record(opts.record_path), 0.0);
  } else {
    p = tune_half_waveform(sim, initial_gate(cfg.device, cfg.calibration), cfg.calibration);
    p.t_idle = approximate_idle_time(sim, p, 0.0, cfg.calibration);
  }
  std::vector<double> phis;
  for (double off : cfg.leakage_amp.phi_low_offset.values()) phis.push_back(p.phi_low + off);
  const auto seps = cfg.leakage_amp.separation.values();
  const SweepResult s =
      leakage_amplification_scan(sim, p, phis, seps, cfg.leakage_amp.gates);
  write_sweep(out, opts, "leakage_amp", s);

  const std::size_t ns_ = seps.size();
  std::size_t best = 0;
  std::size_t loudest = 0;
  double best_worst = std::numeric_limits<double>::infinity();
  double loudest_span = -1.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const auto first = s.leakage.begin() + static_cast<std::ptrdiff_t>(i * ns_);
    const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(ns_));
    if (*hi < best_worst) {
      best_worst = *hi;
      best = i;
    }
    if (*hi - *lo > loudest_span) {
      loudest_span = *hi - *lo;
      loudest = i;
    }
  }
  Json summary;
  summary["command"] = "leakage-amp";
  summary["gates"] = cfg.leakage_amp.gates;
  summary["start_phi_low_phi0"] = p.phi_low;
  summary["best_phi_low_phi0"] = phis[best];
  summary["best_worst_case_leakage"] = best_worst;
  const double delta_max = cfg.device.delta_max();
  summary["expected_fringe_period_ns"] = kTwoPi / delta_max * 1e9;
  bool ok = true;
  // The fringe is only fitted when the map resolves at least two periods.
  const double span = seps.empty() ? 0.0 : seps.back() - seps.front();
  if (ns_ >= 16 && span * delta_max >= 2.0 * kTwoPi && loudest_span > 1e-9) {
    std::vector<double> column(s.leakage.begin() + static_cast<std::ptrdiff_t>(loudest * ns_),
                               s.leakage.begin() + static_cast<std::ptrdiff_t>((loudest + 1) * ns_));
    // The n-gate fringe is a sharply peaked periodic pattern; fit its
    // fundamental with enough harmonics to follow the peaks.
    const double omega = fit_period_frequency(seps, column, 0.75 * delta_max, 1.5 * delta_max,
                                              std::min<int>(cfg.leakage_amp.gates, (ns_ - 2) / 4));
    summary["fringe_phi_low_phi0"] = phis[loudest];
    summary["fringe_period_ns"] = kTwoPi / omega * 1e9;
    ok = std::abs(omega / delta_max - 1.0) < 0.05;
    summary["thresholds"] = {{"fringe_period_within_5pct", ok}};
  }
  if (opts.plot) {
    out.write("leakage_amp.svg",
              heatmap("Leakage after " + std::to_string(cfg.leakage_amp.gates) + " gates",
                      "phi_low (Phi0)", "separation (ns)", phis, scaled(seps, 1e9), s.leakage));
  }
  summary["passed"] = ok;
  emit_summary(out, summary);
  return ok ? kOk : kThreshold;
}

int cmd_phase_sweep(const RunConfig& cfg, const Options& opts, OutputDir& out) {
  const DeviceSimulator sim(cfg.device, cfg.simulator);
  const Reference ref = reference_record(sim, cfg, opts);
  CalibrationRecord r = characterize_phase_vs_idle(sim, ref.record.params, cfg.calibration);
  r.vz_high = ref.record.vz_high;
  r.vz_low = ref.record.vz_low;
  const auto checks = verify_gate_set(sim, r, cfg.verify_targets);
  write_phase_table(out, opts, r);
  write_checks(out, opts, checks);
  if (opts.plot) plot_phase_table(out, r);

  bool ok = false;
  Json summary;
  summary["command"] = "phase-sweep";
  summary["calibrated_here"] = ref.calibrated_here;
  summary["slope_rad_per_ns"] = r.slope * 1e-9;
  summary["intercept_rad"] = r.intercept;
  summary.update(gate_set_thresholds(cfg, r, checks, ok));
  summary["passed"] = ok;
  out.write("fit_report.json", dump(summary));
  emit_summary(out, summary);
  return ok ? kOk : kThreshold;
}

int cmd_xeb(const RunConfig& cfg, const Options& opts, OutputDir& out) {
  const DeviceSimulator sim(cfg.device, cfg.simulator);
  const Reference ref = reference_record(sim, cfg, opts);
  ChannelOptions co;
  co.shape = cfg.simulator.shape;
  co.noise = cfg.xeb.noise;
  co.propagation = cfg.simulator.propagation;
  const XebConfig& xc = cfg.xeb.config;

  CycleModel model;
  model.mixing = build_gate_library(cfg.device, ref.record, 1, co, kPi).channels.front();
  model.library = xc.theta ? build_gate_library(cfg.device, ref.record, 1, co, *xc.theta)
                           : build_gate_library(cfg.device, ref.record, cfg.xeb.library_size, co);
  if (cfg.xeb.noise) {
    model.eps_1q_high = cfg.device.eps_1q_high;
    model.eps_1q_low = cfg.device.eps_1q_low;
    model.confusion_high = cfg.device.confusion_high;
    model.confusion_low = cfg.device.confusion_low;
  }
  model.injected_depolarizing = cfg.xeb.injected_depolarizing;
  const XebRun run = run_xeb(xc, model);

  if (opts.format == Format::json) {
    out.write("xeb.json", dump(xeb_run_to_json(run)));
  } else {
    out.write("xeb.json", dump(xeb_run_to_json(run)));
    out.write("xeb.csv", to_csv(write_xeb_csv, run));
  }
  if (opts.plot) {
    std::vector<double> depths(run.reference.depths.begin(), run.reference.depths.end());
    out.write("xeb.svg",
              line_plot("XEB fidelity", "cycles", "fidelity",
                        {{"reference", depths, run.reference.fidelity, true},
                         {"interleaved", depths, run.interleaved.fidelity, true}}));
    out.write("xeb_leakage.svg",
              line_plot("Leaked fraction", "cycles", "population",
                        {{"reference", depths, run.reference.leaked_fraction, true},
                         {"interleaved", depths, run.interleaved.leaked_fraction, true}}));
  }

  Json summary;
  summary["command"] = "xeb";
  summary["calibrated_here"] = ref.calibrated_here;
  summary["theta"] = xc.theta ? Json(*xc.theta) : Json("random");
  summary["eps_umix"] = run.eps_umix;
  summary["eps_tot"] = run.eps_tot;
  summary["eps_cz"] = run.gate.eps_cz;
  summary["eps_cz_clamped"] = run.gate.clamped;
  summary["gate_leakage_per_cycle"] = run.gate_leakage;
  // The stage succeeds when both decays were fitted with usable errors.
  const bool ok = std::isfinite(run.reference.decay.eps_stderr) &&
                  std::isfinite(run.interleaved.decay.eps_stderr) &&
                  run.reference.decay.eps_stderr >= 0.0 && run.interleaved.decay.eps_stderr >= 0.0;
  summary["thresholds"] = {{"decay_fits_usable", ok}};
  summary["passed"] = ok;
  emit_summary(out, summary);
  return ok ? kOk : kThreshold;
}

}  // namespace cztheta::cli
