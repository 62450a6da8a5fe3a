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

// Calibration of the continuous CZ_theta gate set on a simulated device.
//
// Measurements mirror the experimental sequences: three-level populations of
// the high-frequency qubit after preparing |11>, and Ramsey fringes on one
// qubit with the other as control.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cztheta/dynamics.hpp"

namespace cztheta {

enum class ModelKind { two_level, six_level };

struct SimulatorOptions {
  ModelKind model = ModelKind::six_level;
  PulseShape shape = PulseShape::sampled;
  int substeps = 64;
  PropagationOptions propagation;
  /// Absent: exact expectation values. Present: readout confusion and
  /// multinomial sampling with this many shots.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

/// Gate propagator in a frame where gates and zero-flux gaps compose by
/// matrix multiplication. Six-level: 6x6 reference frame. Two-level: 2x2 on
/// {11, 20} embedded as a 6x6 operator acting trivially elsewhere.
struct GateEvolution {
  Eigen::Matrix<Complex, 6, 6> u;
  double duration = 0.0;
};

struct Populations {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

class DeviceSimulator {
 public:
  DeviceSimulator(DeviceParams dev, SimulatorOptions opts = {});

  const DeviceParams& device() const { return dev_; }
  const SimulatorOptions& options() const { return opts_; }

  GateEvolution evolve(const GateParams& p) const;
  /// Zero-flux evolution over `gap` in the same frame as evolve().
  Eigen::Matrix<Complex, 6, 6> gap(double gap) const;
  /// Converts an evolution spanning `elapsed` to the idle frame.
  Eigen::Matrix<Complex, 6, 6> idle_frame(const Eigen::Matrix<Complex, 6, 6>& u,
                                          double elapsed) const;

  /// High-qubit populations after preparing |11> and applying the gate.
  Populations measure_population_recovery(const GateParams& p) const;
  /// The same for n gates separated by zero-flux gaps of length t_sep.
  Populations measure_population_recovery(const GateParams& p, int n, double t_sep) const;
  Populations measure_population_recovery(const GateEvolution& g, int n, double t_sep) const;

  /// Conditional phase from Ramsey fringes of the low qubit with the high
  /// qubit in |0> and |1>. Throws FitError if a fringe contrast is below 0.1.
  double measure_conditional_phase(const GateParams& p) const;

  /// Single-qubit dynamic phases {high, low} from Ramsey fringes with the
  /// other qubit in |0>.
  std::pair<double, double> measure_dynamic_phases(const GateParams& p) const;

  /// Exact analysis of a gate in the idle frame.
  PropagationResult analyze(const GateParams& p) const;

 private:
  Populations readout(const Populations& exact) const;
  double ramsey_phase(const Eigen::Matrix<Complex, 6, 6>& u_idle, bool target_low,
                      int control_level) const;

  DeviceParams dev_;
  SimulatorOptions opts_;
  // Idle eigenbasis; readout assigns levels in this basis.
  Eigen::Matrix<Complex, 6, 6> dressed_;
  mutable std::uint64_t calls_ = 0;
};

struct SweepResult {
  std::string axis1_name;
  std::string axis2_name;
  std::vector<double> axis1;
  std::vector<double> axis2;
  /// Row-major over (axis1, axis2).
  std::vector<double> recovery;
  std::vector<double> leakage;
  /// Conditional phase; empty when the scan does not measure it.
  std::vector<double> phase;
  std::optional<std::uint64_t> shots;
};

/// Grid over half-pulse duration t (axis1) and low-qubit amplitude (axis2).
/// With half_waveform the unipolar half pulse is measured (exchange chevron),
/// otherwise the full net-zero gate with t_int = 2 t (recovery and phase).
SweepResult chevron_scan(const DeviceSimulator& sim, const GateParams& base,
                         const std::vector<double>& half_durations,
                         const std::vector<double>& phi_lows, bool half_waveform = true);

/// Exchange frequency from |2> population versus half-pulse duration.
/// Returns the fitted angular frequency.
double extract_coupling(const std::vector<double>& durations, const std::vector<double>& p2,
                        double omega_guess);

/// |2> population after n gates versus low amplitude (axis1) and
/// separation (axis2).
SweepResult leakage_amplification_scan(const DeviceSimulator& sim, const GateParams& base,
                                       const std::vector<double>& phi_lows,
                                       const std::vector<double>& separations, int n);

struct CalibrationConfig {
  int sweep_points = 5;
  double sweep_span = 0.02;
  double tolerance = 1e-4;
  int max_iterations = 10;
  int amplification_gates = 16;
  /// Amplitude grid step as a dimensionless detuning Delta / g2.
  double detuning_step = 4e-3;
  int detuning_steps = 12;
  int separation_points = 48;
  int table_points = 12;
  /// Start of the idle-time table; 0 selects default_idle_base().
  double idle_base = 0.0;
  double buffer = ns(10.0);
  double residual_limit = kPi / 180.0;
  double virtual_z_limit = kPi / 180.0;
};

struct CalibrationRecord {
  GateParams params;
  std::vector<double> idle_times;
  std::vector<double> phases;  // unwrapped
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  double vz_high = 0.0;
  double vz_low = 0.0;
  std::string interpolator = "cubic_spline";
  std::vector<std::string> trace;
};

/// Iterated 5-point quadratic sweeps of phi_low and t_int maximizing the |2>
/// population after one half waveform.
GateParams tune_half_waveform(const DeviceSimulator& sim, const GateParams& init,
                              const CalibrationConfig& cfg = {},
                              std::vector<std::string>* trace = nullptr);

/// Idle time at which the conditional phase is closest to theta, from a
/// linear fit of a few measured points.
double approximate_idle_time(const DeviceSimulator& sim, const GateParams& p, double theta,
                             const CalibrationConfig& cfg = {});

/// Scans phi_low on a grid equivalent to cfg.detuning_step and picks the
/// value minimizing the maximum over separations of the amplified leakage.
/// The gate must be at its CZ_0 point.
GateParams fine_tune_detuning(const DeviceSimulator& sim, const GateParams& params,
                              const CalibrationConfig& cfg = {},
                              std::vector<std::string>* trace = nullptr);

/// Minimizes single-gate leakage over t_int. The gate must be at its CZ_pi
/// point; a flat objective (span < 1e-8) is refused.
GateParams fine_tune_interaction_time(const DeviceSimulator& sim, const GateParams& params,
                                      const CalibrationConfig& cfg = {},
                                      std::vector<std::string>* trace = nullptr);

/// Measures the conditional phase on cfg.table_points idle times spanning
/// slightly more than one period and fits a line.
CalibrationRecord characterize_phase_vs_idle(const DeviceSimulator& sim,
                                             const GateParams& params,
                                             const CalibrationConfig& cfg = {});

/// Idle time realizing theta by cubic-spline inversion of the phase table.
double idle_time_for_phase(const CalibrationRecord& record, double theta);

/// Measures dynamic phases over the record's idle grid, stores their means.
void calibrate_virtual_z(const DeviceSimulator& sim, CalibrationRecord& record,
                         const CalibrationConfig& cfg = {});

/// Default starting point: resonant amplitudes, t_int = 2 pi / g2.
GateParams initial_gate(const DeviceParams& dev, const CalibrationConfig& cfg = {});

/// Four combined (digital and line) filter widths of the slower line.
double default_idle_base(const DeviceParams& dev);

/// Full pipeline. Throws CalibrationError with the accumulated trace. With
/// `start` the initial guess and half-waveform tuning are skipped and the
/// fine-tuning stages run from the given parameters.
CalibrationRecord calibrate(const DeviceSimulator& sim, const CalibrationConfig& cfg = {},
                            const std::optional<GateParams>& start = std::nullopt);

/// Gate parameters of CZ_theta from a record.
GateParams gate_for_phase(const CalibrationRecord& record, double theta);

struct GateCheck {
  double target = 0.0;
  double t_idle = 0.0;
  double measured_phase = 0.0;
  double phase_error = 0.0;
  double leakage = 0.0;
};

/// Re-measures phase and leakage of each target.
std::vector<GateCheck> verify_gate_set(const DeviceSimulator& sim,
                                       const CalibrationRecord& record,
                                       const std::vector<double>& thetas);

}  // namespace cztheta
