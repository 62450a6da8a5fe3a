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

// Cross-entropy benchmarking of CZ_theta gates on simulated two-qutrit
// channels, with leakage detected in the final readout.
//
// A cycle is a layer of random single-qubit gates, a CZ_pi, and then (when
// interleaved) the gate under test. A depth-M circuit has M cycles followed by
// one more random layer before measurement.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cztheta/calibration.hpp"
#include "cztheta/device.hpp"
#include "cztheta/dynamics.hpp"
#include "cztheta/fitting.hpp"

namespace cztheta {

enum class OneQubitGate : std::uint8_t { x90, y90, z45 };

struct XebConfig {
  std::vector<int> depths{4, 8, 16, 32, 64, 128, 256};
  int circuits = 250;
  /// 0 selects exact expectation values.
  std::uint64_t shots = 2048;
  /// Gate under test; nullopt draws a random theta per cycle from the library.
  std::optional<double> theta = kPi;
  std::uint64_t seed = 0;
  /// Ideal probabilities use the channels' measured conditional phases rather
  /// than the targets.
  bool ideal_uses_calibrated = true;

  /// 30 circuits x 512 shots, depths up to 64.
  static XebConfig desk_scale();
};

/// Throws ConfigError.
void validate(const XebConfig& config);

struct XebCircuit {
  /// M + 1 layers of {high, low} picks.
  std::vector<std::array<OneQubitGate, 2>> layers;
  /// Library index of the gate under test in each cycle.
  std::vector<std::size_t> gates;

  int depth() const { return static_cast<int>(gates.size()); }
};

/// Gates available to the benchmark, indexed by XebCircuit::gates.
struct GateLibrary {
  std::vector<double> targets;
  std::vector<GateChannel> channels;
};

/// Library with `size` gates on a uniform theta grid, from a calibration
/// record. With size 1 the single entry is `theta0`.
GateLibrary build_gate_library(const DeviceParams& dev, const CalibrationRecord& record,
                               std::size_t size, const ChannelOptions& opts,
                               double theta0 = 0.0);

/// Channels and error sources of one cycle.
struct CycleModel {
  GateChannel mixing;
  GateLibrary library;
  /// False runs the reference benchmark of the mixing unitary alone.
  bool interleave = true;
  double eps_1q_high = 0.0;
  double eps_1q_low = 0.0;
  /// Two-qubit depolarizing error per cycle, as an average gate error.
  double injected_depolarizing = 0.0;
  ConfusionMatrix confusion_high = ConfusionMatrix::Identity();
  ConfusionMatrix confusion_low = ConfusionMatrix::Identity();
};

/// Ideal gates, optional single-qubit errors from the device.
CycleModel ideal_cycle_model(double theta);

/// ensemble[d][c] is circuit c at depths[d]. Deterministic in the seed.
std::vector<std::vector<XebCircuit>> sample_circuits(const XebConfig& config,
                                                     std::size_t library_size);

using QutritDensity = Eigen::Matrix<Complex, 9, 9>;

/// Density matrix after the circuit, starting in |00>.
QutritDensity final_state(const XebCircuit& circuit, const CycleModel& model);

/// Reported-outcome probabilities over the nine two-qutrit states after
/// readout confusion.
std::array<double, 9> outcome_probabilities(const XebCircuit& circuit, const CycleModel& model);

std::array<std::uint64_t, 9> simulate_circuit(const XebCircuit& circuit,
                                              const CycleModel& model, std::uint64_t shots,
                                              Rng& rng);

/// Noiseless computational-basis distribution of the circuit.
std::array<double, 4> ideal_probabilities(const XebCircuit& circuit, const CycleModel& model,
                                          bool use_calibrated);

struct PostSelected {
  std::array<double, 4> probs{};
  double leaked_fraction = 0.0;
};

/// Drops outcomes with either qutrit in |2> and renormalizes. Throws
/// NumericError when nothing is left.
PostSelected postselect_and_renormalize(const std::array<double, 9>& weights);

/// Normalized linear cross-entropy of one circuit,
/// (sum q p - 1/D) / (sum p^2 - 1/D) with D = 4. Depth averages use the ratio
/// of the summed numerators and denominators.
struct XebTerms {
  double numerator = 0.0;
  double denominator = 0.0;
  double fidelity() const { return numerator / denominator; }
};

XebTerms estimate_fidelity(const std::array<double, 4>& observed,
                           const std::array<double, 4>& ideal);

struct GateError {
  double eps_cz = 0.0;
  /// The raw estimate was negative and has been set to 0.
  bool clamped = false;
};

/// eps_cz = 1 - (1 - eps_tot) / (1 - eps_umix).
GateError extract_gate_error(double eps_tot, double eps_umix);

/// Leakage per cycle from the leaked fraction versus depth.
SaturationFit extract_leakage(const std::vector<double>& depths,
                              const std::vector<double>& leaked);

struct XebSeries {
  std::vector<int> depths;
  std::vector<double> fidelity;
  /// Jackknife over circuits.
  std::vector<double> fidelity_stderr;
  std::vector<double> leaked_fraction;
  DecayFit decay;
  SaturationFit leakage;
  /// Fraction of all shots discarded by post-selection.
  double leaked_run_fraction = 0.0;
};

XebSeries run_series(const XebConfig& config, const CycleModel& model);

struct XebRun {
  XebConfig config;
  XebSeries reference;
  XebSeries interleaved;
  double eps_umix = 0.0;
  double eps_tot = 0.0;
  GateError gate;
  /// Interleaved minus reference leakage per cycle.
  double gate_leakage = 0.0;
};

/// Reference and interleaved series on the same circuits.
XebRun run_xeb(const XebConfig& config, const CycleModel& model);

}  // namespace cztheta
