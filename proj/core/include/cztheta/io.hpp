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

// Configuration files and result serialization.
//
// Config documents spell units in field names: "*_ghz" and "*_mhz" hold
// omega / 2 pi, "*_us" and "*_ns" hold times. Unknown keys are rejected so
// that misspelled fields do not silently fall back to defaults.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cztheta/benchmarking.hpp"
#include "cztheta/calibration.hpp"

namespace cztheta {

using Json = nlohmann::ordered_json;

/// Inclusive linear range.
struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  std::vector<double> values() const;
};

struct ChevronSettings {
  SweepRange half_duration{ns(5.0), ns(45.0), 41};
  /// Relative to the resonant low-qubit amplitude.
  SweepRange phi_low_offset{-0.006, 0.006, 41};
  bool half_waveform = true;
};

struct LeakageAmpSettings {
  /// Relative to the starting low-qubit amplitude.
  SweepRange phi_low_offset{-2e-4, 2e-4, 21};
  SweepRange separation{0.0, ns(1.0), 201};
  int gates = 16;
};

struct XebSettings {
  XebConfig config = XebConfig::desk_scale();
  /// Gates in the random-theta library.
  std::size_t library_size = 32;
  bool noise = true;
  double injected_depolarizing = 0.0;
};

struct RunConfig {
  DeviceParams device;
  SimulatorOptions simulator;
  CalibrationConfig calibration;
  ChevronSettings chevron;
  LeakageAmpSettings leakage_amp;
  XebSettings xeb;
  std::vector<double> verify_targets{0.0,        kPi / 4.0,  kPi / 2.0,       3.0 * kPi / 4.0,
                                     kPi,        5 * kPi / 4, 3.0 * kPi / 2.0, 7.0 * kPi / 4.0};
  /// Drives the simulator shot noise and the XEB circuits.
  std::uint64_t seed = 2026;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
DeviceParams device_from_json(const Json& j);
Json device_to_json(const DeviceParams& dev);

RunConfig run_config_from_json(const Json& j);
Json run_config_to_json(const RunConfig& cfg);

/// Throws ConfigError if the file cannot be read or parsed.
Json read_json_file(const std::string& path);
RunConfig load_run_config(const std::string& path);

Json gate_params_to_json(const GateParams& p);
GateParams gate_params_from_json(const Json& j);

Json record_to_json(const CalibrationRecord& r);
CalibrationRecord record_from_json(const Json& j);

Json gate_checks_to_json(const std::vector<GateCheck>& checks);
Json xeb_run_to_json(const XebRun& run);
Json xeb_series_to_json(const XebSeries& s);
Json sweep_to_json(const SweepResult& s);

void write_sweep_csv(std::ostream& os, const SweepResult& s);
/// Flux of both lines sampled every `step` over the drive.
void write_waveform_csv(std::ostream& os, const FluxDrive& drive, double step);
void write_phase_table_csv(std::ostream& os, const CalibrationRecord& r);
void write_gate_checks_csv(std::ostream& os, const std::vector<GateCheck>& checks);
void write_xeb_csv(std::ostream& os, const XebRun& run);

std::string to_string(ModelKind m);
std::string to_string(PulseShape s);

}  // namespace cztheta
