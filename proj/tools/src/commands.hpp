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

// Subcommands of the cztheta tool.

#pragma once

#include <optional>
#include <string>

#include "cztheta/io.hpp"
#include "manifest.hpp"

namespace cztheta::cli {

enum class Format { csv, json };

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kThreshold = 1,
  kConfig = 2,
  kConvergence = 3,
  kFit = 4,
  kInternal = 5,
};

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint64_t> shots;
  bool exact = false;
  bool full_scale = false;
  Format format = Format::csv;
  bool plot = false;
  /// Calibration record to start from instead of calibrating.
  std::string record_path;
  /// xeb: gate under test, "random" or an angle in radians.
  std::string theta;
  /// leakage-amp: number of gates.
  std::optional<int> gates;

  Json to_json() const;
};

/// Config file (or built-in defaults) with the command-line overrides applied.
RunConfig resolve_config(const Options& opts);

/// Each command writes its artifacts and a summary, prints the summary and
/// returns kOk or kThreshold. Errors propagate as exceptions.
int cmd_chevron(const RunConfig& cfg, const Options& opts, OutputDir& out);
int cmd_calibrate(const RunConfig& cfg, const Options& opts, OutputDir& out);
int cmd_leakage_amp(const RunConfig& cfg, const Options& opts, OutputDir& out);
int cmd_phase_sweep(const RunConfig& cfg, const Options& opts, OutputDir& out);
int cmd_xeb(const RunConfig& cfg, const Options& opts, OutputDir& out);

}  // namespace cztheta::cli
