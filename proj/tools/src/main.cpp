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

// cztheta: drives simulation, calibration and benchmarking of CZ_theta gates.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "commands.hpp"

namespace {

using cztheta::cli::ExitCode;
using cztheta::cli::Options;

struct Command {
  const char* name;
  const char* help;
  int (*run)(const cztheta::RunConfig&, const Options&, cztheta::cli::OutputDir&);
};

const Command kCommands[] = {
    {"chevron", "Exchange chevron over half-pulse duration and amplitude",
     cztheta::cli::cmd_chevron},
    {"calibrate", "Full calibration pipeline; writes the calibration record",
     cztheta::cli::cmd_calibrate},
    {"leakage-amp", "Amplified leakage over amplitude and gate separation",
     cztheta::cli::cmd_leakage_amp},
    {"phase-sweep", "Conditional phase versus idle time with a linear fit",
     cztheta::cli::cmd_phase_sweep},
    {"xeb", "Reference and interleaved cross-entropy benchmarking", cztheta::cli::cmd_xeb},
};

std::string default_out_dir() {
  const char* env = std::getenv("CZTHETA_OUT");
  return env && *env ? env : "cztheta_out";
}

int run(const Command& cmd, const Options& opts) {
  cztheta::cli::RunManifest manifest;
  manifest.command = cmd.name;
  manifest.config_path = opts.config_path.empty() ? "builtin" : opts.config_path;
  manifest.output_dir = opts.out.empty() ? default_out_dir() : opts.out;
  manifest.options = opts.to_json();
  manifest.started = cztheta::cli::utc_timestamp();

  std::optional<cztheta::cli::OutputDir> out;
  int code = cztheta::cli::kOk;
  try {
    const cztheta::RunConfig cfg = cztheta::cli::resolve_config(opts);
    manifest.seed = cfg.seed;
    out.emplace(manifest.output_dir);
    out->write("config.json", cztheta::run_config_to_json(cfg).dump(2) + "\n");
    code = cmd.run(cfg, opts, *out);
    manifest.status = code == cztheta::cli::kOk ? "ok" : "threshold not met";
  } catch (const cztheta::ConfigError& e) {
    code = cztheta::cli::kConfig;
    manifest.status = std::string("config error: ") + e.what();
  } catch (const cztheta::CalibrationError& e) {
    code = cztheta::cli::kConvergence;
    manifest.status = std::string("calibration did not converge: ") + e.what();
    for (const auto& line : e.trace()) std::cerr << "  " << line << '\n';
  } catch (const cztheta::FitError& e) {
    code = cztheta::cli::kFit;
    manifest.status = std::string("fit error: ") + e.what();
  } catch (const nlohmann::json::exception& e) {
    code = cztheta::cli::kConfig;
    manifest.status = std::string("config error: ") + e.what();
  } catch (const cztheta::DomainError& e) {
    code = cztheta::cli::kConfig;
    manifest.status = std::string("invalid parameters: ") + e.what();
  } catch (const std::exception& e) {
    code = cztheta::cli::kInternal;
    manifest.status = std::string("error: ") + e.what();
  }
  if (code != cztheta::cli::kOk) std::cerr << "cztheta " << cmd.name << ": " << manifest.status << '\n';

  manifest.exit_code = code;
  manifest.finished = cztheta::cli::utc_timestamp();
  try {
    if (!out) out.emplace(manifest.output_dir);
    manifest.artifacts = out->artifacts();
    out->write("manifest.json", manifest.to_json().dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "cztheta: cannot write manifest: " << e.what() << '\n';
    if (code == cztheta::cli::kOk) code = cztheta::cli::kInternal;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation, calibration and benchmarking of continuous CZ_theta gates"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 threshold not met, 2 config error, 3 calibration did not "
      "converge, 4 fit error, 5 other error.\nCZTHETA_OUT sets the default output directory.");

  Options opts;
  std::string format = "csv";
  const Command* selected = nullptr;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", opts.config_path, "JSON run config (default: built-in device)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Seed for circuits and shot noise");
    sub->add_option("--out", opts.out, "Output directory");
    sub->add_option("--shots", opts.shots, "Shots per measurement");
    sub->add_flag("--exact", opts.exact, "Expectation values instead of sampled shots");
    sub->add_flag("--full-scale", opts.full_scale,
                  "Benchmark with 250 circuits x 2048 shots up to depth 256");
    sub->add_option("--format", format, "Tabular output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--plot", opts.plot, "Also write SVG renders");
    if (std::string(cmd.name) != "chevron") {
      sub->add_option("--record", opts.record_path,
                      "Calibration record to start from instead of calibrating")
          ->check(CLI::ExistingFile);
    }
    if (std::string(cmd.name) == "xeb") {
      sub->add_option("--theta", opts.theta, "Gate under test: angle in radians or 'random'");
    }
    if (std::string(cmd.name) == "leakage-amp") {
      sub->add_option("--gates", opts.gates, "Number of gates per sequence");
    }
    sub->callback([&selected, &cmd] { selected = &cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cztheta::cli::kConfig;
  }
  opts.format = format == "json" ? cztheta::cli::Format::json : cztheta::cli::Format::csv;
  return run(*selected, opts);
}
