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

// Net-zero flux pulse synthesis and conversion to detuning trajectories.
//
// A gate is two rectangles of opposite sign separated by an idle gap. The
// rectangle edges sit at arbitrary (sub-sample) times; the pulse is smoothed
// by a digital Gaussian and then by the Gaussian line response of each flux
// line.

#pragma once

#include <functional>
#include <vector>

#include "cztheta/device.hpp"

namespace cztheta {

struct GateParams {
  double phi_high = 0.0;
  double phi_low = 0.0;
  double t_int = 0.0;
  double t_idle = 0.0;
  double buffer = ns(10.0);
  /// Largest idle time of the gate set. When t_idle < t_idle_max the post
  /// buffer is extended so every gate of the set has the same duration.
  double t_idle_max = 0.0;
  /// Only the first rectangle (length t_int / 2) is played. Used for the
  /// exchange chevron and half-waveform tuning; the pulse is not net-zero.
  bool single_half = false;
};

/// Throws DomainError on negative or non-finite timing fields.
void validate(const GateParams& p);

/// Nominal edge times of the two rectangles.
struct PulseTiming {
  double on1 = 0.0;
  double off1 = 0.0;
  double on2 = 0.0;
  double off2 = 0.0;
  double duration = 0.0;
};

PulseTiming pulse_timing(const GateParams& p);

/// Gaussian-filtered rectangle pair +A, -A evaluated analytically. With
/// sigma = 0 the bare rectangles are returned (edges take the midpoint value).
double filtered_pulse(const PulseTiming& timing, double amplitude, double sigma, double t);

/// Integral of filtered_pulse over [a, b].
double filtered_pulse_integral(const PulseTiming& timing, double amplitude, double sigma,
                               double a, double b);

enum class SampleMode {
  /// Mean of the filtered pulse over each sample period. Keeps the sample sum
  /// at exactly zero up to rounding.
  cell_average,
  /// Filtered pulse evaluated at the sample instants k*T_S.
  point,
};

struct SampledWaveform {
  std::vector<double> samples;
  double sample_period = 0.0;
  double amplitude = 0.0;
  PulseTiming timing;

  double duration() const { return sample_period * static_cast<double>(samples.size()); }
};

/// Samples one qubit's net-zero pulse of the given amplitude. Throws
/// WaveformError if the filtered plateau stays below 99% of the amplitude.
SampledWaveform synth_net_zero(const GateParams& p, double amplitude, double sigma,
                               double sample_period, SampleMode mode = SampleMode::cell_average);

/// Validation path: the rectangles are averaged over a fine grid of spacing
/// `step` and convolved with a discrete Gaussian truncated at
/// +-truncation*sigma. Returns values at t_j = j*step.
std::vector<double> discrete_filtered_pulse(const PulseTiming& timing, double amplitude,
                                            double sigma, double step, double truncation = 8.0);

/// Achievable edge timing precision for a given rise time and relative
/// amplitude resolution.
inline double timing_precision(double rise_time, double amplitude_resolution) {
  return rise_time * amplitude_resolution;
}

/// Continuous flux seen by the qubits: zero-order hold of the samples
/// followed by a Gaussian line response of width sigma_line.
class HeldWaveform {
 public:
  HeldWaveform(SampledWaveform wf, double sigma_line);
  double operator()(double t) const;
  const SampledWaveform& waveform() const { return wf_; }

 private:
  SampledWaveform wf_;
  double sigma_;
  std::vector<double> jumps_;  // s_k - s_{k-1}, k = 0..n with s_{-1} = s_n = 0
};

/// Flux on both qubits as functions of time over [0, duration].
struct FluxDrive {
  std::function<double(double)> high;
  std::function<double(double)> low;
  double duration = 0.0;
  /// Times where the flux is not smooth; integrators step onto them.
  std::vector<double> breakpoints;
  /// Suggested integration step.
  double step_hint = 0.0;
  double amplitude_high = 0.0;
  double amplitude_low = 0.0;
  /// Nominal idle window between the two halves.
  double idle_start = 0.0;
  double idle_end = 0.0;
  /// Intervals where both fluxes are exactly zero.
  std::vector<std::pair<double, double>> quiet;
};

enum class PulseShape {
  /// Bare rectangles.
  rectangular,
  /// Rectangles filtered by a Gaussian of the combined digital and line width.
  filtered,
  /// Full chain: digital filter, sampling, hold and line response.
  sampled,
};

/// Builds the flux drive of a gate. `substeps` is the number of integration
/// steps per sample period used for step_hint.
FluxDrive make_drive(const GateParams& p, const DeviceParams& dev, PulseShape shape,
                     int substeps = 64);

/// Drive built from already synthesized waveforms.
FluxDrive make_drive(const SampledWaveform& wf_high, const SampledWaveform& wf_low,
                     const DeviceParams& dev, int substeps = 64);

struct DetuningTrajectory {
  std::vector<double> time;
  std::vector<double> delta;
  std::vector<double> flux_high;
  std::vector<double> flux_low;
  double idle_start = 0.0;
  double idle_end = 0.0;
};

/// E20 - E11 on a grid of `oversample` points per sample period, with the
/// idle window endpoints inserted into the grid.
DetuningTrajectory detuning_trajectory(const SampledWaveform& wf_high,
                                       const SampledWaveform& wf_low, const DeviceParams& dev,
                                       int oversample = 16);

DetuningTrajectory detuning_trajectory(const FluxDrive& drive, const DeviceParams& dev,
                                       double step);

/// Trapezoidal integral of the detuning over the idle window.
double idle_phase(const DetuningTrajectory& traj);

}  // namespace cztheta
