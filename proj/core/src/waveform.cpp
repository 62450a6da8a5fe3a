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

#include "cztheta/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace cztheta {
namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Standard normal CDF.
double norm_cdf(double x) { return 0.5 * std::erfc(-x * kSqrtHalf); }

// Phi(x1) - Phi(x2) for x1 >= x2 without cancellation in the tails.
double cdf_diff(double x1, double x2) {
  if (x1 + x2 > 0.0) return 0.5 * (std::erfc(x2 * kSqrtHalf) - std::erfc(x1 * kSqrtHalf));
  return 0.5 * (std::erfc(-x1 * kSqrtHalf) - std::erfc(-x2 * kSqrtHalf));
}

// G(x) - max(x, 0) where G(x) = x Phi(x) + phi(x) is the antiderivative of
// Phi. Equal to G(-|x|), which stays small in both tails.
double ramp_residual(double x) {
  const double a = -std::abs(x);
  return a * norm_cdf(a) + kInvSqrt2Pi * std::exp(-0.5 * a * a);
}

double overlap(double a, double b, double c, double d) {
  return std::max(0.0, std::min(b, d) - std::max(a, c));
}

// Integral over [t1, t2] of a unit rectangle on [a, b] filtered by sigma.
double rect_integral(double a, double b, double sigma, double t1, double t2) {
  double v = overlap(t1, t2, a, b);
  if (sigma > 0.0) {
    v += sigma * (ramp_residual((t2 - a) / sigma) - ramp_residual((t1 - a) / sigma) -
                  ramp_residual((t2 - b) / sigma) + ramp_residual((t1 - b) / sigma));
  }
  return v;
}

double rect_value(double a, double b, double sigma, double t) {
  if (b <= a) return 0.0;
  if (sigma > 0.0) return cdf_diff((t - a) / sigma, (t - b) / sigma);
  if (t > a && t < b) return 1.0;
  if (t == a || t == b) return 0.5;
  return 0.0;
}

}  // namespace

void validate(const GateParams& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p.phi_high) || !finite(p.phi_low) || !finite(p.t_int) || !finite(p.t_idle) ||
      !finite(p.buffer) || !finite(p.t_idle_max)) {
    throw DomainError("gate parameters must be finite");
  }
  if (!(p.t_int > 0.0)) throw DomainError("t_int must be positive");
  if (p.t_idle < 0.0 || p.buffer < 0.0 || p.t_idle_max < 0.0) {
    throw DomainError("t_idle, buffer and t_idle_max must be non-negative");
  }
}

PulseTiming pulse_timing(const GateParams& p) {
  validate(p);
  PulseTiming t;
  t.on1 = p.buffer;
  t.off1 = t.on1 + 0.5 * p.t_int;
  if (p.single_half) {
    t.on2 = t.off2 = t.off1;
    t.duration = 2.0 * p.buffer + 0.5 * p.t_int;
    return t;
  }
  t.on2 = t.off1 + p.t_idle;
  t.off2 = t.on2 + 0.5 * p.t_int;
  t.duration = 2.0 * p.buffer + p.t_int + std::max(p.t_idle, p.t_idle_max);
  return t;
}

double filtered_pulse(const PulseTiming& timing, double amplitude, double sigma, double t) {
  return amplitude * (rect_value(timing.on1, timing.off1, sigma, t) -
                      rect_value(timing.on2, timing.off2, sigma, t));
}

double filtered_pulse_integral(const PulseTiming& timing, double amplitude, double sigma,
                               double a, double b) {
  return amplitude * (rect_integral(timing.on1, timing.off1, sigma, a, b) -
                      rect_integral(timing.on2, timing.off2, sigma, a, b));
}

SampledWaveform synth_net_zero(const GateParams& p, double amplitude, double sigma,
                               double sample_period, SampleMode mode) {
  if (!(sample_period > 0.0)) throw DomainError("sample period must be positive");
  if (sigma < 0.0) throw DomainError("filter width must be non-negative");
  SampledWaveform wf;
  wf.timing = pulse_timing(p);
  wf.sample_period = sample_period;
  wf.amplitude = amplitude;

  const double half = 0.5 * p.t_int;
  if (sigma > 0.0 && std::erf(half / (2.0 * std::numbers::sqrt2 * sigma)) < 0.99) {
    throw WaveformError("filter width too large for the half-pulse length: plateau below 99%");
  }

  const auto n = static_cast<std::size_t>(std::ceil(wf.timing.duration / sample_period - 1e-9));
  wf.samples.resize(n);
  const double floor_value = 1e-16 * std::abs(amplitude);
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = static_cast<double>(k) * sample_period;
    double v = 0.0;
    if (mode == SampleMode::cell_average) {
      v = filtered_pulse_integral(wf.timing, amplitude, sigma, t0, t0 + sample_period) /
          sample_period;
    } else {
      v = filtered_pulse(wf.timing, amplitude, sigma, t0);
    }
    wf.samples[k] = std::abs(v) < floor_value ? 0.0 : v;
  }
  return wf;
}

std::vector<double> discrete_filtered_pulse(const PulseTiming& timing, double amplitude,
                                            double sigma, double step, double truncation) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const auto m = static_cast<std::ptrdiff_t>(std::ceil(timing.duration / step));
  std::vector<double> rect(static_cast<std::size_t>(m + 1));
  for (std::ptrdiff_t j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) * step;
    rect[static_cast<std::size_t>(j)] =
        filtered_pulse_integral(timing, amplitude, 0.0, t - 0.5 * step, t + 0.5 * step) / step;
  }
  if (sigma == 0.0) return rect;

  const auto half = static_cast<std::ptrdiff_t>(std::ceil(truncation * sigma / step));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double norm = 0.0;
  for (std::ptrdiff_t i = -half; i <= half; ++i) {
    const double w = cdf_diff((static_cast<double>(i) + 0.5) * step / sigma,
                              (static_cast<double>(i) - 0.5) * step / sigma);
    kernel[static_cast<std::size_t>(i + half)] = w;
    norm += w;
  }
  for (double& w : kernel) w /= norm;

  std::vector<double> out(rect.size(), 0.0);
  for (std::ptrdiff_t j = 0; j <= m; ++j) {
    double acc = 0.0;
    for (std::ptrdiff_t i = -half; i <= half; ++i) {
      const std::ptrdiff_t src = j - i;
      if (src < 0 || src > m) continue;
      acc += kernel[static_cast<std::size_t>(i + half)] * rect[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

HeldWaveform::HeldWaveform(SampledWaveform wf, double sigma_line)
    : wf_(std::move(wf)), sigma_(sigma_line) {
  if (sigma_ < 0.0) throw DomainError("line filter width must be non-negative");
  const std::size_t n = wf_.samples.size();
  jumps_.resize(n + 1);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    jumps_[k] = wf_.samples[k] - prev;
    prev = wf_.samples[k];
  }
  jumps_[n] = -prev;
}

double HeldWaveform::operator()(double t) const {
  const double ts = wf_.sample_period;
  const auto n = static_cast<std::ptrdiff_t>(wf_.samples.size());
  if (sigma_ == 0.0) {
    const auto k = static_cast<std::ptrdiff_t>(std::floor(t / ts));
    if (k < 0 || k >= n) return 0.0;
    return wf_.samples[static_cast<std::size_t>(k)];
  }
  const double reach = 8.0 * sigma_;
  const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil((t - reach) / ts)));
  const auto hi = std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(std::floor((t + reach) / ts)));
  double v = 0.0;
  if (lo >= 1 && lo - 1 < n) v = wf_.samples[static_cast<std::size_t>(lo - 1)];
  for (std::ptrdiff_t k = lo; k <= hi; ++k) {
    const double d = jumps_[static_cast<std::size_t>(k)];
    if (d == 0.0) continue;
    v += d * norm_cdf((t - static_cast<double>(k) * ts) / sigma_);
  }
  return v;
}

namespace {

void finish_drive(FluxDrive& d, const PulseTiming& timing) {
  d.idle_start = timing.off1;
  d.idle_end = timing.on2;
  std::sort(d.breakpoints.begin(), d.breakpoints.end());
  d.breakpoints.erase(std::unique(d.breakpoints.begin(), d.breakpoints.end()),
                      d.breakpoints.end());
}

// Zero-flux intervals of a held waveform pair; the line response is treated
// as vanishing beyond 8 sigma.
std::vector<std::pair<double, double>> held_quiet(const SampledWaveform& a, double sa,
                                                  const SampledWaveform& b, double sb,
                                                  double duration) {
  auto first = [](const SampledWaveform& w) {
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
      if (w.samples[k] != 0.0) return static_cast<double>(k) * w.sample_period;
    }
    return w.duration();
  };
  auto last = [](const SampledWaveform& w) {
    for (std::size_t k = w.samples.size(); k-- > 0;) {
      if (w.samples[k] != 0.0) return static_cast<double>(k + 1) * w.sample_period;
    }
    return 0.0;
  };
  const double start = std::min(first(a) - 8.0 * sa, first(b) - 8.0 * sb);
  const double stop = std::max(last(a) + 8.0 * sa, last(b) + 8.0 * sb);
  std::vector<std::pair<double, double>> q;
  if (start > 0.0) q.emplace_back(0.0, start);
  if (stop < duration) q.emplace_back(stop, duration);
  return q;
}

}  // namespace

FluxDrive make_drive(const GateParams& p, const DeviceParams& dev, PulseShape shape,
                     int substeps) {
  if (substeps < 1) throw DomainError("substeps must be positive");
  if (shape == PulseShape::sampled) {
    const SampledWaveform wh =
        synth_net_zero(p, p.phi_high, dev.sigma_digital, dev.sample_period);
    const SampledWaveform wl = synth_net_zero(p, p.phi_low, dev.sigma_digital, dev.sample_period);
    return make_drive(wh, wl, dev, substeps);
  }

  const PulseTiming timing = pulse_timing(p);
  FluxDrive d;
  d.duration = timing.duration;
  d.amplitude_high = p.phi_high;
  d.amplitude_low = p.phi_low;
  d.step_hint = dev.sample_period / substeps;
  d.breakpoints = {timing.on1, timing.off1, timing.on2, timing.off2};

  if (shape == PulseShape::rectangular) {
    d.high = [timing, a = p.phi_high](double t) { return filtered_pulse(timing, a, 0.0, t); };
    d.low = [timing, a = p.phi_low](double t) { return filtered_pulse(timing, a, 0.0, t); };
    d.quiet = {{0.0, timing.on1}, {timing.off1, timing.on2}, {timing.off2, timing.duration}};
  } else {
    const double sh = std::hypot(dev.sigma_digital, dev.sigma_high);
    const double sl = std::hypot(dev.sigma_digital, dev.sigma_low);
    d.high = [timing, a = p.phi_high, sh](double t) { return filtered_pulse(timing, a, sh, t); };
    d.low = [timing, a = p.phi_low, sl](double t) { return filtered_pulse(timing, a, sl, t); };
    const double reach = 10.0 * std::max(sh, sl);
    if (timing.on1 - reach > 0.0) d.quiet.emplace_back(0.0, timing.on1 - reach);
    if (timing.off2 + reach < timing.duration) {
      d.quiet.emplace_back(timing.off2 + reach, timing.duration);
    }
  }
  d.quiet.erase(std::remove_if(d.quiet.begin(), d.quiet.end(),
                               [](const auto& q) { return !(q.second > q.first); }),
                d.quiet.end());
  finish_drive(d, timing);
  return d;
}

FluxDrive make_drive(const SampledWaveform& wf_high, const SampledWaveform& wf_low,
                     const DeviceParams& dev, int substeps) {
  if (wf_high.samples.size() != wf_low.samples.size() ||
      wf_high.sample_period != wf_low.sample_period) {
    throw DomainError("waveforms must share length and sample period");
  }
  if (substeps < 1) throw DomainError("substeps must be positive");
  FluxDrive d;
  d.duration = wf_high.duration();
  d.amplitude_high = wf_high.amplitude;
  d.amplitude_low = wf_low.amplitude;
  d.step_hint = wf_high.sample_period / substeps;
  auto hh = std::make_shared<HeldWaveform>(wf_high, dev.sigma_high);
  auto hl = std::make_shared<HeldWaveform>(wf_low, dev.sigma_low);
  d.high = [hh](double t) { return (*hh)(t); };
  d.low = [hl](double t) { return (*hl)(t); };
  if (dev.sigma_high == 0.0 || dev.sigma_low == 0.0) {
    for (std::size_t k = 0; k <= wf_high.samples.size(); ++k) {
      d.breakpoints.push_back(static_cast<double>(k) * wf_high.sample_period);
    }
  }
  d.quiet = held_quiet(wf_high, dev.sigma_high, wf_low, dev.sigma_low, d.duration);
  finish_drive(d, wf_high.timing);
  return d;
}

DetuningTrajectory detuning_trajectory(const FluxDrive& drive, const DeviceParams& dev,
                                       double step) {
  if (!(step > 0.0)) throw DomainError("step must be positive");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::ceil(drive.duration / step - 1e-9));
  grid.reserve(n + 3);
  for (std::size_t k = 0; k <= n; ++k) {
    grid.push_back(std::min(drive.duration, static_cast<double>(k) * step));
  }
  grid.push_back(drive.idle_start);
  grid.push_back(drive.idle_end);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  DetuningTrajectory tr;
  tr.idle_start = drive.idle_start;
  tr.idle_end = drive.idle_end;
  tr.time = grid;
  tr.delta.reserve(grid.size());
  tr.flux_high.reserve(grid.size());
  tr.flux_low.reserve(grid.size());
  for (double t : grid) {
    const double fh = drive.high(t);
    const double fl = drive.low(t);
    tr.flux_high.push_back(fh);
    tr.flux_low.push_back(fl);
    tr.delta.push_back(detuning_20_11(dev, fh, fl));
  }
  return tr;
}

DetuningTrajectory detuning_trajectory(const SampledWaveform& wf_high,
                                       const SampledWaveform& wf_low, const DeviceParams& dev,
                                       int oversample) {
  if (oversample < 1) throw DomainError("oversample must be positive");
  const FluxDrive d = make_drive(wf_high, wf_low, dev);
  return detuning_trajectory(d, dev, wf_high.sample_period / oversample);
}

double idle_phase(const DetuningTrajectory& traj) {
  double acc = 0.0;
  for (std::size_t k = 1; k < traj.time.size(); ++k) {
    const double a = traj.time[k - 1];
    const double b = traj.time[k];
    if (a < traj.idle_start || b > traj.idle_end) continue;
    acc += 0.5 * (b - a) * (traj.delta[k - 1] + traj.delta[k]);
  }
  return acc;
}

}  // namespace cztheta
