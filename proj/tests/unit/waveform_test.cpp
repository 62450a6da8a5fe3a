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

#include <gtest/gtest.h>

#include <numeric>

#include "cztheta/waveform.hpp"
#include "property.hpp"

namespace cztheta {
namespace {

using testing::for_all;
using testing::Gen;

GateParams random_gate(Gen& g) {
  GateParams p;
  p.phi_high = g.uniform(0.1, 0.4);
  p.phi_low = g.uniform(0.05, 0.3);
  p.t_int = g.uniform(ns(30.0), ns(60.0));
  p.t_idle = g.uniform(ns(4.0), ns(8.0));
  p.buffer = ns(10.0);
  return p;
}

// Gaussian-smoothed step pair written directly from the error function.
double erf_pulse(const PulseTiming& t, double a, double s, double x) {
  auto rect = [&](double on, double off) {
    const double k = 1.0 / (std::sqrt(2.0) * s);
    return 0.5 * (std::erf((x - on) * k) - std::erf((x - off) * k));
  };
  return a * (rect(t.on1, t.off1) - rect(t.on2, t.off2));
}

TEST(Timing, EdgesFollowGateParameters) {
  GateParams p;
  p.t_int = ns(50.0);
  p.t_idle = ns(6.0);
  p.t_idle_max = ns(6.5);
  p.buffer = ns(10.0);
  const PulseTiming t = pulse_timing(p);
  EXPECT_DOUBLE_EQ(t.on1, ns(10.0));
  EXPECT_DOUBLE_EQ(t.off1, ns(35.0));
  EXPECT_DOUBLE_EQ(t.on2, ns(41.0));
  EXPECT_DOUBLE_EQ(t.off2, ns(66.0));
  // Post buffer is stretched so all gates of a set share one duration.
  EXPECT_NEAR(t.duration, ns(76.5), 1e-18);
  p.t_idle = ns(5.0);
  EXPECT_NEAR(pulse_timing(p).duration, ns(76.5), 1e-18);
}

TEST(Timing, RejectsNegativeOrNonFiniteFields) {
  GateParams p;
  p.t_int = -1e-9;
  EXPECT_THROW(pulse_timing(p), DomainError);
  p.t_int = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(validate(p), DomainError);
}

TEST(FilteredPulse, MatchesErrorFunctionForm) {
  for_all(50, 20, [](Gen& g) {
    const GateParams p = random_gate(g);
    const PulseTiming t = pulse_timing(p);
    const double sigma = g.uniform(ns(0.3), ns(2.0));
    const double x = g.uniform(0.0, t.duration);
    EXPECT_NEAR(filtered_pulse(t, 0.3, sigma, x), erf_pulse(t, 0.3, sigma, x), 1e-14);
  });
}

TEST(FilteredPulse, ZeroWidthIsBareRectangles) {
  GateParams p;
  p.t_int = ns(40.0);
  p.t_idle = ns(5.0);
  const PulseTiming t = pulse_timing(p);
  EXPECT_DOUBLE_EQ(filtered_pulse(t, 0.2, 0.0, t.on1 + ns(1.0)), 0.2);
  EXPECT_DOUBLE_EQ(filtered_pulse(t, 0.2, 0.0, t.on2 + ns(1.0)), -0.2);
  EXPECT_DOUBLE_EQ(filtered_pulse(t, 0.2, 0.0, t.off1 + ns(1.0)), 0.0);
  EXPECT_DOUBLE_EQ(filtered_pulse(t, 0.2, 0.0, t.on1), 0.1);
}

TEST(FilteredPulse, NetZeroIntegral) {
  for_all(50, 21, [](Gen& g) {
    const GateParams p = random_gate(g);
    const PulseTiming t = pulse_timing(p);
    const double sigma = g.uniform(0.0, ns(2.0));
    EXPECT_NEAR(filtered_pulse_integral(t, 1.0, sigma, -ns(50.0), t.duration + ns(50.0)), 0.0,
                1e-20);
    // Each lobe carries A t_int / 2.
    const double mid = 0.5 * (t.off1 + t.on2);
    EXPECT_NEAR(filtered_pulse_integral(t, 1.0, 0.0, 0.0, mid), 0.5 * p.t_int, 1e-20);
  });
}

TEST(FilteredPulse, IntegralMatchesQuadrature) {
  GateParams p;
  p.t_int = ns(40.0);
  p.t_idle = ns(5.0);
  const PulseTiming t = pulse_timing(p);
  const double sigma = ns(1.1);
  const double a = ns(8.0);
  const double b = ns(33.0);
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * (i + 0.5) / n;
    sum += filtered_pulse(t, 1.0, sigma, x);
  }
  EXPECT_NEAR(filtered_pulse_integral(t, 1.0, sigma, a, b), sum * (b - a) / n, 1e-17);
}

TEST(DiscreteFilter, AgreesWithAnalyticConvolution) {
  GateParams p;
  p.t_int = ns(44.0);
  p.t_idle = ns(5.3);
  const PulseTiming t = pulse_timing(p);
  const double step = ns(0.005);
  const double sigma = ns(1.2);
  const auto v = discrete_filtered_pulse(t, 1.0, sigma, step);
  double worst = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    worst = std::max(worst, std::abs(v[j] - filtered_pulse(t, 1.0, sigma, j * step)));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Synthesis, CellAverageSamplesSumToZero) {
  const DeviceParams dev;
  for_all(30, 22, [&](Gen& g) {
    const GateParams p = random_gate(g);
    const auto wf = synth_net_zero(p, 0.3, dev.sigma_digital, dev.sample_period);
    const double sum = std::accumulate(wf.samples.begin(), wf.samples.end(), 0.0);
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_GE(wf.duration(), pulse_timing(p).duration);
  });
}

TEST(Synthesis, SubSampleEdgeShiftsMoveTheFirstMoment) {
  // The first moment of a net-zero pair is -A (t_int / 2) (on2 - on1); an idle
  // change much shorter than a sample period must still move it linearly.
  const DeviceParams dev;
  GateParams p;
  p.t_int = ns(48.0);
  p.t_idle = ns(6.0);
  auto moment = [&](double t_idle) {
    GateParams q = p;
    q.t_idle = t_idle;
    const auto wf = synth_net_zero(q, 1.0, dev.sigma_digital, dev.sample_period);
    double m = 0.0;
    for (std::size_t k = 0; k < wf.samples.size(); ++k) {
      m += wf.samples[k] * (static_cast<double>(k) + 0.5) * wf.sample_period;
    }
    return m * wf.sample_period;
  };
  const double dt = ns(0.01);
  const double slope = (moment(p.t_idle + dt) - moment(p.t_idle)) / dt;
  EXPECT_NEAR(slope, -0.5 * p.t_int, 1e-3 * 0.5 * p.t_int);
}

TEST(Synthesis, RejectsPulseWithoutPlateau) {
  GateParams p;
  p.t_int = ns(1.0);
  p.t_idle = ns(5.0);
  EXPECT_THROW(synth_net_zero(p, 0.3, ns(2.0), 1.0 / 2.4e9), WaveformError);
  EXPECT_THROW(synth_net_zero(p, 0.3, ns(0.5), 0.0), DomainError);
}

TEST(Synthesis, TimingPrecision) {
  // 1 ns rise time with 1e-3 amplitude resolution resolves 1 ps.
  EXPECT_DOUBLE_EQ(timing_precision(ns(1.0), 1e-3), 1e-12);
}

TEST(HeldWaveform, ZeroOrderHoldWithoutLineFilter) {
  SampledWaveform wf;
  wf.samples = {0.0, 0.5, 1.0, -1.0, -0.5, 0.0};
  wf.sample_period = 1.0;
  const HeldWaveform h(wf, 0.0);
  EXPECT_DOUBLE_EQ(h(1.5), 0.5);
  EXPECT_DOUBLE_EQ(h(3.2), -1.0);
  EXPECT_DOUBLE_EQ(h(7.0), 0.0);
}

TEST(HeldWaveform, LineFilterPreservesArea) {
  SampledWaveform wf;
  wf.samples = {0.0, 0.5, 1.0, 1.0, 0.25, 0.0};
  wf.sample_period = 1.0;
  const HeldWaveform h(wf, 0.7);
  double sum = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) sum += h(-5.0 + 16.0 * (i + 0.5) / n) * 16.0 / n;
  EXPECT_NEAR(sum, 2.75, 1e-6);
}

TEST(Drive, ShapesAgreeOnThePlateau) {
  const DeviceParams dev;
  const auto [ph, pl] = resonant_fluxes(dev);
  GateParams p;
  p.phi_high = ph;
  p.phi_low = pl;
  p.t_int = ns(50.0);
  p.t_idle = ns(6.0);
  const PulseTiming t = pulse_timing(p);
  const double mid = 0.5 * (t.on1 + t.off1);
  for (PulseShape s : {PulseShape::rectangular, PulseShape::filtered, PulseShape::sampled}) {
    const FluxDrive d = make_drive(p, dev, s);
    EXPECT_NEAR(d.high(mid), ph, 1e-9 * ph);
    EXPECT_NEAR(d.low(mid), pl, 1e-9 * pl);
    EXPECT_NEAR(d.low(0.5 * (t.on2 + t.off2)), -pl, 1e-9 * pl);
  }
}

TEST(Drive, IdlePhaseOfRectangularGate) {
  // Between rectangular halves the detuning sits at Delta_max; the
  // trapezoid sum skips partial steps at the window edges.
  const DeviceParams dev;
  const auto [ph, pl] = resonant_fluxes(dev);
  GateParams p;
  p.phi_high = ph;
  p.phi_low = pl;
  p.t_int = ns(44.0);
  p.t_idle = ns(5.0);
  const FluxDrive d = make_drive(p, dev, PulseShape::rectangular);
  const double step = ns(0.01);
  const DetuningTrajectory traj = detuning_trajectory(d, dev, step);
  EXPECT_NEAR(idle_phase(traj), dev.delta_max() * p.t_idle, 2.0 * dev.delta_max() * step);
}

}  // namespace
}  // namespace cztheta
