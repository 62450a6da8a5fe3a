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

#include <cmath>

#include "cztheta/calibration.hpp"
#include "property.hpp"

namespace cztheta {
namespace {

using testing::for_all;
using testing::Gen;

SimulatorOptions fast_options() {
  SimulatorOptions o;
  o.model = ModelKind::two_level;
  o.shape = PulseShape::filtered;
  return o;
}

CalibrationRecord linear_table(double slope, double intercept, double t0, double step, int n) {
  CalibrationRecord r;
  r.params = initial_gate(DeviceParams{});
  for (int i = 0; i < n; ++i) {
    r.idle_times.push_back(t0 + step * i);
    r.phases.push_back(intercept + slope * r.idle_times.back());
  }
  r.slope = slope;
  r.intercept = intercept;
  return r;
}

TEST(PhaseTable, InversionOfLinearTable) {
  // One period plus margin, as the calibration produces.
  const double slope = -kTwoPi / ns(0.49);
  const CalibrationRecord r = linear_table(slope, 0.4, ns(5.0), ns(0.05), 12);
  for_all(100, 21, [&](Gen& g) {
    const double theta = g.uniform(-kPi, kPi);
    const double t = idle_time_for_phase(r, theta);
    EXPECT_GE(t, r.idle_times.front());
    EXPECT_LE(t, r.idle_times.back());
    EXPECT_NEAR(wrap_phase(0.4 + slope * t - theta), 0.0, 1e-9);
  });
}

TEST(PhaseTable, IncompleteOrShortTableRejected) {
  CalibrationRecord r = linear_table(-1e9, 0.0, 0.0, ns(0.05), 3);
  EXPECT_THROW(idle_time_for_phase(r, 0.0), RangeError);
  // Spans only 0.1 rad: most targets are not covered.
  r = linear_table(-1e8, 0.0, 0.0, ns(0.2), 6);
  EXPECT_THROW(idle_time_for_phase(r, 2.0), RangeError);
}

TEST(PhaseTable, GateForPhaseSetsIdleTime) {
  const double slope = -kTwoPi / ns(0.49);
  const CalibrationRecord r = linear_table(slope, 0.4, ns(5.0), ns(0.05), 12);
  const GateParams p = gate_for_phase(r, 1.0);
  EXPECT_DOUBLE_EQ(p.t_idle, idle_time_for_phase(r, 1.0));
  EXPECT_EQ(p.t_int, r.params.t_int);
  EXPECT_GE(p.t_idle_max, p.t_idle);
}

TEST(Simulator, ZeroShotsRejected) {
  SimulatorOptions o = fast_options();
  o.shots = 0;
  EXPECT_THROW(DeviceSimulator(DeviceParams{}, o), ConfigError);
}

TEST(Simulator, SampledPopulationsAreSeededAndUnbiased) {
  const DeviceParams dev;
  GateParams p = initial_gate(dev);
  p.single_half = true;
  p.t_int *= 0.5;
  SimulatorOptions o = fast_options();
  const Populations exact = DeviceSimulator(dev, o).measure_population_recovery(p);
  o.shots = 20000;
  o.seed = 5;
  const DeviceSimulator a(dev, o);
  const DeviceSimulator b(dev, o);
  o.seed = 6;
  const DeviceSimulator c(dev, o);
  const Populations pa = a.measure_population_recovery(p);
  const Populations pb = b.measure_population_recovery(p);
  const Populations pc = c.measure_population_recovery(p);
  EXPECT_EQ(pa.p2, pb.p2);
  EXPECT_EQ(pa.p1, pb.p1);
  EXPECT_NE(pa.p2, pc.p2);
  EXPECT_NEAR(pa.p0 + pa.p1 + pa.p2, 1.0, 1e-12);
  // Readout confusion shifts the mean by at most a few percent.
  EXPECT_NEAR(pa.p2, exact.p2, 0.06);
}

TEST(Chevron, ExchangeFrequencyRecoversCoupling) {
  const DeviceParams dev;
  const DeviceSimulator sim(dev, fast_options());
  const GateParams base = initial_gate(dev);
  std::vector<double> durations;
  for (int i = 0; i < 41; ++i) durations.push_back(ns(5.0) + ns(1.0) * i);
  const SweepResult s = chevron_scan(sim, base, durations, {base.phi_low});
  ASSERT_EQ(s.leakage.size(), durations.size());
  // Half pulse of duration t interacts for t minus the filter rise.
  const double omega = extract_coupling(durations, s.leakage, dev.g2());
  EXPECT_NEAR(omega / dev.g2(), 1.0, 0.05);
}

TEST(Chevron, GridShapeAndAxes) {
  const DeviceParams dev;
  const DeviceSimulator sim(dev, fast_options());
  const GateParams base = initial_gate(dev);
  const SweepResult s =
      chevron_scan(sim, base, {ns(10), ns(20), ns(30)}, {base.phi_low - 0.001, base.phi_low});
  EXPECT_EQ(s.axis1.size(), 3u);
  EXPECT_EQ(s.axis2.size(), 2u);
  EXPECT_EQ(s.recovery.size(), 6u);
  EXPECT_EQ(s.leakage.size(), 6u);
  EXPECT_FALSE(s.shots.has_value());
}

TEST(Calibration, TwoLevelPipelineMeetsGateSetTargets) {
  const DeviceParams dev;
  const DeviceSimulator sim(dev, fast_options());
  const CalibrationConfig cfg;
  const CalibrationRecord rec = calibrate(sim, cfg);
  ASSERT_GE(rec.phases.size(), 4u);
  // |20> advances at the zero-flux detuning from |11>.
  EXPECT_NEAR(-rec.slope / dev.delta_max(), 1.0, 0.01);
  const double max_residual = [&] {
    double m = 0.0;
    for (double r : rec.residuals) m = std::max(m, std::abs(r));
    return m;
  }();
  EXPECT_LT(max_residual, cfg.residual_limit);
  std::vector<double> thetas;
  for (int k = -3; k <= 4; ++k) thetas.push_back(k * kPi / 4);
  for (const GateCheck& c : verify_gate_set(sim, rec, thetas)) {
    EXPECT_LT(std::abs(c.phase_error), 1e-3) << c.target;
    EXPECT_LT(c.leakage, 1e-4) << c.target;
  }
  EXPECT_FALSE(rec.trace.empty());
}

TEST(Calibration, ApproximateIdleTimeLandsNearTarget) {
  const DeviceParams dev;
  const DeviceSimulator sim(dev, fast_options());
  GateParams p = tune_half_waveform(sim, initial_gate(dev));
  for (double theta : {0.0, kPi / 2, kPi}) {
    p.t_idle = approximate_idle_time(sim, p, theta);
    p.t_idle_max = p.t_idle;
    EXPECT_NEAR(wrap_phase(sim.measure_conditional_phase(p) - theta), 0.0, 0.05) << theta;
  }
}

TEST(Calibration, HalfWaveformTuningMaximizesExchange) {
  const DeviceParams dev;
  const DeviceSimulator sim(dev, fast_options());
  GateParams start = initial_gate(dev);
  start.phi_low += 0.002;
  const GateParams tuned = tune_half_waveform(sim, start);
  auto half = [](GateParams p) {
    p.single_half = true;
    return p;
  };
  const double before = sim.measure_population_recovery(half(start)).p2;
  const double after = sim.measure_population_recovery(half(tuned)).p2;
  EXPECT_GT(after, before);
  EXPECT_GT(after, 0.999);
}

}  // namespace
}  // namespace cztheta
