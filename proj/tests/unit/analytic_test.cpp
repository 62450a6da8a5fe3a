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

#include <algorithm>
#include <cmath>

#include "cztheta/analytic.hpp"
#include "property.hpp"

namespace cztheta {
namespace {

using testing::for_all;
using testing::Gen;

// Net-zero gate built from segments: half pulse, pure |20> phase, half pulse.
Eigen::Matrix2cd net_zero_gate(double delta, double t_int, double theta_idle) {
  const double tau = 1.0;
  return propagate_segments({{0.5 * t_int, delta, 1.0},
                             {tau, theta_idle / tau, 0.0},
                             {0.5 * t_int, delta, 1.0}});
}

TEST(ReturnAmplitude, MatchesSegmentPropagation) {
  for_all(200, 1, [](Gen& g) {
    const double delta = g.uniform(-1.0, 1.0);
    const double t = g.uniform(-1.5, 1.5);
    const double theta = g.uniform(-kPi, kPi);
    const Complex c = amplitude_c11(delta, t, theta);
    const Complex u = net_zero_gate(delta, t + kTwoPi, theta)(0, 0);
    EXPECT_LT(std::abs(c - u), 1e-10);
    EXPECT_LE(std::norm(c), 1.0 + 1e-12);
  });
}

TEST(ReturnAmplitude, ResonantGateRecoversForAnyIdlePhase) {
  for (double theta : {0.0, 0.7, kPi / 2, kPi, -2.0}) {
    const Complex c = amplitude_c11(0.0, 0.0, theta);
    EXPECT_NEAR(std::norm(c), 1.0, 1e-12) << theta;
    EXPECT_LT(std::abs(c + std::exp(Complex(0, -theta))), 1e-12) << theta;
  }
}

// Fits P11 - 1 = c x^n on a small symmetric grid and returns c.
double fitted_coefficient(double theta, TaylorAxis axis, int order) {
  std::vector<double> x, y;
  for (int k = -10; k <= 10; ++k) {
    if (k == 0) continue;
    const double v = 2e-3 * k;
    const Complex c = axis == TaylorAxis::detuning ? amplitude_c11(v, 0.0, theta)
                                                    : amplitude_c11(0.0, v, theta);
    x.push_back(std::pow(v, order));
    y.push_back(std::norm(c) - 1.0);
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  return sxy / sxx;
}

TEST(Taylor, CoefficientsMatchNumericalExpansion) {
  struct Case {
    double theta;
    TaylorAxis axis;
    double coefficient;
    int order;
  };
  const Case cases[] = {{0.0, TaylorAxis::detuning, -kPi * kPi / 4.0, 4},
                        {kPi, TaylorAxis::detuning, -4.0, 2},
                        {0.0, TaylorAxis::time, -0.25, 2}};
  for (const auto& c : cases) {
    const TaylorTerm term = taylor_sensitivity(c.theta, c.axis);
    EXPECT_EQ(term.order, c.order);
    EXPECT_NEAR(term.coefficient, c.coefficient, 1e-12);
    EXPECT_NEAR(fitted_coefficient(c.theta, c.axis, c.order), c.coefficient,
                1e-2 * std::abs(c.coefficient));
  }
}

TEST(Taylor, TimeErrorIsHarmlessAtPi) {
  const TaylorTerm term = taylor_sensitivity(kPi, TaylorAxis::time);
  EXPECT_EQ(term.coefficient, 0.0);
  for (double t : {-0.05, 0.02, 0.05}) {
    EXPECT_NEAR(std::norm(amplitude_c11(0.0, t, kPi)), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(taylor_population(kPi, TaylorAxis::time, 0.3), 1.0);
}

TEST(Taylor, OtherIdlePhasesRejected) {
  EXPECT_THROW(taylor_sensitivity(1.0, TaylorAxis::detuning), DomainError);
}

TEST(LeakageAmplification, ClosedFormMatchesMatrixPower) {
  for_all(100, 2, [](Gen& g) {
    const CoherentGateModel m{g.uniform(0.0, 0.3), g.uniform(-kPi, kPi)};
    const int n = static_cast<int>(g.integer(1, 40));
    const Eigen::Matrix2cd u = coherent_gate_unitary(m);
    Eigen::Matrix2cd un = Eigen::Matrix2cd::Identity();
    for (int k = 0; k < n; ++k) un = u * un;
    EXPECT_NEAR(leakage_ln(m, n), std::norm(un(1, 0)), 1e-12);
  });
}

TEST(LeakageAmplification, FirstOrderFormIsAccurateForSmallRotations) {
  for_all(100, 3, [](Gen& g) {
    const CoherentGateModel m{g.uniform(0.0, 0.02), g.uniform(0.3, kPi)};
    const int n = static_cast<int>(g.integer(1, 20));
    const double l1 = leakage_ln(m, 1);
    const double exact = leakage_ln(m, n);
    EXPECT_NEAR(leakage_ln_small(l1, m.beta, n), exact, 0.05 * exact + 1e-12);
  });
}

TEST(LeakageAmplification, ConstructiveLimit) {
  const CoherentGateModel m{0.01, 0.0};
  const double l1 = leakage_ln(m, 1);
  for (int n : {1, 5, 50}) {
    EXPECT_NEAR(leakage_ln_small(l1, 0.0, n), leakage_ln(m, n), 1e-4 * leakage_ln(m, n)) << n;
  }
  EXPECT_THROW(leakage_ln(m, 0), DomainError);
}

TEST(GeometricPhase, ConstantDetuningCircle) {
  for_all(50, 4, [](Gen& g) {
    const double g2 = g.uniform(0.5, 2.0);
    const double delta = g.uniform(-3.0, 3.0);
    const double omega = std::hypot(g2, delta);
    const Eigen::Matrix2cd u = propagate_segments({{kTwoPi / omega, delta, g2}});
    EXPECT_NEAR(std::norm(u(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(wrap_phase(std::arg(u(0, 0)) - geom_phase_circle(delta, g2)), 0.0, 1e-10);
  });
}

TEST(SolidAngle, LatitudeCap) {
  for (double polar : {0.3, 1.0, kPi / 2, 2.5}) {
    std::vector<Eigen::Vector3d> loop;
    for (int k = 0; k <= 400; ++k) {
      const double phi = kTwoPi * k / 400;
      loop.emplace_back(std::sin(polar) * std::cos(phi), std::sin(polar) * std::sin(phi),
                        std::cos(polar));
    }
    const double expected = wrap_phase(kTwoPi * (1.0 - std::cos(polar)) - kPi) + kPi;
    const double s = enclosed_solid_angle(loop);
    EXPECT_NEAR(wrap_phase(s - expected), 0.0, 1e-3) << polar;
    std::reverse(loop.begin(), loop.end());
    EXPECT_NEAR(wrap_phase(enclosed_solid_angle(loop) + expected), 0.0, 1e-3) << polar;
  }
}

TEST(SolidAngle, DegenerateLoopsEncloseNothing) {
  const Eigen::Vector3d a(1, 0, 0), b(0, 1, 0);
  EXPECT_EQ(enclosed_solid_angle({a, b}), 0.0);
  EXPECT_NEAR(enclosed_solid_angle({a, b, a}), 0.0, 1e-12);
}

TEST(GeometricPhase, DecompositionMatchesPropagatedPhase) {
  // Resonant half pulses of random strength and a random idle phase always
  // return to |11>.
  for_all(50, 5, [](Gen& g) {
    const double g2 = g.uniform(0.5, 2.0);
    const double theta = g.uniform(-kPi, kPi);
    const double tau = g.uniform(0.2, 2.0);
    const std::vector<TwoLevelSegment> segs = {
        {kPi / g2, 0.0, g2}, {tau, theta / tau, 0.0}, {kPi / g2, 0.0, g2}};
    const BlochTrajectory tr = sample_trajectory(segs, 2000);
    const GeometricDecomposition d = aharonov_anandan(tr);
    EXPECT_NEAR(wrap_phase(d.total() - std::arg(tr.unitary(0, 0))), 0.0, 1e-5);
  });
}

TEST(GeometricPhase, DecompositionOfDetunedCircle) {
  const double delta = 0.8;
  const double omega = std::hypot(1.0, delta);
  const BlochTrajectory tr = sample_trajectory({{kTwoPi / omega, delta, 1.0}}, 4000);
  const GeometricDecomposition d = aharonov_anandan(tr);
  EXPECT_NEAR(wrap_phase(d.total() - geom_phase_circle(delta, 1.0)), 0.0, 1e-5);
}

TEST(GeometricPhase, EchoCancels) {
  for_all(30, 6, [](Gen& g) {
    const double delta = g.uniform(-2.0, 2.0);
    const double coupling = g.uniform(0.2, 2.0);
    const double t = g.uniform(0.1, 5.0);
    const BlochTrajectory tr =
        sample_trajectory({{t, delta, coupling}, {t, -delta, -coupling}}, 2000);
    const GeometricDecomposition d = aharonov_anandan(tr);
    EXPECT_NEAR(d.total(), 0.0, 1e-5);
    EXPECT_NEAR(std::abs(tr.unitary(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(std::arg(tr.unitary(0, 0)), 0.0, 1e-12);
  });
}

TEST(GeometricPhase, OpenTrajectoryRejected) {
  const BlochTrajectory tr = sample_trajectory({{1.0, 0.0, 1.0}}, 50);
  EXPECT_THROW(aharonov_anandan(tr), DomainError);
}

TEST(AxisCommutation, ZCommutesThroughRotation) {
  for_all(100, 7, [](Gen& g) {
    const Eigen::Vector3d r = g.unit_vector();
    const double lambda = g.uniform(0.0, kTwoPi);
    const double theta_d = g.uniform(-kPi, kPi);
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = std::exp(Complex(0, 0.5 * theta_d));
    z(1, 1) = std::exp(Complex(0, -0.5 * theta_d));
    const Eigen::Matrix2cd rr = axis_rotation(r, lambda);
    const Eigen::Matrix2cd lhs = rr * z * rr;
    const Eigen::Matrix2cd rhs = z * axis_rotation(commute_z_axis(r, theta_d), lambda) * rr;
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  });
  EXPECT_THROW(commute_z_axis(Eigen::Vector3d::Zero(), 1.0), DomainError);
}

}  // namespace
}  // namespace cztheta
