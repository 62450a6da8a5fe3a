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
#include <numeric>

#include "cztheta/benchmarking.hpp"
#include "property.hpp"

namespace cztheta {
namespace {

using testing::for_all;
using testing::Gen;

XebConfig exact_config(std::uint64_t seed) {
  XebConfig c;
  c.depths = {1, 2, 4, 8, 16};
  c.circuits = 20;
  c.shots = 0;
  c.seed = seed;
  return c;
}

TEST(Circuits, ShapeAndDeterminism) {
  XebConfig c = exact_config(3);
  const auto a = sample_circuits(c, 5);
  const auto b = sample_circuits(c, 5);
  ASSERT_EQ(a.size(), c.depths.size());
  for (std::size_t d = 0; d < a.size(); ++d) {
    ASSERT_EQ(a[d].size(), static_cast<std::size_t>(c.circuits));
    for (std::size_t k = 0; k < a[d].size(); ++k) {
      const XebCircuit& circ = a[d][k];
      EXPECT_EQ(circ.depth(), c.depths[d]);
      EXPECT_EQ(circ.layers.size(), static_cast<std::size_t>(c.depths[d]) + 1);
      for (std::size_t g : circ.gates) EXPECT_LT(g, 5u);
      EXPECT_EQ(circ.layers, b[d][k].layers);
      EXPECT_EQ(circ.gates, b[d][k].gates);
    }
  }
  c.seed = 4;
  const auto other = sample_circuits(c, 5);
  EXPECT_NE(other.back().front().layers, a.back().front().layers);
}

TEST(Circuits, AllSingleQubitGatesAppear) {
  XebConfig c = exact_config(8);
  c.depths = {64};
  std::array<int, 3> counts{};
  const auto ensemble = sample_circuits(c, 1);
  for (const auto& circ : ensemble.front()) {
    for (const auto& layer : circ.layers) {
      for (OneQubitGate g : layer) ++counts[static_cast<std::size_t>(g)];
    }
  }
  const int total = counts[0] + counts[1] + counts[2];
  for (int n : counts) EXPECT_NEAR(static_cast<double>(n) / total, 1.0 / 3.0, 0.03);
}

TEST(PostSelection, DropsLeakedOutcomes) {
  // Index 3 h + l over qutrit levels.
  std::array<double, 9> w{};
  w[0] = 0.1;  // 00
  w[1] = 0.2;  // 01
  w[3] = 0.3;  // 10
  w[4] = 0.2;  // 11
  w[2] = 0.1;  // 02
  w[6] = 0.05;  // 20
  w[8] = 0.05;  // 22
  const PostSelected p = postselect_and_renormalize(w);
  EXPECT_NEAR(p.leaked_fraction, 0.2, 1e-12);
  EXPECT_NEAR(p.probs[0], 0.125, 1e-12);
  EXPECT_NEAR(p.probs[1], 0.25, 1e-12);
  EXPECT_NEAR(p.probs[2], 0.375, 1e-12);
  EXPECT_NEAR(p.probs[3], 0.25, 1e-12);
}

TEST(PostSelection, EverythingLeakedRejected) {
  std::array<double, 9> w{};
  w[8] = 1.0;
  EXPECT_THROW(postselect_and_renormalize(w), NumericError);
}

TEST(CrossEntropy, LimitsOfTheEstimator) {
  for_all(50, 31, [](Gen& g) {
    const auto s = g.simplex(4);
    std::array<double, 4> ideal{s[0], s[1], s[2], s[3]};
    const XebTerms same = estimate_fidelity(ideal, ideal);
    EXPECT_NEAR(same.fidelity(), 1.0, 1e-12);
    const XebTerms flat = estimate_fidelity({0.25, 0.25, 0.25, 0.25}, ideal);
    EXPECT_NEAR(flat.numerator, 0.0, 1e-12);
    // Linear in the observed distribution: a mixture gives the mixture weight.
    const double f = g.uniform(0.0, 1.0);
    std::array<double, 4> mix{};
    for (int i = 0; i < 4; ++i) mix[i] = f * ideal[i] + (1 - f) * 0.25;
    EXPECT_NEAR(estimate_fidelity(mix, ideal).fidelity(), f, 1e-9);
  });
}

TEST(GateErrorExtraction, RatioAndClamp) {
  const GateError g = extract_gate_error(0.03, 0.01);
  EXPECT_NEAR(g.eps_cz, 1.0 - 0.97 / 0.99, 1e-15);
  EXPECT_FALSE(g.clamped);
  const GateError c = extract_gate_error(0.01, 0.02);
  EXPECT_EQ(c.eps_cz, 0.0);
  EXPECT_TRUE(c.clamped);
  EXPECT_THROW(extract_gate_error(1.0, 0.0), DomainError);
  EXPECT_THROW(extract_gate_error(0.1, 1.0), DomainError);
}

TEST(Simulation, DensityStaysPhysical) {
  const CycleModel m = ideal_cycle_model(kPi / 3);
  XebConfig c = exact_config(9);
  c.depths = {12};
  c.circuits = 5;
  const auto ensemble = sample_circuits(c, 1);
  for (const auto& circ : ensemble.front()) {
    const QutritDensity rho = final_state(circ, m);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-12);
    const auto p = outcome_probabilities(circ, m);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    // Ideal gates never leave the computational space.
    EXPECT_NEAR(postselect_and_renormalize(p).leaked_fraction, 0.0, 1e-12);
    const auto ideal = ideal_probabilities(circ, m, true);
    const auto ps = postselect_and_renormalize(p).probs;
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ps[i], ideal[i], 1e-12);
  }
}

TEST(Simulation, SamplingIsSeededAndConservesShots) {
  const CycleModel m = ideal_cycle_model(kPi);
  XebConfig c = exact_config(10);
  const XebCircuit circ = sample_circuits(c, 1).back().front();
  Rng a = keyed_rng(1, {2});
  Rng b = keyed_rng(1, {2});
  const auto ca = simulate_circuit(circ, m, 1000, a);
  const auto cb = simulate_circuit(circ, m, 1000, b);
  EXPECT_EQ(ca, cb);
  EXPECT_EQ(std::accumulate(ca.begin(), ca.end(), std::uint64_t{0}), 1000u);
}

TEST(Xeb, InjectedDepolarizingGivesExactDecay) {
  for (double p : {0.005, 0.02}) {
    CycleModel m = ideal_cycle_model(kPi);
    m.injected_depolarizing = p;
    m.interleave = false;
    const XebConfig c = exact_config(12);
    const XebSeries s = run_series(c, m);
    for (std::size_t d = 0; d < s.depths.size(); ++d) {
      EXPECT_NEAR(s.fidelity[d], std::pow(1.0 - 4.0 * p / 3.0, s.depths[d]), 1e-9)
          << p << " " << s.depths[d];
    }
    EXPECT_NEAR(s.decay.eps, p, 1e-7);
  }
}

TEST(Xeb, IdealGatesHaveNoError) {
  const CycleModel m = ideal_cycle_model(kPi / 4);
  const XebRun r = run_xeb(exact_config(13), m);
  EXPECT_NEAR(r.eps_umix, 0.0, 1e-9);
  EXPECT_NEAR(r.eps_tot, 0.0, 1e-9);
  EXPECT_NEAR(r.gate.eps_cz, 0.0, 1e-9);
  EXPECT_NEAR(r.gate_leakage, 0.0, 1e-9);
}

TEST(Xeb, InterleavedErrorIsAttributedToTheGate) {
  // Per-cycle depolarizing appears in both series and cancels in the ratio.
  CycleModel m = ideal_cycle_model(kPi / 2);
  m.injected_depolarizing = 0.01;
  const XebRun r = run_xeb(exact_config(14), m);
  EXPECT_NEAR(r.eps_umix, 0.01, 1e-6);
  EXPECT_NEAR(r.gate.eps_cz, 0.0, 1e-6);
}

TEST(Config, InvalidSettingsRejected) {
  XebConfig c = exact_config(1);
  c.depths = {};
  EXPECT_THROW(validate(c), ConfigError);
  c = exact_config(1);
  c.circuits = 0;
  EXPECT_THROW(validate(c), ConfigError);
}

}  // namespace
}  // namespace cztheta
