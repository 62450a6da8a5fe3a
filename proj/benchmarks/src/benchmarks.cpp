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
#include <benchmark/benchmark.h>

#include "cztheta/analytic.hpp"
#include "cztheta/benchmarking.hpp"
#include "cztheta/calibration.hpp"

namespace cztheta {
namespace {

void BM_AmplitudeC11(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitude_c11(0.1, t, 1.0));
    t += 1e-9;
  }
}
BENCHMARK(BM_AmplitudeC11);

void BM_TwoLevelSegments(benchmark::State& state) {
  const std::vector<TwoLevelSegment> segs = {{kPi, 0.1, 1.0}, {1.0, 2.0, 0.0}, {kPi, 0.1, 1.0}};
  for (auto _ : state) benchmark::DoNotOptimize(propagate_segments(segs));
}
BENCHMARK(BM_TwoLevelSegments);

void BM_GateEvolution(benchmark::State& state) {
  const DeviceParams dev;
  SimulatorOptions o;
  o.model = state.range(0) == 0 ? ModelKind::two_level : ModelKind::six_level;
  o.shape = PulseShape::sampled;
  const DeviceSimulator sim(dev, o);
  const GateParams p = initial_gate(dev);
  for (auto _ : state) benchmark::DoNotOptimize(sim.evolve(p));
  state.SetLabel(state.range(0) == 0 ? "two_level" : "six_level");
}
BENCHMARK(BM_GateEvolution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GateChannel(benchmark::State& state) {
  const DeviceParams dev;
  const GateParams p = initial_gate(dev);
  for (auto _ : state) benchmark::DoNotOptimize(gate_channel(p, dev));
}
BENCHMARK(BM_GateChannel)->Unit(benchmark::kMillisecond);

void BM_XebCircuit(benchmark::State& state) {
  XebConfig c;
  c.depths = {static_cast<int>(state.range(0))};
  c.circuits = 1;
  const XebCircuit circ = sample_circuits(c, 1).front().front();
  CycleModel m = ideal_cycle_model(kPi);
  m.injected_depolarizing = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(outcome_probabilities(circ, m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_XebCircuit)->RangeMultiplier(4)->Range(4, 256)->Complexity(benchmark::oN);

void BM_FitDecay(benchmark::State& state) {
  const std::vector<double> m = {4, 8, 16, 32, 64, 128, 256};
  std::vector<double> f, s;
  for (double d : m) {
    f.push_back(0.95 * std::pow(0.99, d) + 0.01);
    s.push_back(0.005);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_decay(m, f, s));
}
BENCHMARK(BM_FitDecay);

}  // namespace
}  // namespace cztheta

BENCHMARK_MAIN();
