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
#include <set>

#include "cztheta/common.hpp"
#include "property.hpp"

namespace cztheta {
namespace {

using testing::for_all;
using testing::Gen;

TEST(Units, AngularFrequencyHelpers) {
  EXPECT_DOUBLE_EQ(ghz(1.0), 2.0 * std::numbers::pi * 1e9);
  EXPECT_DOUBLE_EQ(mhz(22.76), 2.0 * std::numbers::pi * 22.76e6);
  EXPECT_DOUBLE_EQ(ns(3.0), 3e-9);
  EXPECT_DOUBLE_EQ(us(18.0), 18e-6);
}

TEST(Phase, WrapIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_phase(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(canonical_phase(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(canonical_phase(0.0), 0.0);
}

TEST(Phase, WrapPreservesAngleModuloTwoPi) {
  for_all(200, 1, [](Gen& g) {
    const double x = g.uniform(-50.0, 50.0);
    const double w = wrap_phase(x);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(x - w, kTwoPi), 0.0, 1e-12);
    const double c = canonical_phase(x);
    EXPECT_GE(c, 0.0);
    EXPECT_LT(c, kTwoPi);
    EXPECT_NEAR(std::remainder(x - c, kTwoPi), 0.0, 1e-12);
  });
}

TEST(Phase, UnwrapRecoversSmoothRamp) {
  for_all(50, 2, [](Gen& g) {
    const double slope = g.uniform(-2.5, 2.5);
    const double start = g.uniform(-10.0, 10.0);
    std::vector<double> truth;
    std::vector<double> wrapped;
    for (int i = 0; i < 40; ++i) {
      truth.push_back(start + slope * i);
      wrapped.push_back(wrap_phase(truth.back()));
    }
    const auto un = unwrap(wrapped);
    ASSERT_EQ(un.size(), truth.size());
    for (std::size_t i = 1; i < un.size(); ++i) {
      EXPECT_NEAR(un[i] - un[0], truth[i] - truth[0], 1e-9);
    }
  });
}

TEST(Sampling, MultinomialConservesShots) {
  for_all(50, 3, [](Gen& g) {
    const auto p = g.simplex(g.integer(2, 9));
    const auto shots = static_cast<std::uint64_t>(g.integer(1, 5000));
    const auto counts = sample_multinomial(p, shots, g.rng());
    EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), shots);
  });
}

TEST(Sampling, MultinomialClipsNegativeProbabilities) {
  Rng rng(5);
  const auto counts = sample_multinomial({-1e-12, 0.5, 0.5}, 1000, rng);
  EXPECT_EQ(counts[0], 0u);
  EXPECT_EQ(counts[1] + counts[2], 1000u);
}

TEST(Sampling, MultinomialMeanMatchesProbabilities) {
  Rng rng(6);
  const std::vector<double> p{0.1, 0.2, 0.7};
  const auto counts = sample_multinomial(p, 200000, rng);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double sd = std::sqrt(p[i] * (1 - p[i]) / 200000.0);
    EXPECT_NEAR(static_cast<double>(counts[i]) / 200000.0, p[i], 5 * sd);
  }
}

TEST(Sampling, KeyedStreamsAreReproducibleAndDistinct) {
  Rng a = keyed_rng(42, {1, 2, 3});
  Rng b = keyed_rng(42, {1, 2, 3});
  EXPECT_EQ(a(), b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 100; ++k) firsts.insert(keyed_rng(42, {1, k})());
  firsts.insert(keyed_rng(43, {1, 0})());
  EXPECT_EQ(firsts.size(), 101u);
}

}  // namespace
}  // namespace cztheta
