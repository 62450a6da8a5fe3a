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

#include "cztheta/common.hpp"

#include <algorithm>
#include <cmath>

namespace cztheta {

double wrap_phase(double phase) {
  double w = std::remainder(phase, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double canonical_phase(double phase) {
  double w = std::fmod(phase, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

std::vector<double> unwrap(const std::vector<double>& phases) {
  std::vector<double> out(phases.size());
  if (phases.empty()) return out;
  out[0] = phases[0];
  for (std::size_t i = 1; i < phases.size(); ++i) {
    out[i] = out[i - 1] + wrap_phase(phases[i] - phases[i - 1]);
  }
  return out;
}

std::vector<std::uint64_t> sample_multinomial(const std::vector<double>& probs,
                                              std::uint64_t shots, Rng& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  double remaining = 0.0;
  for (double p : probs) remaining += std::max(p, 0.0);
  std::uint64_t left = shots;
  for (std::size_t i = 0; i < probs.size() && left > 0; ++i) {
    const double p = std::max(probs[i], 0.0);
    if (i + 1 == probs.size() || remaining <= 0.0) {
      counts[i] = remaining > 0.0 ? left : 0;
      left -= counts[i];
      break;
    }
    const double q = std::clamp(p / remaining, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(left, q);
    counts[i] = draw(rng);
    left -= counts[i];
    remaining -= p;
  }
  return counts;
}

Rng keyed_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (std::uint64_t k : keys) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace cztheta
