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

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cztheta {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Angular frequency for a frequency given in GHz (2*pi*f).
constexpr double ghz(double f) { return kTwoPi * f * 1e9; }
constexpr double mhz(double f) { return kTwoPi * f * 1e6; }
constexpr double khz(double f) { return kTwoPi * f * 1e3; }
constexpr double ns(double t) { return t * 1e-9; }
constexpr double us(double t) { return t * 1e-6; }

/// Wraps a phase into (-pi, pi].
double wrap_phase(double phase);

/// Wraps a phase into [0, 2*pi).
double canonical_phase(double phase);

/// Unwraps a phase sequence so consecutive differences lie in (-pi, pi].
std::vector<double> unwrap(const std::vector<double>& phases);

using Rng = std::mt19937_64;

/// Counts of `shots` draws from the given distribution. Probabilities are
/// clipped at zero and renormalized.
std::vector<std::uint64_t> sample_multinomial(const std::vector<double>& probs,
                                              std::uint64_t shots, Rng& rng);

/// Deterministic generator for a keyed sub-stream of a seeded run.
Rng keyed_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map (e.g. flux off the monotonic branch).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Value outside a tabulated or physical range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Integrator did not reach the requested tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Waveform synthesis produced a pulse without a usable plateau.
class WaveformError : public Error {
 public:
  using Error::Error;
};

/// A calibration stage failed to converge or violated its threshold.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, std::vector<std::string> trace = {})
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

/// Curve fit failed or was degenerate.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration document or parameter set.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cztheta
