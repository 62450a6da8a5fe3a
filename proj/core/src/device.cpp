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

#include "cztheta/device.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cztheta {

double flux_to_freq(const FluxFrequencyMap& map, double flux) {
  if (!(std::abs(flux) < 0.5)) {
    std::ostringstream os;
    os << "flux " << flux << " outside the monotonic branch |phi| < 0.5";
    throw DomainError(os.str());
  }
  const double a = std::abs(map.alpha);
  return (map.omega_max + a) * std::sqrt(std::abs(std::cos(kPi * flux))) - a;
}

double freq_to_flux(const FluxFrequencyMap& map, double omega) {
  const double a = std::abs(map.alpha);
  if (omega > map.omega_max || omega <= -a) {
    std::ostringstream os;
    os << "frequency " << omega / kTwoPi / 1e9 << " GHz outside the tunable range";
    throw RangeError(os.str());
  }
  const double r = (omega + a) / (map.omega_max + a);
  return std::acos(std::min(1.0, r * r)) / kPi;
}

double flux_to_freq_slope(const FluxFrequencyMap& map, double flux) {
  if (!(std::abs(flux) < 0.5)) throw DomainError("flux outside the monotonic branch");
  const double a = std::abs(map.alpha);
  const double c = std::cos(kPi * flux);
  return -(map.omega_max + a) * kPi * std::sin(kPi * flux) / (2.0 * std::sqrt(c));
}

QubitCouplings coupling_from_resonator(const ResonatorCoupling& rc) {
  if (rc.delta_high == 0.0 || rc.delta_low == 0.0) {
    throw DomainError("qubit on resonance with the coupling resonator");
  }
  if (std::abs(rc.g_high / rc.delta_high) >= 0.1 || std::abs(rc.g_low / rc.delta_low) >= 0.1) {
    throw RangeError("coupling not dispersive: |g/Delta| >= 0.1");
  }
  const double j = 0.5 * rc.g_high * rc.g_low * (1.0 / rc.delta_high + 1.0 / rc.delta_low);
  QubitCouplings out;
  out.g1 = 2.0 * std::abs(j);
  out.g2 = std::numbers::sqrt2 * out.g1;
  return out;
}

ConfusionMatrix symmetric_confusion(double eps) {
  ConfusionMatrix m = ConfusionMatrix::Constant(0.5 * eps);
  m.diagonal().setConstant(1.0 - eps);
  return m;
}

double DeviceParams::t_phi_qubit(QubitRole role) const {
  const double t2 = role == QubitRole::high ? t2_star_high : t2_star_low;
  const double t1 = role == QubitRole::high ? t1_high : t1_low;
  const double rate = 1.0 / t2 - 0.5 / t1;
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_confusion(const ConfusionMatrix& m, const char* name) {
  for (int r = 0; r < 3; ++r) {
    require((m.row(r).array() >= 0.0).all(), std::string(name) + ": negative entry");
    require(std::abs(m.row(r).sum() - 1.0) < 1e-9, std::string(name) + ": row does not sum to 1");
  }
}

}  // namespace

void validate(const DeviceParams& dev) {
  require(dev.omega_idle_high > dev.omega_idle_low && dev.omega_idle_low > 0.0,
          "idle frequencies must satisfy omega_high > omega_low > 0");
  require(dev.alpha_high < 0.0 && dev.alpha_low < 0.0, "anharmonicities must be negative");
  require(dev.j2 > 0.0, "coupling must be positive");
  require(dev.delta_max() > 0.0, "|20> must lie above |11> at idle");
  for (double t : {dev.t1_high, dev.t1_low, dev.t1_2_high, dev.t1_2_low, dev.t2_star_high,
                   dev.t2_star_low, dev.t_phi}) {
    require(t > 0.0, "coherence times must be positive");
  }
  require(dev.t2_star_high <= 2.0 * dev.t1_high && dev.t2_star_low <= 2.0 * dev.t1_low,
          "T2* cannot exceed 2 T1");
  require(dev.sigma_high >= 0.0 && dev.sigma_low >= 0.0 && dev.sigma_digital >= 0.0,
          "filter widths must be non-negative");
  require(dev.sample_period > 0.0, "sample period must be positive");
  require(dev.eps_1q_high >= 0.0 && dev.eps_1q_high < 1.0 && dev.eps_1q_low >= 0.0 &&
              dev.eps_1q_low < 1.0,
          "single-qubit errors must lie in [0, 1)");
  check_confusion(dev.confusion_high, "confusion_high");
  check_confusion(dev.confusion_low, "confusion_low");
  try {
    resonant_fluxes(dev);
  } catch (const Error& e) {
    throw ConfigError(std::string("interaction point unreachable: ") + e.what());
  }
}

LevelEnergies level_energies(const DeviceParams& dev, double flux_high, double flux_low) {
  const double wh = flux_to_freq(dev.map_high(), flux_high);
  const double wl = flux_to_freq(dev.map_low(), flux_low);
  LevelEnergies e;
  e.e01 = wl;
  e.e10 = wh;
  e.e11 = wh + wl;
  e.e02 = 2.0 * wl + dev.alpha_low;
  e.e20 = 2.0 * wh + dev.alpha_high;
  return e;
}

double detuning_20_11(const DeviceParams& dev, double flux_high, double flux_low) {
  const LevelEnergies e = level_energies(dev, flux_high, flux_low);
  return e.e20 - e.e11;
}

std::pair<double, double> resonant_fluxes(const DeviceParams& dev) {
  const double phi_low = freq_to_flux(dev.map_low(), dev.omega_low_interaction);
  const double phi_high = freq_to_flux(dev.map_high(), dev.omega_low_interaction - dev.alpha_high);
  return {phi_high, phi_low};
}

double detuning_slope_low(const DeviceParams& dev, double /*flux_high*/, double flux_low) {
  return -flux_to_freq_slope(dev.map_low(), flux_low);
}

}  // namespace cztheta
