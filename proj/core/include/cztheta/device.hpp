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

// Physical model of two fixed-coupled flux-tunable transmons.
//
// All quantities are SI: angular frequencies in rad/s, times in s, flux in
// units of the flux quantum. Both qubits idle at their upper sweet spot, so the
// flux applied by a pulse is measured from zero.

#pragma once

#include <optional>
#include <utility>

#include "cztheta/common.hpp"

namespace cztheta {

enum class QubitRole { high, low };

/// Transmon 0-1 transition frequency as a function of SQUID flux,
/// omega(phi) = (omega_max + |alpha|) * sqrt(|cos(pi*phi)|) - |alpha|.
struct FluxFrequencyMap {
  double omega_max = 0.0;
  double alpha = 0.0;
};

/// omega_10 at the given flux. Throws DomainError for |flux| >= 0.5.
double flux_to_freq(const FluxFrequencyMap& map, double flux);

/// Non-negative flux on the monotonic branch that yields omega.
/// Throws RangeError if omega is above the sweet spot or below the branch
/// minimum omega(0.5) = -|alpha|.
double freq_to_flux(const FluxFrequencyMap& map, double omega);

/// d omega_10 / d phi.
double flux_to_freq_slope(const FluxFrequencyMap& map, double flux);

/// Transmon-resonator couplings of a resonator-mediated qubit-qubit link.
struct ResonatorCoupling {
  double g_high = 0.0;
  double g_low = 0.0;
  double delta_high = 0.0;
  double delta_low = 0.0;
};

struct QubitCouplings {
  double g1 = 0.0;  // one-excitation splitting, 2*J1
  double g2 = 0.0;  // |11>-|20> splitting, 2*J2 = sqrt(2)*g1
};

/// Effective capacitive coupling in the dispersive limit. Throws DomainError
/// for zero detuning and RangeError if |g/Delta| >= 0.1 on either side.
QubitCouplings coupling_from_resonator(const ResonatorCoupling& rc);

/// Rows: prepared level, columns: reported level.
using ConfusionMatrix = Eigen::Matrix3d;

/// Diagonal 1 - eps, the error split evenly between the two wrong levels.
ConfusionMatrix symmetric_confusion(double eps);

struct DeviceParams {
  double omega_idle_high = ghz(6.278);
  double omega_idle_low = ghz(4.083);
  double alpha_high = ghz(-0.167);
  double alpha_low = ghz(-0.191);
  double j2 = mhz(11.38);

  double t1_high = us(32.6);
  double t1_low = us(88.0);
  double t1_2_high = us(14.7);
  double t1_2_low = us(30.3);
  double t2_star_high = us(23.9);
  double t2_star_low = us(46.8);
  /// Effective |11>-|20> dephasing time during the interaction.
  double t_phi = us(18.0);

  double sigma_high = ns(1.02);
  double sigma_low = ns(1.35);
  /// Gaussian applied digitally before sub-sample edge placement.
  double sigma_digital = ns(0.5);
  double sample_period = 1.0 / 2.4e9;

  ConfusionMatrix confusion_high = symmetric_confusion(0.0149);
  ConfusionMatrix confusion_low = symmetric_confusion(0.0136);

  double eps_1q_high = 0.0007;
  double eps_1q_low = 0.0005;

  /// Frequency of the low qubit while interacting; the high qubit is placed
  /// at omega_low_interaction - alpha_high so that |11> meets |20>.
  double omega_low_interaction = ghz(3.65);

  /// Reference values reported for the physical device.
  std::optional<double> zz_reference_high = khz(1.3);
  std::optional<double> zz_reference_low = khz(4.4);
  std::optional<double> residual_population_high = 0.0002;
  std::optional<double> residual_population_low = 0.0043;

  FluxFrequencyMap map_high() const { return {omega_idle_high, alpha_high}; }
  FluxFrequencyMap map_low() const { return {omega_idle_low, alpha_low}; }
  FluxFrequencyMap map(QubitRole role) const {
    return role == QubitRole::high ? map_high() : map_low();
  }
  double line_sigma(QubitRole role) const {
    return role == QubitRole::high ? sigma_high : sigma_low;
  }

  double g2() const { return 2.0 * j2; }
  double g1() const { return g2() / std::numbers::sqrt2; }
  double j1() const { return 0.5 * g1(); }

  /// |20> - |11> detuning with both qubits idle.
  double delta_max() const { return omega_idle_high - omega_idle_low + alpha_high; }

  /// (T1^{10}^-1 + T1^{01}^-1)^-1
  double t1_11() const { return 1.0 / (1.0 / t1_high + 1.0 / t1_low); }

  /// Pure dephasing time from T2* and T1.
  double t_phi_qubit(QubitRole role) const;
};

/// Throws ConfigError when an invariant does not hold.
void validate(const DeviceParams& dev);

/// Level energies of the lowest six two-transmon states in the lab frame.
/// Labels are (high, low).
struct LevelEnergies {
  double e00 = 0.0;
  double e01 = 0.0;
  double e10 = 0.0;
  double e11 = 0.0;
  double e02 = 0.0;
  double e20 = 0.0;
};

LevelEnergies level_energies(const DeviceParams& dev, double flux_high, double flux_low);

/// E20 - E11 at the given fluxes.
double detuning_20_11(const DeviceParams& dev, double flux_high, double flux_low);

/// Flux amplitudes that put |11> on resonance with |20> at the device's
/// interaction frequency, {phi_high, phi_low}.
std::pair<double, double> resonant_fluxes(const DeviceParams& dev);

/// d(E20 - E11) / d phi_low at the given point.
double detuning_slope_low(const DeviceParams& dev, double flux_high, double flux_low);

}  // namespace cztheta
