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

// Time evolution of the two-transmon system.
//
// Six-level model: basis {00, 01, 10, 11, 02, 20} with labels (high, low).
// Two-level model: basis {11, 20} with H = [[0, g2/2], [g2/2, Delta]].
// Lindblad model: basis {11, 20, sink}.

#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cztheta/device.hpp"
#include "cztheta/waveform.hpp"

namespace cztheta {

enum SixLevelIndex : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3, k02 = 4, k20 = 5 };

struct TwoLevelHamiltonian {
  double delta = 0.0;
  double g2 = 0.0;
  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d h;
    h << 0.0, 0.5 * g2, 0.5 * g2, delta;
    return h;
  }
};

/// Piece of a piecewise-constant two-level pulse.
struct TwoLevelSegment {
  double duration = 0.0;
  double delta = 0.0;
  double coupling = 0.0;
};

/// Exact propagator of a piecewise-constant two-level pulse.
Eigen::Matrix2cd propagate_segments(const std::vector<TwoLevelSegment>& segments);

/// exp(-i H t) for a real symmetric 2x2 H.
Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2d& h, double t);

/// Time-dependent two-level problem derived from a flux drive.
struct TwoLevelDrive {
  std::function<double(double)> delta;
  double g2 = 0.0;
  double duration = 0.0;
  std::vector<double> breakpoints;
  double step_hint = 0.0;
  /// Intervals where the detuning equals its idle value.
  std::vector<std::pair<double, double>> quiet;
  /// Intervals where the interaction dephasing term is active.
  std::vector<std::pair<double, double>> dephasing_windows;
};

/// The dephasing window is where |flux_high| exceeds half its amplitude.
TwoLevelDrive make_two_level_drive(const FluxDrive& drive, const DeviceParams& dev);

struct PropagationOptions {
  /// Step is drive.step_hint; with adaptive on it is halved until the
  /// populations change by less than tolerance.
  bool adaptive = false;
  double tolerance = 1e-10;
  int max_refinements = 4;
};

struct PropagationResult {
  /// Six-level: 6x6 in the idle frame. Two-level: 2x2.
  Eigen::MatrixXcd unitary;
  /// Lindblad runs only, basis {11, 20, sink}.
  std::optional<Eigen::Matrix3cd> density;
  /// Populations after starting in |11>, in the model's basis order.
  Eigen::VectorXd populations;
  double conditional_phase = 0.0;
  double dynamic_phase_high = 0.0;
  double dynamic_phase_low = 0.0;
  double leakage = 0.0;
  double achieved_tolerance = 0.0;
  std::size_t steps = 0;
};

/// Six-level Hamiltonian at the given fluxes in the lab frame.
Eigen::Matrix<double, 6, 6> six_level_hamiltonian(const DeviceParams& dev, double flux_high,
                                                  double flux_low);

/// Propagator of the six-level model in the reference frame that removes
/// omega_ref * N, omega_ref = (omega_idle_high + omega_idle_low) / 2. Gates
/// expressed in this frame compose directly.
struct SixLevelPropagator {
  Eigen::Matrix<Complex, 6, 6> u;
  std::size_t steps = 0;
  double achieved_tolerance = 0.0;
};

SixLevelPropagator propagate_reference(const FluxDrive& drive, const DeviceParams& dev,
                                       const PropagationOptions& opts = {});

/// Reference-frame propagator for a gap at zero flux.
Eigen::Matrix<Complex, 6, 6> idle_reference(const DeviceParams& dev, double duration);

/// Eigenstates of the idle Hamiltonian. Column k is the eigenvector with the
/// largest overlap on bare state k, with a positive diagonal entry; energies
/// are in the lab frame.
struct IdleEigenbasis {
  Eigen::Matrix<double, 6, 6> vectors;
  Eigen::Matrix<double, 6, 1> energies;
};

IdleEigenbasis idle_eigenbasis(const DeviceParams& dev);

/// Converts a reference-frame propagator spanning `elapsed` seconds to the
/// idle eigenbasis, in the frame rotating at the idle eigenenergies.
Eigen::Matrix<Complex, 6, 6> to_idle_frame(const Eigen::Matrix<Complex, 6, 6>& u_ref,
                                           const DeviceParams& dev, double elapsed);

PropagationResult analyze_six_level(const Eigen::Matrix<Complex, 6, 6>& u_idle);

PropagationResult propagate_unitary(const FluxDrive& drive, const DeviceParams& dev,
                                    const PropagationOptions& opts = {});

PropagationResult propagate_unitary(const TwoLevelDrive& drive,
                                    const PropagationOptions& opts = {});

PropagationResult propagate_unitary(const std::vector<TwoLevelSegment>& segments);

/// arg U11 - arg U10 - arg U01 + arg U00 wrapped to (-pi, pi].
double conditional_phase(const Eigen::Matrix<Complex, 6, 6>& u);

struct NoiseParams {
  double t1_11 = std::numeric_limits<double>::infinity();
  double t1_20 = std::numeric_limits<double>::infinity();
  double t_phi = std::numeric_limits<double>::infinity();

  static NoiseParams from_device(const DeviceParams& dev) {
    return {dev.t1_11(), dev.t1_2_high, dev.t_phi};
  }
};

/// Lindblad evolution starting in |11>. Throws NumericError when the trace
/// drifts by more than 1e-9 or the state loses positivity.
PropagationResult propagate_lindblad(const TwoLevelDrive& drive, const NoiseParams& noise,
                                     const PropagationOptions& opts = {});

/// Process on two qutrits, basis index 3*h + l.
struct GateChannel {
  /// Column-stacking superoperator, vec(E(rho)) = superop * vec(rho).
  Eigen::MatrixXcd superop;
  /// Coherent part with virtual-Z correction applied.
  Eigen::Matrix<Complex, 9, 9> unitary;
  double conditional_phase = 0.0;
  double coherent_leakage = 0.0;
  double incoherent_leakage = 0.0;
  double duration = 0.0;
};

struct ChannelOptions {
  PulseShape shape = PulseShape::sampled;
  bool noise = true;
  /// Virtual-Z phases subtracted from the high and low qubit frames.
  double vz_high = 0.0;
  double vz_low = 0.0;
  PropagationOptions propagation;
};

GateChannel gate_channel(const GateParams& params, const DeviceParams& dev,
                         const ChannelOptions& opts = {});

/// Embeds a six-level operator into the two-qutrit space; |12>, |21>, |22>
/// map to themselves.
Eigen::Matrix<Complex, 9, 9> embed_qutrits(const Eigen::Matrix<Complex, 6, 6>& u);

/// Superoperator of a unitary, conj(U) kron U.
Eigen::MatrixXcd unitary_superop(const Eigen::MatrixXcd& u);

/// Superoperator of independent qutrit amplitude damping and dephasing over
/// the given time.
Eigen::MatrixXcd qutrit_decoherence(const DeviceParams& dev, double duration);

/// Average gate fidelity of a two-qutrit channel to a target unitary on the
/// computational subspace, leakage counted as error.
double average_gate_fidelity(const Eigen::MatrixXcd& superop,
                             const Eigen::Matrix4cd& target);

/// Target CZ_theta on the computational subspace.
Eigen::Matrix4cd cz_matrix(double theta);

/// Static ZZ from dressed six-level eigenvalues at zero flux.
double residual_zz(const DeviceParams& dev);

}  // namespace cztheta
