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

// Closed-form results for the |11>-|20> two-level system: the return
// amplitude of a net-zero gate, leakage accumulated over repeated gates, and
// the geometric decomposition of the conditional phase.
//
// Dimensionless quantities are in units of g2: delta = Delta / g2 and
// t = t_int * g2 - 2 pi.

#pragma once

#include <vector>

#include "cztheta/dynamics.hpp"

namespace cztheta {

/// <11|U|11> of the gate with detuning delta during both halves, total
/// interaction time t + 2 pi and phase theta_idle acquired by |20> between
/// the halves.
Complex amplitude_c11(double delta, double t, double theta_idle);

enum class TaylorAxis { detuning, time };

/// Leading term of 1 - P11 around the resonant, full-recovery point:
/// P11 = 1 + coefficient * x^order.
struct TaylorTerm {
  double coefficient = 0.0;
  int order = 0;
};

/// theta_idle must be 0 or pi (DomainError otherwise).
TaylorTerm taylor_sensitivity(double theta_idle, TaylorAxis axis);

/// 1 + coefficient * x^order.
double taylor_population(double theta_idle, TaylorAxis axis, double x);

/// A gate modeled as Y_lambda Z_beta on {|11>, |20>}.
struct CoherentGateModel {
  double lambda = 0.0;
  double beta = 0.0;
};

/// exp(-i lambda sigma_y / 2) exp(-i beta sigma_z / 2).
Eigen::Matrix2cd coherent_gate_unitary(const CoherentGateModel& m);

/// |<20|U^n|11>|^2 for U = Y_lambda Z_beta. Throws DomainError for n < 1.
double leakage_ln(const CoherentGateModel& m, int n);

/// First-order form L1 sin^2(n beta / 2) / sin^2(beta / 2). At beta = 0 mod
/// 2 pi it returns the constructive limit sin^2(n sqrt(L1)).
double leakage_ln_small(double l1, double beta, int n);

/// Conditional phase of a full-recovery gate of constant detuning.
double geom_phase_circle(double delta, double g2);

struct GeometricDecomposition {
  double theta_g = 0.0;
  double theta_d = 0.0;
  double solid_angle = 0.0;
  double total() const { return wrap_phase(theta_g + theta_d); }
};

/// Sampled two-level evolution. bloch[k] is the Bloch vector at times[k] in
/// the basis {|11> (north), |20> (south)}; hamiltonian[k] is H at times[k].
struct BlochTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> bloch;
  std::vector<Eigen::Matrix2d> hamiltonian;
  Eigen::Matrix2cd unitary = Eigen::Matrix2cd::Identity();
};

/// Samples the exact evolution from |11> with `per_segment` points per
/// segment. Zero-duration segments are skipped.
BlochTrajectory sample_trajectory(const std::vector<TwoLevelSegment>& segments,
                                  int per_segment);

Eigen::Vector3d bloch_vector(const Eigen::Vector2cd& psi);

/// Signed area enclosed by a closed spherical polyline, counter-clockwise
/// seen from outside positive. Reduced to (-2 pi, 2 pi].
double enclosed_solid_angle(const std::vector<Eigen::Vector3d>& loop);

/// theta_d = -int <H> dt by the trapezoid rule, theta_g = -S / 2.
/// Throws DomainError if the trajectory does not close to within 1e-6.
GeometricDecomposition aharonov_anandan(const BlochTrajectory& traj);

/// Rotates the axis about z by theta_d. With Z = exp(i theta_d sigma_z / 2),
/// R_r Z R_r = Z R_{r'} R_r. Throws DomainError for the zero vector.
Eigen::Vector3d commute_z_axis(const Eigen::Vector3d& axis, double theta_d);

/// exp(-i lambda (r . sigma) / 2) for a unit axis r.
Eigen::Matrix2cd axis_rotation(const Eigen::Vector3d& axis, double lambda);

}  // namespace cztheta
