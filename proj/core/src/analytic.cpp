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

#include "cztheta/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cztheta {

Complex amplitude_c11(double delta, double t, double theta_idle) {
  const double omega2 = 1.0 + delta * delta;
  const double omega = std::sqrt(omega2);
  const double t_int = t + kTwoPi;
  const Complex xi = (1.0 - std::exp(-kI * theta_idle)) / (2.0 * omega2);
  const double half = 0.5 * omega * t_int;
  return std::exp(-kI * delta * t_int / 2.0) *
         (xi + (1.0 - xi) * std::cos(half) + kI * (delta / omega) * std::sin(half));
}

TaylorTerm taylor_sensitivity(double theta_idle, TaylorAxis axis) {
  const double w = wrap_phase(theta_idle);
  const bool zero = std::abs(w) < 1e-12;
  const bool pi = std::abs(std::abs(w) - kPi) < 1e-12;
  if (!zero && !pi) throw DomainError("Taylor sensitivities are defined for theta_idle in {0, pi}");
  if (axis == TaylorAxis::detuning) {
    return zero ? TaylorTerm{-kPi * kPi / 4.0, 4} : TaylorTerm{-4.0, 2};
  }
  return zero ? TaylorTerm{-0.25, 2} : TaylorTerm{0.0, 0};
}

double taylor_population(double theta_idle, TaylorAxis axis, double x) {
  const TaylorTerm term = taylor_sensitivity(theta_idle, axis);
  return 1.0 + term.coefficient * std::pow(x, term.order);
}

Eigen::Matrix2cd coherent_gate_unitary(const CoherentGateModel& m) {
  const double c = std::cos(0.5 * m.lambda);
  const double s = std::sin(0.5 * m.lambda);
  Eigen::Matrix2cd y;
  y << c, -s, s, c;
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = std::exp(-0.5 * kI * m.beta);
  z(1, 1) = std::exp(0.5 * kI * m.beta);
  return y * z;
}

double leakage_ln(const CoherentGateModel& m, int n) {
  if (n < 1) throw DomainError("gate count must be at least 1");
  // U is in SU(2) with half-trace x, so <20|U^n|11> = sin(lambda/2) U_{n-1}(x)
  // with U_k the Chebyshev polynomials of the second kind.
  const double x = std::cos(0.5 * m.lambda) * std::cos(0.5 * m.beta);
  double prev = 1.0;  // U_0
  double cur = 2.0 * x;  // U_1
  if (n == 1) cur = prev;
  for (int k = 2; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  const double s = std::sin(0.5 * m.lambda);
  return s * s * cur * cur;
}

double leakage_ln_small(double l1, double beta, int n) {
  if (n < 1) throw DomainError("gate count must be at least 1");
  if (l1 < 0.0) throw DomainError("single-gate leakage must be non-negative");
  const double b = wrap_phase(beta);
  if (std::abs(b) < 1e-12) {
    const double s = std::sin(n * std::sqrt(l1));
    return s * s;
  }
  const double ratio = std::sin(0.5 * n * b) / std::sin(0.5 * b);
  return l1 * ratio * ratio;
}

double geom_phase_circle(double delta, double g2) {
  if (!(g2 > 0.0)) throw DomainError("coupling must be positive");
  return -kPi * (1.0 + delta / std::hypot(g2, delta));
}

Eigen::Vector3d bloch_vector(const Eigen::Vector2cd& psi) {
  const Complex rho01 = psi(0) * std::conj(psi(1));
  return {2.0 * rho01.real(), -2.0 * rho01.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

BlochTrajectory sample_trajectory(const std::vector<TwoLevelSegment>& segments,
                                  int per_segment) {
  if (per_segment < 1) throw DomainError("per_segment must be positive");
  BlochTrajectory tr;
  Eigen::Vector2cd psi(1.0, 0.0);
  double t0 = 0.0;
  for (const auto& seg : segments) {
    if (seg.duration < 0.0) throw DomainError("segment duration must be non-negative");
    if (seg.duration == 0.0) continue;
    const Eigen::Matrix2d h = TwoLevelHamiltonian{seg.delta, seg.coupling}.matrix();
    const Eigen::Vector2cd start = psi;
    for (int k = 0; k <= per_segment; ++k) {
      const double tau = seg.duration * k / per_segment;
      psi = expm_2x2(h, tau) * start;
      tr.times.push_back(t0 + tau);
      tr.bloch.push_back(bloch_vector(psi));
      tr.hamiltonian.push_back(h);
    }
    tr.unitary = expm_2x2(h, seg.duration) * tr.unitary;
    t0 += seg.duration;
  }
  return tr;
}

double enclosed_solid_angle(const std::vector<Eigen::Vector3d>& loop) {
  if (loop.size() < 3) return 0.0;
  // Fan apex as far as possible from the antipodes of all loop points.
  static const std::array<Eigen::Vector3d, 14> candidates = [] {
    std::array<Eigen::Vector3d, 14> c;
    int i = 0;
    for (int a = 0; a < 3; ++a) {
      for (double s : {1.0, -1.0}) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        v(a) = s;
        c[i++] = v;
      }
    }
    for (double x : {1.0, -1.0})
      for (double y : {1.0, -1.0})
        for (double z : {1.0, -1.0}) c[i++] = Eigen::Vector3d(x, y, z).normalized();
    return c;
  }();
  Eigen::Vector3d apex = candidates[0];
  double best = -1.0;
  for (const auto& q : candidates) {
    double worst = 2.0;
    for (const auto& p : loop) worst = std::min(worst, (q + p.normalized()).norm());
    if (worst > best) {
      best = worst;
      apex = q;
    }
  }
  double area = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const Eigen::Vector3d a = loop[k].normalized();
    const Eigen::Vector3d b = loop[(k + 1) % loop.size()].normalized();
    const double num = apex.dot(a.cross(b));
    const double den = 1.0 + apex.dot(a) + apex.dot(b) + a.dot(b);
    area += 2.0 * std::atan2(num, den);
  }
  // Reduce modulo 4 pi into (-2 pi, 2 pi].
  area = std::remainder(area, 2.0 * kTwoPi);
  if (area <= -kTwoPi) area += 2.0 * kTwoPi;
  return area;
}

GeometricDecomposition aharonov_anandan(const BlochTrajectory& traj) {
  if (traj.bloch.size() < 2 || traj.bloch.size() != traj.times.size() ||
      traj.hamiltonian.size() != traj.times.size()) {
    throw DomainError("trajectory samples are inconsistent");
  }
  if ((traj.bloch.back() - traj.bloch.front()).norm() > 1e-6) {
    throw DomainError("trajectory is not cyclic");
  }
  auto energy = [&](std::size_t k) {
    const Eigen::Matrix2d& h = traj.hamiltonian[k];
    const Eigen::Vector3d& r = traj.bloch[k];
    return 0.5 * (h(0, 0) * (1.0 + r.z()) + h(1, 1) * (1.0 - r.z())) + h(0, 1) * r.x();
  };
  double integral = 0.0;
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    const double dt = traj.times[k] - traj.times[k - 1];
    if (dt == 0.0) continue;
    integral += 0.5 * dt * (energy(k - 1) + energy(k));
  }
  GeometricDecomposition g;
  g.theta_d = -integral;
  g.solid_angle = enclosed_solid_angle(traj.bloch);
  g.theta_g = -0.5 * g.solid_angle;
  return g;
}

Eigen::Vector3d commute_z_axis(const Eigen::Vector3d& axis, double theta_d) {
  if (axis.norm() == 0.0) throw DomainError("rotation axis must be non-zero");
  const double c = std::cos(theta_d);
  const double s = std::sin(theta_d);
  return {c * axis.x() - s * axis.y(), s * axis.x() + c * axis.y(), axis.z()};
}

Eigen::Matrix2cd axis_rotation(const Eigen::Vector3d& axis, double lambda) {
  if (axis.norm() == 0.0) throw DomainError("rotation axis must be non-zero");
  const Eigen::Vector3d r = axis.normalized();
  const double c = std::cos(0.5 * lambda);
  const double s = std::sin(0.5 * lambda);
  Eigen::Matrix2cd u;
  u(0, 0) = Complex(c, -s * r.z());
  u(1, 1) = Complex(c, s * r.z());
  u(0, 1) = Complex(-s * r.y(), -s * r.x());
  u(1, 0) = Complex(s * r.y(), -s * r.x());
  return u;
}

}  // namespace cztheta
