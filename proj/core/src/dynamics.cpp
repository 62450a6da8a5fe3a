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

#include "cztheta/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace cztheta {
namespace {

using Mat6c = Eigen::Matrix<Complex, 6, 6>;
using Mat9c = Eigen::Matrix<Complex, 9, 9>;

// Fourth-order commutator-free Magnus scheme with two exponentials per step.
const double kSqrt3 = std::sqrt(3.0);
const double kC1 = 0.5 - kSqrt3 / 6.0;
const double kC2 = 0.5 + kSqrt3 / 6.0;
const double kA1 = 0.25 + kSqrt3 / 6.0;
const double kA2 = 0.25 - kSqrt3 / 6.0;

// Splits [0, duration] at the breakpoints and quiet-interval edges. Calls
// quiet_step(a, b) on intervals inside a quiet interval and step(t, dt) on
// uniform substeps of length <= h elsewhere. Returns the number of steps.
template <class Step, class Quiet>
std::size_t march(double duration, const std::vector<double>& breakpoints,
                  const std::vector<std::pair<double, double>>& quiet, double h, Step step,
                  Quiet quiet_step) {
  std::vector<double> nodes = {0.0, duration};
  for (double b : breakpoints) {
    if (b > 0.0 && b < duration) nodes.push_back(b);
  }
  for (const auto& [a, b] : quiet) {
    if (a > 0.0 && a < duration) nodes.push_back(a);
    if (b > 0.0 && b < duration) nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::size_t count = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double a = nodes[i - 1];
    const double b = nodes[i];
    const double mid = 0.5 * (a + b);
    const bool is_quiet = std::any_of(quiet.begin(), quiet.end(), [mid](const auto& q) {
      return mid > q.first && mid < q.second;
    });
    if (is_quiet) {
      quiet_step(a, b);
      ++count;
      continue;
    }
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / h - 1e-9)));
    const double dt = (b - a) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) step(a + static_cast<double>(k) * dt, dt);
    count += n;
  }
  return count;
}

Eigen::Matrix3cd expm_sym3(const Eigen::Matrix3d& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  const Eigen::Matrix3d& v = es.eigenvectors();
  Eigen::Vector3cd ph;
  for (int k = 0; k < 3; ++k) ph(k) = std::exp(-kI * es.eigenvalues()(k) * t);
  return v.cast<Complex>() * ph.asDiagonal() * v.transpose().cast<Complex>();
}

// Blocks of the six-level Hamiltonian in the reference frame.
struct Blocks {
  Eigen::Matrix2d one;    // {01, 10}
  Eigen::Matrix3d two;    // {11, 02, 20}
};

double reference_frequency(const DeviceParams& dev) {
  return 0.5 * (dev.omega_idle_high + dev.omega_idle_low);
}

Blocks blocks_at(const DeviceParams& dev, double fh, double fl) {
  const LevelEnergies e = level_energies(dev, fh, fl);
  const double w = reference_frequency(dev);
  const double j1 = dev.j1();
  const double j2 = dev.j2;
  Blocks b;
  b.one << e.e01 - w, j1, j1, e.e10 - w;
  b.two << e.e11 - 2.0 * w, j2, j2, j2, e.e02 - 2.0 * w, 0.0, j2, 0.0, e.e20 - 2.0 * w;
  return b;
}

struct BlockPropagator {
  Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  Eigen::Matrix3cd two = Eigen::Matrix3cd::Identity();

  Mat6c full() const {
    Mat6c u = Mat6c::Zero();
    u(k00, k00) = 1.0;
    const int i1[2] = {k01, k10};
    const int i2[3] = {k11, k02, k20};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) u(i1[r], i1[c]) = one(r, c);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) u(i2[r], i2[c]) = two(r, c);
    return u;
  }
};

BlockPropagator run_six_level(const FluxDrive& drive, const DeviceParams& dev, double h,
                              std::size_t& steps) {
  BlockPropagator u;
  const Blocks idle = blocks_at(dev, 0.0, 0.0);
  auto step = [&](double t, double dt) {
    const Blocks b1 = blocks_at(dev, drive.high(t + kC1 * dt), drive.low(t + kC1 * dt));
    const Blocks b2 = blocks_at(dev, drive.high(t + kC2 * dt), drive.low(t + kC2 * dt));
    const Eigen::Matrix2d first1 = kA1 * b1.one + kA2 * b2.one;
    const Eigen::Matrix2d last1 = kA2 * b1.one + kA1 * b2.one;
    const Eigen::Matrix3d first2 = kA1 * b1.two + kA2 * b2.two;
    const Eigen::Matrix3d last2 = kA2 * b1.two + kA1 * b2.two;
    u.one = expm_2x2(last1, dt) * expm_2x2(first1, dt) * u.one;
    u.two = expm_sym3(last2, dt) * expm_sym3(first2, dt) * u.two;
  };
  auto quiet = [&](double a, double b) {
    u.one = expm_2x2(idle.one, b - a) * u.one;
    u.two = expm_sym3(idle.two, b - a) * u.two;
  };
  steps = march(drive.duration, drive.breakpoints, drive.quiet, h, step, quiet);
  return u;
}

double max_population_change(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.cwiseAbs2() - b.cwiseAbs2()).cwiseAbs().maxCoeff();
}

// Runs `once(h)` and, when adaptive, halves h until two successive results
// agree in population to the tolerance.
template <class Once>
auto refine(Once once, double h, const PropagationOptions& opts, double& achieved,
            std::size_t& steps) {
  auto result = once(h, steps);
  achieved = 0.0;
  if (!opts.adaptive) return result;
  double diff = 0.0;
  for (int r = 1; r <= opts.max_refinements; ++r) {
    std::size_t finer_steps = 0;
    auto finer = once(h / std::pow(2.0, r), finer_steps);
    diff = max_population_change(result.matrix(), finer.matrix());
    result = finer;
    steps = finer_steps;
    if (diff < opts.tolerance) {
      achieved = diff;
      return result;
    }
  }
  std::ostringstream os;
  os << "propagation did not reach tolerance " << opts.tolerance << " (achieved " << diff << ")";
  throw NumericError(os.str(), diff);
}

struct SixWrap {
  BlockPropagator p;
  Mat6c matrix() const { return p.full(); }
};

struct TwoWrap {
  Eigen::Matrix2cd u;
  const Eigen::Matrix2cd& matrix() const { return u; }
};

double step_length(double hint, double duration) {
  if (hint > 0.0) return hint;
  return duration / 1000.0;
}

// Column-stacking Lindblad generator for a single jump operator.
Eigen::MatrixXcd dissipator(const Eigen::MatrixXcd& l) {
  const auto n = l.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd ldl = l.adjoint() * l;
  return Eigen::kroneckerProduct(l.conjugate(), l).eval() -
         0.5 * Eigen::kroneckerProduct(id, ldl).eval() -
         0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
}

Eigen::MatrixXcd hamiltonian_generator(const Eigen::MatrixXcd& h) {
  const auto n = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  return -kI * (Eigen::kroneckerProduct(id, h).eval() -
                Eigen::kroneckerProduct(h.transpose(), id).eval());
}

}  // namespace

Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2d& h, double t) {
  const double m = 0.5 * (h(0, 0) + h(1, 1));
  const double d = 0.5 * (h(0, 0) - h(1, 1));
  const double b = h(0, 1);
  const double w = std::hypot(d, b);
  const double c = std::cos(w * t);
  // sin(w t) / w, finite at w = 0
  const double s = w > 0.0 ? std::sin(w * t) / w : t;
  Eigen::Matrix2cd u;
  u(0, 0) = Complex(c, -s * d);
  u(1, 1) = Complex(c, s * d);
  u(0, 1) = Complex(0.0, -s * b);
  u(1, 0) = Complex(0.0, -s * b);
  return std::exp(-kI * m * t) * u;
}

Eigen::Matrix2cd propagate_segments(const std::vector<TwoLevelSegment>& segments) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (const auto& s : segments) {
    if (s.duration < 0.0) throw DomainError("segment duration must be non-negative");
    u = expm_2x2(TwoLevelHamiltonian{s.delta, s.coupling}.matrix(), s.duration) * u;
  }
  return u;
}

TwoLevelDrive make_two_level_drive(const FluxDrive& drive, const DeviceParams& dev) {
  TwoLevelDrive d;
  d.delta = [high = drive.high, low = drive.low, dev](double t) {
    return detuning_20_11(dev, high(t), low(t));
  };
  d.g2 = dev.g2();
  d.duration = drive.duration;
  d.breakpoints = drive.breakpoints;
  d.step_hint = drive.step_hint;
  d.quiet = drive.quiet;

  const double threshold = 0.5 * std::abs(drive.amplitude_high);
  if (threshold > 0.0) {
    auto active = [&](double t) { return std::abs(drive.high(t)) > threshold; };
    const double scan = std::max(drive.step_hint, drive.duration * 1e-4);
    std::vector<double> edges;
    bool state = active(0.0);
    double prev = 0.0;
    for (double t = scan; prev < drive.duration; t += scan) {
      const double tt = std::min(t, drive.duration);
      const bool now = active(tt);
      if (now != state) {
        double a = prev;
        double b = tt;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          (active(m) == state ? a : b) = m;
        }
        edges.push_back(0.5 * (a + b));
        state = now;
      }
      prev = tt;
    }
    bool open = active(0.0);
    double start = 0.0;
    for (double e : edges) {
      if (open) {
        d.dephasing_windows.emplace_back(start, e);
      } else {
        start = e;
      }
      open = !open;
      d.breakpoints.push_back(e);
    }
    if (open) d.dephasing_windows.emplace_back(start, drive.duration);
  }
  std::sort(d.breakpoints.begin(), d.breakpoints.end());
  return d;
}

Eigen::Matrix<double, 6, 6> six_level_hamiltonian(const DeviceParams& dev, double flux_high,
                                                  double flux_low) {
  const LevelEnergies e = level_energies(dev, flux_high, flux_low);
  Eigen::Matrix<double, 6, 6> h = Eigen::Matrix<double, 6, 6>::Zero();
  h(k01, k01) = e.e01;
  h(k10, k10) = e.e10;
  h(k11, k11) = e.e11;
  h(k02, k02) = e.e02;
  h(k20, k20) = e.e20;
  h(k01, k10) = h(k10, k01) = dev.j1();
  h(k11, k20) = h(k20, k11) = dev.j2;
  h(k11, k02) = h(k02, k11) = dev.j2;
  return h;
}

SixLevelPropagator propagate_reference(const FluxDrive& drive, const DeviceParams& dev,
                                       const PropagationOptions& opts) {
  SixLevelPropagator out;
  auto once = [&](double h, std::size_t& steps) {
    return SixWrap{run_six_level(drive, dev, h, steps)};
  };
  const SixWrap w = refine(once, step_length(drive.step_hint, drive.duration), opts,
                           out.achieved_tolerance, out.steps);
  out.u = w.matrix();
  return out;
}

Mat6c idle_reference(const DeviceParams& dev, double duration) {
  const Blocks b = blocks_at(dev, 0.0, 0.0);
  BlockPropagator u;
  u.one = expm_2x2(b.one, duration);
  u.two = expm_sym3(b.two, duration);
  return u.full();
}

IdleEigenbasis idle_eigenbasis(const DeviceParams& dev) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(
      six_level_hamiltonian(dev, 0.0, 0.0));
  IdleEigenbasis out;
  for (int bare = 0; bare < 6; ++bare) {
    Eigen::Index best = 0;
    es.eigenvectors().row(bare).cwiseAbs().maxCoeff(&best);
    out.vectors.col(bare) = es.eigenvectors().col(best);
    if (out.vectors(bare, bare) < 0.0) out.vectors.col(bare) *= -1.0;
    out.energies(bare) = es.eigenvalues()(best);
  }
  return out;
}

Mat6c to_idle_frame(const Mat6c& u_ref, const DeviceParams& dev, double elapsed) {
  const IdleEigenbasis basis = idle_eigenbasis(dev);
  const double w = reference_frequency(dev);
  constexpr int kExcitations[6] = {0, 1, 1, 2, 2, 2};
  const Mat6c v = basis.vectors.cast<Complex>();
  Mat6c out = v.adjoint() * u_ref * v;
  for (int r = 0; r < 6; ++r) {
    out.row(r) *= std::exp(kI * (basis.energies(r) - kExcitations[r] * w) * elapsed);
  }
  return out;
}

double conditional_phase(const Mat6c& u) {
  return wrap_phase(std::arg(u(k11, k11)) - std::arg(u(k10, k10)) - std::arg(u(k01, k01)) +
                    std::arg(u(k00, k00)));
}

PropagationResult analyze_six_level(const Mat6c& u_idle) {
  PropagationResult r;
  r.unitary = u_idle;
  r.populations = u_idle.col(k11).cwiseAbs2();
  r.conditional_phase = conditional_phase(u_idle);
  r.dynamic_phase_high = wrap_phase(std::arg(u_idle(k10, k10)) - std::arg(u_idle(k00, k00)));
  r.dynamic_phase_low = wrap_phase(std::arg(u_idle(k01, k01)) - std::arg(u_idle(k00, k00)));
  r.leakage = r.populations(k20) + r.populations(k02);
  return r;
}

PropagationResult propagate_unitary(const FluxDrive& drive, const DeviceParams& dev,
                                    const PropagationOptions& opts) {
  const SixLevelPropagator p = propagate_reference(drive, dev, opts);
  PropagationResult r = analyze_six_level(to_idle_frame(p.u, dev, drive.duration));
  r.steps = p.steps;
  r.achieved_tolerance = p.achieved_tolerance;
  return r;
}

namespace {

PropagationResult analyze_two_level(const Eigen::Matrix2cd& u) {
  PropagationResult r;
  r.unitary = u;
  r.populations = u.col(0).cwiseAbs2();
  r.conditional_phase = wrap_phase(std::arg(u(0, 0)));
  r.leakage = r.populations(1);
  return r;
}

}  // namespace

PropagationResult propagate_unitary(const TwoLevelDrive& drive, const PropagationOptions& opts) {
  auto once = [&](double h, std::size_t& steps) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    const double d_idle = drive.delta(0.0);
    auto step = [&](double t, double dt) {
      const Eigen::Matrix2d h1 = TwoLevelHamiltonian{drive.delta(t + kC1 * dt), drive.g2}.matrix();
      const Eigen::Matrix2d h2 = TwoLevelHamiltonian{drive.delta(t + kC2 * dt), drive.g2}.matrix();
      u = expm_2x2(kA2 * h1 + kA1 * h2, dt) * expm_2x2(kA1 * h1 + kA2 * h2, dt) * u;
    };
    auto quiet = [&](double a, double b) {
      u = expm_2x2(TwoLevelHamiltonian{d_idle, drive.g2}.matrix(), b - a) * u;
    };
    steps = march(drive.duration, drive.breakpoints, drive.quiet, h, step, quiet);
    return TwoWrap{u};
  };
  double achieved = 0.0;
  std::size_t steps = 0;
  const TwoWrap w =
      refine(once, step_length(drive.step_hint, drive.duration), opts, achieved, steps);
  PropagationResult r = analyze_two_level(w.u);
  r.achieved_tolerance = achieved;
  r.steps = steps;
  return r;
}

PropagationResult propagate_unitary(const std::vector<TwoLevelSegment>& segments) {
  PropagationResult r = analyze_two_level(propagate_segments(segments));
  r.steps = segments.size();
  return r;
}

PropagationResult propagate_lindblad(const TwoLevelDrive& drive, const NoiseParams& noise,
                                     const PropagationOptions& opts) {
  if (!(noise.t1_11 > 0.0) || !(noise.t1_20 > 0.0) || !(noise.t_phi > 0.0)) {
    throw DomainError("noise times must be positive");
  }
  Eigen::MatrixXcd decay = Eigen::MatrixXcd::Zero(9, 9);
  if (std::isfinite(noise.t1_11)) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
    l(2, 0) = std::sqrt(1.0 / noise.t1_11);
    decay += dissipator(l);
  }
  if (std::isfinite(noise.t1_20)) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
    l(2, 1) = std::sqrt(1.0 / noise.t1_20);
    decay += dissipator(l);
  }
  Eigen::MatrixXcd dephase = Eigen::MatrixXcd::Zero(9, 9);
  if (std::isfinite(noise.t_phi)) {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(3, 3);
    l(1, 1) = std::sqrt(2.0 / noise.t_phi);
    dephase = dissipator(l);
  }
  auto in_window = [&](double t) {
    return std::any_of(drive.dephasing_windows.begin(), drive.dephasing_windows.end(),
                       [t](const auto& w) { return t > w.first && t < w.second; });
  };
  auto generator = [&](double delta, bool dephasing) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(0, 1) = h(1, 0) = 0.5 * drive.g2;
    h(1, 1) = delta;
    Eigen::MatrixXcd g = hamiltonian_generator(h) + decay;
    if (dephasing) g += dephase;
    return g;
  };

  struct DensityWrap {
    Eigen::Matrix3cd rho;
    const Eigen::Matrix3cd& matrix() const { return rho; }
  };
  auto once = [&](double h, std::size_t& steps) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    v(0) = 1.0;
    const double d_idle = drive.delta(0.0);
    auto step = [&](double t, double dt) {
      const bool deph = in_window(t + 0.5 * dt);
      const Eigen::MatrixXcd g1 = generator(drive.delta(t + kC1 * dt), deph);
      const Eigen::MatrixXcd g2 = generator(drive.delta(t + kC2 * dt), deph);
      const Eigen::MatrixXcd first = ((kA1 * g1 + kA2 * g2) * dt).exp();
      const Eigen::MatrixXcd last = ((kA2 * g1 + kA1 * g2) * dt).exp();
      v = last * (first * v);
    };
    auto quiet = [&](double a, double b) {
      const Eigen::MatrixXcd e = (generator(d_idle, in_window(0.5 * (a + b))) * (b - a)).exp();
      v = e * v;
    };
    steps = march(drive.duration, drive.breakpoints, drive.quiet, h, step, quiet);
    DensityWrap w;
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 3; ++r) w.rho(r, c) = v(r + 3 * c);
    return w;
  };
  double achieved = 0.0;
  std::size_t steps = 0;
  const DensityWrap w =
      refine(once, step_length(drive.step_hint, drive.duration), opts, achieved, steps);

  const double trace = w.rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-9) {
    throw NumericError("density matrix trace drifted", std::abs(trace - 1.0));
  }
  const Eigen::Matrix3cd herm = 0.5 * (w.rho + w.rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd>(herm).eigenvalues().minCoeff();
  if (min_eig < -1e-9) throw NumericError("density matrix lost positivity", -min_eig);

  PropagationResult r;
  r.density = w.rho;
  r.unitary = Eigen::MatrixXcd();
  r.populations = w.rho.diagonal().real();
  r.leakage = r.populations(1);
  r.conditional_phase = wrap_phase(std::arg(w.rho(0, 0)));
  r.achieved_tolerance = achieved;
  r.steps = steps;
  return r;
}

Mat9c embed_qutrits(const Mat6c& u) {
  static constexpr int kMap[6] = {0, 1, 3, 4, 2, 6};
  Mat9c out = Mat9c::Identity();
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out(kMap[r], kMap[c]) = u(r, c);
  return out;
}

Eigen::MatrixXcd unitary_superop(const Eigen::MatrixXcd& u) {
  return Eigen::kroneckerProduct(u.conjugate(), u).eval();
}

Eigen::MatrixXcd qutrit_decoherence(const DeviceParams& dev, double duration) {
  const Eigen::MatrixXcd id3 = Eigen::MatrixXcd::Identity(3, 3);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(81, 81);
  for (QubitRole role : {QubitRole::high, QubitRole::low}) {
    const bool high = role == QubitRole::high;
    const double t1 = high ? dev.t1_high : dev.t1_low;
    const double t1_2 = high ? dev.t1_2_high : dev.t1_2_low;
    const double t_phi = dev.t_phi_qubit(role);
    std::vector<Eigen::MatrixXcd> ops;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 1) = std::sqrt(1.0 / t1);
    ops.push_back(a);
    a.setZero();
    a(1, 2) = std::sqrt(1.0 / t1_2);
    ops.push_back(a);
    if (std::isfinite(t_phi)) {
      a.setZero();
      a(1, 1) = std::sqrt(2.0 / t_phi);
      a(2, 2) = 2.0 * std::sqrt(2.0 / t_phi);
      ops.push_back(a);
    }
    for (const auto& op : ops) {
      const Eigen::MatrixXcd lifted = high ? Eigen::kroneckerProduct(op, id3).eval()
                                           : Eigen::kroneckerProduct(id3, op).eval();
      gen += dissipator(lifted);
    }
  }
  return (gen * duration).exp();
}

double average_gate_fidelity(const Eigen::MatrixXcd& superop, const Eigen::Matrix4cd& target) {
  static constexpr int kComp[4] = {0, 1, 3, 4};
  // Target columns embedded in the qutrit space.
  Eigen::Matrix<Complex, 9, 4> v = Eigen::Matrix<Complex, 9, 4>::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v(kComp[r], c) = target(r, c);

  Complex fe = 0.0;
  double survival = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto col = superop.col(kComp[i] + 9 * kComp[j]);
      Eigen::Matrix<Complex, 9, 9> out;
      for (int b = 0; b < 9; ++b)
        for (int a = 0; a < 9; ++a) out(a, b) = col(a + 9 * b);
      fe += v.col(i).dot(out * v.col(j));
      if (i == j) {
        for (int k : kComp) survival += out(k, k).real();
      }
    }
  }
  const double d = 4.0;
  return (fe.real() / d + survival / d) / (d + 1.0);
}

Eigen::Matrix4cd cz_matrix(double theta) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(3, 3) = std::exp(kI * theta);
  return m;
}

double residual_zz(const DeviceParams& dev) {
  const auto e = idle_eigenbasis(dev).energies;
  return e(k11) - e(k10) - e(k01) + e(k00);
}

GateChannel gate_channel(const GateParams& params, const DeviceParams& dev,
                         const ChannelOptions& opts) {
  const FluxDrive drive = make_drive(params, dev, opts.shape);
  const SixLevelPropagator p = propagate_reference(drive, dev, opts.propagation);
  const Mat6c u_idle = to_idle_frame(p.u, dev, drive.duration);
  const PropagationResult analysis = analyze_six_level(u_idle);

  GateChannel ch;
  ch.duration = drive.duration;
  ch.conditional_phase = analysis.conditional_phase;
  ch.coherent_leakage = analysis.leakage;
  Mat9c vz = Mat9c::Zero();
  for (int hq = 0; hq < 3; ++hq)
    for (int lq = 0; lq < 3; ++lq)
      vz(3 * hq + lq, 3 * hq + lq) = std::exp(-kI * (hq * opts.vz_high + lq * opts.vz_low));
  ch.unitary = vz * embed_qutrits(u_idle);
  ch.superop = unitary_superop(ch.unitary);

  if (opts.noise) {
    const TwoLevelDrive two = make_two_level_drive(drive, dev);
    NoiseParams dephasing_only;
    dephasing_only.t_phi = dev.t_phi;
    const double noisy = propagate_lindblad(two, dephasing_only, opts.propagation).leakage;
    const double clean = propagate_unitary(two, opts.propagation).leakage;
    ch.incoherent_leakage = std::max(0.0, noisy - clean);

    const double pl = ch.incoherent_leakage;
    constexpr int q11 = 4;
    constexpr int q20 = 6;
    Mat9c k0 = Mat9c::Identity();
    k0(q11, q11) = k0(q20, q20) = std::sqrt(1.0 - pl);
    Mat9c k1 = Mat9c::Zero();
    k1(q20, q11) = k1(q11, q20) = std::sqrt(pl);
    const Eigen::MatrixXcd leak = unitary_superop(k0) + unitary_superop(k1);
    ch.superop = qutrit_decoherence(dev, drive.duration) * leak * ch.superop;
  }
  return ch;
}

}  // namespace cztheta
