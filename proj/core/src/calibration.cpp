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

#include "cztheta/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cztheta/fitting.hpp"

namespace cztheta {
namespace {

using Mat6c = Eigen::Matrix<Complex, 6, 6>;

// Six-level index of (high, low) with levels up to two excitations.
int level_index(int h, int l) {
  static constexpr int kIndex[3][3] = {{k00, k01, k02}, {k10, k11, -1}, {k20, -1, -1}};
  return kIndex[h][l];
}

Mat6c embed_two_level(const Eigen::Matrix2cd& u) {
  Mat6c out = Mat6c::Identity();
  out(k11, k11) = u(0, 0);
  out(k11, k20) = u(0, 1);
  out(k20, k11) = u(1, 0);
  out(k20, k20) = u(1, 1);
  return out;
}

std::string format_trace(const char* stage, const GateParams& p) {
  std::ostringstream os;
  os.precision(10);
  os << stage << ": phi_high=" << p.phi_high << " phi_low=" << p.phi_low
     << " t_int=" << p.t_int << " t_idle=" << p.t_idle;
  return os.str();
}

void note(std::vector<std::string>* trace, const std::string& s) {
  if (trace) trace->push_back(s);
}

std::vector<double> sweep_grid(double centre, double span, int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double half = 0.5 * (points - 1);
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] = centre * (1.0 + span * (i - half) / half);
  }
  return xs;
}

double period(const DeviceParams& dev) { return kTwoPi / dev.delta_max(); }

double resolved_base(const DeviceParams& dev, const CalibrationConfig& cfg) {
  return cfg.idle_base > 0.0 ? cfg.idle_base : default_idle_base(dev);
}

// One quadratic-fit update of a scalar parameter. An optimum beyond the
// sweep moves the centre by at most 2.5 sweep half-widths.
double quadratic_step(const std::vector<double>& xs, const std::vector<double>& ys,
                      bool maximize) {
  const QuadraticExtremum e = fit_quadratic_extremum(xs, ys);
  const bool proper = maximize ? e.curvature < 0.0 : e.curvature > 0.0;
  const double centre = 0.5 * (xs.front() + xs.back());
  const double reach = 2.5 * 0.5 * (xs.back() - xs.front());
  if (!proper) {
    const auto it = maximize ? std::max_element(ys.begin(), ys.end())
                             : std::min_element(ys.begin(), ys.end());
    const auto i = static_cast<std::size_t>(it - ys.begin());
    if (i == 0) return centre - reach;
    if (i + 1 == xs.size()) return centre + reach;
    return xs[i];
  }
  return std::clamp(e.x, centre - reach, centre + reach);
}

}  // namespace

DeviceSimulator::DeviceSimulator(DeviceParams dev, SimulatorOptions opts)
    : dev_(std::move(dev)), opts_(std::move(opts)) {
  validate(dev_);
  if (opts_.substeps < 1) throw ConfigError("substeps must be positive");
  if (opts_.shots && *opts_.shots == 0) throw ConfigError("shot count must be positive");
  if (opts_.model == ModelKind::six_level) {
    dressed_ = idle_eigenbasis(dev_).vectors.cast<Complex>();
  } else {
    const Eigen::Matrix2d h = TwoLevelHamiltonian{dev_.delta_max(), dev_.g2()}.matrix();
    Eigen::Matrix2d v = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvectors();
    if (std::abs(v(0, 0)) < std::abs(v(0, 1))) v.col(0).swap(v.col(1));
    for (int k = 0; k < 2; ++k)
      if (v(k, k) < 0.0) v.col(k) *= -1.0;
    dressed_ = embed_two_level(v.cast<Complex>());
  }
}

GateEvolution DeviceSimulator::evolve(const GateParams& p) const {
  const FluxDrive drive = make_drive(p, dev_, opts_.shape, opts_.substeps);
  GateEvolution g;
  g.duration = drive.duration;
  if (opts_.model == ModelKind::six_level) {
    g.u = propagate_reference(drive, dev_, opts_.propagation).u;
  } else {
    const PropagationResult r = propagate_unitary(make_two_level_drive(drive, dev_), opts_.propagation);
    g.u = embed_two_level(r.unitary);
  }
  return g;
}

Mat6c DeviceSimulator::gap(double gap) const {
  if (gap < 0.0) throw DomainError("gap must be non-negative");
  if (opts_.model == ModelKind::six_level) return idle_reference(dev_, gap);
  return embed_two_level(expm_2x2(TwoLevelHamiltonian{dev_.delta_max(), dev_.g2()}.matrix(), gap));
}

Mat6c DeviceSimulator::idle_frame(const Mat6c& u, double elapsed) const {
  if (opts_.model == ModelKind::six_level) return to_idle_frame(u, dev_, elapsed);
  return dressed_.adjoint() * u * dressed_;
}

PropagationResult DeviceSimulator::analyze(const GateParams& p) const {
  const GateEvolution g = evolve(p);
  return analyze_six_level(idle_frame(g.u, g.duration));
}

Populations DeviceSimulator::readout(const Populations& exact) const {
  if (!opts_.shots) return exact;
  const Eigen::RowVector3d p(exact.p0, exact.p1, exact.p2);
  const Eigen::RowVector3d reported = p * dev_.confusion_high;
  Rng rng = keyed_rng(opts_.seed, {calls_++});
  const auto counts =
      sample_multinomial({reported(0), reported(1), reported(2)}, *opts_.shots, rng);
  const auto n = static_cast<double>(*opts_.shots);
  return {static_cast<double>(counts[0]) / n, static_cast<double>(counts[1]) / n,
          static_cast<double>(counts[2]) / n};
}

Populations DeviceSimulator::measure_population_recovery(const GateParams& p) const {
  return measure_population_recovery(evolve(p), 1, 0.0);
}

Populations DeviceSimulator::measure_population_recovery(const GateParams& p, int n,
                                                         double t_sep) const {
  return measure_population_recovery(evolve(p), n, t_sep);
}

Populations DeviceSimulator::measure_population_recovery(const GateEvolution& g, int n,
                                                         double t_sep) const {
  if (n < 1) throw DomainError("gate count must be at least 1");
  Eigen::Matrix<Complex, 6, 1> psi = g.u * dressed_.col(k11);
  if (n > 1) {
    const Mat6c step = g.u * gap(t_sep);
    for (int k = 1; k < n; ++k) psi = step * psi;
  }
  psi = dressed_.adjoint() * psi;
  Populations exact;
  exact.p0 = std::norm(psi(k00)) + std::norm(psi(k01)) + std::norm(psi(k02));
  exact.p1 = std::norm(psi(k10)) + std::norm(psi(k11));
  exact.p2 = std::norm(psi(k20));
  return readout(exact);
}

double DeviceSimulator::ramsey_phase(const Mat6c& u_idle, bool target_low,
                                     int control_level) const {
  constexpr int kPoints = 8;
  auto idx = [&](int control, int target) {
    return target_low ? level_index(control, target) : level_index(target, control);
  };
  Eigen::Matrix<Complex, 6, 1> psi = Eigen::Matrix<Complex, 6, 1>::Zero();
  psi(idx(control_level, 0)) = 1.0 / std::numbers::sqrt2;
  psi(idx(control_level, 1)) = 1.0 / std::numbers::sqrt2;
  psi = u_idle * psi;
  const ConfusionMatrix& conf = target_low ? dev_.confusion_low : dev_.confusion_high;

  std::vector<double> phis(kPoints);
  std::vector<double> p1(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    const double phi = kTwoPi * k / kPoints;
    // Analysis pulse: pi/2 rotation about (cos phi, sin phi, 0) on the target
    // qubit, applied within each control level.
    const Complex r10 = -kI * std::exp(kI * phi) / std::numbers::sqrt2;
    const Complex r11 = 1.0 / std::numbers::sqrt2;
    const Complex r00 = r11;
    const Complex r01 = -kI * std::exp(-kI * phi) / std::numbers::sqrt2;
    Eigen::Vector3d target_pops = Eigen::Vector3d::Zero();
    for (int c = 0; c < 3; ++c) {
      const int i0 = idx(c, 0);
      const int i1 = c < 2 ? idx(c, 1) : -1;
      const Complex a0 = i0 >= 0 ? psi(i0) : Complex(0.0);
      const Complex a1 = i1 >= 0 ? psi(i1) : Complex(0.0);
      target_pops(0) += std::norm(r00 * a0 + r01 * a1);
      target_pops(1) += std::norm(r10 * a0 + r11 * a1);
      if (c == 0) target_pops(2) += std::norm(psi(idx(0, 2)));
    }
    Eigen::RowVector3d reported = target_pops.transpose();
    if (opts_.shots) {
      reported = reported * conf;
      Rng rng = keyed_rng(opts_.seed, {calls_++});
      const auto counts = sample_multinomial({reported(0), reported(1), reported(2)},
                                             *opts_.shots, rng);
      p1[static_cast<std::size_t>(k)] =
          static_cast<double>(counts[1]) / static_cast<double>(*opts_.shots);
    } else {
      p1[static_cast<std::size_t>(k)] = reported(1);
    }
    phis[static_cast<std::size_t>(k)] = phi;
  }
  const RamseyFit fit = fit_ramsey(phis, p1);
  if (2.0 * fit.amplitude < 0.1) throw FitError("Ramsey fringe contrast below 0.1");
  return wrap_phase(fit.phase - 0.5 * kPi);
}

double DeviceSimulator::measure_conditional_phase(const GateParams& p) const {
  const GateEvolution g = evolve(p);
  const Mat6c u = idle_frame(g.u, g.duration);
  return wrap_phase(ramsey_phase(u, true, 1) - ramsey_phase(u, true, 0));
}

std::pair<double, double> DeviceSimulator::measure_dynamic_phases(const GateParams& p) const {
  const GateEvolution g = evolve(p);
  const Mat6c u = idle_frame(g.u, g.duration);
  return {ramsey_phase(u, false, 0), ramsey_phase(u, true, 0)};
}

SweepResult chevron_scan(const DeviceSimulator& sim, const GateParams& base,
                         const std::vector<double>& half_durations,
                         const std::vector<double>& phi_lows, bool half_waveform) {
  SweepResult out;
  out.axis1_name = "half_duration_s";
  out.axis2_name = "phi_low_phi0";
  out.axis1 = half_durations;
  out.axis2 = phi_lows;
  out.shots = sim.options().shots;
  for (double t : half_durations) {
    for (double phi : phi_lows) {
      GateParams p = base;
      p.t_int = 2.0 * t;
      p.phi_low = phi;
      p.single_half = half_waveform;
      const Populations pop = sim.measure_population_recovery(p);
      out.recovery.push_back(pop.p1);
      out.leakage.push_back(pop.p2);
      if (!half_waveform) out.phase.push_back(sim.measure_conditional_phase(p));
    }
  }
  return out;
}

double extract_coupling(const std::vector<double>& durations, const std::vector<double>& p2,
                        double omega_guess) {
  return fit_sinusoid(durations, p2, 0.5 * omega_guess, 1.5 * omega_guess).omega;
}

SweepResult leakage_amplification_scan(const DeviceSimulator& sim, const GateParams& base,
                                       const std::vector<double>& phi_lows,
                                       const std::vector<double>& separations, int n) {
  SweepResult out;
  out.axis1_name = "phi_low_phi0";
  out.axis2_name = "separation_s";
  out.axis1 = phi_lows;
  out.axis2 = separations;
  out.shots = sim.options().shots;
  for (double phi : phi_lows) {
    GateParams p = base;
    p.phi_low = phi;
    const GateEvolution g = sim.evolve(p);
    for (double sep : separations) {
      const Populations pop = sim.measure_population_recovery(g, n, sep);
      out.recovery.push_back(pop.p1);
      out.leakage.push_back(pop.p2);
    }
  }
  return out;
}

double default_idle_base(const DeviceParams& dev) {
  return 4.0 * std::hypot(dev.sigma_digital, std::max(dev.sigma_high, dev.sigma_low));
}

GateParams initial_gate(const DeviceParams& dev, const CalibrationConfig& cfg) {
  const auto [ph, pl] = resonant_fluxes(dev);
  GateParams p;
  p.phi_high = ph;
  p.phi_low = pl;
  p.t_int = kTwoPi / dev.g2();
  p.buffer = cfg.buffer;
  const double base = resolved_base(dev, cfg);
  p.t_idle = base;
  p.t_idle_max = base + 1.02 * period(dev);
  return p;
}

GateParams tune_half_waveform(const DeviceSimulator& sim, const GateParams& init,
                              const CalibrationConfig& cfg, std::vector<std::string>* trace) {
  GateParams p = init;
  std::vector<std::string> local;
  auto objective = [&](const GateParams& q) {
    GateParams half = q;
    half.single_half = true;
    return sim.measure_population_recovery(half).p2;
  };
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    double worst = 0.0;
    for (double GateParams::*field : {&GateParams::phi_low, &GateParams::t_int}) {
      const double x0 = p.*field;
      const std::vector<double> xs = sweep_grid(x0, cfg.sweep_span, cfg.sweep_points);
      std::vector<double> ys;
      for (double x : xs) {
        GateParams q = p;
        q.*field = x;
        ys.push_back(objective(q));
      }
      p.*field = quadratic_step(xs, ys, true);
      worst = std::max(worst, std::abs(p.*field - x0) / std::abs(x0));
    }
    local.push_back(format_trace("tune_half_waveform", p));
    if (worst < cfg.tolerance) {
      for (auto& s : local) note(trace, s);
      return p;
    }
  }
  for (auto& s : local) note(trace, s);
  throw CalibrationError("half-waveform tuning did not converge", trace ? *trace : local);
}

double approximate_idle_time(const DeviceSimulator& sim, const GateParams& p, double theta,
                             const CalibrationConfig& cfg) {
  const double base = resolved_base(sim.device(), cfg);
  const double per = period(sim.device());
  std::vector<double> ts;
  std::vector<double> phases;
  for (int k = 0; k < 4; ++k) {
    GateParams q = p;
    q.t_idle = base + per * k / 4.0;
    ts.push_back(q.t_idle);
    phases.push_back(sim.measure_conditional_phase(q));
  }
  const LinearFit f = fit_line(ts, unwrap(phases));
  if (f.slope == 0.0) throw CalibrationError("conditional phase does not depend on idle time");
  // Solve theta + 2 pi m = slope t + intercept for t in [base, base + period).
  const double t0 = (theta - f.intercept) / f.slope;
  const double shift = kTwoPi / std::abs(f.slope);
  const double m = std::floor((t0 - base) / shift);
  return t0 - m * shift;
}

GateParams fine_tune_detuning(const DeviceSimulator& sim, const GateParams& params,
                              const CalibrationConfig& cfg, std::vector<std::string>* trace) {
  const DeviceParams& dev = sim.device();
  const double slope = std::abs(detuning_slope_low(dev, params.phi_high, params.phi_low));
  const double step = cfg.detuning_step * dev.g2() / slope;
  const double per = period(dev);
  std::vector<double> seps;
  for (int j = 0; j < cfg.separation_points; ++j) {
    seps.push_back(2.0 * per * j / cfg.separation_points);
  }
  std::vector<double> phis;
  for (int k = -cfg.detuning_steps; k <= cfg.detuning_steps; ++k) {
    phis.push_back(params.phi_low + k * step);
  }
  const SweepResult scan =
      leakage_amplification_scan(sim, params, phis, seps, cfg.amplification_gates);
  std::vector<double> worst(phis.size(), 0.0);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (std::size_t j = 0; j < seps.size(); ++j) {
      worst[i] = std::max(worst[i], scan.leakage[i * seps.size() + j]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(worst.begin(), worst.end()) - worst.begin());
  GateParams out = params;
  out.phi_low = phis[best];
  std::ostringstream os;
  os << "fine_tune_detuning: step=" << step << " best_index=" << static_cast<int>(best) - cfg.detuning_steps
     << " amplified_leakage=" << worst[best];
  note(trace, os.str());
  if (best == 0 || best + 1 == phis.size()) {
    std::vector<std::string> t = trace ? *trace : std::vector<std::string>{os.str()};
    throw CalibrationError("amplified leakage has no interior minimum in the scan window", t);
  }
  note(trace, format_trace("fine_tune_detuning", out));
  return out;
}

GateParams fine_tune_interaction_time(const DeviceSimulator& sim, const GateParams& params,
                                      const CalibrationConfig& cfg,
                                      std::vector<std::string>* trace) {
  GateParams p = params;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double x0 = p.t_int;
    const std::vector<double> xs = sweep_grid(x0, cfg.sweep_span, cfg.sweep_points);
    std::vector<double> ys;
    for (double x : xs) {
      GateParams q = p;
      q.t_int = x;
      ys.push_back(sim.measure_population_recovery(q).p2);
    }
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    if (*hi - *lo < 1e-8) {
      std::vector<std::string> t = trace ? *trace : std::vector<std::string>{};
      t.push_back("fine_tune_interaction_time: flat objective");
      throw CalibrationError(
          "single-gate leakage is insensitive to t_int at this idle time; tune at the CZ_pi point",
          t);
    }
    p.t_int = quadratic_step(xs, ys, false);
    note(trace, format_trace("fine_tune_interaction_time", p));
    if (std::abs(p.t_int - x0) / x0 < cfg.tolerance) return p;
  }
  std::vector<std::string> t = trace ? *trace : std::vector<std::string>{};
  throw CalibrationError("interaction-time tuning did not converge", t);
}

CalibrationRecord characterize_phase_vs_idle(const DeviceSimulator& sim,
                                             const GateParams& params,
                                             const CalibrationConfig& cfg) {
  if (cfg.table_points < 4) throw ConfigError("phase table needs at least 4 points");
  const double base = resolved_base(sim.device(), cfg);
  const double spacing = 1.02 * period(sim.device()) / (cfg.table_points - 1);
  CalibrationRecord rec;
  rec.params = params;
  rec.params.t_idle_max = base + spacing * (cfg.table_points - 1);
  std::vector<double> raw;
  for (int k = 0; k < cfg.table_points; ++k) {
    GateParams q = rec.params;
    q.t_idle = base + spacing * k;
    rec.idle_times.push_back(q.t_idle);
    raw.push_back(sim.measure_conditional_phase(q));
  }
  rec.phases = unwrap(raw);
  const LinearFit f = fit_line(rec.idle_times, rec.phases);
  rec.slope = f.slope;
  rec.intercept = f.intercept;
  rec.residuals = f.residuals;
  rec.params.t_idle = rec.idle_times.front();
  double worst = 0.0;
  for (double r : rec.residuals) worst = std::max(worst, std::abs(r));
  std::ostringstream os;
  os << "characterize_phase_vs_idle: slope=" << rec.slope << " max_residual=" << worst;
  rec.trace.push_back(os.str());
  if (worst >= cfg.residual_limit) {
    throw CalibrationError("phase-vs-idle residuals exceed the limit", rec.trace);
  }
  return rec;
}

double idle_time_for_phase(const CalibrationRecord& record, double theta) {
  const std::vector<double>& ph = record.phases;
  const std::vector<double>& ts = record.idle_times;
  if (ph.size() < 4 || ph.size() != ts.size()) throw RangeError("phase table is incomplete");
  const auto [lo_it, hi_it] = std::minmax_element(ph.begin(), ph.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double centre = 0.5 * (lo + hi);
  const double target0 = canonical_phase(theta);
  // Branch of theta + 2 pi m closest to the centre of the table.
  const double m = std::round((centre - target0) / kTwoPi);
  double target = target0 + kTwoPi * m;
  if (target < lo || target > hi) {
    const double alt = target + (target < lo ? kTwoPi : -kTwoPi);
    if (alt < lo || alt > hi) throw RangeError("phase outside the calibrated table");
    target = alt;
  }
  const double h = ts[1] - ts[0];
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline(ph.begin(), ph.end(),
                                                                     ts.front(), h);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double fa = ph[i] - target;
    const double fb = ph[i + 1] - target;
    if (fa == 0.0) return ts[i];
    if (fb == 0.0) return ts[i + 1];
    if ((fa < 0.0) != (fb < 0.0)) {
      auto f = [&](double t) { return spline(t) - target; };
      std::uintmax_t iters = 100;
      const auto r = boost::math::tools::toms748_solve(
          f, ts[i], ts[i + 1], fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
      return 0.5 * (r.first + r.second);
    }
  }
  throw RangeError("phase outside the calibrated table");
}

void calibrate_virtual_z(const DeviceSimulator& sim, CalibrationRecord& record,
                         const CalibrationConfig& cfg) {
  std::vector<double> high;
  std::vector<double> low;
  for (double t : record.idle_times) {
    GateParams q = record.params;
    q.t_idle = t;
    const auto [h, l] = sim.measure_dynamic_phases(q);
    high.push_back(h);
    low.push_back(l);
  }
  auto circular_mean = [](const std::vector<double>& v) {
    Complex acc = 0.0;
    for (double x : v) acc += std::exp(kI * x);
    return std::arg(acc);
  };
  auto spread = [](const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(wrap_phase(x - mean)));
    return s;
  };
  record.vz_high = circular_mean(high);
  record.vz_low = circular_mean(low);
  const double var = std::max(spread(high, record.vz_high), spread(low, record.vz_low));
  std::ostringstream os;
  os << "calibrate_virtual_z: high=" << record.vz_high << " low=" << record.vz_low
     << " max_variation=" << var;
  record.trace.push_back(os.str());
  if (var >= cfg.virtual_z_limit) {
    throw CalibrationError("dynamic phases depend on the idle time", record.trace);
  }
}

GateParams gate_for_phase(const CalibrationRecord& record, double theta) {
  GateParams p = record.params;
  p.t_idle = idle_time_for_phase(record, theta);
  return p;
}

CalibrationRecord calibrate(const DeviceSimulator& sim, const CalibrationConfig& cfg,
                            const std::optional<GateParams>& start) {
  std::vector<std::string> trace;
  try {
    GateParams p;
    if (start) {
      p = *start;
      note(&trace, format_trace("start", p));
    } else {
      p = initial_gate(sim.device(), cfg);
      note(&trace, format_trace("initial", p));
      p = tune_half_waveform(sim, p, cfg, &trace);
    }
    p.t_idle = approximate_idle_time(sim, p, 0.0, cfg);
    note(&trace, format_trace("cz0_point", p));
    p = fine_tune_detuning(sim, p, cfg, &trace);
    p.t_idle = approximate_idle_time(sim, p, kPi, cfg);
    note(&trace, format_trace("czpi_point", p));
    p = fine_tune_interaction_time(sim, p, cfg, &trace);
    CalibrationRecord rec = characterize_phase_vs_idle(sim, p, cfg);
    calibrate_virtual_z(sim, rec, cfg);
    trace.insert(trace.end(), rec.trace.begin(), rec.trace.end());
    rec.trace = trace;
    return rec;
  } catch (const CalibrationError& e) {
    std::vector<std::string> t = trace;
    for (const auto& s : e.trace()) {
      if (std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
    }
    throw CalibrationError(e.what(), t);
  }
}

std::vector<GateCheck> verify_gate_set(const DeviceSimulator& sim,
                                       const CalibrationRecord& record,
                                       const std::vector<double>& thetas) {
  std::vector<GateCheck> out;
  for (double theta : thetas) {
    GateCheck c;
    c.target = theta;
    const GateParams p = gate_for_phase(record, theta);
    c.t_idle = p.t_idle;
    c.measured_phase = sim.measure_conditional_phase(p);
    c.phase_error = wrap_phase(c.measured_phase - theta);
    c.leakage = sim.measure_population_recovery(p).p2;
    out.push_back(c);
  }
  return out;
}

}  // namespace cztheta
