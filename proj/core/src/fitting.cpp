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

#include "cztheta/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <unsupported/Eigen/LevenbergMarquardt>

namespace cztheta {
namespace {

void check_sizes(const std::vector<double>& x, const std::vector<double>& y, std::size_t min) {
  if (x.size() != y.size()) throw FitError("x and y differ in length");
  if (x.size() < min) {
    std::ostringstream os;
    os << "need at least " << min << " points, got " << x.size();
    throw FitError(os.str());
  }
}

struct Functor : Eigen::DenseFunctor<double> {
  Functor(int n_params, int n_values, const ResidualFn& r, const JacobianFn& j)
      : Eigen::DenseFunctor<double>(n_params, n_values), res(r), jac(j) {}
  int operator()(const InputType& p, ValueType& out) const {
    res(p, out);
    return 0;
  }
  int df(const InputType& p, JacobianType& j) const {
    if (jac) {
      jac(p, j);
      return 0;
    }
    const Eigen::Index n = p.size();
    j.resize(values(), n);
    ValueType plus(values());
    ValueType minus(values());
    for (Eigen::Index k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(p(k)));
      InputType q = p;
      q(k) = p(k) + h;
      res(q, plus);
      q(k) = p(k) - h;
      res(q, minus);
      j.col(k) = (plus - minus) / (2.0 * h);
    }
    return 0;
  }
  const ResidualFn& res;
  const JacobianFn& jac;
};

}  // namespace

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  check_sizes(x, y, 2);
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.residuals.push_back(r);
    rss += r * r;
  }
  if (x.size() > 2) f.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
  return f;
}

std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                            int degree) {
  if (degree < 0) throw FitError("negative polynomial degree");
  check_sizes(x, y, static_cast<std::size_t>(degree) + 1);
  const auto n = static_cast<Eigen::Index>(x.size());
  // Scale the abscissa to keep the Vandermonde matrix well conditioned.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      a(i, k) = p;
      p *= x[static_cast<std::size_t>(i)] / scale;
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(static_cast<std::size_t>(degree) + 1);
  double s = 1.0;
  for (int k = 0; k <= degree; ++k) {
    out[static_cast<std::size_t>(k)] = c(k) / s;
    s *= scale;
  }
  return out;
}

QuadraticExtremum fit_quadratic_extremum(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  check_sizes(x, y, 3);
  // Fit around the mean abscissa for conditioning.
  double mx = 0.0;
  for (double v : x) mx += v;
  mx /= static_cast<double>(x.size());
  std::vector<double> xs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xs[i] = x[i] - mx;
  const std::vector<double> c = polyfit(xs, y, 2);
  if (c[2] == 0.0 || !std::isfinite(c[2])) throw FitError("parabola is flat");
  QuadraticExtremum e;
  const double xv = -c[1] / (2.0 * c[2]);
  e.x = xv + mx;
  e.value = c[0] + c[1] * xv + c[2] * xv * xv;
  e.curvature = c[2];
  return e;
}

RamseyFit fit_ramsey(const std::vector<double>& x, const std::vector<double>& y) {
  check_sizes(x, y, 3);
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = std::cos(xi);
    a(i, 2) = std::sin(xi);
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  RamseyFit f;
  f.offset = c(0);
  f.amplitude = std::hypot(c(1), c(2));
  f.phase = std::atan2(c(2), c(1));
  return f;
}

NonlinearFit levenberg_marquardt(int n_residuals, const Eigen::VectorXd& p0,
                                 const ResidualFn& residuals, const JacobianFn& jacobian,
                                 bool absolute_sigma) {
  const auto k = static_cast<int>(p0.size());
  if (n_residuals < k) throw FitError("fewer residuals than parameters");
  Functor f(k, n_residuals, residuals, jacobian);
  Eigen::LevenbergMarquardt<Functor> lm(f);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  lm.setGtol(0.0);
  lm.setMaxfev(2000);
  Eigen::VectorXd p = p0;
  const Eigen::LevenbergMarquardtSpace::Status status = lm.minimize(p);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
      !p.allFinite()) {
    std::ostringstream os;
    os << "Levenberg-Marquardt failed with status " << static_cast<int>(status);
    throw FitError(os.str());
  }
  NonlinearFit out;
  out.params = p;
  out.iterations = static_cast<int>(lm.iterations());
  Eigen::VectorXd r(n_residuals);
  residuals(p, r);
  out.residual_norm = r.norm();
  Eigen::MatrixXd j(n_residuals, k);
  f.df(p, j);
  out.stderrs = Eigen::VectorXd::Zero(k);
  if (n_residuals > k || absolute_sigma) {
    const double s2 = absolute_sigma ? 1.0 : r.squaredNorm() / (n_residuals - k);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (lu.isInvertible()) {
      const Eigen::MatrixXd cov = s2 * lu.inverse();
      out.stderrs = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    }
  }
  return out;
}

double fit_period_frequency(const std::vector<double>& t, const std::vector<double>& y,
                            double omega_min, double omega_max, int harmonics) {
  if (harmonics < 1) throw FitError("need at least one harmonic");
  check_sizes(t, y, static_cast<std::size_t>(2 * harmonics + 2));
  if (!(omega_max > omega_min) || !(omega_min > 0.0)) throw FitError("invalid frequency range");
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::Map<const Eigen::VectorXd> b(y.data(), n);
  auto rss = [&](double w) {
    Eigen::MatrixXd a(n, 2 * harmonics + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      a(i, 0) = 1.0;
      for (int h = 1; h <= harmonics; ++h) {
        a(i, 2 * h - 1) = std::cos(h * w * ti);
        a(i, 2 * h) = std::sin(h * w * ti);
      }
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    return (a * c - b).squaredNorm();
  };
  constexpr int kGrid = 600;
  const double dw = (omega_max - omega_min) / kGrid;
  double best_w = omega_min;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double w = omega_min + dw * i;
    const double r = rss(w);
    if (r < best) {
      best = r;
      best_w = w;
    }
  }
  const double lo = std::max(omega_min, best_w - dw);
  const double hi = std::min(omega_max, best_w + dw);
  const auto [w, r] = boost::math::tools::brent_find_minima(rss, lo, hi, 40);
  return r <= best ? w : best_w;
}

SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double omega_min, double omega_max) {
  check_sizes(t, y, 5);
  if (!(omega_max > omega_min) || !(omega_min > 0.0)) throw FitError("invalid frequency range");
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = y[static_cast<std::size_t>(i)];
  auto linear = [&](double w, Eigen::Vector3d& c) {
    Eigen::MatrixXd a(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      a(i, 0) = 1.0;
      a(i, 1) = std::cos(w * ti);
      a(i, 2) = std::sin(w * ti);
    }
    c = a.colPivHouseholderQr().solve(b);
    return (a * c - b).squaredNorm();
  };
  double best_w = omega_min;
  double best_rss = std::numeric_limits<double>::infinity();
  Eigen::Vector3d c;
  constexpr int kGrid = 400;
  for (int i = 0; i <= kGrid; ++i) {
    const double w = omega_min + (omega_max - omega_min) * i / kGrid;
    const double rss = linear(w, c);
    if (rss < best_rss) {
      best_rss = rss;
      best_w = w;
    }
  }
  linear(best_w, c);
  Eigen::VectorXd p0(4);
  p0 << c(0), std::hypot(c(1), c(2)), best_w, std::atan2(-c(2), c(1));
  auto res = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      r(i) = p(0) + p(1) * std::cos(p(2) * ti + p(3)) - b(i);
    }
  };
  auto jac = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& j) {
    j.resize(n, 4);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ti = t[static_cast<std::size_t>(i)];
      const double arg = p(2) * ti + p(3);
      j(i, 0) = 1.0;
      j(i, 1) = std::cos(arg);
      j(i, 2) = -p(1) * ti * std::sin(arg);
      j(i, 3) = -p(1) * std::sin(arg);
    }
  };
  const NonlinearFit nf = levenberg_marquardt(static_cast<int>(n), p0, res, jac);
  SinusoidFit out;
  out.offset = nf.params(0);
  out.amplitude = nf.params(1);
  out.omega = nf.params(2);
  out.phase = nf.params(3);
  out.omega_stderr = nf.stderrs(2);
  if (out.amplitude < 0.0) {
    out.amplitude = -out.amplitude;
    out.phase += kPi;
  }
  out.phase = wrap_phase(out.phase);
  return out;
}

DecayFit fit_decay(const std::vector<double>& depths, const std::vector<double>& f,
                   const std::vector<double>& sigma) {
  check_sizes(depths, f, 3);
  if (!sigma.empty()) {
    if (sigma.size() != f.size()) throw FitError("sigma size mismatch");
    for (double s : sigma)
      if (!(s > 0.0)) throw FitError("sigma must be positive");
  }
  auto weight = [&](std::size_t i) { return sigma.empty() ? 1.0 : 1.0 / sigma[i]; };
  const auto n = static_cast<Eigen::Index>(depths.size());
  // Starting point from a log-linear fit of the positive part.
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (f[i] > 1e-3) {
      lx.push_back(depths[i]);
      ly.push_back(std::log(f[i]));
    }
  }
  double a0 = 1.0;
  double p0 = 0.99;
  if (lx.size() >= 2) {
    const LinearFit lf = fit_line(lx, ly);
    a0 = std::exp(lf.intercept);
    p0 = std::clamp(std::exp(lf.slope), 0.0, 1.0);
  }
  auto solve = [&](bool with_offset) {
    const int k = with_offset ? 3 : 2;
    Eigen::VectorXd init(k);
    init(0) = a0;
    init(1) = p0;
    if (with_offset) init(2) = 0.0;
    auto res = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double b = with_offset ? p(2) : 0.0;
        r(i) = (p(0) * std::pow(p(1), depths[u]) + b - f[u]) * weight(u);
      }
    };
    auto jac = [&](const Eigen::VectorXd& p, Eigen::MatrixXd& j) {
      j.resize(n, k);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double m = depths[u];
        const double w = weight(u);
        j(i, 0) = w * std::pow(p(1), m);
        j(i, 1) = m == 0.0 ? 0.0 : w * p(0) * m * std::pow(p(1), m - 1.0);
        if (with_offset) j(i, 2) = w;
      }
    };
    return levenberg_marquardt(static_cast<int>(n), init, res, jac, !sigma.empty());
  };
  // The offset is only identifiable once the data have decayed to less than
  // a quarter of the shallowest value. Otherwise A and B trade off against a fast
  // decay, and the asymptote of the normalized estimator is taken as 0.
  constexpr double kIdentifiable = 0.25;
  const auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
  const bool decayed = f[static_cast<std::size_t>(hi - depths.begin())] <
                       kIdentifiable * f[static_cast<std::size_t>(lo - depths.begin())];
  NonlinearFit nf;
  bool offset_fixed = !decayed;
  if (decayed) {
    nf = solve(true);
    offset_fixed = std::abs(nf.params(2)) > 1.0 || !(nf.stderrs(1) > 0.0);
  }
  if (offset_fixed) {
    nf = solve(false);
  }
  constexpr double kScale = 0.75;  // eps = (d - 1)/d (1 - p) with d = 4
  DecayFit out;
  out.a = nf.params(0);
  out.b = offset_fixed ? 0.0 : nf.params(2);
  out.eps_raw = kScale * (1.0 - nf.params(1));
  out.eps = std::clamp(out.eps_raw, 0.0, 1.0);
  out.a_stderr = nf.stderrs(0);
  out.b_stderr = offset_fixed ? 0.0 : nf.stderrs(2);
  out.eps_stderr = kScale * nf.stderrs(1);
  if (!sigma.empty()) {
    // Scatter beyond the supplied uncertainties widens the errors.
    const long dof = static_cast<long>(n) - (offset_fixed ? 2 : 3);
    if (dof > 0) {
      const double chi2_red = nf.residual_norm * nf.residual_norm / static_cast<double>(dof);
      const double inflate = std::sqrt(std::max(1.0, chi2_red));
      out.a_stderr *= inflate;
      out.b_stderr *= inflate;
      out.eps_stderr *= inflate;
    }
  }
  out.offset_fixed = offset_fixed;
  out.residual_norm = nf.residual_norm;
  return out;
}

namespace {

// (1 - lambda^m) / (1 - lambda), continuous at lambda = 1.
double geometric_sum(double lambda, double m) {
  const double d = lambda - 1.0;
  if (std::abs(d) < 1e-12) return m;
  if (lambda <= 0.0) return (1.0 - std::pow(lambda, m)) / (1.0 - lambda);
  return -std::expm1(m * std::log1p(d)) / (-d);
}

}  // namespace

SaturationFit fit_saturation(const std::vector<double>& depths, const std::vector<double>& l) {
  check_sizes(depths, l, 3);
  const auto n = static_cast<Eigen::Index>(depths.size());
  const LinearFit lf = fit_line(depths, l);
  Eigen::VectorXd init(3);
  init << lf.intercept, std::max(lf.slope, 1e-9), 0.999;
  auto res = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = depths[static_cast<std::size_t>(i)];
      r(i) = p(0) + p(1) * geometric_sum(p(2), m) - l[static_cast<std::size_t>(i)];
    }
  };
  const NonlinearFit nf = levenberg_marquardt(static_cast<int>(n), init, res, nullptr);
  SaturationFit out;
  out.offset = nf.params(0);
  out.leakage_per_cycle = nf.params(1);
  out.lambda = nf.params(2);
  out.leakage_stderr = nf.stderrs(1);
  const double rate = 1.0 - out.lambda;
  if (std::abs(rate) > 1e-12) {
    out.l_inf = out.leakage_per_cycle / rate;
    out.seepage_per_cycle = rate - out.leakage_per_cycle;
  } else {
    out.l_inf = 1.0;
    out.seepage_per_cycle = 0.0;
  }
  return out;
}

}  // namespace cztheta
