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

// Least-squares helpers shared by calibration and benchmarking.

#pragma once

#include <functional>
#include <vector>

#include "cztheta/common.hpp"

namespace cztheta {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Polynomial coefficients c_0..c_degree (lowest first) by QR least squares.
std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                            int degree);

struct QuadraticExtremum {
  double x = 0.0;
  double value = 0.0;
  /// Second-order coefficient; negative for a maximum.
  double curvature = 0.0;
};

/// Vertex of the least-squares parabola. Throws FitError if the parabola is
/// flat.
QuadraticExtremum fit_quadratic_extremum(const std::vector<double>& x,
                                         const std::vector<double>& y);

/// y = offset + a cos(x) + b sin(x), reported as amplitude and phase with
/// y = offset + amplitude * cos(x - phase).
struct RamseyFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
};

RamseyFit fit_ramsey(const std::vector<double>& x, const std::vector<double>& y);

/// y = offset + amplitude * cos(omega * t + phase) with omega searched in
/// [omega_min, omega_max] and then refined by Levenberg-Marquardt.
struct SinusoidFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  double omega_stderr = 0.0;
};

SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double omega_min, double omega_max);

/// Fundamental angular frequency of a periodic, non-sinusoidal signal: the
/// omega in [omega_min, omega_max] minimizing the residual of a Fourier series
/// with `harmonics` harmonics. Keep omega_min above omega_max / 2 so that
/// subharmonics are excluded.
double fit_period_frequency(const std::vector<double>& t, const std::vector<double>& y,
                            double omega_min, double omega_max, int harmonics);

/// Generic Levenberg-Marquardt on residuals r(p) with Jacobian dr/dp.
struct NonlinearFit {
  Eigen::VectorXd params;
  Eigen::VectorXd stderrs;
  double residual_norm = 0.0;
  int iterations = 0;
};

using ResidualFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using JacobianFn = std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>;

/// Throws FitError when the solver reports failure. A null Jacobian selects
/// central differences. Standard errors are s^2 (J^T J)^-1 with s^2 the
/// reduced chi-square, or (J^T J)^-1 when `absolute_sigma` says the residuals
/// are already divided by their standard deviations.
NonlinearFit levenberg_marquardt(int n_residuals, const Eigen::VectorXd& p0,
                                 const ResidualFn& residuals, const JacobianFn& jacobian,
                                 bool absolute_sigma = false);

/// F(M) = A (1 - d/(d-1) eps)^M + B with d = 4.
struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  /// Clamped to [0, 1].
  double eps = 0.0;
  double eps_raw = 0.0;
  double a_stderr = 0.0;
  double b_stderr = 0.0;
  double eps_stderr = 0.0;
  double residual_norm = 0.0;
  /// B was held at 0: the data did not decay below a quarter of the shallowest
  /// value, or the free-offset fit was degenerate.
  bool offset_fixed = false;
};

/// Needs >= 3 depths. With `sigma` the fit is weighted and the standard errors
/// use those uncertainties as absolute, widened by sqrt(chi2_red) when the
/// scatter exceeds them; otherwise they come from the scatter
/// and are zero for exactly 3 points.
DecayFit fit_decay(const std::vector<double>& depths, const std::vector<double>& f,
                   const std::vector<double>& sigma = {});

/// l(M) = offset + l_inf (1 - lambda^M).
struct SaturationFit {
  double offset = 0.0;
  double l_inf = 0.0;
  double lambda = 1.0;
  /// l_inf (1 - lambda): population leaked per cycle from the unleaked state.
  double leakage_per_cycle = 0.0;
  /// (1 - l_inf)(1 - lambda): population returning per cycle.
  double seepage_per_cycle = 0.0;
  double leakage_stderr = 0.0;
};

SaturationFit fit_saturation(const std::vector<double>& depths, const std::vector<double>& l);

}  // namespace cztheta
