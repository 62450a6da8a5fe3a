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

#include "cztheta/benchmarking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace cztheta {

namespace {

using Mat3c = Eigen::Matrix3cd;
using Mat9c = Eigen::Matrix<Complex, 9, 9>;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr int kD = 4;

Mat3c qutrit_gate(OneQubitGate g) {
  Mat3c u = Mat3c::Identity();
  switch (g) {
    case OneQubitGate::x90:
      u(0, 0) = u(1, 1) = kInvSqrt2;
      u(0, 1) = u(1, 0) = -kI * kInvSqrt2;
      break;
    case OneQubitGate::y90:
      u(0, 0) = u(1, 1) = u(1, 0) = kInvSqrt2;
      u(0, 1) = -kInvSqrt2;
      break;
    case OneQubitGate::z45:
      u(0, 0) = std::exp(-kI * (kPi / 8.0));
      u(1, 1) = std::exp(kI * (kPi / 8.0));
      break;
  }
  return u;
}

Mat9c kron3(const Mat3c& high, const Mat3c& low) {
  Mat9c out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out.block<3, 3>(3 * a, 3 * b) = high(a, b) * low;
  return out;
}

Mat9c layer_unitary(const std::array<OneQubitGate, 2>& layer) {
  return kron3(qutrit_gate(layer[0]), qutrit_gate(layer[1]));
}

// Pauli twirl of one qutrit's {0,1} subspace, |2> left in place.
void depolarize_one(QutritDensity& rho, double eps, bool high) {
  if (eps <= 0.0) return;
  const double lambda = std::min(2.0 * eps, 1.0);
  Mat3c x = Mat3c::Zero();
  x(0, 1) = x(1, 0) = 1.0;
  x(2, 2) = 1.0;
  Mat3c y = Mat3c::Zero();
  y(0, 1) = -kI;
  y(1, 0) = kI;
  y(2, 2) = 1.0;
  Mat3c z = Mat3c::Identity();
  z(1, 1) = -1.0;
  const Mat3c id = Mat3c::Identity();
  QutritDensity acc = (1.0 - 0.75 * lambda) * rho;
  for (const Mat3c* p : {&x, &y, &z}) {
    const Mat9c u = high ? kron3(*p, id) : kron3(id, *p);
    acc += 0.25 * lambda * (u * rho * u.adjoint());
  }
  rho = acc;
}

bool computational(int i) { return i / 3 < 2 && i % 3 < 2; }

// (1 - lambda) rho + lambda [Tr(P rho P) I_C / 4 + Q rho Q], with P the
// computational projector and Q = 1 - P.
void depolarize_two(QutritDensity& rho, double eps) {
  if (eps <= 0.0) return;
  const double lambda = std::min(4.0 * eps / 3.0, 1.0);
  double inside = 0.0;
  for (int i = 0; i < 9; ++i)
    if (computational(i)) inside += rho(i, i).real();
  QutritDensity out = rho;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const bool cr = computational(r);
      const bool cc = computational(c);
      if (cr && cc) {
        out(r, c) = (1.0 - lambda) * rho(r, c) + (r == c ? lambda * inside / kD : 0.0);
      } else if (cr != cc) {
        out(r, c) = (1.0 - lambda) * rho(r, c);
      }
    }
  }
  rho = out;
}

void apply_superop(QutritDensity& rho, const Eigen::MatrixXcd& s) {
  Eigen::Map<Eigen::Matrix<Complex, 81, 1>> v(rho.data());
  const Eigen::Matrix<Complex, 81, 1> next = s * v;
  v = next;
}

GateChannel ideal_channel(double theta) {
  GateChannel ch;
  ch.unitary = Mat9c::Identity();
  ch.unitary(4, 4) = std::exp(kI * theta);
  ch.superop = unitary_superop(ch.unitary);
  ch.conditional_phase = theta;
  return ch;
}

Eigen::Matrix2cd qubit_gate(OneQubitGate g) { return qutrit_gate(g).topLeftCorner<2, 2>(); }

double jackknife_ratio(const std::vector<XebTerms>& t) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  double sn = 0.0;
  double sd = 0.0;
  for (const auto& x : t) {
    sn += x.numerator;
    sd += x.denominator;
  }
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) loo[i] = (sn - t[i].numerator) / (sd - t[i].denominator);
  const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace

XebConfig XebConfig::desk_scale() {
  XebConfig c;
  c.depths = {4, 8, 16, 32, 64};
  c.circuits = 30;
  c.shots = 512;
  return c;
}

void validate(const XebConfig& config) {
  if (config.depths.empty()) throw ConfigError("XEB needs at least one depth");
  for (std::size_t i = 0; i < config.depths.size(); ++i) {
    if (config.depths[i] < 1) throw ConfigError("XEB depths must be positive");
    if (i > 0 && config.depths[i] <= config.depths[i - 1])
      throw ConfigError("XEB depths must be strictly increasing");
  }
  if (config.circuits < 1) throw ConfigError("XEB circuit count must be positive");
}

GateLibrary build_gate_library(const DeviceParams& dev, const CalibrationRecord& record,
                               std::size_t size, const ChannelOptions& opts, double theta0) {
  if (size == 0) throw DomainError("gate library must not be empty");
  ChannelOptions o = opts;
  o.vz_high = record.vz_high;
  o.vz_low = record.vz_low;
  GateLibrary lib;
  for (std::size_t k = 0; k < size; ++k) {
    const double theta =
        size == 1 ? canonical_phase(theta0) : kTwoPi * static_cast<double>(k) / size;
    lib.targets.push_back(theta);
    lib.channels.push_back(gate_channel(gate_for_phase(record, theta), dev, o));
  }
  return lib;
}

CycleModel ideal_cycle_model(double theta) {
  CycleModel m;
  m.mixing = ideal_channel(kPi);
  m.library.targets = {theta};
  m.library.channels = {ideal_channel(theta)};
  return m;
}

std::vector<std::vector<XebCircuit>> sample_circuits(const XebConfig& config,
                                                     std::size_t library_size) {
  validate(config);
  if (library_size == 0) throw DomainError("gate library must not be empty");
  std::vector<std::vector<XebCircuit>> out;
  for (std::size_t d = 0; d < config.depths.size(); ++d) {
    const int depth = config.depths[d];
    std::vector<XebCircuit> row;
    for (int c = 0; c < config.circuits; ++c) {
      Rng rng = keyed_rng(config.seed, {0, d, static_cast<std::uint64_t>(c)});
      std::uniform_int_distribution<int> pick(0, 2);
      std::uniform_int_distribution<std::size_t> gate(0, library_size - 1);
      XebCircuit circ;
      circ.layers.resize(static_cast<std::size_t>(depth) + 1);
      for (auto& layer : circ.layers) {
        layer[0] = static_cast<OneQubitGate>(pick(rng));
        layer[1] = static_cast<OneQubitGate>(pick(rng));
      }
      circ.gates.resize(static_cast<std::size_t>(depth));
      for (auto& g : circ.gates) g = library_size == 1 ? 0 : gate(rng);
      row.push_back(std::move(circ));
    }
    out.push_back(std::move(row));
  }
  return out;
}

QutritDensity final_state(const XebCircuit& circuit, const CycleModel& model) {
  QutritDensity rho = QutritDensity::Zero();
  rho(0, 0) = 1.0;
  auto layer = [&](const std::array<OneQubitGate, 2>& l) {
    const Mat9c u = layer_unitary(l);
    rho = u * rho * u.adjoint();
    depolarize_one(rho, model.eps_1q_high, true);
    depolarize_one(rho, model.eps_1q_low, false);
  };
  for (int m = 0; m < circuit.depth(); ++m) {
    layer(circuit.layers[static_cast<std::size_t>(m)]);
    apply_superop(rho, model.mixing.superop);
    if (model.interleave) {
      apply_superop(rho, model.library.channels.at(circuit.gates[static_cast<std::size_t>(m)]).superop);
    }
    depolarize_two(rho, model.injected_depolarizing);
  }
  layer(circuit.layers.back());
  return rho;
}

std::array<double, 9> outcome_probabilities(const XebCircuit& circuit, const CycleModel& model) {
  const QutritDensity rho = final_state(circuit, model);
  std::array<double, 9> out{};
  for (int i = 0; i < 9; ++i) {
    const double p = std::max(rho(i, i).real(), 0.0);
    for (int j = 0; j < 9; ++j) {
      out[static_cast<std::size_t>(j)] +=
          p * model.confusion_high(i / 3, j / 3) * model.confusion_low(i % 3, j % 3);
    }
  }
  return out;
}

std::array<std::uint64_t, 9> simulate_circuit(const XebCircuit& circuit,
                                              const CycleModel& model, std::uint64_t shots,
                                              Rng& rng) {
  const std::array<double, 9> p = outcome_probabilities(circuit, model);
  const std::vector<std::uint64_t> counts =
      sample_multinomial(std::vector<double>(p.begin(), p.end()), shots, rng);
  std::array<std::uint64_t, 9> out{};
  std::copy(counts.begin(), counts.end(), out.begin());
  return out;
}

std::array<double, 4> ideal_probabilities(const XebCircuit& circuit, const CycleModel& model,
                                          bool use_calibrated) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = 1.0;
  auto layer = [&](const std::array<OneQubitGate, 2>& l) {
    const Eigen::Matrix4cd u =
        Eigen::kroneckerProduct(qubit_gate(l[0]), qubit_gate(l[1])).eval();
    psi = u * psi;
  };
  const double mix = use_calibrated ? model.mixing.conditional_phase : kPi;
  for (int m = 0; m < circuit.depth(); ++m) {
    layer(circuit.layers[static_cast<std::size_t>(m)]);
    double phase = mix;
    if (model.interleave) {
      const std::size_t g = circuit.gates[static_cast<std::size_t>(m)];
      phase += use_calibrated ? model.library.channels.at(g).conditional_phase
                              : model.library.targets.at(g);
    }
    psi(3) *= std::exp(kI * phase);
  }
  layer(circuit.layers.back());
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = std::norm(psi(i));
  return out;
}

PostSelected postselect_and_renormalize(const std::array<double, 9>& weights) {
  double total = 0.0;
  double kept = 0.0;
  PostSelected out;
  for (int i = 0; i < 9; ++i) {
    const double w = weights[static_cast<std::size_t>(i)];
    total += w;
    if (computational(i)) {
      kept += w;
      out.probs[static_cast<std::size_t>(2 * (i / 3) + i % 3)] = w;
    }
  }
  if (!(kept > 0.0)) throw NumericError("all outcomes leaked", total > 0.0 ? 1.0 : 0.0);
  for (double& p : out.probs) p /= kept;
  out.leaked_fraction = 1.0 - kept / total;
  return out;
}

XebTerms estimate_fidelity(const std::array<double, 4>& observed,
                           const std::array<double, 4>& ideal) {
  XebTerms t;
  t.numerator = -1.0 / kD;
  t.denominator = -1.0 / kD;
  for (std::size_t i = 0; i < 4; ++i) {
    t.numerator += observed[i] * ideal[i];
    t.denominator += ideal[i] * ideal[i];
  }
  return t;
}

GateError extract_gate_error(double eps_tot, double eps_umix) {
  if (!(eps_tot >= 0.0 && eps_tot < 1.0) || !(eps_umix >= 0.0 && eps_umix <= 1.0))
    throw DomainError("errors must lie in [0, 1)");
  if (eps_umix == 1.0) throw DomainError("mixing error of 1 leaves no signal");
  GateError g;
  g.eps_cz = 1.0 - (1.0 - eps_tot) / (1.0 - eps_umix);
  if (g.eps_cz < 0.0) {
    g.eps_cz = 0.0;
    g.clamped = true;
  }
  return g;
}

SaturationFit extract_leakage(const std::vector<double>& depths,
                              const std::vector<double>& leaked) {
  return fit_saturation(depths, leaked);
}

XebSeries run_series(const XebConfig& config, const CycleModel& model) {
  validate(config);
  const auto ensemble = sample_circuits(config, model.library.channels.size());
  XebSeries s;
  s.depths = config.depths;
  double leaked_total = 0.0;
  double runs = 0.0;
  for (std::size_t d = 0; d < ensemble.size(); ++d) {
    std::vector<XebTerms> terms;
    double leaked = 0.0;
    for (std::size_t c = 0; c < ensemble[d].size(); ++c) {
      const XebCircuit& circ = ensemble[d][c];
      std::array<double, 9> w{};
      if (config.shots == 0) {
        w = outcome_probabilities(circ, model);
      } else {
        Rng rng = keyed_rng(config.seed, {1, d, c});
        const auto counts = simulate_circuit(circ, model, config.shots, rng);
        for (std::size_t i = 0; i < 9; ++i) w[i] = static_cast<double>(counts[i]);
      }
      const PostSelected ps = postselect_and_renormalize(w);
      terms.push_back(estimate_fidelity(
          ps.probs, ideal_probabilities(circ, model, config.ideal_uses_calibrated)));
      leaked += ps.leaked_fraction;
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& t : terms) {
      num += t.numerator;
      den += t.denominator;
    }
    s.fidelity.push_back(num / den);
    s.fidelity_stderr.push_back(jackknife_ratio(terms));
    s.leaked_fraction.push_back(leaked / static_cast<double>(terms.size()));
    leaked_total += leaked;
    runs += static_cast<double>(terms.size());
  }
  s.leaked_run_fraction = leaked_total / runs;
  const std::vector<double> m(s.depths.begin(), s.depths.end());
  const bool weighted = std::all_of(s.fidelity_stderr.begin(), s.fidelity_stderr.end(),
                                    [](double e) { return e > 0.0; });
  s.decay = fit_decay(m, s.fidelity, weighted ? s.fidelity_stderr : std::vector<double>{});
  s.leakage = extract_leakage(m, s.leaked_fraction);
  return s;
}

XebRun run_xeb(const XebConfig& config, const CycleModel& model) {
  XebRun run;
  run.config = config;
  CycleModel reference = model;
  reference.interleave = false;
  run.reference = run_series(config, reference);
  run.interleaved = run_series(config, model);
  run.eps_umix = run.reference.decay.eps;
  run.eps_tot = run.interleaved.decay.eps;
  run.gate = extract_gate_error(run.eps_tot, run.eps_umix);
  run.gate_leakage =
      run.interleaved.leakage.leakage_per_cycle - run.reference.leakage.leakage_per_cycle;
  return run;
}

}  // namespace cztheta
