// Copyright 2026 The qwork Authors
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

#include "qwork/phasequbit.hpp"

#include <algorithm>
#include <complex>
#include <limits>

#include "qwork/errors.hpp"
#include "qwork/numopt.hpp"

namespace qwork::phasequbit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRangeSlack = 1e-12;
constexpr double kFeasibilityTolerance = 1e-6;
// Weight of the constraint violation in the eliminated objectives.
constexpr double kPenalty = 4.0;

void check_energy(double E) {
  if (!(std::isfinite(E) && E >= 0.0)) throw InvalidArgument("phasequbit: energy gap must be >= 0");
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double arccos_clamped(double c, double alpha) {
  if (!(c > 0.0)) return std::numbers::pi;
  const double arg = (1.0 - 2.0 * alpha) / c;
  if (arg <= -1.0) return std::numbers::pi;
  if (arg >= 1.0) return 0.0;
  return std::acos(arg);
}

bool use_closed_form(double E, Method method) {
  if (method == Method::kClosedForm) {
    if (E != 0.0) throw InvalidArgument("phasequbit: closed form is only available at E = 0");
    return true;
  }
  return method == Method::kAuto && E == 0.0;
}

// Memory Bloch length whose multi-shot credit 1 - h((1+m)/2) equals t, or a
// clamped value with the amount by which t lies outside [0, 1].
std::pair<double, double> memory_from_ms_credit(double t) {
  if (t <= 0.0) return {0.0, -t};
  if (t >= 1.0) return {1.0, t - 1.0};
  return {2.0 * numopt::inv_binary_entropy(1.0 - t) - 1.0, 0.0};
}

// Memory Bloch length with log2(1 + m) = t, clamped as above.
std::pair<double, double> memory_from_ss_credit(double t) {
  if (t <= 0.0) return {0.0, -t};
  if (t >= 1.0) return {1.0, t - 1.0};
  return {std::exp2(t) - 1.0, 0.0};
}

double system_credit_ms(double r, double theta, double E) {
  return 0.5 * E * (1.0 - r * std::cos(theta)) + std::log2(partition_function(E)) -
         numopt::binary_entropy((1.0 + r) / 2.0);
}

numopt::BoxProblem probe_box(std::function<double(std::span<const double>)> objective) {
  numopt::BoxProblem problem;
  problem.objective = std::move(objective);
  problem.bounds = {{0.0, 1.0}, {0.0, (std::numbers::pi / 2)}};
  return problem;
}

}  // namespace

void ProbeParams::validate() const {
  const auto in = [](double v, double lo, double hi) {
    return std::isfinite(v) && v >= lo - kRangeSlack && v <= hi + kRangeSlack;
  };
  if (!in(r, 0.0, 1.0)) throw InvalidArgument("phasequbit: r must lie in [0, 1]");
  if (!in(theta, 0.0, (std::numbers::pi / 2))) throw InvalidArgument("phasequbit: theta must lie in [0, pi/2]");
  if (!in(m, 0.0, 1.0)) throw InvalidArgument("phasequbit: m must lie in [0, 1]");
  if (!std::isfinite(phi) || !std::isfinite(phi_meas)) {
    throw InvalidArgument("phasequbit: phases must be finite");
  }
  check_energy(E);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("phasequbit: alpha must lie in (0, 1)");
}

DensityOperator probe_state(const ProbeParams& p) {
  p.validate();
  const double bx = p.r * std::sin(p.theta) * std::cos(p.phi);
  const double by = p.r * std::sin(p.theta) * std::sin(p.phi);
  const double bz = p.r * std::cos(p.theta);
  const CMatrix rho = 0.5 * (identity(2) + bx * sigma_x() + by * sigma_y() + bz * sigma_z());
  return DensityOperator(rho, Dims{2});
}

DensityOperator memory_state(double m) {
  if (!(std::isfinite(m) && m >= -kRangeSlack && m <= 1.0 + kRangeSlack)) {
    throw InvalidArgument("phasequbit: m must lie in [0, 1]");
  }
  const double mc = clamp_unit(m);
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = (1.0 + mc) / 2.0;
  rho(1, 1) = (1.0 - mc) / 2.0;
  return DensityOperator(rho, Dims{2});
}

CMatrix correlating_unitary(double phi_meas) {
  CVector ket(2);
  ket << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi_meas);
  const CMatrix proj = outer(ket);
  return kron(proj, identity(2)) + kron(identity(2) - proj, sigma_x());
}

HamiltonianSpec probe_hamiltonian(double E) {
  check_energy(E);
  return HamiltonianSpec({0.0, E});
}

ProtocolSpec protocol(const ProbeParams& p) {
  p.validate();
  auto family = [p](double phi) {
    ProbeParams q = p;
    q.phi = phi;
    return probe_state(q);
  };
  return ProtocolSpec(probe_hamiltonian(p.E), HamiltonianSpec::degenerate(2), family,
                      memory_state(p.m), correlating_unitary(p.phi_meas));
}

double p0(const ProbeParams& p) {
  return 0.5 * (1.0 + p.m * p.r * std::sin(p.theta) * std::cos(p.phi_meas - p.phi));
}

estimation::OutcomeModel phase_model(const ProbeParams& p) {
  p.validate();
  auto prob = [p](double phi, int k) {
    ProbeParams q = p;
    q.phi = phi;
    const double p_0 = p0(q);
    return k == 0 ? p_0 : 1.0 - p_0;
  };
  return estimation::OutcomeModel(prob, 2, {0.0, 2.0 * std::numbers::pi, true});
}

estimation::OutcomeModel povm_phase_model(const ProbeParams& p) {
  const ProtocolSpec spec = protocol(p);
  const auto elements = povm(spec);
  auto prob = [p, elements](double phi, int k) {
    ProbeParams q = p;
    q.phi = phi;
    return std::max((elements[k] * probe_state(q).matrix()).trace().real(), 0.0);
  };
  return estimation::OutcomeModel(prob, 2, {0.0, 2.0 * std::numbers::pi, true});
}

double fisher_closed(const ProbeParams& p) {
  const double delta = p.phi - p.phi_meas;
  const double c = p.m * p.r * std::sin(p.theta);
  const double s = std::sin(delta);
  const double co = std::cos(delta);
  return c * c * s * s / (1.0 - c * c * co * co);
}

double partition_function(double E) {
  check_energy(E);
  return 1.0 + std::exp2(-E);
}

double credit_ms(const ProbeParams& p) {
  p.validate();
  return system_credit_ms(p.r, p.theta, p.E) + 1.0 - numopt::binary_entropy((1.0 + p.m) / 2.0);
}

double lambda_big(double r, double theta, double E) {
  ProbeParams p;
  p.r = r;
  p.theta = theta;
  p.E = E;
  p.validate();
  const double z = r * std::cos(theta);
  const double g = std::exp2(E);
  const double disc = (1.0 + z) * (1.0 + z) + 2.0 * g * (2.0 * r * r - z * z - 1.0) +
                      g * g * (1.0 - z) * (1.0 - z);
  return partition_function(E) / 4.0 *
         (1.0 + z + g * (1.0 - z) + std::sqrt(std::max(disc, 0.0)));
}

double credit_ss(const ProbeParams& p) {
  p.validate();
  return std::log2(lambda_big(p.r, p.theta, p.E)) + std::log2(1.0 + p.m);
}

double c_meas(double E) { return E + 2.0 * (std::log2(partition_function(E)) - 1.0); }

double delta_phi(const ProbeParams& p) {
  p.validate();
  return arccos_clamped(p.m * p.r * std::sin(p.theta), p.alpha);
}

double max_credit_ms(double E) { return 0.5 * E + std::log2(partition_function(E)) + 1.0; }

double min_work_ss(double E) { return c_meas(E); }

double max_work_ss(double E) { return c_meas(E) + std::log2(lambda_big(1.0, (std::numbers::pi / 2), E)) + 1.0; }

MsOptimum solve_opt_ms(double w, double E, Method method) {
  check_energy(E);
  if (!std::isfinite(w) || w < -kRangeSlack || w > max_credit_ms(E) + kRangeSlack) {
    throw ContractViolation("solve_opt_ms: work credit outside the attainable range");
  }
  MsOptimum out;
  if (use_closed_form(E, method)) {
    const double r = w >= 2.0 ? 1.0 : 2.0 * numopt::inv_binary_entropy(1.0 - w / 2.0) - 1.0;
    out.r = r;
    out.m = r;
    out.theta = (std::numbers::pi / 2);
  } else {
    const auto problem = probe_box([&](std::span<const double> v) {
      const auto [m, violation] = memory_from_ms_credit(w - system_credit_ms(v[0], v[1], E));
      return -m * v[0] * std::sin(v[1]) + kPenalty * violation;
    });
    const auto best = numopt::minimize_box(problem);
    out.r = best.argmin[0];
    out.theta = best.argmin[1];
    out.m = memory_from_ms_credit(w - system_credit_ms(out.r, out.theta, E)).first;
  }
  ProbeParams p;
  p.r = out.r;
  p.m = out.m;
  p.theta = out.theta;
  p.E = E;
  out.credit = credit_ms(p);
  if (std::abs(out.credit - w) > kFeasibilityTolerance) {
    throw SolverFailure("solve_opt_ms: optimizer did not meet the credit constraint");
  }
  const double c = out.m * out.r * std::sin(out.theta);
  out.sqrtn_dphi = c > 0.0 ? 1.0 / c : kInf;
  return out;
}

SsOptimum solve_opt_ss(double w, double E, double alpha, Method method) {
  check_energy(E);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("solve_opt_ss: alpha must lie in (0, 1)");
  if (!std::isfinite(w) || w < min_work_ss(E) - kRangeSlack || w > max_work_ss(E) + kRangeSlack) {
    throw ContractViolation("solve_opt_ss: work outside the attainable range");
  }
  const double c = c_meas(E);
  SsOptimum out;
  if (use_closed_form(E, method)) {
    const double r = std::clamp(std::sqrt(std::exp2(w)) - 1.0, 0.0, 1.0);
    out.r = r;
    out.m = r;
    out.theta = (std::numbers::pi / 2);
  } else {
    const auto problem = probe_box([&](std::span<const double> v) {
      const double t = w - c - std::log2(lambda_big(v[0], v[1], E));
      const auto [m, violation] = memory_from_ss_credit(t);
      return -m * v[0] * std::sin(v[1]) + kPenalty * violation;
    });
    const auto best = numopt::minimize_box(problem);
    out.r = best.argmin[0];
    out.theta = best.argmin[1];
    out.m = memory_from_ss_credit(w - c - std::log2(lambda_big(out.r, out.theta, E))).first;
  }
  ProbeParams p;
  p.r = out.r;
  p.m = out.m;
  p.theta = out.theta;
  p.E = E;
  p.alpha = alpha;
  out.work = credit_ss(p) + c;
  if (std::abs(out.work - w) > kFeasibilityTolerance) {
    throw SolverFailure("solve_opt_ss: optimizer did not meet the work constraint");
  }
  out.delta_phi = delta_phi(p);
  return out;
}

std::vector<CurvePoint> curve(Figure fig, const std::vector<double>& w_grid,
                              const std::vector<double>& energies, double alpha, Method method) {
  if (w_grid.empty()) throw InvalidArgument("curve: work grid is empty");
  const std::vector<double> es = fig == Figure::kFig2 ? std::vector<double>{0.0} : energies;
  if (es.empty()) throw InvalidArgument("curve: energy list is empty");
  std::vector<CurvePoint> points;
  points.reserve(es.size() * w_grid.size());
  for (double E : es) {
    check_energy(E);
    for (double w : w_grid) {
      CurvePoint pt;
      pt.E = E;
      pt.w = w;
      try {
        const SsOptimum ss = solve_opt_ss(w, E, alpha, method);
        pt.delta_phi_ss = ss.delta_phi;
        pt.r_opt = ss.r;
        pt.m_opt = ss.m;
        pt.theta_opt = ss.theta;
        pt.ss_feasible = true;
      } catch (const ContractViolation&) {
      }
      try {
        pt.ms = solve_opt_ms(w, E, method);
        pt.sqrtn_dphi_ms = pt.ms.sqrtn_dphi;
        pt.ms_feasible = true;
      } catch (const ContractViolation&) {
      }
      points.push_back(pt);
    }
  }
  return points;
}

}  // namespace qwork::phasequbit
