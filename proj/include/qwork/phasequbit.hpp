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

#pragma once

// Single-qubit phase estimation with a qubit memory: closed-form states,
// work costs, precision figures, and the optimal precision at fixed work.
//
// The probe Hamiltonian is diag(0, E) and the memory Hamiltonian is trivial.
// Angles are in radians; work and energy in units of k_B T ln 2.

#include <cmath>
#include <numbers>
#include <vector>

#include "qwork/channel.hpp"
#include "qwork/estimation.hpp"
#include "qwork/protocol.hpp"
#include "qwork/qmat.hpp"

namespace qwork::phasequbit {

// erf(1/√2): the one-sigma confidence level.
inline const double kDefaultAlpha = std::erf(1.0 / std::sqrt(2.0));

struct ProbeParams {
  double r = 1.0;         // Bloch length, [0, 1]
  double theta = (std::numbers::pi / 2);  // polar angle, [0, π/2]
  double phi = 0.0;       // encoded phase
  double m = 1.0;         // memory Bloch z-component, [0, 1]
  double phi_meas = 0.0;  // measurement angle
  double E = 0.0;         // probe energy gap, >= 0
  double alpha = kDefaultAlpha;

  // Throws InvalidArgument when a field is out of range.
  void validate() const;
};

DensityOperator probe_state(const ProbeParams& p);
// diag((1+m)/2, (1-m)/2).
DensityOperator memory_state(double m);
// |φ̂⟩⟨φ̂| ⊗ 1 + |φ̂+π⟩⟨φ̂+π| ⊗ σ_x on S ⊗ M.
CMatrix correlating_unitary(double phi_meas);
HamiltonianSpec probe_hamiltonian(double E);
// The full protocol with the encoded phase as parameter.
ProtocolSpec protocol(const ProbeParams& p);

// Probability of outcome 0: (1 + m r sinθ cos(φ̂ - φ)) / 2.
double p0(const ProbeParams& p);
// Outcome model in the phase φ on [0, 2π), from the closed form.
estimation::OutcomeModel phase_model(const ProbeParams& p);
// Same model, with probabilities tr[M_k ρ_S(φ)] from the protocol's POVM.
estimation::OutcomeModel povm_phase_model(const ProbeParams& p);
// m² r² sin²Δ sin²θ / (1 - m² r² cos²Δ sin²θ) with Δ = φ - φ̂.
double fisher_closed(const ProbeParams& p);

double partition_function(double E);  // 1 + 2^(-E)
double credit_ms(const ProbeParams& p);
double lambda_big(double r, double theta, double E);
double credit_ss(const ProbeParams& p);
double c_meas(double E);
// Half-width of the confidence interval, arccos[(1 - 2α) / (m r sinθ)] clamped to [0, π].
double delta_phi(const ProbeParams& p);

enum class Method {
  kAuto,        // closed form at E = 0, numeric otherwise
  kClosedForm,  // E = 0 only
  kNumeric,
};

struct MsOptimum {
  double r = 0.0;
  double m = 0.0;
  double theta = 0.0;
  double sqrtn_dphi = 0.0;  // 1 / sqrt(F); +inf when F = 0
  double credit = 0.0;      // credit_ms at the optimizer
};

struct SsOptimum {
  double r = 0.0;
  double m = 0.0;
  double theta = 0.0;
  double delta_phi = 0.0;
  double work = 0.0;  // credit_ss + c_meas at the optimizer
};

// Largest multi-shot credit reachable with the probe restricted to θ <= π/2.
double max_credit_ms(double E);
// Single-shot work range [c_meas(E), c_meas(E) + log2 max λ + 1].
double min_work_ss(double E);
double max_work_ss(double E);

// Best multi-shot precision at credit w, with Δ = π/2.
// Infeasible w raises ContractViolation.
MsOptimum solve_opt_ms(double w, double E, Method method = Method::kAuto);
// Smallest single-shot half-width at total work w = credit_ss + c_meas(E).
SsOptimum solve_opt_ss(double w, double E, double alpha = kDefaultAlpha,
                       Method method = Method::kAuto);

enum class Figure { kFig2, kFig3 };

struct CurvePoint {
  double E = 0.0;
  double w = 0.0;
  double delta_phi_ss = std::numbers::pi;
  double sqrtn_dphi_ms = INFINITY;
  double r_opt = NAN;  // single-shot optimizer
  double m_opt = NAN;
  double theta_opt = NAN;
  bool ss_feasible = false;
  bool ms_feasible = false;
  MsOptimum ms;
};

// One point per (E, w), E outermost. kFig2 uses E = 0 only. Infeasible
// work values keep the sentinels δφ = π and √n Δφ = +inf.
std::vector<CurvePoint> curve(Figure fig, const std::vector<double>& w_grid,
                              const std::vector<double>& energies, double alpha = kDefaultAlpha,
                              Method method = Method::kAuto);

}  // namespace qwork::phasequbit
