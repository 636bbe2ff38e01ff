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

// Quantum channels in Kraus form and their thermodynamic work costs.
//
// Work is a dimensionless number in units of k_B T ln 2; energies are in the
// same unit, so a level E carries Boltzmann weight 2^(-E). Positive work is
// consumed, negative work is extracted.

#include <vector>

#include "qwork/qmat.hpp"

namespace qwork {

// Diagonal Hamiltonian Σ_i E_i |i⟩⟨i|.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(std::vector<double> energies);
  static HamiltonianSpec degenerate(int dim);

  const std::vector<double>& energies() const { return energies_; }
  int dim() const { return static_cast<int>(energies_.size()); }
  bool is_degenerate() const;

  double partition_function() const;       // Z = Σ 2^(-E_i)
  double log2_partition_function() const;  // evaluated with the ground energy factored out
  CMatrix gibbs_weights() const;           // Γ = Σ 2^(-E_i) |i⟩⟨i|
  DensityOperator thermal_state(Dims subsystem_dims = {}) const;
  double mean_energy(const DensityOperator& rho) const;

 private:
  std::vector<double> energies_;
};

// H_a ⊗ 1 + 1 ⊗ H_b.
HamiltonianSpec combine(const HamiltonianSpec& a, const HamiltonianSpec& b);

class KrausChannel {
 public:
  // Operators are dim_out x dim_in and must satisfy Σ A†A = 1 within 1e-9.
  // `output_dims` optionally records the subsystem split of the output.
  KrausChannel(std::vector<CMatrix> kraus_ops, int dim_in, int dim_out, Dims output_dims = {});

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const CMatrix& u);
  // Trace-and-replace channel: every input maps to `output`.
  static KrausChannel constant(int dim_in, const DensityOperator& output);

  const std::vector<CMatrix>& ops() const { return ops_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const Dims& output_dims() const { return output_dims_; }

 private:
  std::vector<CMatrix> ops_;
  int dim_in_;
  int dim_out_;
  Dims output_dims_;
};

// Pure state on X' ⊗ R ⊗ E of a Stinespring dilation acting on a purification.
struct DilationState {
  PureState state;
  int dim_out;
  int dim_reference;
  int dim_environment;
};

struct FreeEnergies {
  double a;      // tr[Hρ] - H(ρ)
  double a_min;  // -log2 tr[Π_ρ Γ]
  double a_max;  // log2 ||Γ^(-1/2) ρ Γ^(-1/2)||_∞
};

// Σ_k A_k X A_k† for an arbitrary operator X.
CMatrix apply_operator(const KrausChannel& c, const CMatrix& x);
DensityOperator apply(const KrausChannel& c, const DensityOperator& rho);

bool is_gibbs_preserving(const KrausChannel& c, const HamiltonianSpec& h_in,
                         const HamiltonianSpec& h_out, double tol = 1e-9);

// Environment dimension equals the number of Kraus operators.
DilationState dilation_state(const KrausChannel& c, const DensityOperator& rho);

// log2 ||C[Π_ρ]||_∞ (trivial Hamiltonians).
double work_ss_deg(const KrausChannel& c, const DensityOperator& rho);

// H_max(E|X') evaluated on the dilation of C acting on a purification of ρ.
double work_ss_cond_hmax(const KrausChannel& c, const DensityOperator& rho);

// Fixed-output shortcut H_max(ρ_in) - H_min(ρ_out).
double work_ss_fixed_deg(const DensityOperator& rho_in, const DensityOperator& rho_out);

// Free-energy difference A(ρ_out) - A(ρ_in).
double work_ms(const DensityOperator& rho_in, const DensityOperator& rho_out,
               const HamiltonianSpec& h_in, const HamiltonianSpec& h_out);

// Γ restricted to a support projector: ΠΓΠ. The projector must commute with
// Γ (it is spanned by energy eigenvectors, or the Hamiltonian is degenerate
// on it); otherwise ContractViolation.
CMatrix gamma_operator(const HamiltonianSpec& h, const CMatrix& support);
CMatrix gamma_operator(const HamiltonianSpec& h);

// log2 ||Γ_out^(-1/2) C[gamma_in] Γ_out^(-1/2)||_∞ with Γ_out the output Gibbs
// weights, pseudo-inverted below kSupportTolerance.
double gibbs_weighted_work(const KrausChannel& c, const CMatrix& gamma_in,
                           const HamiltonianSpec& h_out);

// Single-shot cost for general diagonal Hamiltonians. Only defined for full-rank
// inputs; a rank-deficient ρ raises ContractViolation.
double work_ss_general(const KrausChannel& c, const DensityOperator& rho,
                       const HamiltonianSpec& h_in, const HamiltonianSpec& h_out);

FreeEnergies free_energy_triple(const DensityOperator& rho, const HamiltonianSpec& h);

// A_max(ρ_out) - A_min(ρ_in).
double work_ss_fixed_general(const DensityOperator& rho_in, const DensityOperator& rho_out,
                             const HamiltonianSpec& h_in, const HamiltonianSpec& h_out);

}  // namespace qwork
