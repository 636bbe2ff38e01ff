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

// Entropies in bits: Shannon, von Neumann, min/max, and the conditional
// min/max entropies of bipartite states.

#include <vector>

#include "qwork/qmat.hpp"

namespace qwork {

// Nonnegative weights summing to one within 1e-10.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

double shannon(const ProbabilityVector& p);
double von_neumann(const DensityOperator& rho);
double h_min(const DensityOperator& rho);
double h_max(const DensityOperator& rho);

// Rényi-zero conditional max-entropy H_max(X|Y) = log2 ||tr_X Π_XY||_∞ of a
// two-subsystem state, where `x` names the subsystem playing the role of X.
double cond_h_max(const DensityOperator& rho_xy, int x);

struct CondMinEntropyResult {
  double value = 0.0;       // -log2(primal)
  double primal = 0.0;      // tr σ of the returned feasible σ
  double dual = 0.0;        // certified lower bound on min tr σ
  CMatrix sigma;            // feasible: 1_X ⊗ σ - ρ >= -1e-9
};

// H_min(X|Y) = -log2 min { tr σ_Y : 1_X ⊗ σ_Y >= ρ_XY } for states of total
// dimension <= 16, solved by a primal barrier method with a dual certificate.
// Throws SolverFailure when the certified gap exceeds 1e-6.
CondMinEntropyResult cond_h_min_certified(const DensityOperator& rho_xy, int x);
double cond_h_min(const DensityOperator& rho_xy, int x);

}  // namespace qwork
