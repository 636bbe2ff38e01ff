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

// The preparation -> measurement -> extraction cycle on probe S and memory M,
// and its work ledger in the single-shot and multi-shot regimes.

#include <functional>
#include <optional>
#include <vector>

#include "qwork/channel.hpp"
#include "qwork/qmat.hpp"

namespace qwork {

class ProtocolSpec {
 public:
  using ProbeFamily = std::function<DensityOperator(double)>;

  // memory_init must be diagonal in the computational basis and
  // correlating_unitary must be a unitary on S ⊗ M (S first).
  ProtocolSpec(HamiltonianSpec h_s, HamiltonianSpec h_m, ProbeFamily probe_family,
               DensityOperator memory_init, CMatrix correlating_unitary);

  int dim_s() const { return h_s_.dim(); }
  int dim_m() const { return h_m_.dim(); }
  const HamiltonianSpec& h_s() const { return h_s_; }
  const HamiltonianSpec& h_m() const { return h_m_; }
  HamiltonianSpec h_sm() const { return combine(h_s_, h_m_); }
  const DensityOperator& memory_init() const { return memory_init_; }
  const CMatrix& correlating_unitary() const { return unitary_; }

  // ρ_S(x); throws InvalidArgument if the family returns the wrong dimension.
  DensityOperator probe(double x) const;
  // Eigenvalues q_j of the memory state.
  std::vector<double> memory_weights() const;

 private:
  HamiltonianSpec h_s_;
  HamiltonianSpec h_m_;
  ProbeFamily probe_family_;
  DensityOperator memory_init_;
  CMatrix unitary_;
};

enum class Regime { kSingleShot, kMultiShot };

struct MeasurementKraus {
  int k;       // outcome
  int j;       // memory basis state in the support of ρ_M
  CMatrix op;  // √q_j ⟨k|U|j⟩_M acting on S
};

struct WorkReport {
  Regime regime;
  double w_prep = 0.0;
  double w_meas = 0.0;
  double w_extract = 0.0;
  double w_total = 0.0;
  double w_credit = 0.0;
  // Single-shot only: w_meas = -η H_min(ρ'_SM), omitted when H_min(ρ'_SM) = 0.
  std::optional<double> eta;
};

// ρ_S(x) ⊗ ρ_M.
DensityOperator prepared_state(const ProtocolSpec& spec, double x);
// Σ_k (1 ⊗ |k⟩⟨k|) U ρ_SM U† (1 ⊗ |k⟩⟨k|).
DensityOperator post_measurement_state(const ProtocolSpec& spec, double x);
// τ_S ⊗ τ_M.
DensityOperator thermal_pair(const ProtocolSpec& spec);

// Fixed-output channel onto ρ_S(x) ⊗ ρ_M (encoding folded into preparation).
KrausChannel preparation_channel(const ProtocolSpec& spec, double x);
std::vector<MeasurementKraus> measurement_kraus(const ProtocolSpec& spec);
// M_k = Σ_j A_kj† A_kj, one per memory basis state.
std::vector<CMatrix> povm(const ProtocolSpec& spec);
KrausChannel measurement_channel(const ProtocolSpec& spec);
// Fixed-output channel onto τ_S ⊗ τ_M.
KrausChannel extraction_channel(const ProtocolSpec& spec);

WorkReport work_report(const ProtocolSpec& spec, double x, Regime regime);

}  // namespace qwork
