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

#include "qwork/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "qwork/entropy.hpp"
#include "qwork/errors.hpp"

namespace qwork {

ProtocolSpec::ProtocolSpec(HamiltonianSpec h_s, HamiltonianSpec h_m, ProbeFamily probe_family,
                           DensityOperator memory_init, CMatrix correlating_unitary)
    : h_s_(std::move(h_s)), h_m_(std::move(h_m)), probe_family_(std::move(probe_family)),
      memory_init_(std::move(memory_init)), unitary_(std::move(correlating_unitary)) {
  if (!probe_family_) throw InvalidArgument("protocol: probe family is empty");
  if (memory_init_.dim() != dim_m()) {
    throw InvalidArgument("protocol: memory state dimension does not match its Hamiltonian");
  }
  const CMatrix& mem = memory_init_.matrix();
  const CMatrix off_diagonal = mem - CMatrix(mem.diagonal().asDiagonal());
  if (off_diagonal.cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("protocol: memory state must be diagonal in the computational basis");
  }
  const int d = dim_s() * dim_m();
  if (unitary_.rows() != d || unitary_.cols() != d) {
    throw InvalidArgument("protocol: correlating unitary must act on S ⊗ M");
  }
  if (!is_unitary(unitary_, 1e-9)) throw InvalidArgument("protocol: correlating map is not unitary");
}

DensityOperator ProtocolSpec::probe(double x) const {
  DensityOperator rho = probe_family_(x);
  if (rho.dim() != dim_s()) throw InvalidArgument("protocol: probe state has the wrong dimension");
  return rho;
}

std::vector<double> ProtocolSpec::memory_weights() const {
  std::vector<double> q(dim_m());
  for (int j = 0; j < dim_m(); ++j) q[j] = std::max(memory_init_.matrix()(j, j).real(), 0.0);
  return q;
}

DensityOperator prepared_state(const ProtocolSpec& spec, double x) {
  return DensityOperator(kron(spec.probe(x).matrix(), spec.memory_init().matrix()),
                         Dims{spec.dim_s(), spec.dim_m()});
}

DensityOperator post_measurement_state(const ProtocolSpec& spec, double x) {
  return apply(measurement_channel(spec), prepared_state(spec, x));
}

DensityOperator thermal_pair(const ProtocolSpec& spec) {
  return DensityOperator(
      kron(spec.h_s().thermal_state().matrix(), spec.h_m().thermal_state().matrix()),
      Dims{spec.dim_s(), spec.dim_m()});
}

KrausChannel preparation_channel(const ProtocolSpec& spec, double x) {
  return KrausChannel::constant(spec.dim_s() * spec.dim_m(), prepared_state(spec, x));
}

std::vector<MeasurementKraus> measurement_kraus(const ProtocolSpec& spec) {
  const int ds = spec.dim_s();
  const int dm = spec.dim_m();
  const auto q = spec.memory_weights();
  const double q_max = *std::max_element(q.begin(), q.end());
  const CMatrix& u = spec.correlating_unitary();
  std::vector<MeasurementKraus> out;
  for (int k = 0; k < dm; ++k) {
    for (int j = 0; j < dm; ++j) {
      if (q[j] <= kSupportTolerance * q_max) continue;
      CMatrix block(ds, ds);
      for (int s = 0; s < ds; ++s) {
        for (int t = 0; t < ds; ++t) block(s, t) = u(s * dm + k, t * dm + j);
      }
      out.push_back({k, j, std::sqrt(q[j]) * block});
    }
  }
  return out;
}

std::vector<CMatrix> povm(const ProtocolSpec& spec) {
  std::vector<CMatrix> elements(spec.dim_m(), CMatrix::Zero(spec.dim_s(), spec.dim_s()));
  for (const auto& a : measurement_kraus(spec)) elements[a.k] += a.op.adjoint() * a.op;
  return elements;
}

KrausChannel measurement_channel(const ProtocolSpec& spec) {
  const int dm = spec.dim_m();
  const int d = spec.dim_s() * dm;
  std::vector<CMatrix> ops;
  for (int k = 0; k < dm; ++k) {
    const CMatrix pin = kron(identity(spec.dim_s()), outer(basis_ket(dm, k)));
    ops.push_back(pin * spec.correlating_unitary());
  }
  return KrausChannel(std::move(ops), d, d, Dims{spec.dim_s(), dm});
}

KrausChannel extraction_channel(const ProtocolSpec& spec) {
  return KrausChannel::constant(spec.dim_s() * spec.dim_m(), thermal_pair(spec));
}

WorkReport work_report(const ProtocolSpec& spec, double x, Regime regime) {
  const DensityOperator tau = thermal_pair(spec);
  const DensityOperator rho = prepared_state(spec, x);
  const KrausChannel meas = measurement_channel(spec);
  const DensityOperator post = apply(meas, rho);
  const HamiltonianSpec h = spec.h_sm();

  WorkReport report{regime};
  if (regime == Regime::kMultiShot) {
    report.w_prep = work_ms(tau, rho, h, h);
    report.w_meas = work_ms(rho, post, h, h);
    report.w_extract = work_ms(post, tau, h, h);
  } else if (h.is_degenerate()) {
    report.w_prep = work_ss_fixed_deg(tau, rho);
    report.w_meas = work_ss_deg(meas, rho);
    report.w_extract = work_ss_fixed_deg(post, tau);
  } else {
    report.w_prep = work_ss_fixed_general(tau, rho, h, h);
    report.w_meas = work_ss_general(meas, rho, h, h);
    report.w_extract = work_ss_fixed_general(post, tau, h, h);
  }
  report.w_total = report.w_prep + report.w_meas + report.w_extract;
  report.w_credit = report.w_prep;

  if (regime == Regime::kSingleShot) {
    const double hmin_post = h_min(post);
    if (hmin_post > 1e-12) report.eta = -report.w_meas / hmin_post;
  }
  return report;
}

}  // namespace qwork
