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

#include "qwork/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwork/entropy.hpp"
#include "qwork/errors.hpp"

namespace qwork {

namespace {

void require_dim(int expected, int actual, const char* what) {
  if (expected != actual) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (expected " << expected << ", got " << actual << ")";
    throw InvalidArgument(msg.str());
  }
}

double max_energy_spread(const std::vector<double>& e) {
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  return *hi - *lo;
}

// Diagonal Γ^(-1/2), dropping weights below the shared support tolerance.
CMatrix inverse_sqrt_weights(const HamiltonianSpec& h) {
  const auto& e = h.energies();
  const double ground = *std::min_element(e.begin(), e.end());
  CMatrix out = CMatrix::Zero(h.dim(), h.dim());
  for (int i = 0; i < h.dim(); ++i) {
    // Relative weight 2^(-(E_i - E_0)) against the largest weight.
    if (std::exp2(-(e[i] - ground)) > kSupportTolerance) out(i, i) = std::exp2(0.5 * e[i]);
  }
  return out;
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) throw InvalidArgument("Hamiltonian has no energy levels");
  for (double e : energies_) {
    if (!std::isfinite(e)) throw InvalidArgument("Hamiltonian has a non-finite energy");
  }
}

HamiltonianSpec HamiltonianSpec::degenerate(int dim) {
  return HamiltonianSpec(std::vector<double>(dim, 0.0));
}

bool HamiltonianSpec::is_degenerate() const { return max_energy_spread(energies_) == 0.0; }

double HamiltonianSpec::partition_function() const { return std::exp2(log2_partition_function()); }

double HamiltonianSpec::log2_partition_function() const {
  const double ground = *std::min_element(energies_.begin(), energies_.end());
  double sum = 0.0;
  for (double e : energies_) sum += std::exp2(-(e - ground));
  return std::log2(sum) - ground;
}

CMatrix HamiltonianSpec::gibbs_weights() const {
  CMatrix g = CMatrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) g(i, i) = std::exp2(-energies_[i]);
  return g;
}

DensityOperator HamiltonianSpec::thermal_state(Dims subsystem_dims) const {
  if (subsystem_dims.empty()) subsystem_dims = {dim()};
  const double ground = *std::min_element(energies_.begin(), energies_.end());
  CMatrix t = CMatrix::Zero(dim(), dim());
  double sum = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const double w = std::exp2(-(energies_[i] - ground));
    t(i, i) = w;
    sum += w;
  }
  return DensityOperator(t / sum, std::move(subsystem_dims));
}

double HamiltonianSpec::mean_energy(const DensityOperator& rho) const {
  require_dim(dim(), rho.dim(), "mean_energy");
  double e = 0.0;
  for (int i = 0; i < dim(); ++i) e += energies_[i] * rho.matrix()(i, i).real();
  return e;
}

HamiltonianSpec combine(const HamiltonianSpec& a, const HamiltonianSpec& b) {
  std::vector<double> e;
  e.reserve(a.dim() * b.dim());
  for (double ea : a.energies()) {
    for (double eb : b.energies()) e.push_back(ea + eb);
  }
  return HamiltonianSpec(std::move(e));
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops, int dim_in, int dim_out,
                           Dims output_dims)
    : ops_(std::move(kraus_ops)), dim_in_(dim_in), dim_out_(dim_out),
      output_dims_(std::move(output_dims)) {
  if (dim_in_ <= 0 || dim_out_ <= 0) throw InvalidArgument("channel dimensions must be positive");
  if (ops_.empty()) throw InvalidArgument("channel needs at least one Kraus operator");
  CMatrix completeness = CMatrix::Zero(dim_in_, dim_in_);
  for (const auto& a : ops_) {
    if (a.rows() != dim_out_ || a.cols() != dim_in_) {
      throw InvalidArgument("Kraus operator shape does not match channel dimensions");
    }
    if (!all_finite(a)) throw InvalidArgument("Kraus operator has non-finite entries");
    completeness += a.adjoint() * a;
  }
  const double defect = (completeness - qwork::identity(dim_in_)).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving (|Σ A†A - 1| = " << defect << ")";
    throw InvalidArgument(msg.str());
  }
  if (output_dims_.empty()) output_dims_ = {dim_out_};
  if (total_dim(output_dims_) != dim_out_) {
    throw InvalidArgument("channel output subsystem dimensions do not match dim_out");
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel({qwork::identity(dim)}, dim, dim);
}

KrausChannel KrausChannel::unitary(const CMatrix& u) {
  if (!is_unitary(u)) throw InvalidArgument("matrix is not unitary");
  const int d = static_cast<int>(u.rows());
  return KrausChannel({u}, d, d);
}

KrausChannel KrausChannel::constant(int dim_in, const DensityOperator& output) {
  const auto eig = eig_hermitian(output.matrix());
  const double cutoff = kSupportTolerance * eig.values[0];
  std::vector<CMatrix> ops;
  for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
    if (eig.values[a] <= cutoff) continue;
    const CVector v = std::sqrt(eig.values[a]) * eig.vectors.col(a);
    for (int i = 0; i < dim_in; ++i) ops.push_back(v * basis_ket(dim_in, i).adjoint());
  }
  // Renormalize the kept weights so the set stays exactly trace preserving.
  double kept = 0.0;
  for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
    if (eig.values[a] > cutoff) kept += eig.values[a];
  }
  for (auto& op : ops) op /= std::sqrt(kept);
  return KrausChannel(std::move(ops), dim_in, output.dim(), output.dims());
}

CMatrix apply_operator(const KrausChannel& c, const CMatrix& x) {
  require_dim(c.dim_in(), static_cast<int>(x.rows()), "apply");
  CMatrix out = CMatrix::Zero(c.dim_out(), c.dim_out());
  for (const auto& a : c.ops()) out += a * x * a.adjoint();
  return out;
}

DensityOperator apply(const KrausChannel& c, const DensityOperator& rho) {
  CMatrix out = apply_operator(c, rho.matrix());
  out = (0.5 * (out + out.adjoint())).eval();
  // Kraus sets are accepted with completeness defects up to 1e-9.
  out /= out.trace().real();
  Dims dims = c.output_dims();
  if (dims.size() == 1 && c.dim_out() == rho.dim()) dims = rho.dims();
  return DensityOperator(std::move(out), std::move(dims));
}

bool is_gibbs_preserving(const KrausChannel& c, const HamiltonianSpec& h_in,
                         const HamiltonianSpec& h_out, double tol) {
  require_dim(c.dim_in(), h_in.dim(), "is_gibbs_preserving");
  require_dim(c.dim_out(), h_out.dim(), "is_gibbs_preserving");
  const CMatrix image = apply_operator(c, h_in.thermal_state().matrix());
  return spectral_norm(image - h_out.thermal_state().matrix()) <= tol;
}

DilationState dilation_state(const KrausChannel& c, const DensityOperator& rho) {
  require_dim(c.dim_in(), rho.dim(), "dilation_state");
  const PureState purified = purify(rho);
  const int dx = rho.dim();
  const int dr = purified.dims().back();
  const int de = c.size();
  const int dout = c.dim_out();

  CMatrix psi(dx, dr);
  for (int x = 0; x < dx; ++x) {
    for (int i = 0; i < dr; ++i) psi(x, i) = purified.vector()[x * dr + i];
  }
  CVector out = CVector::Zero(dout * dr * de);
  for (int k = 0; k < de; ++k) {
    const CMatrix branch = c.ops()[k] * psi;
    for (int xp = 0; xp < dout; ++xp) {
      for (int i = 0; i < dr; ++i) out[(xp * dr + i) * de + k] = branch(xp, i);
    }
  }
  out.normalize();
  return DilationState{PureState(std::move(out), Dims{dout, dr, de}), dout, dr, de};
}

double work_ss_deg(const KrausChannel& c, const DensityOperator& rho) {
  require_dim(c.dim_in(), rho.dim(), "work_ss_deg");
  return std::log2(spectral_norm(apply_operator(c, support_projector(rho))));
}

double work_ss_cond_hmax(const KrausChannel& c, const DensityOperator& rho) {
  const DilationState dil = dilation_state(c, rho);
  const int keep[] = {0, 2};
  const DensityOperator out_env = partial_trace(dil.state.density(), keep);
  return cond_h_max(out_env, 1);
}

double work_ss_fixed_deg(const DensityOperator& rho_in, const DensityOperator& rho_out) {
  return h_max(rho_in) - h_min(rho_out);
}

double work_ms(const DensityOperator& rho_in, const DensityOperator& rho_out,
               const HamiltonianSpec& h_in, const HamiltonianSpec& h_out) {
  return free_energy_triple(rho_out, h_out).a - free_energy_triple(rho_in, h_in).a;
}

CMatrix gamma_operator(const HamiltonianSpec& h, const CMatrix& support) {
  require_dim(h.dim(), static_cast<int>(support.rows()), "gamma_operator");
  const CMatrix gamma = h.gibbs_weights();
  const double scale = gamma.cwiseAbs().maxCoeff();
  if ((support * gamma - gamma * support).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw ContractViolation(
        "gamma_operator: support projector is not spanned by energy eigenstates");
  }
  CMatrix out = support * gamma * support;
  return 0.5 * (out + out.adjoint());
}

CMatrix gamma_operator(const HamiltonianSpec& h) { return h.gibbs_weights(); }

double gibbs_weighted_work(const KrausChannel& c, const CMatrix& gamma_in,
                           const HamiltonianSpec& h_out) {
  require_dim(c.dim_out(), h_out.dim(), "gibbs_weighted_work");
  const CMatrix inv_sqrt = inverse_sqrt_weights(h_out);
  const CMatrix image = apply_operator(c, gamma_in);
  return std::log2(spectral_norm(inv_sqrt * image * inv_sqrt));
}

double work_ss_general(const KrausChannel& c, const DensityOperator& rho,
                       const HamiltonianSpec& h_in, const HamiltonianSpec& h_out) {
  require_dim(c.dim_in(), rho.dim(), "work_ss_general");
  require_dim(c.dim_in(), h_in.dim(), "work_ss_general");
  if (support_rank(rho.matrix()) != rho.dim()) {
    throw ContractViolation("work_ss_general: input state must be full rank");
  }
  return gibbs_weighted_work(c, gamma_operator(h_in), h_out);
}

FreeEnergies free_energy_triple(const DensityOperator& rho, const HamiltonianSpec& h) {
  require_dim(h.dim(), rho.dim(), "free_energy_triple");
  FreeEnergies f{};
  f.a = h.mean_energy(rho) - von_neumann(rho);
  const CMatrix proj = support_projector(rho);
  f.a_min = -std::log2((proj * h.gibbs_weights()).trace().real());
  const CMatrix inv_sqrt = inverse_sqrt_weights(h);
  f.a_max = std::log2(spectral_norm(inv_sqrt * rho.matrix() * inv_sqrt));
  return f;
}

double work_ss_fixed_general(const DensityOperator& rho_in, const DensityOperator& rho_out,
                             const HamiltonianSpec& h_in, const HamiltonianSpec& h_out) {
  return free_energy_triple(rho_out, h_out).a_max - free_energy_triple(rho_in, h_in).a_min;
}

}  // namespace qwork
