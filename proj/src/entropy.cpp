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

#include "qwork/entropy.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qwork/errors.hpp"

namespace qwork {

namespace {

double entropy_of(const RVector& weights) {
  double h = 0.0;
  for (double p : weights) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void require_bipartite(const DensityOperator& rho, int x, const char* what) {
  if (rho.num_subsystems() != 2) {
    throw InvalidArgument(std::string(what) + ": state must have exactly two subsystems");
  }
  if (x != 0 && x != 1) throw InvalidArgument(std::string(what) + ": subsystem index must be 0 or 1");
}

// 1_X ⊗ σ_Y laid out in the state's subsystem order.
CMatrix lift(const CMatrix& sigma, int dx, int x) {
  return x == 0 ? kron(identity(dx), sigma) : kron(sigma, identity(dx));
}

// Hilbert-Schmidt orthonormal Hermitian basis of d x d matrices.
std::vector<CMatrix> hermitian_basis(int d) {
  std::vector<CMatrix> basis;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    CMatrix b = CMatrix::Zero(d, d);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      CMatrix re = CMatrix::Zero(d, d);
      re(i, j) = re(j, i) = s;
      basis.push_back(re);
      CMatrix im = CMatrix::Zero(d, d);
      im(i, j) = Complex(0, -s);
      im(j, i) = Complex(0, s);
      basis.push_back(im);
    }
  }
  return basis;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidArgument("probability vector is empty");
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidArgument("probability vector has a negative entry");
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("probability vector does not sum to 1");
}

double shannon(const ProbabilityVector& p) {
  double h = 0.0;
  for (double q : p.probs()) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

double von_neumann(const DensityOperator& rho) { return entropy_of(spectrum(rho)); }

double h_min(const DensityOperator& rho) { return -std::log2(spectrum(rho)[0]); }

double h_max(const DensityOperator& rho) { return std::log2(support_rank(rho.matrix())); }

double cond_h_max(const DensityOperator& rho_xy, int x) {
  require_bipartite(rho_xy, x, "cond_h_max");
  const CMatrix proj = support_projector(rho_xy);
  const int keep[] = {1 - x};
  return std::log2(spectral_norm(partial_trace(proj, rho_xy.dims(), keep)));
}

CondMinEntropyResult cond_h_min_certified(const DensityOperator& rho_xy, int x) {
  require_bipartite(rho_xy, x, "cond_h_min");
  if (rho_xy.dim() > 16) throw InvalidArgument("cond_h_min: total dimension must be <= 16");

  const int dx = rho_xy.dims()[x];
  const int dy = rho_xy.dims()[1 - x];
  const int n = rho_xy.dim();
  const CMatrix& rho = rho_xy.matrix();

  const auto basis = hermitian_basis(dy);
  const int k = static_cast<int>(basis.size());
  std::vector<CMatrix> lifted;
  Eigen::VectorXd trace_of(k);
  for (int a = 0; a < k; ++a) {
    lifted.push_back(lift(basis[a], dx, x));
    trace_of[a] = basis[a].trace().real();
  }

  auto assemble = [&](const Eigen::VectorXd& y) {
    CMatrix sigma = CMatrix::Zero(dy, dy);
    for (int a = 0; a < k; ++a) sigma += y[a] * basis[a];
    return sigma;
  };
  // Barrier value t tr σ - log det(1⊗σ - ρ); +inf outside the interior.
  auto barrier = [&](const Eigen::VectorXd& y, double t) {
    const CMatrix slack = lift(assemble(y), dx, x) - rho;
    Eigen::LLT<CMatrix> llt(slack);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
    if (!std::isfinite(logdet)) return std::numeric_limits<double>::infinity();
    return t * y.dot(trace_of) - logdet;
  };

  // Start at σ = (||ρ||_∞ + 1) 1, strictly feasible.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  const double start = spectral_norm(rho) + 1.0;
  for (int i = 0; i < dy; ++i) y[i] = start;

  double t = 1.0;
  const double target_gap = 1e-10;
  for (int outer = 0; outer < 60; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      const CMatrix slack = lift(assemble(y), dx, x) - rho;
      const CMatrix inv = slack.inverse();
      std::vector<CMatrix> m(k);
      Eigen::VectorXd grad(k);
      for (int a = 0; a < k; ++a) {
        m[a] = inv * lifted[a];
        grad[a] = t * trace_of[a] - m[a].trace().real();
      }
      Eigen::MatrixXd hess(k, k);
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          hess(a, b) = hess(b, a) = (m[a] * m[b]).trace().real();
        }
      }
      const Eigen::VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!std::isfinite(decrement)) throw SolverFailure("cond_h_min: singular Newton system");
      if (decrement < 1e-12) break;
      const double f0 = barrier(y, t);
      double alpha = 1.0;
      while (alpha > 1e-12) {
        const double f1 = barrier(y + alpha * step, t);
        if (f1 <= f0 - 0.25 * alpha * decrement) break;
        alpha *= 0.5;
      }
      if (alpha <= 1e-12) break;
      y += alpha * step;
    }
    if (n / t < target_gap) break;
    t *= 8.0;
  }

  CondMinEntropyResult out;
  out.sigma = assemble(y);
  out.sigma = (0.5 * (out.sigma + out.sigma.adjoint())).eval();
  out.primal = out.sigma.trace().real();

  const CMatrix slack = lift(out.sigma, dx, x) - rho;
  const double min_slack = eig_hermitian(slack).values.minCoeff();
  if (min_slack < -1e-9) {
    throw SolverFailure("cond_h_min: returned σ violates 1⊗σ >= ρ");
  }

  // Dual certificate: Z = S^{-1}/t rescaled so that tr_X Z = 1_Y exactly;
  // then tr(ρ Z) <= min tr σ.
  CMatrix z = slack.inverse() / t;
  z = (0.5 * (z + z.adjoint())).eval();
  const int keep[] = {1 - x};
  const CMatrix marginal = partial_trace(z, rho_xy.dims(), keep);
  const CMatrix scale = lift(psd_power(marginal, -0.5, 1e-14), dx, x);
  z = scale * z * scale;
  out.dual = (rho * z).trace().real();

  if (!(out.primal - out.dual <= 1e-6)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "cond_h_min: duality gap " << out.primal - out.dual << " above 1e-6";
    throw SolverFailure(msg.str());
  }
  out.value = -std::log2(out.primal);
  return out;
}

double cond_h_min(const DensityOperator& rho_xy, int x) { return cond_h_min_certified(rho_xy, x).value; }

}  // namespace qwork
