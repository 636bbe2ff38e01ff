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

#include "qwork/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qwork/errors.hpp"

namespace qwork {

namespace {

void check_dims(const Dims& dims, Eigen::Index size, const char* what) {
  if (dims.empty()) throw InvalidArgument(std::string(what) + ": empty subsystem list");
  for (int d : dims) {
    if (d <= 0) throw InvalidArgument(std::string(what) + ": subsystem dimension must be positive");
  }
  if (total_dim(dims) != size) {
    std::ostringstream msg;
    msg << what << ": subsystem dimensions multiply to " << total_dim(dims) << " but size is "
        << size;
    throw InvalidArgument(msg.str());
  }
}

// Mixed-radix digits of a flat index, most significant subsystem first.
void unflatten(int index, const Dims& dims, std::vector<int>& digits) {
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    digits[s] = index % dims[s];
    index /= dims[s];
  }
}

}  // namespace

int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

DensityOperator::DensityOperator(CMatrix matrix, Dims subsystem_dims)
    : matrix_(std::move(matrix)), dims_(std::move(subsystem_dims)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("density operator must be square");
  check_dims(dims_, matrix_.rows(), "density operator");
  if (!all_finite(matrix_)) throw InvalidArgument("density operator has non-finite entries");
  if (!is_hermitian(matrix_, kHermitianTolerance)) {
    throw InvalidArgument("density operator is not Hermitian");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "density operator trace is " << trace;
    throw InvalidArgument(msg.str());
  }
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPositivityTolerance) {
    throw InvalidArgument("density operator has a negative eigenvalue");
  }
  matrix_ = herm;
}

DensityOperator::DensityOperator(CMatrix matrix)
    : DensityOperator(matrix, Dims{static_cast<int>(matrix.rows())}) {}

DensityOperator DensityOperator::maximally_mixed(Dims subsystem_dims) {
  const int d = total_dim(subsystem_dims);
  return DensityOperator(identity(d) / static_cast<double>(d), std::move(subsystem_dims));
}

DensityOperator DensityOperator::with_dims(Dims subsystem_dims) const {
  return DensityOperator(matrix_, std::move(subsystem_dims));
}

PureState::PureState(CVector amplitudes, Dims subsystem_dims)
    : vector_(std::move(amplitudes)), dims_(std::move(subsystem_dims)) {
  check_dims(dims_, vector_.size(), "pure state");
  if (std::abs(vector_.norm() - 1.0) > kUnitNormTolerance) {
    throw InvalidArgument("pure state is not normalized");
  }
}

DensityOperator PureState::density() const { return DensityOperator(outer(vector_), dims_); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

CMatrix partial_trace(const CMatrix& op, const Dims& dims, std::span<const int> keep) {
  check_dims(dims, op.rows(), "partial trace");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int s : keep) {
    if (s < 0 || s >= n) throw InvalidArgument("partial trace: subsystem index out of range");
    if (kept[s]) throw InvalidArgument("partial trace: duplicate subsystem index");
    kept[s] = true;
  }
  const auto n_kept = std::count(kept.begin(), kept.end(), true);
  if (n_kept == 0 || n_kept == n) {
    throw InvalidArgument("partial trace: keep must be a nonempty proper subset");
  }

  int out_dim = 1;
  for (int s = 0; s < n; ++s) {
    if (kept[s]) out_dim *= dims[s];
  }
  const int full = static_cast<int>(op.rows());

  // Split each flat index into (kept index, traced index).
  std::vector<int> kept_index(full), traced_index(full);
  std::vector<int> digits(n);
  for (int i = 0; i < full; ++i) {
    unflatten(i, dims, digits);
    int k = 0, t = 0;
    for (int s = 0; s < n; ++s) {
      if (kept[s]) {
        k = k * dims[s] + digits[s];
      } else {
        t = t * dims[s] + digits[s];
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (int i = 0; i < full; ++i) {
    for (int j = 0; j < full; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += op(i, j);
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  CMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  Dims dims;
  for (int s : sorted) dims.push_back(rho.dims()[s]);
  return DensityOperator(std::move(reduced), std::move(dims));
}

EigenDecomposition eig_hermitian(const CMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("eig_hermitian: matrix is not square");
  if (!all_finite(h)) throw InvalidArgument("eig_hermitian: non-finite entries");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, kHermitianTolerance * scale)) {
    throw InvalidArgument("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
  const RVector& ascending = solver.eigenvalues();
  const auto n = ascending.size();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ascending[a] > ascending[b]; });

  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = ascending[order[i]];
    CVector v = solver.eigenvectors().col(order[i]);
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < n; ++c) {
      if (std::abs(v[c]) >= peak - 1e-12) {
        v *= std::conj(v[c]) / std::abs(v[c]);
        v[c] = std::abs(v[c]);
        break;
      }
    }
    out.vectors.col(i) = v;
  }
  return out;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()[0];
}

CMatrix support_projector(const CMatrix& psd, double tol) {
  const auto eig = eig_hermitian(psd);
  const double cutoff = tol * std::max(eig.values[0], 0.0);
  CMatrix proj = CMatrix::Zero(psd.rows(), psd.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] > cutoff) {
      const CVector v = eig.vectors.col(i);
      proj += v * v.adjoint();
    }
  }
  return proj;
}

CMatrix support_projector(const DensityOperator& rho, double tol) {
  return support_projector(rho.matrix(), tol);
}

int support_rank(const CMatrix& psd, double tol) {
  const auto eig = eig_hermitian(psd);
  const double cutoff = tol * std::max(eig.values[0], 0.0);
  return static_cast<int>((eig.values.array() > cutoff).count());
}

RVector spectrum(const DensityOperator& rho) {
  return eig_hermitian(rho.matrix()).values.cwiseMax(0.0);
}

PureState purify(const DensityOperator& rho) {
  const auto eig = eig_hermitian(rho.matrix());
  const double cutoff = kSupportTolerance * eig.values[0];
  int rank = 0;
  while (rank < eig.values.size() && eig.values[rank] > cutoff) ++rank;

  const int dx = rho.dim();
  CVector psi = CVector::Zero(dx * rank);
  for (int i = 0; i < rank; ++i) {
    const double weight = std::sqrt(eig.values[i]);
    for (int x = 0; x < dx; ++x) psi[x * rank + i] = weight * eig.vectors(x, i);
  }
  // Dropping sub-tolerance eigenvalues loses at most rank * tol of norm.
  psi.normalize();

  Dims dims = rho.dims();
  dims.push_back(rank);
  return PureState(std::move(psi), std::move(dims));
}

CMatrix psd_power(const CMatrix& h, double p, double tol) {
  const auto eig = eig_hermitian(h);
  const double cutoff = tol * std::max(eig.values[0], 0.0);
  CMatrix out = CMatrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] > cutoff) {
      const CVector v = eig.vectors.col(i);
      out += std::pow(eig.values[i], p) * (v * v.adjoint());
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(static_cast<int>(u.rows()))).cwiseAbs().maxCoeff() <= tol;
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix sigma_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix sigma_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CVector basis_ket(int dim, int index) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis_ket: index out of range");
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

CMatrix outer(const CVector& ket) { return ket * ket.adjoint(); }

}  // namespace qwork
