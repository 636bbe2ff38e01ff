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

// Dense complex linear algebra for small quantum systems (dimension <= 64)
// and the state types the rest of the library is written against.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qwork {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Ordered subsystem dimensions; their product is the total dimension.
using Dims = std::vector<int>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kUnitNormTolerance = 1e-12;

// Eigenvalues at or below kSupportTolerance * (largest eigenvalue) are treated
// as zero when forming supports, ranks and pseudo-inverses. Every rank-sensitive
// quantity in the library goes through this one constant.
inline constexpr double kSupportTolerance = 1e-10;

// Hermitian, unit-trace, positive semidefinite matrix with a subsystem layout.
class DensityOperator {
 public:
  // Throws InvalidArgument when the matrix is not a valid state or the
  // dimensions do not multiply to the matrix size.
  DensityOperator(CMatrix matrix, Dims subsystem_dims);
  explicit DensityOperator(CMatrix matrix);

  static DensityOperator maximally_mixed(Dims subsystem_dims);

  const CMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

  // Same operator with a different subsystem split.
  DensityOperator with_dims(Dims subsystem_dims) const;

 private:
  CMatrix matrix_;
  Dims dims_;
};

// Unit-norm state vector with a subsystem layout.
class PureState {
 public:
  PureState(CVector amplitudes, Dims subsystem_dims);

  const CVector& vector() const { return vector_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(vector_.size()); }

  DensityOperator density() const;

 private:
  CVector vector_;
  Dims dims_;
};

struct EigenDecomposition {
  RVector values;   // descending
  CMatrix vectors;  // column i belongs to values[i]
};

int total_dim(const Dims& dims);

CMatrix kron(const CMatrix& a, const CMatrix& b);
DensityOperator kron(const DensityOperator& a, const DensityOperator& b);

// Marginal on the subsystems listed in `keep` (any order; the result keeps
// the original subsystem order). `keep` must be a nonempty proper subset.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& op, const Dims& dims, std::span<const int> keep);

// Eigenvalues sorted descending (stable on ties). Each eigenvector is scaled
// so that its largest-magnitude component (first one on ties) is real positive.
EigenDecomposition eig_hermitian(const CMatrix& h);

// Largest singular value.
double spectral_norm(const CMatrix& a);

// Orthogonal projector onto eigenvectors with eigenvalue > tol * max eigenvalue.
CMatrix support_projector(const CMatrix& psd, double tol = kSupportTolerance);
CMatrix support_projector(const DensityOperator& rho, double tol = kSupportTolerance);
int support_rank(const CMatrix& psd, double tol = kSupportTolerance);

// Eigenvalues of rho clipped to [0, inf), descending.
RVector spectrum(const DensityOperator& rho);

// Σ_i √p_i |v_i⟩_X |i⟩_R over the support, with p_i descending; dim R = rank.
PureState purify(const DensityOperator& rho);

// h^p on the support of a PSD matrix, zero elsewhere (p may be negative).
CMatrix psd_power(const CMatrix& h, double p, double tol = kSupportTolerance);

bool is_hermitian(const CMatrix& a, double tol = kHermitianTolerance);
bool is_unitary(const CMatrix& u, double tol = 1e-9);
bool all_finite(const CMatrix& a);

CMatrix identity(int dim);
CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();
CVector basis_ket(int dim, int index);
CMatrix outer(const CVector& ket);

}  // namespace qwork
