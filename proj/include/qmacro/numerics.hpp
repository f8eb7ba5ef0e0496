// Copyright 2026 The qmacro Authors
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

// Dense complex-matrix kernel. Everything downstream (states, POVMs, channels)
// is carried by Eigen::MatrixXcd; dimensions here are small, so spectral
// functions go through a full Hermitian eigendecomposition.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qmacro {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Global tolerance policy.
///
/// `abs_eps` and `rel_eps` drive every "operator == 0" decision:
/// ||X||_F <= abs_eps + rel_eps * scale, where `scale` is the product of the
/// Frobenius norms of the factors that built X. `rank_eps` decides supports and
/// is relative to the largest eigenvalue.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-9;
  double rank_eps = 1e-9;

  /// Throws PreconditionViolated unless all three are strictly positive.
  void validate() const;

  bool is_zero(double norm, double scale) const { return norm <= abs_eps + rel_eps * scale; }
};

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors

  Matrix reconstruct() const;
};

enum class SpectralFunction { Log2, Sqrt, InvSqrtOnSupport, Pow };

/// Checks squareness and finiteness; throws DimensionMismatch / NumericalFailure.
void require_square_finite(const Matrix& m, const char* what);

bool is_hermitian(const Matrix& m, const Tolerance& tol = {});

/// Full eigendecomposition of a Hermitian matrix; throws NotHermitian if
/// ||M - M^dag|| > rel_eps * ||M|| (+ abs_eps).
HermitianEigen hermitian_eig(const Matrix& m, const Tolerance& tol = {});

/// Applies `fn` spectrally to a PSD matrix. Eigenvalues at or below
/// rank_eps * lambda_max are sent to zero for Log2, InvSqrtOnSupport and
/// Pow with a non-positive exponent; Sqrt and positive powers are applied to
/// the clamped spectrum. Throws NotPSD for eigenvalues below -rank_eps * lambda_max.
Matrix matrix_function(const Matrix& m, SpectralFunction fn, double exponent = 1.0,
                       const Tolerance& tol = {});

inline Matrix sqrtm_psd(const Matrix& m, const Tolerance& tol = {}) {
  return matrix_function(m, SpectralFunction::Sqrt, 1.0, tol);
}
inline Matrix inv_sqrtm_on_support(const Matrix& m, const Tolerance& tol = {}) {
  return matrix_function(m, SpectralFunction::InvSqrtOnSupport, 1.0, tol);
}
inline Matrix log2m_on_support(const Matrix& m, const Tolerance& tol = {}) {
  return matrix_function(m, SpectralFunction::Log2, 1.0, tol);
}

/// Kronecker product with index (a, b) -> a * dim(B) + b.
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on C^dA (x) C^dB, keeping `keep`.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);

/// Partial transpose on the B factor (used for PPT checks).
Matrix partial_transpose_b(const Matrix& m, int dim_a, int dim_b);

/// Projector onto eigenvectors with eigenvalue > rank_eps * lambda_max.
Matrix support_projector(const Matrix& m, const Tolerance& tol = {});

/// Number of eigenvalues above rank_eps * lambda_max.
int numerical_rank(const Matrix& m, const Tolerance& tol = {});

/// Smallest eigenvalue relative to the largest; 0 for the zero matrix.
double relative_min_eigenvalue(const Matrix& m);

/// exp(-i H t) for Hermitian H.
Matrix unitary_evolution(const Matrix& hamiltonian, double t, const Tolerance& tol = {});

/// exp(-beta H) / tr exp(-beta H) for Hermitian H.
Matrix gibbs_matrix(const Matrix& hamiltonian, double beta, const Tolerance& tol = {});

/// Column-stacking vectorization: vec(X)[i + j * rows] = X(i, j).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int rows, int cols);

inline Matrix identity(int d) { return Matrix::Identity(d, d); }
inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace qmacro
