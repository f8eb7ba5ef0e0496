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

#include "qmacro/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qmacro/error.hpp"

namespace qmacro {

void Tolerance::validate() const {
  if (!(abs_eps > 0.0) || !(rel_eps > 0.0) || !(rank_eps > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "tolerances must be strictly positive");
  }
}

Matrix HermitianEigen::reconstruct() const {
  return vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint();
}

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::NumericalFailure, std::string(what) + ": non-finite entries");
  }
}

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol.abs_eps + tol.rel_eps * m.norm();
}

HermitianEigen hermitian_eig(const Matrix& m, const Tolerance& tol) {
  require_square_finite(m, "hermitian_eig");
  if (!is_hermitian(m, tol)) {
    std::ostringstream os;
    os << "||M - M^dag|| = " << (m - m.adjoint()).norm() << " exceeds tolerance";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_function(const Matrix& m, SpectralFunction fn, double exponent, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eig(m, tol);
  const double lmax = std::max(eig.values.maxCoeff(), 0.0);
  const double lmin = eig.values.minCoeff();
  const double cutoff = tol.rank_eps * lmax;
  if (lmin < -std::max(cutoff, tol.abs_eps)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << lmin << " below -rank_eps * lambda_max";
    throw Error(ErrorKind::NotPSD, os.str());
  }

  RealVector f(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double l = eig.values[i];
    const bool on_support = l > cutoff && l > 0.0;
    switch (fn) {
      case SpectralFunction::Log2:
        f[i] = on_support ? std::log2(l) : 0.0;
        break;
      case SpectralFunction::Sqrt:
        f[i] = std::sqrt(std::max(l, 0.0));
        break;
      case SpectralFunction::InvSqrtOnSupport:
        f[i] = on_support ? 1.0 / std::sqrt(l) : 0.0;
        break;
      case SpectralFunction::Pow:
        if (exponent > 0.0) {
          f[i] = std::pow(std::max(l, 0.0), exponent);
        } else {
          f[i] = on_support ? std::pow(l, exponent) : 0.0;
        }
        break;
    }
  }
  return eig.vectors * f.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: matrix is " << m.rows() << "x" << m.cols() << ", dims (" << dim_a << ", "
       << dim_b << ")";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int ap = 0; ap < dim_a; ++ap)
        for (int b = 0; b < dim_b; ++b) out(a, ap) += m(a * dim_b + b, ap * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

Matrix partial_transpose_b(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch, "partial_transpose_b: dimension mismatch");
  }
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int ap = 0; ap < dim_a; ++ap)
      out.block(a * dim_b, ap * dim_b, dim_b, dim_b) =
          m.block(a * dim_b, ap * dim_b, dim_b, dim_b).transpose();
  return out;
}

Matrix support_projector(const Matrix& m, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eig(m, tol);
  const double lmax = std::max(eig.values.maxCoeff(), 0.0);
  if (eig.values.minCoeff() < -std::max(tol.rank_eps * lmax, tol.abs_eps)) {
    throw Error(ErrorKind::NotPSD, "support_projector: matrix is not PSD");
  }
  const double cutoff = tol.rank_eps * lmax;
  RealVector mask(eig.values.size());
  for (Eigen::Index i = 0; i < mask.size(); ++i) mask[i] = (eig.values[i] > cutoff && eig.values[i] > 0.0) ? 1.0 : 0.0;
  return eig.vectors * mask.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

int numerical_rank(const Matrix& m, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eig(m, tol);
  const double cutoff = tol.rank_eps * std::max(eig.values.maxCoeff(), 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] > cutoff && eig.values[i] > 0.0) ++rank;
  return rank;
}

double relative_min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  const double lmax = solver.eigenvalues().maxCoeff();
  if (lmax <= 0.0) return 0.0;
  return solver.eigenvalues().minCoeff() / lmax;
}

Matrix unitary_evolution(const Matrix& hamiltonian, double t, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eig(hamiltonian, tol);
  Vector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(cplx(0.0, -eig.values[i] * t));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix gibbs_matrix(const Matrix& hamiltonian, double beta, const Tolerance& tol) {
  const HermitianEigen eig = hermitian_eig(hamiltonian, tol);
  // Shift by the ground energy so the exponentials cannot overflow.
  const double e0 = eig.values.minCoeff();
  RealVector w(eig.values.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::exp(-beta * (eig.values[i] - e0));
  w /= w.sum();
  return eig.vectors * w.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: length does not match shape");
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace qmacro
