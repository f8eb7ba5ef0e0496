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

#include "qmacro/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

// -sum lambda log2 lambda over eigenvalues above the support cutoff.
double spectral_entropy(const RealVector& values, const Tolerance& tol) {
  const double cutoff = tol.rank_eps * std::max(values.maxCoeff(), 0.0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double l = values[i];
    if (l > cutoff && l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace

EntropyValue relative_entropy(const Matrix& rho, const Matrix& sigma, const Tolerance& tol) {
  require_square_finite(rho, "relative_entropy");
  require_square_finite(sigma, "relative_entropy");
  if (rho.rows() != sigma.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "relative_entropy: states have different dimensions");
  }
  const HermitianEigen es = hermitian_eig(sigma, tol);
  const double smax = std::max(es.values.maxCoeff(), 0.0);
  const double cutoff = tol.rank_eps * smax;
  const auto d = static_cast<Eigen::Index>(rho.rows());

  // Support test: weight of rho outside supp(sigma).
  RealVector log_s(d);
  RealVector outside(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool in = es.values[i] > cutoff && es.values[i] > 0.0;
    log_s[i] = in ? std::log2(es.values[i]) : 0.0;
    outside[i] = in ? 0.0 : 1.0;
  }
  const Matrix q = es.vectors * outside.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  const double leak = (q * rho * q).norm();
  if (leak > tol.abs_eps + tol.rank_eps * rho.norm()) return EntropyValue::infinite();

  const HermitianEigen er = hermitian_eig(rho, tol);
  const double neg_s = -spectral_entropy(er.values, tol);
  // tr[rho log sigma] in the eigenbasis of sigma.
  const Matrix rho_s = es.vectors.adjoint() * hermitian_part(rho) * es.vectors;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) cross += rho_s(i, i).real() * log_s[i];
  return {neg_s - cross, true};
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho, const Tolerance& tol) {
  return {spectral_entropy(hermitian_eig(rho.matrix(), tol).values, tol), true};
}

double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= p[i] * std::log2(p[i]);
  return s;
}

EntropyValue classical_relative_entropy(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "distributions differ in length");
  double d = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return EntropyValue::infinite();
    d += p[i] * (std::log2(p[i]) - std::log2(q[i]));
  }
  return {d, true};
}

EntropyValue observational_deficit(const DensityMatrix& rho, const DensityMatrix& gamma,
                                   const Povm& p, const Tolerance& tol) {
  if (rho.dim() != gamma.dim() || rho.dim() != p.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "deficit: state, prior and POVM dimensions differ");
  }
  if (!gamma.is_invertible(tol)) throw Error(ErrorKind::PriorNotInvertible, "prior is singular");
  const EntropyValue full = relative_entropy(rho, gamma, tol);
  const EntropyValue measured = classical_relative_entropy(outcome_distribution(p, rho.matrix()),
                                                           outcome_distribution(p, gamma.matrix()));
  if (!full.finite && !measured.finite) {
    throw Error(ErrorKind::IndeterminateDifference, "both divergences are infinite");
  }
  if (!full.finite) return EntropyValue::infinite();
  if (!measured.finite) {
    // Unreachable: DPI forbids a finite full divergence with an infinite
    // measured one.
    throw Error(ErrorKind::TheoremViolation, "measured divergence infinite while full divergence is finite");
  }
  return {full.value - measured.value, true};
}

EntropyValue observational_entropy(const DensityMatrix& rho, const Povm& p) {
  if (rho.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "state and POVM dimensions differ");
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const double px = (p.element(x) * rho.matrix()).trace().real();
    const double vx = p.element(x).trace().real();
    if (px > 0.0) s -= px * std::log2(px / vx);
  }
  return {s, true};
}

EntropyValue mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b, const Tolerance& tol) {
  if (rho_ab.dim() != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch, "state dimension does not factor as dA * dB");
  }
  const Matrix ra = partial_trace(rho_ab.matrix(), dim_a, dim_b, Subsystem::A);
  const Matrix rb = partial_trace(rho_ab.matrix(), dim_a, dim_b, Subsystem::B);
  return relative_entropy(rho_ab.matrix(), tensor(ra, rb), tol);
}

}  // namespace qmacro
