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

// Shared fixtures and independent oracles for the test binaries.

#pragma once

#include <cmath>
#include <vector>

#include "qmacro/entropy.hpp"
#include "qmacro/mppp.hpp"
#include "qmacro/random.hpp"

namespace qmacro::testing {

inline Matrix diag(std::initializer_list<double> v) {
  RealVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r[i++] = x;
  return r.cast<cplx>().asDiagonal();
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Matrix pauli_z() { return diag({1, -1}); }
inline Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

/// The two-outcome qubit POVM {2/3|0><0| + 1/3|1><1|, 1/3|0><0| + 2/3|1><1|}.
inline Povm smeared_qubit_povm() {
  return Povm({diag({2.0 / 3.0, 1.0 / 3.0}), diag({1.0 / 3.0, 2.0 / 3.0})});
}

inline Povm x_basis_povm() {
  Matrix h = hadamard();
  return Povm::from_basis(h);
}

inline DensityMatrix plus_state() {
  Vector v(2);
  v << 1, 1;
  return DensityMatrix::pure(v);
}

inline DensityMatrix bell_state() {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0;
  return DensityMatrix::pure(v);
}

/// Binary entropy in bits, direct scalar formula.
inline double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

/// sum_y p_y Pi_y gamma / tr[Pi_y gamma]: a macroscopic state by construction.
inline DensityMatrix macro_state(const InferentialFrame& f, const RealVector& p) {
  Matrix m = Matrix::Zero(f.dim(), f.dim());
  for (std::size_t y = 0; y < f.free_extremes().size(); ++y) m += p[static_cast<Eigen::Index>(y)] * f.free_extremes()[y].matrix();
  return DensityMatrix::normalized(m);
}

/// Exponentiated-gradient descent of D(rho || sum_y p_y s_y) over the
/// probability simplex, with central finite-difference gradients on the full
/// divergence. Independent of any closed form.
inline double simplex_min_divergence(const Matrix& rho, const std::vector<Matrix>& extremes, int iterations = 10000,
                                     double step = 0.1) {
  const auto n = static_cast<Eigen::Index>(extremes.size());
  auto objective = [&](const RealVector& p) {
    Matrix s = Matrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index y = 0; y < n; ++y) s += p[y] * extremes[static_cast<std::size_t>(y)];
    return relative_entropy(rho, s).as_double();
  };
  RealVector p = RealVector::Constant(n, 1.0 / static_cast<double>(n));
  double best = objective(p);
  if (n == 1) return best;
  const double h = 1e-7;
  double prev = best;
  for (int it = 0; it < iterations; ++it) {
    RealVector g(n);
    for (Eigen::Index y = 0; y < n; ++y) {
      RealVector up = p, dn = p;
      up[y] += h;
      dn[y] = std::max(dn[y] - h, 1e-300);
      g[y] = (objective(up) - objective(dn)) / (up[y] - dn[y]);
    }
    RealVector logits = p.array().log() - step * g.array();
    logits.array() -= logits.maxCoeff();
    p = logits.array().exp();
    p /= p.sum();
    const double cur = objective(p);
    best = std::min(best, cur);
    if (std::abs(prev - cur) < 1e-14) break;
    prev = cur;
  }
  return best;
}

/// Direct double-loop partial trace, written independently of the library.
inline Matrix partial_trace_loop(const Matrix& m, int da, int db, bool keep_a) {
  if (keep_a) {
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

}  // namespace qmacro::testing
