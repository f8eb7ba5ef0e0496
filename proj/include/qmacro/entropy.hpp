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

// Entropic quantities, all in bits.

#pragma once

#include <limits>

#include "qmacro/quantum.hpp"

namespace qmacro {

struct EntropyValue {
  double value = 0.0;
  bool finite = true;

  static EntropyValue infinite() { return {std::numeric_limits<double>::infinity(), false}; }
  /// value if finite, +inf otherwise.
  double as_double() const { return finite ? value : std::numeric_limits<double>::infinity(); }
};

/// Umegaki divergence tr[rho (log rho - log sigma)]. Returns +inf when the
/// support of rho is not contained in that of sigma.
EntropyValue relative_entropy(const Matrix& rho, const Matrix& sigma, const Tolerance& tol = {});
inline EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const Tolerance& tol = {}) {
  return relative_entropy(rho.matrix(), sigma.matrix(), tol);
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho, const Tolerance& tol = {});

/// Shannon entropy of a probability vector, 0 log 0 = 0.
double shannon_entropy(const RealVector& p);

/// Classical divergence sum p log(p / q); +inf if q vanishes where p does not.
EntropyValue classical_relative_entropy(const RealVector& p, const RealVector& q);

/// D(rho || gamma) - D(M_P(rho) || M_P(gamma)). Throws PriorNotInvertible for
/// a singular gamma and IndeterminateDifference if both terms are infinite.
EntropyValue observational_deficit(const DensityMatrix& rho, const DensityMatrix& gamma,
                                   const Povm& p, const Tolerance& tol = {});

/// -sum_x p_x log(p_x / tr P_x) with p_x = tr[P_x rho].
EntropyValue observational_entropy(const DensityMatrix& rho, const Povm& p);

/// D(rho_AB || rho_A (x) rho_B).
EntropyValue mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                                const Tolerance& tol = {});

}  // namespace qmacro
