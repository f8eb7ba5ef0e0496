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

#pragma once

#include <utility>
#include <vector>

#include "qmacro/quantum.hpp"

namespace qmacro {

/// Petz recovery R(X) = g^{1/2} E*[E(g)^{-1/2} X E(g)^{-1/2}] g^{1/2},
/// assembled directly from the superoperator of E.
/// Throws PriorNotInvertible / ImageNotInvertible.
Channel petz_map(const Channel& e, const DensityMatrix& gamma, const Tolerance& tol = {});

/// Petz recovery of the measurement channel of `p`, built from the Kraus
/// family g^{1/2} P_x^{1/2} |j><x| / sqrt(tr[P_x g]). Kept separate from
/// petz_map so the two constructions can be compared.
Channel petz_map_measurement_kraus(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol = {});

/// Measure-and-prepare channel rho -> sum_x tr[P_x rho] sigma_x with
/// sigma_x = g^{1/2} P_x g^{1/2} / tr[P_x g].
struct CoarseGrainingMap {
  Channel channel;
  Povm povm;
  DensityMatrix prior;
  std::vector<DensityMatrix> prepared;
};

/// Builds the closed form and checks it against petz_map composed with the
/// measurement channel (within 1e-9) and against C(gamma) = gamma.
CoarseGrainingMap coarse_graining_map(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol = {});

DensityMatrix coarse_grain(const DensityMatrix& rho, const CoarseGrainingMap& c);

/// C*(Q) as a POVM together with q(x, y) = tr[Q_y sigma_x]; rows of q are
/// renormalized to absorb the input POVM's own normalization slack.
std::pair<Povm, StochasticMap> adjoint_coarse_grain_povm(const CoarseGrainingMap& c, const Povm& q,
                                                         const Tolerance& tol = {});

/// (1/n) sum_{k=1..n} E^k by repeated superoperator multiplication.
Channel cesaro_average(const Channel& e, int n);

}  // namespace qmacro
