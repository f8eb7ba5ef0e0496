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

// Seeded generators for states, POVMs, channels and frames. All draws go
// through one std::mt19937_64, so a seed fixes every output.

#pragma once

#include <random>
#include <vector>

#include "qmacro/quantum.hpp"

namespace qmacro {

using Rng = std::mt19937_64;

Matrix random_ginibre(int rows, int cols, Rng& rng);
Matrix random_unitary(int d, Rng& rng);
Matrix random_hermitian(int d, Rng& rng);

/// Full-rank state from a Ginibre matrix; `rank` < d gives a low-rank state.
DensityMatrix random_state(int d, Rng& rng, int rank = -1);
Vector random_pure_vector(int d, Rng& rng);

/// Uniform point on the probability simplex.
RealVector random_probability(int n, Rng& rng);

/// Generic POVM with n elements: S^{-1/2} W_x S^{-1/2} for Ginibre W_x.
Povm random_povm(int d, int n, Rng& rng);

/// Channel with `kraus` Kraus operators (default d_in * d_out).
Channel random_channel(int d_in, int d_out, Rng& rng, int kraus = -1);

struct FrameSample {
  Povm povm;
  DensityMatrix prior;
  /// Number of gamma-commuting blocks the sample was built from.
  int planted_blocks;
};

/// Random (POVM, prior) pair with planted block structure: a random PVM
/// {Q_j}, a full-rank prior block diagonal in it, and each Q_j split into
/// one or more POVM elements. Some samples use a fully generic POVM.
/// The total number of outcomes never exceeds max_outcomes (>= d).
FrameSample random_frame(int d, int max_outcomes, Rng& rng);

}  // namespace qmacro
