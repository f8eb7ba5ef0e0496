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

// Resource theory of microscopicity: free states are the fixed points of the
// resource-destroying map, and channels are graded by how they interact
// with the coarse-graining map and with that map.

#pragma once

#include <vector>

#include "qmacro/mppp.hpp"

namespace qmacro {

inline constexpr double kCommutationTol = 1e-7;

struct FreeStateSet {
  std::vector<DensityMatrix> extreme_points;
  Channel rdm;
};

/// Extreme points Pi_y gamma / tr[Pi_y gamma]; checks pairwise
/// orthogonality and that each is fixed by the RDM.
FreeStateSet free_state_set(const InferentialFrame& frame);

/// ||Delta(rho) - rho|| <= 1e-6 * max(1, ||rho||).
bool is_free_state(const DensityMatrix& rho, const InferentialFrame& frame);

/// D(rho || Delta(rho)).
EntropyValue rel_ent_microscopicity(const DensityMatrix& rho, const InferentialFrame& frame);

struct ChannelClassification {
  bool is_cco = false;
  bool is_rco = false;
  bool is_mno = false;
  double cco_residual = 0.0;  // ||E C - C E||_F on superoperators
  double rco_residual = 0.0;  // ||E D - D E||_F
  double mno_residual = 0.0;  // max over probes of ||D(E s) - E s||_F
};

/// Classification against an arbitrary (coarse-graining, RDM) pair. MNO is
/// decided on `probes`, which must span the free set. Throws
/// TheoremViolation if cco => rco => mno fails.
ChannelClassification classify_against(const LinearMap& e, const LinearMap& cg, const LinearMap& rdm,
                                       const std::vector<Matrix>& probes);

ChannelClassification classify_channel(const Channel& e, const InferentialFrame& frame);

/// Measure-and-prepare channel tr[. phi] s_1 + tr[. (1 - phi)] s_2 with
/// phi = |v1 + v2><v1 + v2| / 2, v_i unit vectors in the ranges of Pi_1 and
/// Pi_2, and s_i the normalized extreme free states. Free-to-free but not
/// RDM-covariant. Needs |Y| >= 2.
Channel mno_not_rco_witness(const InferentialFrame& frame);

/// Basis PVM with uniform prior on C^d; checks Delta equals the pinching.
InferentialFrame scenario_coherence(int d);

/// Gibbs prior exp(-beta H)/Z with a POVM whose MPPP must be trivial
/// (else MpppNotTrivial); checks Delta = Tr[.] gamma.
InferentialFrame scenario_athermality(const Matrix& hamiltonian, double beta, const Povm& p);

/// G-twirl (1/|G|) sum_g U_g . U_g^dag as a superoperator.
LinearMap twirl(const std::vector<Matrix>& rep);

/// Frame whose RDM is the twirl of a multiplicity-free finite-group
/// representation: the MPPP is the set of isotypic projectors and the prior
/// is uniform. Throws NotARepresentation or NontrivialMultiplicity.
InferentialFrame scenario_asymmetry(const std::vector<Matrix>& rep);

}  // namespace qmacro
