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

// Maximal projective post-processing of a (POVM, prior) pair.
//
// Two outcomes are linked when either P_x P_x' or P_x gamma P_x' fails the
// scale-aware zero test. The connected components of that graph are the
// irreducible gamma-disconnected partition, and summing P_x over each block
// gives the finest gamma-commuting PVM coarser than P.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qmacro/entropy.hpp"
#include "qmacro/retrodiction.hpp"

namespace qmacro {

/// Blocks of outcome indices (into Povm::elements()), each sorted, ordered
/// by smallest member.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t size() const { return blocks.size(); }
  /// True when every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;
  bool operator==(const Partition& other) const { return blocks == other.blocks; }
};

struct DisconnectionGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // x < x'
  std::vector<std::vector<bool>> adjacent;
};

DisconnectionGraph disconnection_graph(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol = {});

/// Connected components of `g` in canonical order.
Partition connected_components(const DisconnectionGraph& g);

/// Immutable bundle of everything derived from (P, gamma).
class InferentialFrame {
 public:
  const Povm& povm() const { return povm_; }
  const DensityMatrix& prior() const { return prior_; }
  const Partition& partition() const { return partition_; }
  /// The PVM {Pi_y}.
  const Povm& mppp() const { return mppp_; }
  /// Resource-destroying map sum_y tr[Pi_y .] Pi_y gamma / tr[Pi_y gamma].
  const Channel& rdm() const { return rdm_; }
  const CoarseGrainingMap& cg() const { return cg_; }
  /// Normalized Pi_y gamma, the extreme free states.
  const std::vector<DensityMatrix>& free_extremes() const { return extremes_; }
  const Tolerance& tolerance() const { return tol_; }
  int dim() const { return povm_.dim(); }

 private:
  friend InferentialFrame compute_mppp(const Povm&, const DensityMatrix&, const Tolerance&);
  InferentialFrame(Povm povm, DensityMatrix prior, Partition partition, Povm mppp, Channel rdm,
                   CoarseGrainingMap cg, std::vector<DensityMatrix> extremes, Tolerance tol);

  Povm povm_;
  DensityMatrix prior_;
  Partition partition_;
  Povm mppp_;
  Channel rdm_;
  CoarseGrainingMap cg_;
  std::vector<DensityMatrix> extremes_;
  Tolerance tol_;
};

/// Builds the frame and checks its invariants (PVM, [Pi_y, gamma] = 0,
/// idempotent RDM fixing gamma); a failed invariant raises TheoremViolation.
InferentialFrame compute_mppp(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol = {});

inline constexpr std::size_t kBruteForceMaxOutcomes = 9;

/// Enumerates every set partition of the outcomes, keeps the
/// gamma-disconnected ones and returns the finest. Also checks that every
/// kept partition is a coarsening of it.
Partition brute_force_mppp(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol = {});

/// Every gamma-disconnected partition, in enumeration order.
std::vector<Partition> all_disconnected_partitions(const Povm& p, const DensityMatrix& gamma,
                                                   const Tolerance& tol = {});

inline const Channel& rdm(const InferentialFrame& frame) { return frame.rdm(); }

inline constexpr double kDeficitZeroTol = 1e-8;
inline constexpr double kFixedPointTol = 1e-6;
inline constexpr double kCoefficientFloor = -1e-9;

struct ResidualFlag {
  bool holds = false;
  double residual = 0.0;
};

struct MacroReport {
  EntropyValue deficit;
  bool deficit_zero = false;
  ResidualFlag cg_fixed;
  ResidualFlag rdm_fixed;
  ResidualFlag decomposition;
  /// c_y from condition IV (raw projections, before clamping).
  std::optional<std::vector<double>> coefficients;
  bool verdict = false;
};

/// ||X||_F <= 1e-6 * max(1, ||rho||_F).
bool fixed_point_residual_ok(double residual, const Matrix& rho);

/// Evaluates the four equivalent macroscopicity conditions. Throws
/// TheoremViolation if they disagree.
MacroReport macro_test(const DensityMatrix& rho, const InferentialFrame& frame);

/// Number of superoperator eigenvalues within 1e-6 of 1, after checking that
/// the corresponding eigenvectors are independent fixed points.
int fixed_point_space_dim(const LinearMap& e);
inline int fixed_point_space_dim(const Channel& e) { return fixed_point_space_dim(e.map()); }

}  // namespace qmacro
