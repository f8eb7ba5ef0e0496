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

#include <optional>

#include "qmacro/mppp.hpp"
#include "qmacro/resources.hpp"

namespace qmacro {

/// A frame on A extended by the identity on B, with product prior
/// gamma_A (x) gamma_B.
class LocalFrame {
 public:
  const InferentialFrame& frame_a() const { return frame_a_; }
  int dim_a() const { return frame_a_.dim(); }
  int dim_b() const { return gamma_b_.dim(); }
  const DensityMatrix& gamma_b() const { return gamma_b_; }
  Matrix prior_ab() const { return tensor(frame_a_.prior().matrix(), gamma_b_.matrix()); }
  /// C (x) id_B.
  const Channel& local_cg() const { return local_cg_; }
  /// Delta (x) id_B.
  const Channel& local_rdm() const { return local_rdm_; }

 private:
  friend LocalFrame make_local_frame(const Povm&, const DensityMatrix&, const DensityMatrix&, const Tolerance&);
  LocalFrame(InferentialFrame a, DensityMatrix gb, Channel cg, Channel rdm)
      : frame_a_(std::move(a)), gamma_b_(std::move(gb)), local_cg_(std::move(cg)), local_rdm_(std::move(rdm)) {}

  InferentialFrame frame_a_;
  DensityMatrix gamma_b_;
  Channel local_cg_;
  Channel local_rdm_;
};

LocalFrame make_local_frame(const Povm& p_a, const DensityMatrix& gamma_a, const DensityMatrix& gamma_b,
                            const Tolerance& tol = {});

/// Accepts a joint prior only if it equals the product of its marginals
/// within 1e-9; otherwise NonProductPrior.
LocalFrame make_local_frame(const Povm& p_a, const DensityMatrix& gamma_ab, int dim_a, int dim_b,
                            const Tolerance& tol = {});

inline constexpr double kDivergenceEqualityTol = 1e-7;
inline constexpr double kDiscordZeroTol = 1e-8;

/// The four equivalent local-macroscopicity conditions with a consensus
/// verdict. Condition one is stored in `deficit` as the divergence gap.
MacroReport locally_macro_test(const DensityMatrix& rho_ab, const LocalFrame& l);

struct DiscordReport {
  EntropyValue total_mi;
  EntropyValue measured_mi;
  EntropyValue discord;
  /// Present when the A marginal is invertible.
  std::optional<MacroReport> vanishing;
};

/// omega_XB = (M_P (x) id)(rho_AB), as a block-diagonal matrix on C^|X| (x) C^dB.
Matrix measured_state(const Matrix& rho_ab, const Povm& p_a, int dim_a, int dim_b);

DiscordReport observational_discord(const DensityMatrix& rho_ab, const Povm& p_a, int dim_a, int dim_b);

/// Conditions with prior rho_A: discord = 0, (C (x) id) and (Delta (x) id)
/// fix rho_AB, and block decomposition over Pi_y rho_A. Throws
/// MarginalNotInvertible.
MacroReport discord_vanishing_test(const DensityMatrix& rho_ab, const Povm& p_a, int dim_a, int dim_b);

struct LocalMicroBound {
  EntropyValue bound;          // D(rho || (Delta (x) id) rho)
  double minimizer_value = 0;  // best value reached by the iterative search
  double best_found = 0;       // min(minimizer_value, bound)
  int iterations = 0;
  bool converged = false;
};

struct MinimizerOptions {
  int max_iterations = 10000;
  double step = 0.1;
  double stop_change = 1e-13;
};

/// Upper bound plus an alternating exponentiated-gradient search over
/// sum_y p_y tau_y (x) omega_y. The search never replaces the bound.
LocalMicroBound rel_ent_local_micro_upper(const DensityMatrix& rho_ab, const LocalFrame& l,
                                          const MinimizerOptions& opts = {});

/// Local classes against C (x) id and Delta (x) id; the free-to-free test
/// runs on tau_y (x) w for an informationally complete set of pure w.
ChannelClassification classify_local_channel(const Channel& e, const LocalFrame& l);

}  // namespace qmacro
