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

#include <functional>
#include <string>
#include <vector>

#include "qmacro/numerics.hpp"

namespace qmacro {

/// Hermitian, PSD (eigenvalues >= -rank_eps), unit-trace operator.
class DensityMatrix {
 public:
  /// Validates and stores the Hermitian part of `m`.
  explicit DensityMatrix(const Matrix& m, const Tolerance& tol = {});

  /// Divides by the trace first; the trace must be positive.
  static DensityMatrix normalized(const Matrix& m, const Tolerance& tol = {});
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix diagonal(const std::vector<double>& probs);

  const Matrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  /// True when every eigenvalue exceeds rank_eps * lambda_max.
  bool is_invertible(const Tolerance& tol = {}) const;

 private:
  Matrix mat_;
};

/// A family of PSD operators summing to the identity, indexed by an ordered
/// label list. Elements with Frobenius norm <= rank_eps are dropped at
/// construction and remembered in pruned_labels().
class Povm {
 public:
  Povm(std::vector<std::string> labels, std::vector<Matrix> elements, const Tolerance& tol = {});
  /// Labels default to "0", "1", ...
  explicit Povm(std::vector<Matrix> elements, const Tolerance& tol = {});

  /// Rank-one PVM in the computational basis of C^d.
  static Povm computational_basis(int dim);
  /// Rank-one PVM onto the columns of a unitary.
  static Povm from_basis(const Matrix& unitary);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& element(std::size_t x) const { return elements_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& pruned_labels() const { return pruned_; }

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Matrix> elements_;
  std::vector<std::string> pruned_;
};

/// Row-stochastic matrix p(y|x): rows indexed by x, columns by y.
class StochasticMap {
 public:
  explicit StochasticMap(RealMatrix p);

  static StochasticMap identity(int n);
  /// Deterministic map sending x to blocks[y] membership.
  static StochasticMap from_partition(const std::vector<std::vector<std::size_t>>& blocks,
                                      std::size_t n_inputs);

  const RealMatrix& matrix() const { return p_; }
  int inputs() const { return static_cast<int>(p_.rows()); }
  int outputs() const { return static_cast<int>(p_.cols()); }
  double operator()(int x, int y) const { return p_(x, y); }

  /// this followed by next: (T1 * T2)(x, z) = sum_y T1(x, y) T2(y, z).
  StochasticMap then(const StochasticMap& next) const;

 private:
  RealMatrix p_;
};

/// A linear map L(C^dim_in) -> L(C^dim_out) held as its superoperator in
/// the column-stacking convention: vec(E(X)) = superop * vec(X), so superop
/// is dim_out^2 x dim_in^2. No positivity or trace constraint is imposed.
class LinearMap {
 public:
  LinearMap(int dim_in, int dim_out, Matrix superop);

  /// Builds the superoperator from the action on matrix units |i><j|.
  static LinearMap from_action(int dim_in, int dim_out,
                               const std::function<Matrix(int, int)>& on_unit);
  static LinearMap from_kraus(const std::vector<Matrix>& kraus);
  /// Choi matrix J = sum_ij |i><j| (x) E(|i><j|), input factor first.
  static LinearMap from_choi(int dim_in, int dim_out, const Matrix& choi);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const Matrix& superop() const { return superop_; }
  Matrix choi() const;

  Matrix apply(const Matrix& x) const;
  /// Apply through the Choi matrix: Tr_in[(X^T (x) 1) J]. Independent of the
  /// superoperator route; used for cross-checks.
  Matrix apply_via_choi(const Matrix& x) const;

  /// Adjoint with respect to the Hilbert-Schmidt inner product.
  LinearMap adjoint() const;

 private:
  int dim_in_;
  int dim_out_;
  Matrix superop_;
};

/// Completely positive trace-preserving map. Stores both the superoperator
/// and the Choi matrix; CP (min Choi eigenvalue >= -1e-8), TP (partial trace
/// error <= 1e-8) and Choi/superoperator consistency are checked eagerly.
class Channel {
 public:
  explicit Channel(LinearMap map);

  static Channel identity(int dim);
  static Channel unitary(const Matrix& u);
  static Channel from_kraus(const std::vector<Matrix>& kraus);
  static Channel from_choi(int dim_in, int dim_out, const Matrix& choi);

  int dim_in() const { return map_.dim_in(); }
  int dim_out() const { return map_.dim_out(); }
  const Matrix& superop() const { return map_.superop(); }
  const Matrix& choi() const { return choi_; }
  const LinearMap& map() const { return map_; }

  /// Raw linear action, no clamping.
  Matrix apply(const Matrix& x) const { return map_.apply(x); }

 private:
  LinearMap map_;
  Matrix choi_;
};

inline constexpr double kChannelCpTol = 1e-8;
inline constexpr double kChannelTpTol = 1e-8;
inline constexpr double kClampTol = 1e-8;

/// Output is clamped: eigenvalues in [-1e-8, 0) are zeroed and the trace
/// renormalized; anything more negative throws NotPSD.
DensityMatrix apply_channel(const Channel& e, const DensityMatrix& rho);

/// Quantum-classical channel rho -> sum_x tr[P_x rho] |x><x|.
Channel measurement_channel(const Povm& p);

/// Diagonal of the outcome distribution tr[P_x rho].
RealVector outcome_distribution(const Povm& p, const Matrix& rho);

/// True when off-diagonal entries are within abs_eps.
bool is_classical(const Matrix& m, const Tolerance& tol = {});

/// Hilbert-Schmidt adjoint; for a channel the result is CP and unital.
LinearMap adjoint_channel(const Channel& e);

/// Q_y = sum_x T(x, y) P_x.
Povm post_process(const Povm& p, const StochasticMap& t, const Tolerance& tol = {});

bool is_pvm(const Povm& p, const Tolerance& tol = {});

/// Requires post_process(P, T) == Q and Q a PVM (else PreconditionViolated);
/// returns whether every entry of T is within 1e-9 of 0 or 1.
bool check_deterministic_postprocessing(const Povm& p, const Povm& q, const StochasticMap& t,
                                        const Tolerance& tol = {});

/// E2 after E1.
Channel channel_compose(const Channel& e2, const Channel& e1);
LinearMap map_compose(const LinearMap& e2, const LinearMap& e1);

/// E (x) id_B acting on C^dA (x) C^dB.
Channel channel_tensor_identity(const Channel& e, int dim_b);
/// E_A (x) E_B.
Channel channel_tensor(const Channel& a, const Channel& b);

/// Sup-norm style distance used across modules: Frobenius norm of the
/// difference of superoperators.
double superop_distance(const LinearMap& a, const LinearMap& b);

}  // namespace qmacro
