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

#include "qmacro/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPovmSumTol = 1e-9;
constexpr double kStochasticTol = 1e-12;
constexpr double kDeterministicTol = 1e-9;

Matrix unit(int rows, int cols, int i, int j) {
  Matrix m = Matrix::Zero(rows, cols);
  m(i, j) = 1.0;
  return m;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- states

DensityMatrix::DensityMatrix(const Matrix& m, const Tolerance& tol) {
  require_square_finite(m, "DensityMatrix");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
  }
  mat_ = hermitian_part(m);
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::InvalidState, "trace is " + fmt_double(tr) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
  const double lmin = solver.eigenvalues().minCoeff();
  if (lmin < -tol.rank_eps) {
    throw Error(ErrorKind::NotPSD, "density matrix has eigenvalue " + fmt_double(lmin));
  }
}

DensityMatrix DensityMatrix::normalized(const Matrix& m, const Tolerance& tol) {
  require_square_finite(m, "DensityMatrix::normalized");
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw Error(ErrorKind::InvalidState, "cannot normalize: trace is not positive");
  return DensityMatrix(m / tr, tol);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidState, "zero state vector");
  const Vector v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  RealVector p = Eigen::Map<const RealVector>(probs.data(), static_cast<Eigen::Index>(probs.size()));
  return DensityMatrix(p.cast<cplx>().asDiagonal().toDenseMatrix());
}

bool DensityMatrix::is_invertible(const Tolerance& tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
  const double lmax = solver.eigenvalues().maxCoeff();
  return solver.eigenvalues().minCoeff() > tol.rank_eps * lmax;
}

// ---------------------------------------------------------------- POVMs

Povm::Povm(std::vector<std::string> labels, std::vector<Matrix> elements, const Tolerance& tol) {
  if (elements.empty()) throw Error(ErrorKind::InvalidPovm, "POVM has no elements");
  if (labels.size() != elements.size()) {
    throw Error(ErrorKind::InvalidPovm, "label count does not match element count");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw Error(ErrorKind::InvalidPovm, "duplicate label '" + l + "'");
  }
  dim_ = static_cast<int>(elements.front().rows());
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (std::size_t x = 0; x < elements.size(); ++x) {
    const Matrix& e = elements[x];
    require_square_finite(e, "POVM element");
    if (e.rows() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "POVM element '" + labels[x] + "' has wrong dimension");
    }
    if (!is_hermitian(e, tol)) {
      throw Error(ErrorKind::InvalidPovm, "element '" + labels[x] + "' is not Hermitian");
    }
    const Matrix h = hermitian_part(e);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -std::max(tol.rank_eps, tol.abs_eps)) {
      throw Error(ErrorKind::InvalidPovm, "element '" + labels[x] + "' is not PSD (eigenvalue " +
                                              fmt_double(solver.eigenvalues().minCoeff()) + ")");
    }
    sum += h;
    if (h.norm() <= tol.rank_eps) {
      pruned_.push_back(labels[x]);
      continue;
    }
    labels_.push_back(labels[x]);
    elements_.push_back(h);
  }
  const double err = (sum - identity(dim_)).cwiseAbs().maxCoeff();
  if (err > kPovmSumTol) {
    throw Error(ErrorKind::InvalidPovm, "elements sum to identity only within " + fmt_double(err));
  }
  if (elements_.empty()) throw Error(ErrorKind::InvalidPovm, "all elements are zero");
}

namespace {
std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}
}  // namespace

Povm::Povm(std::vector<Matrix> elements, const Tolerance& tol)
    : Povm(default_labels(elements.size()), elements, tol) {}

Povm Povm::computational_basis(int dim) {
  return from_basis(identity(dim));
}

Povm Povm::from_basis(const Matrix& unitary) {
  std::vector<Matrix> els;
  for (Eigen::Index k = 0; k < unitary.cols(); ++k) {
    els.push_back(unitary.col(k) * unitary.col(k).adjoint());
  }
  return Povm(std::move(els));
}

// ---------------------------------------------------------------- stochastic maps

StochasticMap::StochasticMap(RealMatrix p) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.cols() == 0) {
    throw Error(ErrorKind::InvalidStochasticMap, "empty stochastic matrix");
  }
  if (!p_.allFinite()) throw Error(ErrorKind::InvalidStochasticMap, "non-finite entries");
  if (p_.minCoeff() < -kStochasticTol || p_.maxCoeff() > 1.0 + kStochasticTol) {
    throw Error(ErrorKind::InvalidStochasticMap, "entries must lie in [0, 1]");
  }
  for (Eigen::Index x = 0; x < p_.rows(); ++x) {
    const double s = p_.row(x).sum();
    if (std::abs(s - 1.0) > kStochasticTol) {
      throw Error(ErrorKind::InvalidStochasticMap,
                  "row " + std::to_string(x) + " sums to " + fmt_double(s));
    }
  }
}

StochasticMap StochasticMap::identity(int n) {
  return StochasticMap(RealMatrix::Identity(n, n));
}

StochasticMap StochasticMap::from_partition(const std::vector<std::vector<std::size_t>>& blocks,
                                            std::size_t n_inputs) {
  RealMatrix t = RealMatrix::Zero(static_cast<Eigen::Index>(n_inputs),
                                  static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t y = 0; y < blocks.size(); ++y) {
    for (std::size_t x : blocks[y]) {
      if (x >= n_inputs) throw Error(ErrorKind::InvalidStochasticMap, "partition index out of range");
      t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = 1.0;
    }
  }
  return StochasticMap(std::move(t));
}

StochasticMap StochasticMap::then(const StochasticMap& next) const {
  if (outputs() != next.inputs()) {
    throw Error(ErrorKind::DimensionMismatch, "stochastic maps cannot be composed");
  }
  return StochasticMap(p_ * next.p_);
}

// ---------------------------------------------------------------- linear maps

LinearMap::LinearMap(int dim_in, int dim_out, Matrix superop)
    : dim_in_(dim_in), dim_out_(dim_out), superop_(std::move(superop)) {
  if (dim_in <= 0 || dim_out <= 0 || superop_.rows() != dim_out * dim_out ||
      superop_.cols() != dim_in * dim_in) {
    throw Error(ErrorKind::DimensionMismatch, "superoperator shape does not match dimensions");
  }
  if (!superop_.allFinite()) throw Error(ErrorKind::NumericalFailure, "non-finite superoperator");
}

LinearMap LinearMap::from_action(int dim_in, int dim_out,
                                 const std::function<Matrix(int, int)>& on_unit) {
  Matrix s(dim_out * dim_out, dim_in * dim_in);
  for (int j = 0; j < dim_in; ++j) {
    for (int i = 0; i < dim_in; ++i) {
      const Matrix img = on_unit(i, j);
      if (img.rows() != dim_out || img.cols() != dim_out) {
        throw Error(ErrorKind::DimensionMismatch, "action returned a matrix of the wrong shape");
      }
      s.col(i + j * dim_in) = vec(img);
    }
  }
  return LinearMap(dim_in, dim_out, std::move(s));
}

LinearMap LinearMap::from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw Error(ErrorKind::InvalidChannel, "empty Kraus family");
  const auto dout = static_cast<int>(kraus.front().rows());
  const auto din = static_cast<int>(kraus.front().cols());
  Matrix s = Matrix::Zero(dout * dout, din * din);
  for (const Matrix& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators have inconsistent shapes");
    }
    s += tensor(k.conjugate(), k);
  }
  return LinearMap(din, dout, std::move(s));
}

LinearMap LinearMap::from_choi(int dim_in, int dim_out, const Matrix& choi) {
  if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out) {
    throw Error(ErrorKind::DimensionMismatch, "Choi matrix shape does not match dimensions");
  }
  return from_action(dim_in, dim_out, [&](int i, int j) -> Matrix {
    return choi.block(i * dim_out, j * dim_out, dim_out, dim_out);
  });
}

Matrix LinearMap::choi() const {
  Matrix j(dim_in_ * dim_out_, dim_in_ * dim_out_);
  for (int c = 0; c < dim_in_; ++c) {
    for (int r = 0; r < dim_in_; ++r) {
      j.block(r * dim_out_, c * dim_out_, dim_out_, dim_out_) =
          unvec(superop_.col(r + c * dim_in_), dim_out_, dim_out_);
    }
  }
  return j;
}

Matrix LinearMap::apply(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    std::ostringstream os;
    os << "map expects " << dim_in_ << "x" << dim_in_ << " input, got " << x.rows() << "x" << x.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  return unvec(superop_ * vec(x), dim_out_, dim_out_);
}

Matrix LinearMap::apply_via_choi(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw Error(ErrorKind::DimensionMismatch, "input dimension does not match map");
  }
  const Matrix j = choi();
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (int r = 0; r < dim_in_; ++r)
    for (int c = 0; c < dim_in_; ++c)
      out += x(r, c) * j.block(r * dim_out_, c * dim_out_, dim_out_, dim_out_);
  return out;
}

LinearMap LinearMap::adjoint() const {
  return LinearMap(dim_out_, dim_in_, superop_.adjoint());
}

// ---------------------------------------------------------------- channels

Channel::Channel(LinearMap map) : map_(std::move(map)), choi_(map_.choi()) {
  const int din = map_.dim_in();
  const int dout = map_.dim_out();
  if (!is_hermitian(choi_, Tolerance{1e-9, 1e-8, 1e-9})) {
    throw Error(ErrorKind::InvalidChannel, "Choi matrix is not Hermitian (map is not Hermiticity preserving)");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(choi_), Eigen::EigenvaluesOnly);
  const double lmin = solver.eigenvalues().minCoeff();
  if (lmin < -kChannelCpTol) {
    throw Error(ErrorKind::InvalidChannel, "not completely positive: Choi eigenvalue " + fmt_double(lmin));
  }
  const double tp_err = (partial_trace(choi_, din, dout, Subsystem::A) - qmacro::identity(din)).norm();
  if (tp_err > kChannelTpTol) {
    throw Error(ErrorKind::InvalidChannel, "not trace preserving: error " + fmt_double(tp_err));
  }
  // Representation consistency on matrix units.
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      const Matrix from_super = map_.apply(unit(din, din, i, j));
      const Matrix from_choi = choi_.block(i * dout, j * dout, dout, dout);
      if ((from_super - from_choi).norm() > 1e-9) {
        throw Error(ErrorKind::InvalidChannel, "Choi and superoperator representations disagree");
      }
    }
  }
}

Channel Channel::identity(int dim) {
  return Channel(LinearMap(dim, dim, Matrix::Identity(dim * dim, dim * dim)));
}

Channel Channel::unitary(const Matrix& u) {
  require_square_finite(u, "unitary");
  if ((u.adjoint() * u - qmacro::identity(static_cast<int>(u.rows()))).norm() > 1e-9) {
    throw Error(ErrorKind::InvalidChannel, "matrix is not unitary");
  }
  return Channel(LinearMap::from_kraus({u}));
}

Channel Channel::from_kraus(const std::vector<Matrix>& kraus) {
  return Channel(LinearMap::from_kraus(kraus));
}

Channel Channel::from_choi(int dim_in, int dim_out, const Matrix& choi) {
  return Channel(LinearMap::from_choi(dim_in, dim_out, choi));
}

DensityMatrix apply_channel(const Channel& e, const DensityMatrix& rho) {
  if (rho.dim() != e.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimension does not match channel input");
  }
  const Matrix out = hermitian_part(e.apply(rho.matrix()));
  const HermitianEigen eig = hermitian_eig(out);
  if (eig.values.minCoeff() >= 0.0) return DensityMatrix::normalized(out);
  if (eig.values.minCoeff() < -kClampTol) {
    throw Error(ErrorKind::NotPSD, "channel output has eigenvalue " + fmt_double(eig.values.minCoeff()));
  }
  RealVector clamped = eig.values.cwiseMax(0.0);
  const Matrix fixed = eig.vectors * clamped.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix::normalized(fixed);
}

Channel measurement_channel(const Povm& p) {
  const int d = p.dim();
  const auto n = static_cast<int>(p.size());
  Matrix s = Matrix::Zero(n * n, d * d);
  for (int x = 0; x < n; ++x) s.row(x + x * n) = vec(p.element(x)).adjoint();
  return Channel(LinearMap(d, n, std::move(s)));
}

RealVector outcome_distribution(const Povm& p, const Matrix& rho) {
  RealVector out(static_cast<Eigen::Index>(p.size()));
  for (std::size_t x = 0; x < p.size(); ++x) {
    out[static_cast<Eigen::Index>(x)] = (p.element(x) * rho).trace().real();
  }
  return out;
}

bool is_classical(const Matrix& m, const Tolerance& tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && std::abs(m(i, j)) > tol.abs_eps) return false;
  return true;
}

LinearMap adjoint_channel(const Channel& e) {
  return e.map().adjoint();
}

Povm post_process(const Povm& p, const StochasticMap& t, const Tolerance& tol) {
  if (static_cast<std::size_t>(t.inputs()) != p.size()) {
    throw Error(ErrorKind::InvalidStochasticMap, "stochastic map rows do not match POVM outcomes");
  }
  std::vector<Matrix> q(static_cast<std::size_t>(t.outputs()), Matrix::Zero(p.dim(), p.dim()));
  for (int y = 0; y < t.outputs(); ++y)
    for (int x = 0; x < t.inputs(); ++x) q[y] += t(x, y) * p.element(x);
  return Povm(std::move(q), tol);
}

bool is_pvm(const Povm& p, const Tolerance& tol) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t xp = x; xp < p.size(); ++xp) {
      Matrix prod = p.element(x) * p.element(xp);
      if (x == xp) prod -= p.element(x);
      if (!tol.is_zero(prod.norm(), p.element(x).norm() * p.element(xp).norm())) return false;
    }
  }
  return true;
}

bool check_deterministic_postprocessing(const Povm& p, const Povm& q, const StochasticMap& t,
                                        const Tolerance& tol) {
  if (static_cast<std::size_t>(t.inputs()) != p.size() ||
      static_cast<std::size_t>(t.outputs()) != q.size() || p.dim() != q.dim()) {
    throw Error(ErrorKind::PreconditionViolated, "stochastic map shape does not connect P to Q");
  }
  if (!is_pvm(q, tol)) throw Error(ErrorKind::PreconditionViolated, "target POVM is not projective");
  for (std::size_t y = 0; y < q.size(); ++y) {
    Matrix acc = Matrix::Zero(p.dim(), p.dim());
    for (std::size_t x = 0; x < p.size(); ++x) acc += t(static_cast<int>(x), static_cast<int>(y)) * p.element(x);
    if ((acc - q.element(y)).norm() > 1e-9) {
      throw Error(ErrorKind::PreconditionViolated, "T does not map P onto Q at outcome " + q.labels()[y]);
    }
  }
  const RealMatrix& m = t.matrix();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    if (std::abs(v) > kDeterministicTol && std::abs(v - 1.0) > kDeterministicTol) return false;
  }
  return true;
}

LinearMap map_compose(const LinearMap& e2, const LinearMap& e1) {
  if (e1.dim_out() != e2.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "maps cannot be composed");
  }
  return LinearMap(e1.dim_in(), e2.dim_out(), e2.superop() * e1.superop());
}

Channel channel_compose(const Channel& e2, const Channel& e1) {
  return Channel(map_compose(e2.map(), e1.map()));
}

namespace {

LinearMap map_tensor(const LinearMap& a, const LinearMap& b) {
  const int ai = a.dim_in(), ao = a.dim_out(), bi = b.dim_in(), bo = b.dim_out();
  std::vector<Matrix> a_img(static_cast<std::size_t>(ai * ai));
  std::vector<Matrix> b_img(static_cast<std::size_t>(bi * bi));
  for (int i = 0; i < ai; ++i)
    for (int j = 0; j < ai; ++j) a_img[i * ai + j] = unvec(a.superop().col(i + j * ai), ao, ao);
  for (int i = 0; i < bi; ++i)
    for (int j = 0; j < bi; ++j) b_img[i * bi + j] = unvec(b.superop().col(i + j * bi), bo, bo);
  return LinearMap::from_action(ai * bi, ao * bo, [&](int r, int c) -> Matrix {
    const int ra = r / bi, rb = r % bi, ca = c / bi, cb = c % bi;
    return tensor(a_img[ra * ai + ca], b_img[rb * bi + cb]);
  });
}

}  // namespace

Channel channel_tensor(const Channel& a, const Channel& b) {
  return Channel(map_tensor(a.map(), b.map()));
}

Channel channel_tensor_identity(const Channel& e, int dim_b) {
  if (dim_b <= 0) throw Error(ErrorKind::DimensionMismatch, "dim_B must be positive");
  return channel_tensor(e, Channel::identity(dim_b));
}

double superop_distance(const LinearMap& a, const LinearMap& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw Error(ErrorKind::DimensionMismatch, "maps have different shapes");
  }
  return (a.superop() - b.superop()).norm();
}

}  // namespace qmacro
