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

#include "qmacro/mppp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

constexpr double kCommuteTol = 1e-9;
constexpr double kIdempotentTol = 1e-8;
constexpr double kPriorFixTol = 1e-9;
constexpr double kEigenClusterTol = 1e-6;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

void canonicalize(Partition& p) {
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

bool is_disconnected(const Partition& part, const DisconnectionGraph& g) {
  std::vector<std::size_t> owner(g.vertices);
  for (std::size_t y = 0; y < part.blocks.size(); ++y)
    for (std::size_t x : part.blocks[y]) owner[x] = y;
  for (const auto& [a, b] : g.edges)
    if (owner[a] != owner[b]) return false;
  return true;
}

std::string residual_summary(const MacroReport& r) {
  std::ostringstream os;
  os << "deficit=" << r.deficit.as_double() << " cg_residual=" << r.cg_fixed.residual
     << " rdm_residual=" << r.rdm_fixed.residual << " fit_residual=" << r.decomposition.residual;
  return os.str();
}

}  // namespace

bool Partition::refines(const Partition& coarser) const {
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t y = 0; y < coarser.blocks.size(); ++y)
    for (std::size_t x : coarser.blocks[y]) owner[x] = y;
  for (const auto& b : blocks) {
    const auto it = owner.find(b.front());
    if (it == owner.end()) return false;
    for (std::size_t x : b) {
      const auto jt = owner.find(x);
      if (jt == owner.end() || jt->second != it->second) return false;
    }
  }
  return true;
}

DisconnectionGraph disconnection_graph(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol) {
  if (gamma.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "prior and POVM dimensions differ");
  if (!gamma.is_invertible(tol)) throw Error(ErrorKind::PriorNotInvertible, "prior is singular");
  const std::size_t n = p.size();
  DisconnectionGraph g;
  g.vertices = n;
  g.adjacent.assign(n, std::vector<bool>(n, false));
  const Matrix& gm = gamma.matrix();
  const double gnorm = gm.norm();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xp = x + 1; xp < n; ++xp) {
      const Matrix& a = p.element(x);
      const Matrix& b = p.element(xp);
      const double scale = a.norm() * b.norm();
      const bool linked = !tol.is_zero((a * b).norm(), scale) || !tol.is_zero((a * gm * b).norm(), scale * gnorm);
      if (linked) {
        g.edges.emplace_back(x, xp);
        g.adjacent[x][xp] = g.adjacent[xp][x] = true;
      }
    }
  }
  return g;
}

Partition connected_components(const DisconnectionGraph& g) {
  UnionFind uf(g.vertices);
  for (const auto& [a, b] : g.edges) uf.unite(a, b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t x = 0; x < g.vertices; ++x) groups[uf.find(x)].push_back(x);
  Partition out;
  for (auto& [root, members] : groups) out.blocks.push_back(std::move(members));
  canonicalize(out);
  return out;
}

InferentialFrame::InferentialFrame(Povm povm, DensityMatrix prior, Partition partition, Povm mppp,
                                   Channel rdm, CoarseGrainingMap cg, std::vector<DensityMatrix> extremes,
                                   Tolerance tol)
    : povm_(std::move(povm)),
      prior_(std::move(prior)),
      partition_(std::move(partition)),
      mppp_(std::move(mppp)),
      rdm_(std::move(rdm)),
      cg_(std::move(cg)),
      extremes_(std::move(extremes)),
      tol_(tol) {}

InferentialFrame compute_mppp(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol) {
  tol.validate();
  const DisconnectionGraph g = disconnection_graph(p, gamma, tol);
  Partition part = connected_components(g);
  const int d = p.dim();
  const Matrix& gm = gamma.matrix();

  std::vector<Matrix> pis;
  std::vector<std::string> labels;
  for (std::size_t y = 0; y < part.blocks.size(); ++y) {
    Matrix pi = Matrix::Zero(d, d);
    for (std::size_t x : part.blocks[y]) pi += p.element(x);
    pis.push_back(hermitian_part(pi));
    labels.push_back(std::to_string(y));
  }
  Povm mppp(labels, pis, tol);
  if (mppp.size() != part.size() || !is_pvm(mppp, tol)) {
    throw Error(ErrorKind::TheoremViolation, "block sums of the irreducible partition are not a PVM");
  }

  std::vector<DensityMatrix> extremes;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const Matrix& pi : mppp.elements()) {
    const double comm = (pi * gm - gm * pi).norm();
    if (comm > kCommuteTol) {
      std::ostringstream os;
      os << "MPPP element fails to commute with the prior: ||[Pi, gamma]|| = " << comm;
      throw Error(ErrorKind::TheoremViolation, os.str());
    }
    const Matrix block = hermitian_part(pi * gm * pi);
    extremes.emplace_back(block / block.trace().real(), tol);
    s += vec(extremes.back().matrix()) * vec(pi).adjoint();
  }
  Channel delta(LinearMap(d, d, std::move(s)));

  const double idem = (delta.superop() * delta.superop() - delta.superop()).norm();
  if (idem > kIdempotentTol) {
    throw Error(ErrorKind::TheoremViolation, "resource-destroying map is not idempotent");
  }
  if ((delta.apply(gm) - gm).norm() > kPriorFixTol) {
    throw Error(ErrorKind::TheoremViolation, "resource-destroying map moves the prior");
  }

  CoarseGrainingMap cg = coarse_graining_map(p, gamma, tol);
  return InferentialFrame(p, gamma, std::move(part), std::move(mppp), std::move(delta), std::move(cg),
                          std::move(extremes), tol);
}

std::vector<Partition> all_disconnected_partitions(const Povm& p, const DensityMatrix& gamma,
                                                   const Tolerance& tol) {
  const std::size_t n = p.size();
  if (n > kBruteForceMaxOutcomes) {
    throw Error(ErrorKind::TooManyOutcomes,
                std::to_string(n) + " outcomes exceed the enumeration limit of " +
                    std::to_string(kBruteForceMaxOutcomes));
  }
  const DisconnectionGraph g = disconnection_graph(p, gamma, tol);

  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> mx(n, 0);  // mx[i] = max(a[0..i])
  std::vector<Partition> out;
  while (true) {
    Partition part;
    const std::size_t k = mx[n - 1] + 1;
    part.blocks.assign(k, {});
    for (std::size_t i = 0; i < n; ++i) part.blocks[a[i]].push_back(i);
    if (is_disconnected(part, g)) out.push_back(std::move(part));

    // Next string: increment the rightmost position that may grow.
    std::size_t i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
  return out;
}

Partition brute_force_mppp(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol) {
  const std::vector<Partition> found = all_disconnected_partitions(p, gamma, tol);
  // The one-block partition is always disconnected, so `found` is non-empty.
  const auto finest = std::max_element(found.begin(), found.end(),
                                       [](const Partition& a, const Partition& b) { return a.size() < b.size(); });
  for (const Partition& other : found) {
    if (!finest->refines(other)) {
      throw Error(ErrorKind::TheoremViolation, "gamma-disconnected partitions have no common refinement");
    }
  }
  return *finest;
}

bool fixed_point_residual_ok(double residual, const Matrix& rho) {
  return residual <= kFixedPointTol * std::max(1.0, rho.norm());
}

MacroReport macro_test(const DensityMatrix& rho, const InferentialFrame& frame) {
  if (rho.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "state and frame dimensions differ");
  const Matrix& r = rho.matrix();
  MacroReport rep;

  rep.deficit = observational_deficit(rho, frame.prior(), frame.povm(), frame.tolerance());
  rep.deficit_zero = rep.deficit.finite && std::abs(rep.deficit.value) <= kDeficitZeroTol;

  rep.cg_fixed.residual = (frame.cg().channel.apply(r) - r).norm();
  rep.cg_fixed.holds = fixed_point_residual_ok(rep.cg_fixed.residual, r);
  rep.rdm_fixed.residual = (frame.rdm().apply(r) - r).norm();
  rep.rdm_fixed.holds = fixed_point_residual_ok(rep.rdm_fixed.residual, r);

  // Blocks Pi_y gamma are mutually orthogonal, so the nonnegative least
  // squares fit is a per-block projection followed by clamping.
  const Matrix& gm = frame.prior().matrix();
  std::vector<double> coeffs;
  Matrix fit = Matrix::Zero(r.rows(), r.cols());
  bool nonneg = true;
  for (const Matrix& pi : frame.mppp().elements()) {
    const Matrix block = hermitian_part(pi * gm * pi);
    const double c = (block * r).trace().real() / block.squaredNorm();
    coeffs.push_back(c);
    if (c < kCoefficientFloor) nonneg = false;
    fit += std::max(c, 0.0) * block;
  }
  rep.decomposition.residual = (fit - r).norm();
  rep.decomposition.holds = nonneg && fixed_point_residual_ok(rep.decomposition.residual, r);
  rep.coefficients = std::move(coeffs);

  const bool all = rep.deficit_zero && rep.cg_fixed.holds && rep.rdm_fixed.holds && rep.decomposition.holds;
  const bool none = !rep.deficit_zero && !rep.cg_fixed.holds && !rep.rdm_fixed.holds && !rep.decomposition.holds;
  if (!all && !none) {
    throw Error(ErrorKind::TheoremViolation, "macroscopicity conditions disagree: " + residual_summary(rep));
  }
  rep.verdict = all;
  return rep;
}

int fixed_point_space_dim(const LinearMap& e) {
  if (e.dim_in() != e.dim_out()) throw Error(ErrorKind::DimensionMismatch, "map must be endomorphic");
  Eigen::ComplexEigenSolver<Matrix> solver(e.superop());
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed");
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (std::abs(solver.eigenvalues()[i] - cplx(1.0, 0.0)) <= kEigenClusterTol) picked.push_back(i);
  if (picked.empty()) return 0;

  Matrix basis(e.superop().rows(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k) {
    Vector v = solver.eigenvectors().col(picked[k]);
    v.normalize();
    const double res = (e.superop() * v - v).norm();
    if (res > kEigenClusterTol) {
      std::ostringstream os;
      os << "fixed-point candidate has residual " << res;
      throw Error(ErrorKind::NumericalFailure, os.str());
    }
    basis.col(static_cast<Eigen::Index>(k)) = v;
  }
  Eigen::JacobiSVD<Matrix> svd(basis);
  const RealVector sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-8) ++rank;
  if (rank != static_cast<int>(picked.size())) {
    throw Error(ErrorKind::NumericalFailure, "eigenvalue 1 is defective: fixed-point basis is degenerate");
  }
  return rank;
}

}  // namespace qmacro
