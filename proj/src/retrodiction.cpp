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

#include "qmacro/retrodiction.hpp"

#include <cmath>
#include <sstream>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

constexpr double kCrossCheckTol = 1e-9;

void require_invertible_prior(const DensityMatrix& gamma, const Tolerance& tol) {
  if (!gamma.is_invertible(tol)) throw Error(ErrorKind::PriorNotInvertible, "prior is singular");
}

}  // namespace

Channel petz_map(const Channel& e, const DensityMatrix& gamma, const Tolerance& tol) {
  if (gamma.dim() != e.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "prior dimension does not match channel input");
  }
  require_invertible_prior(gamma, tol);
  const Matrix image = hermitian_part(e.apply(gamma.matrix()));
  if (numerical_rank(image, tol) != e.dim_out()) {
    throw Error(ErrorKind::ImageNotInvertible, "E(gamma) is singular");
  }
  const Matrix b = inv_sqrtm_on_support(image, tol);
  const Matrix g = sqrtm_psd(gamma.matrix(), tol);
  // vec(A X B) = (B^T (x) A) vec(X).
  Matrix s = tensor(g.transpose(), g) * e.superop().adjoint() * tensor(b.transpose(), b);
  return Channel(LinearMap(e.dim_out(), e.dim_in(), std::move(s)));
}

Channel petz_map_measurement_kraus(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol) {
  if (gamma.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "prior and POVM dimensions differ");
  require_invertible_prior(gamma, tol);
  const int d = p.dim();
  const auto n = static_cast<int>(p.size());
  const Matrix g = sqrtm_psd(gamma.matrix(), tol);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n * d));
  for (int x = 0; x < n; ++x) {
    const double w = (p.element(x) * gamma.matrix()).trace().real();
    if (!(w > 0.0)) throw Error(ErrorKind::ImageNotInvertible, "tr[P_x gamma] vanishes");
    const Matrix root = g * sqrtm_psd(p.element(x), tol) / std::sqrt(w);
    for (int j = 0; j < d; ++j) {
      Matrix k = Matrix::Zero(d, n);
      k.col(x) = root.col(j);
      kraus.push_back(std::move(k));
    }
  }
  return Channel::from_kraus(kraus);
}

CoarseGrainingMap coarse_graining_map(const Povm& p, const DensityMatrix& gamma, const Tolerance& tol) {
  if (gamma.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "prior and POVM dimensions differ");
  require_invertible_prior(gamma, tol);
  const int d = p.dim();
  const Matrix g = sqrtm_psd(gamma.matrix(), tol);

  std::vector<DensityMatrix> prepared;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (std::size_t x = 0; x < p.size(); ++x) {
    const double w = (p.element(x) * gamma.matrix()).trace().real();
    if (!(w > 0.0)) throw Error(ErrorKind::ImageNotInvertible, "tr[P_x gamma] vanishes");
    prepared.emplace_back(hermitian_part(g * p.element(x) * g) / w, tol);
    s += vec(prepared.back().matrix()) * vec(p.element(x)).adjoint();
  }
  Channel closed(LinearMap(d, d, std::move(s)));

  const Channel mp = measurement_channel(p);
  const Channel via_petz = channel_compose(petz_map(mp, gamma, tol), mp);
  const double gap = superop_distance(closed.map(), via_petz.map());
  if (gap > kCrossCheckTol * std::max(1.0, closed.superop().norm())) {
    std::ostringstream os;
    os << "closed form and Petz composition differ by " << gap;
    throw Error(ErrorKind::NumericalFailure, os.str());
  }
  const double fix = (closed.apply(gamma.matrix()) - gamma.matrix()).norm();
  if (fix > kCrossCheckTol) {
    std::ostringstream os;
    os << "coarse-graining moves the prior by " << fix;
    throw Error(ErrorKind::NumericalFailure, os.str());
  }
  return CoarseGrainingMap{std::move(closed), p, gamma, std::move(prepared)};
}

DensityMatrix coarse_grain(const DensityMatrix& rho, const CoarseGrainingMap& c) {
  return apply_channel(c.channel, rho);
}

std::pair<Povm, StochasticMap> adjoint_coarse_grain_povm(const CoarseGrainingMap& c, const Povm& q,
                                                         const Tolerance& tol) {
  if (q.dim() != c.povm.dim()) throw Error(ErrorKind::DimensionMismatch, "POVM dimension does not match");
  const auto nx = static_cast<Eigen::Index>(c.povm.size());
  const auto ny = static_cast<Eigen::Index>(q.size());
  RealMatrix t(nx, ny);
  for (Eigen::Index x = 0; x < nx; ++x) {
    for (Eigen::Index y = 0; y < ny; ++y) {
      t(x, y) = std::max(0.0, (q.element(static_cast<std::size_t>(y)) *
                               c.prepared[static_cast<std::size_t>(x)].matrix()).trace().real());
    }
    t.row(x) /= t.row(x).sum();
  }
  StochasticMap sm(std::move(t));
  Povm out = post_process(c.povm, sm, tol);

  const LinearMap adj = adjoint_channel(c.channel);
  for (std::size_t y = 0; y < q.size(); ++y) {
    const double gap = (adj.apply(q.element(y)) - out.element(y)).norm();
    if (gap > 1e-8) {
      std::ostringstream os;
      os << "C*(Q) and its post-processing form differ by " << gap;
      throw Error(ErrorKind::NumericalFailure, os.str());
    }
  }
  return {std::move(out), std::move(sm)};
}

Channel cesaro_average(const Channel& e, int n) {
  if (e.dim_in() != e.dim_out()) throw Error(ErrorKind::DimensionMismatch, "channel must be endomorphic");
  if (n <= 0) throw Error(ErrorKind::PreconditionViolated, "n must be positive");
  const Matrix& s = e.superop();
  Matrix power = s;
  Matrix sum = s;
  for (int k = 2; k <= n; ++k) {
    power = s * power;
    sum += power;
  }
  return Channel(LinearMap(e.dim_in(), e.dim_out(), sum / static_cast<double>(n)));
}

}  // namespace qmacro
