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

#include "qmacro/random.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "qmacro/error.hpp"

namespace qmacro {

Matrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Matrix random_unitary(int d, Rng& rng) {
  const Matrix z = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int k = 0; k < d; ++k) {
    const cplx rk = r(k, k);
    if (std::abs(rk) > 0.0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

Matrix random_hermitian(int d, Rng& rng) {
  const Matrix g = random_ginibre(d, d, rng);
  return hermitian_part(g);
}

DensityMatrix random_state(int d, Rng& rng, int rank) {
  const int k = rank <= 0 ? d : rank;
  const Matrix g = random_ginibre(d, k, rng);
  return DensityMatrix::normalized(hermitian_part(g * g.adjoint()));
}

Vector random_pure_vector(int d, Rng& rng) {
  Vector v = random_ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

RealVector random_probability(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = e(rng) + 1e-3;
  return p / p.sum();
}

namespace {

// Splits the projector `q` (rank >= 1) into `m` PSD pieces summing to it.
std::vector<Matrix> split_projector(const Matrix& q, int m, Rng& rng) {
  if (m == 1) return {q};
  const auto d = static_cast<int>(q.rows());
  std::vector<Matrix> w;
  Matrix s = Matrix::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    const Matrix g = q * random_ginibre(d, d, rng);
    w.push_back(hermitian_part(g * g.adjoint()));
    s += w.back();
  }
  const Matrix inv = inv_sqrtm_on_support(hermitian_part(s));
  std::vector<Matrix> out;
  for (const Matrix& wi : w) out.push_back(hermitian_part(inv * wi * inv));
  // Absorb the residual on the support so the pieces sum to q exactly.
  Matrix total = Matrix::Zero(d, d);
  for (const Matrix& o : out) total += o;
  out.back() += q - total;
  out.back() = hermitian_part(out.back());
  return out;
}

}  // namespace

Povm random_povm(int d, int n, Rng& rng) {
  return Povm(split_projector(identity(d), n, rng));
}

Channel random_channel(int d_in, int d_out, Rng& rng, int kraus) {
  const int k = kraus <= 0 ? d_in * d_out : kraus;
  std::vector<Matrix> ks;
  Matrix s = Matrix::Zero(d_in, d_in);
  for (int i = 0; i < k; ++i) {
    ks.push_back(random_ginibre(d_out, d_in, rng));
    s += ks.back().adjoint() * ks.back();
  }
  const Matrix inv = inv_sqrtm_on_support(hermitian_part(s));
  for (Matrix& m : ks) m = m * inv;
  return Channel::from_kraus(ks);
}

FrameSample random_frame(int d, int max_outcomes, Rng& rng) {
  if (d < 1 || max_outcomes < 1) throw Error(ErrorKind::PreconditionViolated, "bad frame parameters");
  std::uniform_int_distribution<int> mode_dist(0, 9);
  const int mode = mode_dist(rng);

  if (mode == 0) {
    // Generic POVM and prior: the MPPP is almost surely trivial.
    std::uniform_int_distribution<int> nd(1, max_outcomes);
    return {random_povm(d, nd(rng), rng), random_state(d, rng), 1};
  }

  // Planted structure: k blocks of sizes summing to d.
  const int kmax = std::min(d, max_outcomes);
  std::uniform_int_distribution<int> kd(1, kmax);
  const int k = kd(rng);
  std::vector<int> sizes(static_cast<std::size_t>(k), 1);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int r = k; r < d; ++r) ++sizes[static_cast<std::size_t>(pick(rng))];

  const Matrix v = random_unitary(d, rng);
  std::vector<Matrix> qs;
  int col = 0;
  for (int s : sizes) {
    const Matrix c = v.middleCols(col, s);
    qs.push_back(c * c.adjoint());
    col += s;
  }

  // Prior: random PSD inside each block, so it commutes with every Q_j but
  // is not diagonal in any fixed basis. mode 1 uses a uniform prior.
  Matrix gamma = Matrix::Zero(d, d);
  for (const Matrix& q : qs) {
    if (mode == 1) {
      gamma += q;
    } else {
      const Matrix g = q * random_ginibre(d, d, rng);
      gamma += hermitian_part(g * g.adjoint()) + 0.05 * q;
    }
  }
  gamma = hermitian_part(gamma) / gamma.trace().real();

  // Distribute the spare outcomes among blocks.
  std::vector<int> pieces(static_cast<std::size_t>(k), 1);
  std::uniform_int_distribution<int> extra(0, max_outcomes - k);
  const int spare = extra(rng);
  for (int r = 0; r < spare; ++r) ++pieces[static_cast<std::size_t>(pick(rng))];

  std::vector<Matrix> els;
  for (int j = 0; j < k; ++j) {
    for (Matrix& m : split_projector(qs[static_cast<std::size_t>(j)], pieces[static_cast<std::size_t>(j)], rng)) {
      els.push_back(std::move(m));
    }
  }
  std::shuffle(els.begin(), els.end(), rng);
  return {Povm(std::move(els)), DensityMatrix(gamma), k};
}

}  // namespace qmacro
