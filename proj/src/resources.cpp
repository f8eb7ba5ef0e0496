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

#include "qmacro/resources.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

constexpr double kOrthogonalTol = 1e-9;
constexpr double kFreeFixTol = 1e-8;
constexpr double kScenarioTol = 1e-8;

}  // namespace

FreeStateSet free_state_set(const InferentialFrame& frame) {
  const auto& ext = frame.free_extremes();
  for (std::size_t y = 0; y < ext.size(); ++y) {
    if ((frame.rdm().apply(ext[y].matrix()) - ext[y].matrix()).norm() > kFreeFixTol) {
      throw Error(ErrorKind::TheoremViolation, "extreme free state is not fixed by the RDM");
    }
    for (std::size_t yp = y + 1; yp < ext.size(); ++yp) {
      if (std::abs((ext[y].matrix() * ext[yp].matrix()).trace()) > kOrthogonalTol) {
        throw Error(ErrorKind::TheoremViolation, "extreme free states are not orthogonal");
      }
    }
  }
  return FreeStateSet{ext, frame.rdm()};
}

bool is_free_state(const DensityMatrix& rho, const InferentialFrame& frame) {
  if (rho.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "state and frame dimensions differ");
  const double r = (frame.rdm().apply(rho.matrix()) - rho.matrix()).norm();
  return fixed_point_residual_ok(r, rho.matrix());
}

EntropyValue rel_ent_microscopicity(const DensityMatrix& rho, const InferentialFrame& frame) {
  if (rho.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "state and frame dimensions differ");
  return relative_entropy(rho.matrix(), hermitian_part(frame.rdm().apply(rho.matrix())), frame.tolerance());
}

ChannelClassification classify_against(const LinearMap& e, const LinearMap& cg, const LinearMap& rdm,
                                       const std::vector<Matrix>& probes) {
  if (e.dim_in() != e.dim_out() || e.dim_in() != cg.dim_in() || e.dim_in() != rdm.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "channel must act on the frame's space");
  }
  ChannelClassification c;
  const Matrix& se = e.superop();
  c.cco_residual = (se * cg.superop() - cg.superop() * se).norm();
  c.rco_residual = (se * rdm.superop() - rdm.superop() * se).norm();
  for (const Matrix& s : probes) {
    const Matrix out = e.apply(s);
    c.mno_residual = std::max(c.mno_residual, (rdm.apply(out) - out).norm());
  }
  c.is_cco = c.cco_residual <= kCommutationTol;
  c.is_rco = c.rco_residual <= kCommutationTol;
  c.is_mno = c.mno_residual <= kFixedPointTol;
  if ((c.is_cco && !c.is_rco) || (c.is_rco && !c.is_mno)) {
    std::ostringstream os;
    os << "class inclusion violated: cco=" << c.is_cco << " rco=" << c.is_rco << " mno=" << c.is_mno
       << " residuals " << c.cco_residual << ", " << c.rco_residual << ", " << c.mno_residual;
    throw Error(ErrorKind::TheoremViolation, os.str());
  }
  return c;
}

ChannelClassification classify_channel(const Channel& e, const InferentialFrame& frame) {
  std::vector<Matrix> probes;
  for (const auto& s : frame.free_extremes()) probes.push_back(s.matrix());
  return classify_against(e.map(), frame.cg().channel.map(), frame.rdm().map(), probes);
}

Channel mno_not_rco_witness(const InferentialFrame& frame) {
  if (frame.mppp().size() < 2) {
    throw Error(ErrorKind::PreconditionViolated, "witness needs at least two MPPP blocks");
  }
  const int d = frame.dim();
  auto range_vector = [](const Matrix& pi) -> Vector {
    Eigen::SelfAdjointEigenSolver<Matrix> s(pi);
    return s.eigenvectors().col(s.eigenvalues().size() - 1);
  };
  const Vector phi = (range_vector(frame.mppp().element(0)) + range_vector(frame.mppp().element(1))) / std::sqrt(2.0);
  const Matrix proj = phi * phi.adjoint();
  const Matrix& s1 = frame.free_extremes()[0].matrix();
  const Matrix& s2 = frame.free_extremes()[1].matrix();
  const Matrix comp = identity(d) - proj;
  Matrix sup = vec(s1) * vec(proj).adjoint() + vec(s2) * vec(comp).adjoint();
  return Channel(LinearMap(d, d, std::move(sup)));
}

InferentialFrame scenario_coherence(int d) {
  if (d < 2) throw Error(ErrorKind::PreconditionViolated, "coherence scenario needs d >= 2");
  InferentialFrame f = compute_mppp(Povm::computational_basis(d), DensityMatrix::maximally_mixed(d));
  Matrix pinch = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) pinch(i + i * d, i + i * d) = 1.0;
  if (f.mppp().size() != static_cast<std::size_t>(d) || (f.rdm().superop() - pinch).norm() > kScenarioTol) {
    throw Error(ErrorKind::TheoremViolation, "coherence scenario: RDM is not the pinching map");
  }
  return f;
}

InferentialFrame scenario_athermality(const Matrix& hamiltonian, double beta, const Povm& p) {
  if (hamiltonian.rows() != p.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and POVM dimensions differ");
  }
  if (!std::isfinite(beta)) throw Error(ErrorKind::PreconditionViolated, "beta must be finite");
  const DensityMatrix gamma(gibbs_matrix(hamiltonian, beta));
  InferentialFrame f = compute_mppp(p, gamma);
  if (f.mppp().size() != 1) {
    throw Error(ErrorKind::MpppNotTrivial,
                "POVM has a " + std::to_string(f.mppp().size()) + "-outcome MPPP under the Gibbs prior");
  }
  const int d = p.dim();
  const Matrix replace = vec(gamma.matrix()) * vec(identity(d)).adjoint();
  if ((f.rdm().superop() - replace).norm() > kScenarioTol) {
    throw Error(ErrorKind::TheoremViolation, "athermality scenario: RDM is not Tr[.] gamma");
  }
  return f;
}

LinearMap twirl(const std::vector<Matrix>& rep) {
  if (rep.empty()) throw Error(ErrorKind::NotARepresentation, "empty group");
  const auto d = static_cast<int>(rep.front().rows());
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const Matrix& u : rep) {
    if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::DimensionMismatch, "unitaries differ in size");
    s += tensor(u.conjugate(), u);
  }
  return LinearMap(d, d, s / static_cast<double>(rep.size()));
}

InferentialFrame scenario_asymmetry(const std::vector<Matrix>& rep) {
  if (rep.empty()) throw Error(ErrorKind::NotARepresentation, "empty group");
  const auto d = static_cast<int>(rep.front().rows());
  for (const Matrix& u : rep) {
    require_square_finite(u, "representation element");
    if (u.rows() != d) throw Error(ErrorKind::DimensionMismatch, "unitaries differ in size");
    if ((u.adjoint() * u - identity(d)).norm() > 1e-8) {
      throw Error(ErrorKind::NotARepresentation, "element is not unitary");
    }
  }
  constexpr double kClosure = 1e-8;
  for (const Matrix& a : rep) {
    for (const Matrix& b : rep) {
      const Matrix ab = a * b;
      const bool found = std::any_of(rep.begin(), rep.end(),
                                     [&](const Matrix& c) { return (ab - c).norm() <= kClosure; });
      if (!found) throw Error(ErrorKind::NotARepresentation, "set is not closed under multiplication");
    }
  }

  // The twirl is the orthogonal projection onto the commutant.
  const LinearMap t = twirl(rep);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(t.superop()));
  std::vector<Matrix> commutant;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i] - 1.0) <= 1e-8) commutant.push_back(unvec(es.eigenvectors().col(i), d, d));
  }
  for (std::size_t i = 0; i < commutant.size(); ++i) {
    for (std::size_t j = i + 1; j < commutant.size(); ++j) {
      const Matrix& a = commutant[i];
      const Matrix& b = commutant[j];
      if ((a * b - b * a).norm() > 1e-8) {
        throw Error(ErrorKind::NontrivialMultiplicity, "commutant is non-commutative");
      }
    }
  }

  // Central projections: eigenspaces of a generic Hermitian commutant element.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Matrix h = Matrix::Zero(d, d);
  for (const Matrix& c : commutant) h += coef(rng) * hermitian_part(c) + coef(rng) * hermitian_part(cplx(0, 1) * c);
  const HermitianEigen eig = hermitian_eig(hermitian_part(h));
  std::vector<Matrix> projs;
  Eigen::Index start = 0;
  const double spread = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 1; i <= eig.values.size(); ++i) {
    if (i == eig.values.size() || eig.values[i] - eig.values[i - 1] > 1e-6 * spread) {
      const Matrix v = eig.vectors.middleCols(start, i - start);
      projs.push_back(v * v.adjoint());
      start = i;
    }
  }
  if (projs.size() != commutant.size()) {
    throw Error(ErrorKind::NumericalFailure, "isotypic projectors do not match the commutant dimension");
  }

  InferentialFrame f = compute_mppp(Povm(projs), DensityMatrix::maximally_mixed(d));
  if ((f.rdm().superop() - t.superop()).norm() > kScenarioTol) {
    throw Error(ErrorKind::TheoremViolation, "asymmetry scenario: RDM differs from the twirl");
  }
  return f;
}

}  // namespace qmacro
