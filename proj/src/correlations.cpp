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

#include "qmacro/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmacro/error.hpp"

namespace qmacro {

namespace {

constexpr double kProductPriorTol = 1e-9;
constexpr double kBlockPsdFloor = -1e-9;

struct LocalConditions {
  ResidualFlag cg;
  ResidualFlag rdm;
  ResidualFlag decomposition;
};

LocalConditions evaluate_local(const Matrix& rho, const LocalFrame& l) {
  LocalConditions c;
  c.cg.residual = (l.local_cg().apply(rho) - rho).norm();
  c.cg.holds = fixed_point_residual_ok(c.cg.residual, rho);
  c.rdm.residual = (l.local_rdm().apply(rho) - rho).norm();
  c.rdm.holds = fixed_point_residual_ok(c.rdm.residual, rho);

  // Project onto span{tau_y (x) X}: X_y = Tr_A[(tau_y (x) 1) rho] / ||tau_y||^2.
  const int da = l.dim_a();
  const int db = l.dim_b();
  Matrix fit = Matrix::Zero(rho.rows(), rho.cols());
  bool psd = true;
  for (const DensityMatrix& t : l.frame_a().free_extremes()) {
    const Matrix& tau = t.matrix();
    const Matrix xy = hermitian_part(partial_trace(tensor(tau, identity(db)) * rho, da, db, Subsystem::B)) /
                      tau.squaredNorm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(xy, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kBlockPsdFloor) psd = false;
    fit += tensor(tau, xy);
  }
  c.decomposition.residual = (fit - rho).norm();
  c.decomposition.holds = psd && fixed_point_residual_ok(c.decomposition.residual, rho);
  return c;
}

MacroReport consensus(EntropyValue gap, bool first, const LocalConditions& c, const char* what) {
  MacroReport rep;
  rep.deficit = gap;
  rep.deficit_zero = first;
  rep.cg_fixed = c.cg;
  rep.rdm_fixed = c.rdm;
  rep.decomposition = c.decomposition;
  const bool all = first && c.cg.holds && c.rdm.holds && c.decomposition.holds;
  const bool none = !first && !c.cg.holds && !c.rdm.holds && !c.decomposition.holds;
  if (!all && !none) {
    std::ostringstream os;
    os << what << " conditions disagree: gap=" << gap.as_double() << " cg_residual=" << c.cg.residual
       << " rdm_residual=" << c.rdm.residual << " fit_residual=" << c.decomposition.residual;
    throw Error(ErrorKind::TheoremViolation, os.str());
  }
  rep.verdict = all;
  return rep;
}

void require_bipartite(const DensityMatrix& rho, int da, int db) {
  if (da <= 0 || db <= 0 || rho.dim() != da * db) {
    throw Error(ErrorKind::DimensionMismatch, "state dimension does not factor as dA * dB");
  }
}

// -tr[rho ln sigma] and its gradient in sigma for full-rank sigma.
struct LogLoss {
  double value;
  Matrix grad;
};

LogLoss log_loss(const Matrix& rho, const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(sigma));
  const RealVector& l = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  const Matrix r = v.adjoint() * rho * v;
  const auto n = l.size();
  double value = 0.0;
  Matrix kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double li = std::max(l[i], 1e-300);
    value -= r(i, i).real() * std::log(li);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double lj = std::max(l[j], 1e-300);
      // Divided difference of ln.
      const double dd = std::abs(li - lj) > 1e-12 * std::max(li, lj) ? (std::log(li) - std::log(lj)) / (li - lj)
                                                                     : 2.0 / (li + lj);
      kernel(i, j) = -dd * r(i, j);
    }
  }
  return {value, v * kernel * v.adjoint()};
}

Matrix exp_normalized(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const double top = es.eigenvalues().maxCoeff();
  RealVector w = (es.eigenvalues().array() - top).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix log_full_rank(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector l = es.eigenvalues().cwiseMax(1e-300).array().log();
  return es.eigenvectors() * l.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

LocalFrame make_local_frame(const Povm& p_a, const DensityMatrix& gamma_a, const DensityMatrix& gamma_b,
                            const Tolerance& tol) {
  InferentialFrame fa = compute_mppp(p_a, gamma_a, tol);
  const int db = gamma_b.dim();
  Channel cg = channel_tensor_identity(fa.cg().channel, db);
  Channel rdm = channel_tensor_identity(fa.rdm(), db);
  const double idem = (rdm.superop() * rdm.superop() - rdm.superop()).norm();
  if (idem > 1e-8) throw Error(ErrorKind::TheoremViolation, "local RDM is not idempotent");
  return LocalFrame(std::move(fa), gamma_b, std::move(cg), std::move(rdm));
}

LocalFrame make_local_frame(const Povm& p_a, const DensityMatrix& gamma_ab, int dim_a, int dim_b,
                            const Tolerance& tol) {
  require_bipartite(gamma_ab, dim_a, dim_b);
  const Matrix ga = partial_trace(gamma_ab.matrix(), dim_a, dim_b, Subsystem::A);
  const Matrix gb = partial_trace(gamma_ab.matrix(), dim_a, dim_b, Subsystem::B);
  const double gap = (tensor(ga, gb) - gamma_ab.matrix()).norm();
  if (gap > kProductPriorTol) {
    std::ostringstream os;
    os << "joint prior is not a product of its marginals (distance " << gap
       << "); local macroscopicity is characterized for product priors only";
    throw Error(ErrorKind::NonProductPrior, os.str());
  }
  return make_local_frame(p_a, DensityMatrix::normalized(ga, tol), DensityMatrix::normalized(gb, tol), tol);
}

Matrix measured_state(const Matrix& rho_ab, const Povm& p_a, int dim_a, int dim_b) {
  if (p_a.dim() != dim_a || rho_ab.rows() != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch, "POVM does not act on the A factor");
  }
  const auto n = static_cast<int>(p_a.size());
  Matrix out = Matrix::Zero(n * dim_b, n * dim_b);
  for (int x = 0; x < n; ++x) {
    out.block(x * dim_b, x * dim_b, dim_b, dim_b) =
        partial_trace(tensor(p_a.element(x), identity(dim_b)) * rho_ab, dim_a, dim_b, Subsystem::B);
  }
  return hermitian_part(out);
}

MacroReport locally_macro_test(const DensityMatrix& rho_ab, const LocalFrame& l) {
  require_bipartite(rho_ab, l.dim_a(), l.dim_b());
  const Tolerance& tol = l.frame_a().tolerance();
  const Povm& p = l.frame_a().povm();
  const Matrix prior = l.prior_ab();
  const EntropyValue full = relative_entropy(rho_ab.matrix(), prior, tol);
  const EntropyValue measured =
      relative_entropy(measured_state(rho_ab.matrix(), p, l.dim_a(), l.dim_b()),
                       measured_state(prior, p, l.dim_a(), l.dim_b()), tol);
  if (!full.finite && !measured.finite) {
    throw Error(ErrorKind::IndeterminateDifference, "both divergences are infinite");
  }
  const EntropyValue gap = full.finite ? EntropyValue{full.value - measured.value, measured.finite}
                                       : EntropyValue::infinite();
  const bool first = gap.finite && std::abs(gap.value) <= kDivergenceEqualityTol;
  return consensus(gap, first, evaluate_local(rho_ab.matrix(), l), "local macroscopicity");
}

DiscordReport observational_discord(const DensityMatrix& rho_ab, const Povm& p_a, int dim_a, int dim_b) {
  require_bipartite(rho_ab, dim_a, dim_b);
  DiscordReport rep;
  rep.total_mi = mutual_information(rho_ab, dim_a, dim_b);
  const auto n = static_cast<int>(p_a.size());
  const DensityMatrix omega = DensityMatrix::normalized(measured_state(rho_ab.matrix(), p_a, dim_a, dim_b));
  rep.measured_mi = mutual_information(omega, n, dim_b);
  if (!rep.total_mi.finite || !rep.measured_mi.finite) {
    throw Error(ErrorKind::NumericalFailure, "mutual information evaluated as infinite");
  }
  rep.discord = {rep.total_mi.value - rep.measured_mi.value, true};
  if (rep.discord.value < -kDiscordZeroTol) {
    std::ostringstream os;
    os << "negative observational discord " << rep.discord.value;
    throw Error(ErrorKind::TheoremViolation, os.str());
  }
  const DensityMatrix rho_a(partial_trace(rho_ab.matrix(), dim_a, dim_b, Subsystem::A));
  if (rho_a.is_invertible()) rep.vanishing = discord_vanishing_test(rho_ab, p_a, dim_a, dim_b);
  return rep;
}

MacroReport discord_vanishing_test(const DensityMatrix& rho_ab, const Povm& p_a, int dim_a, int dim_b) {
  require_bipartite(rho_ab, dim_a, dim_b);
  const DensityMatrix rho_a = DensityMatrix::normalized(partial_trace(rho_ab.matrix(), dim_a, dim_b, Subsystem::A));
  if (!rho_a.is_invertible()) throw Error(ErrorKind::MarginalNotInvertible, "A marginal is singular");
  const DensityMatrix rho_b = DensityMatrix::normalized(partial_trace(rho_ab.matrix(), dim_a, dim_b, Subsystem::B));
  const LocalFrame l = make_local_frame(p_a, rho_a, rho_b);

  const EntropyValue total = mutual_information(rho_ab, dim_a, dim_b);
  const DensityMatrix omega = DensityMatrix::normalized(measured_state(rho_ab.matrix(), p_a, dim_a, dim_b));
  const EntropyValue measured = mutual_information(omega, static_cast<int>(p_a.size()), dim_b);
  const EntropyValue discord{total.value - measured.value, total.finite && measured.finite};
  const bool first = discord.finite && std::abs(discord.value) <= kDiscordZeroTol;
  return consensus(discord, first, evaluate_local(rho_ab.matrix(), l), "vanishing-discord");
}

LocalMicroBound rel_ent_local_micro_upper(const DensityMatrix& rho_ab, const LocalFrame& l,
                                          const MinimizerOptions& opts) {
  require_bipartite(rho_ab, l.dim_a(), l.dim_b());
  const Matrix& rho = rho_ab.matrix();
  const int da = l.dim_a();
  const int db = l.dim_b();
  LocalMicroBound out;
  out.bound = relative_entropy(rho, hermitian_part(l.local_rdm().apply(rho)), l.frame_a().tolerance());

  const auto& taus = l.frame_a().free_extremes();
  const std::size_t ny = taus.size();
  RealVector p = RealVector::Constant(static_cast<Eigen::Index>(ny), 1.0 / static_cast<double>(ny));
  std::vector<Matrix> omega(ny, identity(db) / static_cast<double>(db));

  auto build = [&]() {
    Matrix s = Matrix::Zero(da * db, da * db);
    for (std::size_t y = 0; y < ny; ++y) s += p[static_cast<Eigen::Index>(y)] * tensor(taus[y].matrix(), omega[y]);
    return s;
  };
  const double neg_entropy_nats = -von_neumann_entropy(rho_ab).value * std::log(2.0);

  double prev = log_loss(rho, build()).value;
  double best = prev;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    LogLoss ll = log_loss(rho, build());
    RealVector g(static_cast<Eigen::Index>(ny));
    for (std::size_t y = 0; y < ny; ++y) {
      g[static_cast<Eigen::Index>(y)] = (ll.grad * tensor(taus[y].matrix(), omega[y])).trace().real();
    }
    RealVector logits = p.array().log() - opts.step * g.array();
    logits.array() -= logits.maxCoeff();
    p = logits.array().exp();
    p /= p.sum();

    ll = log_loss(rho, build());
    for (std::size_t y = 0; y < ny; ++y) {
      const Matrix gy = p[static_cast<Eigen::Index>(y)] *
                        partial_trace(tensor(taus[y].matrix(), identity(db)) * ll.grad, da, db, Subsystem::B);
      omega[y] = exp_normalized(log_full_rank(omega[y]) - opts.step * hermitian_part(gy));
    }

    const double cur = log_loss(rho, build()).value;
    best = std::min(best, cur);
    if (std::abs(prev - cur) < opts.stop_change) {
      out.converged = true;
      ++it;
      break;
    }
    prev = cur;
  }
  out.iterations = it;
  out.minimizer_value = (neg_entropy_nats + best) / std::log(2.0);
  out.best_found = std::min(out.minimizer_value, out.bound.as_double());
  return out;
}

ChannelClassification classify_local_channel(const Channel& e, const LocalFrame& l) {
  const int db = l.dim_b();
  std::vector<Matrix> ws;
  for (int b = 0; b < db; ++b) {
    Vector v = Vector::Zero(db);
    v[b] = 1.0;
    ws.push_back(v * v.adjoint());
    for (int bp = b + 1; bp < db; ++bp) {
      Vector s = Vector::Zero(db);
      s[b] = 1.0 / std::sqrt(2.0);
      s[bp] = 1.0 / std::sqrt(2.0);
      ws.push_back(s * s.adjoint());
      s[bp] = cplx(0.0, 1.0 / std::sqrt(2.0));
      ws.push_back(s * s.adjoint());
    }
  }
  std::vector<Matrix> probes;
  for (const DensityMatrix& t : l.frame_a().free_extremes())
    for (const Matrix& w : ws) probes.push_back(tensor(t.matrix(), w));
  return classify_against(e.map(), l.local_cg().map(), l.local_rdm().map(), probes);
}

}  // namespace qmacro
