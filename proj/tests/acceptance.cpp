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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qmacro/correlations.hpp"
#include "qmacro/error.hpp"
#include "qmacro/mppp.hpp"
#include "qmacro/random.hpp"
#include "qmacro/resources.hpp"
#include "support.hpp"

namespace {

using namespace qmacro;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

InferentialFrame frame_from(const FrameSample& s) { return compute_mppp(s.povm, s.prior); }

// Random frame with at least `min_blocks` MPPP blocks.
InferentialFrame frame_with_blocks(int d, std::size_t min_blocks, Rng& rng) {
  for (;;) {
    InferentialFrame f = frame_from(random_frame(d, 5, rng));
    if (f.partition().size() >= min_blocks) return f;
  }
}

// Random PVM on C^d with 1..d blocks.
Povm random_pvm(int d, Rng& rng) {
  const Matrix u = random_unitary(d, rng);
  const int k = std::uniform_int_distribution<int>(1, d)(rng);
  std::vector<int> sizes(static_cast<std::size_t>(k), 1);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int r = k; r < d; ++r) ++sizes[static_cast<std::size_t>(pick(rng))];
  std::vector<Matrix> els;
  int col = 0;
  for (int s : sizes) {
    els.push_back(u.middleCols(col, s) * u.middleCols(col, s).adjoint());
    col += s;
  }
  return Povm(std::move(els));
}

bool all_true(const MacroReport& r) {
  return r.verdict && r.deficit_zero && r.cg_fixed.holds && r.rdm_fixed.holds && r.decomposition.holds;
}
bool all_false(const MacroReport& r) {
  return !(r.verdict || r.deficit_zero || r.cg_fixed.holds || r.rdm_fixed.holds || r.decomposition.holds);
}

// ------------------------------------------------------------------ criteria

void mppp_oracle(Outcome& o) {
  Rng rng(1001);
  const auto t0 = Clock::now();
  int frames = 0, mismatches = 0;
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 70; ++k) {
      const FrameSample s = random_frame(d, 5, rng);
      if (compute_mppp(s.povm, s.prior).partition() != brute_force_mppp(s.povm, s.prior)) ++mismatches;
      ++frames;
    }
  }
  const double secs = seconds_since(t0);
  o.require(mismatches == 0, "partition mismatch");
  o.require(secs < 60.0, "runtime");
  o.detail << frames << " frames, " << mismatches << " mismatches, " << secs << " s";
}

void theorem_consensus(Outcome& o) {
  Rng rng(1002);
  int macro_ok = 0, generic_ok = 0;
  const int n = 100;
  for (int k = 0; k < n; ++k) {
    const InferentialFrame f = frame_from(random_frame(2 + k % 3, 5, rng));
    const auto blocks = static_cast<int>(f.partition().size());
    if (all_true(macro_test(testing::macro_state(f, random_probability(blocks, rng)), f))) ++macro_ok;
    if (all_false(macro_test(random_state(f.dim(), rng), f))) ++generic_ok;
  }
  o.require(macro_ok == n, "constructed macroscopic state not recognized");
  o.require(generic_ok == n, "generic state reported macroscopic");
  o.detail << macro_ok << "/" << n << " macroscopic all-true, " << generic_ok << "/" << n << " generic all-false";
}

void counterexamples(Outcome& o) {
  const DensityMatrix u = DensityMatrix::maximally_mixed(2);
  const InferentialFrame smeared = compute_mppp(testing::smeared_qubit_povm(), u);
  o.require(smeared.mppp().size() == 1, "smeared MPPP not trivial");
  const Matrix replace = vec(u.matrix()) * vec(identity(2)).adjoint();
  const double rdm_err = (smeared.rdm().superop() - replace).norm();
  o.require(rdm_err <= 1e-12, "RDM differs from Tr[.]u");
  const ChannelClassification h = classify_channel(Channel::unitary(testing::hadamard()), smeared);
  o.require(!h.is_cco && h.is_rco, "Hadamard classification");

  Rng rng(1003);
  int witnesses = 0, ok = 0;
  std::vector<InferentialFrame> frames{scenario_coherence(2), scenario_coherence(3)};
  for (int k = 0; k < 48; ++k) frames.push_back(frame_with_blocks(2 + k % 3, 2, rng));
  for (const InferentialFrame& f : frames) {
    const ChannelClassification c = classify_channel(mno_not_rco_witness(f), f);
    ++witnesses;
    if (c.is_mno && !c.is_rco) ++ok;
  }
  o.require(ok == witnesses, "witness classification");
  o.detail << "smeared |Y|=" << smeared.mppp().size() << ", ||Delta - Tr[.]u||=" << rdm_err << ", Hadamard {cco:"
           << h.is_cco << ", rco:" << h.is_rco << "}, witness {mno:1, rco:0} in " << ok << "/" << witnesses
           << " frames";
}

void fixed_point_dimension(Outcome& o) {
  Rng rng(1004);
  int ok = 0;
  const int n = 50;
  for (int k = 0; k < n; ++k) {
    const InferentialFrame f = frame_from(random_frame(2 + k % 3, 5, rng));
    if (fixed_point_space_dim(adjoint_channel(f.cg().channel)) == static_cast<int>(f.partition().size())) ++ok;
  }
  o.require(ok == n, "dimension mismatch");
  o.detail << ok << "/" << n << " frames with dim Fix(C*) = |Y|";
}

void cesaro_convergence(Outcome& o) {
  Rng rng(1005);
  int ok = 0;
  double worst = 0.0;
  std::string first_bad;
  const int n = 50;
  for (int k = 0; k < n; ++k) {
    const InferentialFrame f = frame_from(random_frame(2 + k % 3, 5, rng));
    const std::vector<int> ns{10, 100, 1000};
    std::vector<double> dist;
    for (int m : ns) dist.push_back(superop_distance(cesaro_average(f.cg().channel, m).map(), f.rdm().map()));
    // Round-off in C^k grows like n * eps * |C|; differences below that count as nonincreasing.
    const double scale = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, f.cg().channel.superop().norm());
    const bool monotone = dist[1] <= dist[0] + scale * ns[1] && dist[2] <= dist[1] + scale * ns[2];
    worst = std::max(worst, dist[2]);
    if (monotone && dist[2] <= 1e-3) {
      ++ok;
    } else if (first_bad.empty()) {
      std::ostringstream os;
      os << "frame " << k << " d=" << f.dim() << " distances " << dist[0] << ", " << dist[1] << ", " << dist[2];
      first_bad = os.str();
    }
  }
  o.require(ok == n, "slow or non-monotone convergence");
  o.detail << ok << "/" << n << " frames, worst distance at n=1000: " << worst;
  if (!first_bad.empty()) o.detail << "; first failing " << first_bad;
}

void entropic_inequalities(Outcome& o) {
  Rng rng(1006);
  const int n = 500;
  double min_deficit = 1e300, min_gap = 1e300, min_bound = 1e300;
  for (int k = 0; k < n; ++k) {
    const InferentialFrame f = frame_from(random_frame(2 + k % 3, 5, rng));
    const DensityMatrix rho = random_state(f.dim(), rng, 1 + k % f.dim());
    min_deficit = std::min(min_deficit, observational_deficit(rho, f.prior(), f.povm()).value);
    min_gap = std::min(min_gap, observational_entropy(rho, f.povm()).value - von_neumann_entropy(rho).value);
    const double micro = rel_ent_microscopicity(rho, f).as_double();
    for (int s = 0; s < 10; ++s) {
      const auto blocks = static_cast<int>(f.partition().size());
      const DensityMatrix sigma = testing::macro_state(f, random_probability(blocks, rng));
      min_bound = std::min(min_bound, micro - observational_deficit(rho, sigma, f.povm()).as_double());
    }
  }
  o.require(min_deficit >= -1e-9, "negative deficit");
  o.require(min_gap >= -1e-9, "S_P below S");
  o.require(min_bound >= -1e-8, "microscopicity below deficit");
  o.detail << n << " samples; min deficit " << min_deficit << ", min S_P-S " << min_gap
           << ", min D(rho||Delta rho)-deficit " << min_bound;
}

void macro_state_chain(Outcome& o) {
  Rng rng(1007);
  const int n = 100;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const int d = 2 + k % 4;
    const Povm pvm = random_pvm(d, rng);
    const DensityMatrix rho = random_state(d, rng, 1 + k % d);
    Matrix macro = Matrix::Zero(d, d);
    for (const Matrix& e : pvm.elements()) macro += (e * rho.matrix()).trace().real() * e / e.trace().real();
    const DensityMatrix rho_macro = DensityMatrix::normalized(macro);
    const double s = von_neumann_entropy(rho_macro).value;
    worst = std::max({worst, std::abs(s - observational_entropy(rho, pvm).value),
                      std::abs(s - observational_entropy(rho_macro, pvm).value)});
  }
  o.require(worst <= 1e-9, "entropy chain broken");
  o.detail << n << " pairs, worst deviation " << worst;
}

void hierarchy(Outcome& o) {
  Rng rng(1008);
  int violations = 0, channels = 0, trivial_frames = 0, collapse_failures = 0;
  int counts[3] = {0, 0, 0};
  std::vector<InferentialFrame> frames;
  for (int k = 0; k < 20; ++k) frames.push_back(frame_from(random_frame(2 + k % 3, 5, rng)));
  frames.push_back(compute_mppp(testing::smeared_qubit_povm(), DensityMatrix::maximally_mixed(2)));
  frames.push_back(compute_mppp(random_povm(3, 3, rng), random_state(3, rng)));
  for (const InferentialFrame& f : frames) {
    const int d = f.dim();
    const bool trivial = f.partition().size() == 1;
    trivial_frames += trivial;
    const HermitianEigen g = hermitian_eig(f.prior().matrix());
    for (int k = 0; k < 100; ++k) {
      Channel e = Channel::identity(d);
      switch (k % 5) {
        case 0: e = random_channel(d, d, rng); break;
        case 1: e = Channel::unitary(random_unitary(d, rng)); break;
        case 2: e = channel_compose(f.rdm(), random_channel(d, d, rng)); break;
        case 3: e = channel_compose(random_channel(d, d, rng), f.rdm()); break;
        default: {
          // Phases in the prior's eigenbasis: fixes gamma.
          RealVector ph(d);
          for (int i = 0; i < d; ++i) ph[i] = std::uniform_real_distribution<double>(0, 6.283185307179586)(rng);
          const Matrix u = g.vectors * (ph.cast<cplx>() * cplx(0, 1)).array().exp().matrix().asDiagonal() *
                           g.vectors.adjoint();
          e = Channel::unitary(u);
        }
      }
      ++channels;
      try {
        const ChannelClassification c = classify_channel(e, f);
        counts[0] += c.is_cco;
        counts[1] += c.is_rco;
        counts[2] += c.is_mno;
        if ((c.is_cco && !c.is_rco) || (c.is_rco && !c.is_mno)) ++violations;
        if (trivial && c.is_mno && !c.is_rco) ++collapse_failures;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::TheoremViolation) throw;
        ++violations;
      }
    }
  }
  o.require(violations == 0, "inclusion violated");
  o.require(trivial_frames >= 1 && collapse_failures == 0, "mno without rco in a trivial frame");
  o.detail << channels << " channels over " << frames.size() << " frames (" << trivial_frames
           << " trivial); counts cco/rco/mno " << counts[0] << "/" << counts[1] << "/" << counts[2] << "; "
           << violations << " violations, " << collapse_failures << " collapse failures";
}

void discord_suite(Outcome& o) {
  const Povm z = Povm::computational_basis(2);
  const double bell = observational_discord(testing::bell_state(), z, 2, 2).discord.value;
  o.require(std::abs(bell - 1.0) <= 1e-8, "Bell discord");
  Rng rng(1009);
  double worst_product = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int db = 2 + k % 2;
    const DensityMatrix prod(tensor(random_state(2, rng).matrix(), random_state(db, rng).matrix()));
    worst_product =
        std::max(worst_product, std::abs(observational_discord(prod, random_povm(2, 2 + k % 3, rng), 2, db).discord.value));
  }
  o.require(worst_product <= 1e-9, "product discord");
  int vanish_ok = 0, generic_ok = 0, theorem_events = 0;
  const int n = 100;
  for (int k = 0; k < n; ++k) {
    const int da = 2 + k % 2, db = 2;
    const FrameSample s = random_frame(da, 4, rng);
    const InferentialFrame f = frame_from(s);
    const auto blocks = static_cast<int>(f.free_extremes().size());
    const RealVector p = random_probability(blocks, rng);
    Matrix m = Matrix::Zero(da * db, da * db);
    for (int y = 0; y < blocks; ++y)
      m += p[y] * tensor(f.free_extremes()[static_cast<std::size_t>(y)].matrix(), random_state(db, rng).matrix());
    try {
      if (all_true(discord_vanishing_test(DensityMatrix::normalized(m), s.povm, da, db))) ++vanish_ok;
      if (all_false(discord_vanishing_test(random_state(da * db, rng), s.povm, da, db))) ++generic_ok;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::TheoremViolation) throw;
      ++theorem_events;
    }
  }
  o.require(vanish_ok == n && generic_ok == n && theorem_events == 0, "corollary consensus");
  o.detail << "Bell discord " << bell << ", worst product " << worst_product << ", vanishing " << vanish_ok << "/"
           << n << ", generic " << generic_ok << "/" << n << ", theorem events " << theorem_events;
}

void evolution_demo(Outcome& o) {
  const std::string dir = QMACRO_TEST_DATA;
  const std::string cmd = std::string(QMACRO_CLI) + " evolve --povm " + dir + "/povm_z.json --hamiltonian " + dir +
                          "/hamiltonian_sx.json --t-max 3.141592653589793 --steps 100 --initial-p 1,0";
  const auto t0 = Clock::now();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while (pipe != nullptr && (got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pipe != nullptr ? ::pclose(pipe) : -1;
  const double secs = seconds_since(t0);
  o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI exit status");
  std::istringstream in(out);
  std::string line;
  std::getline(in, line);
  int points = 0;
  double worst = 0.0, s_min = 1e300, s_max = -1e300;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string c;
    std::vector<double> v;
    while (std::getline(cells, c, ',')) v.push_back(std::stod(c));
    if (v.size() != 4) continue;
    const double cs = std::cos(v[0]);
    worst = std::max(worst, std::abs(v[2] - testing::binary_entropy(cs * cs)));
    s_min = std::min(s_min, v[1]);
    s_max = std::max(s_max, v[1]);
    ++points;
  }
  o.require(points == 100, "grid size");
  o.require(worst <= 1e-8, "S_P deviates from closed form");
  o.require(s_max - s_min <= 1e-8, "S not constant");
  o.require(secs < 10.0, "runtime");
  o.detail << points << " points, worst |S_P - h(cos^2 t)| " << worst << ", S spread " << (s_max - s_min) << ", "
           << secs << " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"mppp-oracle-equivalence", mppp_oracle},
      {"macroscopicity-consensus", theorem_consensus},
      {"counterexamples", counterexamples},
      {"fixed-point-dimension", fixed_point_dimension},
      {"cesaro-convergence", cesaro_convergence},
      {"entropic-inequalities", entropic_inequalities},
      {"macro-state-entropy-chain", macro_state_chain},
      {"class-hierarchy", hierarchy},
      {"discord-suite", discord_suite},
      {"evolution-demo", evolution_demo},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
