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

// qmacro: command-line front end. JSON in, JSON or CSV out.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qmacro/correlations.hpp"
#include "qmacro/entropy.hpp"
#include "qmacro/error.hpp"
#include "qmacro/io.hpp"
#include "qmacro/mppp.hpp"
#include "qmacro/random.hpp"
#include "qmacro/resources.hpp"

namespace {

using qmacro::Error;
using qmacro::ErrorKind;
using qmacro::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitTheorem = 4;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Schema: return kExitSchema;
    case ErrorKind::TheoremViolation: return kExitTheorem;
    default: return kExitPrecondition;
  }
}

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string csv;
  std::string output;

  qmacro::Tolerance tolerance() const {
    qmacro::Tolerance t;
    t.rel_eps = tol;
    t.validate();
    return t;
  }
};

std::string fmt12(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void append_csv(const std::string& path, const CsvTable& t) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::PreconditionViolated, "cannot open CSV file " + path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  if (fresh) line(t.header);
  for (const auto& r : t.rows) line(r);
}

void emit_text(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw Error(ErrorKind::PreconditionViolated, "cannot open output file " + g.output);
  out << text;
}

void emit_json(const Globals& g, const Json& j) {
  emit_text(g, j.dump(2) + "\n");
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep input order.
// The first failure (by index) is rethrown.
template <typename R, typename F>
std::vector<R> run_batch(std::size_t n, int jobs, F fn) {
  std::vector<std::optional<R>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<R> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

Json batch_json(std::vector<Json> items) {
  if (items.size() == 1) return std::move(items.front());
  Json arr = Json::array();
  for (auto& j : items) arr.push_back(std::move(j));
  return arr;
}

struct FrameArgs {
  std::string frame;
  std::string povm;
  std::string prior;
};

void add_frame_options(CLI::App* cmd, FrameArgs& a, bool prior_optional = false) {
  auto* f = cmd->add_option("--frame", a.frame, "frame JSON (with \"povm\" and \"prior\")");
  auto* p = cmd->add_option("--povm", a.povm, "POVM JSON");
  auto* g = cmd->add_option("--prior", a.prior,
                            prior_optional ? "prior state JSON (default: maximally mixed)" : "prior state JSON");
  f->excludes(p)->excludes(g);
}

qmacro::InferentialFrame load_frame(const FrameArgs& a, const Globals& g, bool prior_optional = false) {
  const auto tol = g.tolerance();
  if (!a.frame.empty()) return qmacro::io::frame_from_json(qmacro::io::read_file(a.frame), tol, a.frame);
  if (a.povm.empty()) throw Error(ErrorKind::Schema, "need --frame or --povm");
  const qmacro::Povm p = qmacro::io::povm_from_json(qmacro::io::read_file(a.povm), tol, a.povm);
  if (a.prior.empty()) {
    if (!prior_optional) throw Error(ErrorKind::Schema, "need --prior with --povm");
    return qmacro::compute_mppp(p, qmacro::DensityMatrix::maximally_mixed(p.dim()), tol);
  }
  return qmacro::compute_mppp(p, qmacro::io::state_from_json(qmacro::io::read_file(a.prior), tol, a.prior), tol);
}

void warn_pruned(const qmacro::Povm& p) {
  for (const auto& l : p.pruned_labels()) std::cerr << "warning: dropped zero POVM element '" << l << "'\n";
}

// ------------------------------------------------------------------ commands

int cmd_mppp(const Globals& g, const FrameArgs& a) {
  const qmacro::InferentialFrame f = load_frame(a, g);
  warn_pruned(f.povm());
  emit_json(g, qmacro::io::frame_to_json(f));
  if (!g.csv.empty()) {
    CsvTable t{{"outcomes", "blocks"}, {{std::to_string(f.povm().size()), std::to_string(f.mppp().size())}}};
    append_csv(g.csv, t);
  }
  return kExitOk;
}

int cmd_entropy(const Globals& g, const std::vector<std::string>& states, const std::string& povm_path) {
  const auto tol = g.tolerance();
  const qmacro::Povm p = qmacro::io::povm_from_json(qmacro::io::read_file(povm_path), tol, povm_path);
  warn_pruned(p);
  struct Row {
    Json j;
    std::vector<std::string> csv;
  };
  auto rows = run_batch<Row>(states.size(), g.jobs, [&](std::size_t i) {
    const auto rho = qmacro::io::state_from_json(qmacro::io::read_file(states[i]), tol, states[i]);
    const auto s = qmacro::von_neumann_entropy(rho, tol);
    const auto sp = qmacro::observational_entropy(rho, p);
    Json j{{"state", states[i]},
           {"von_neumann", s.value},
           {"observational", sp.value},
           {"deficit_uniform", sp.value - s.value}};
    return Row{j, {states[i], fmt12(s.value), fmt12(sp.value), fmt12(sp.value - s.value)}};
  });
  std::vector<Json> out;
  CsvTable t{{"state", "von_neumann", "observational", "deficit_uniform"}, {}};
  for (auto& r : rows) {
    out.push_back(std::move(r.j));
    t.rows.push_back(std::move(r.csv));
  }
  emit_json(g, batch_json(std::move(out)));
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

int cmd_deficit(const Globals& g, const std::vector<std::string>& states, const std::string& povm_path,
                const std::string& prior_path) {
  const auto tol = g.tolerance();
  const qmacro::Povm p = qmacro::io::povm_from_json(qmacro::io::read_file(povm_path), tol, povm_path);
  const auto gamma = qmacro::io::state_from_json(qmacro::io::read_file(prior_path), tol, prior_path);
  warn_pruned(p);
  struct Row {
    Json j;
    std::vector<std::string> csv;
  };
  auto rows = run_batch<Row>(states.size(), g.jobs, [&](std::size_t i) {
    const auto rho = qmacro::io::state_from_json(qmacro::io::read_file(states[i]), tol, states[i]);
    const auto d = qmacro::observational_deficit(rho, gamma, p, tol);
    const auto full = qmacro::relative_entropy(rho, gamma, tol);
    Json j{{"state", states[i]},
           {"deficit", qmacro::io::to_json(d)},
           {"relative_entropy", qmacro::io::to_json(full)}};
    return Row{j, {states[i], fmt12(d.as_double()), fmt12(full.as_double())}};
  });
  std::vector<Json> out;
  CsvTable t{{"state", "deficit", "relative_entropy"}, {}};
  for (auto& r : rows) {
    out.push_back(std::move(r.j));
    t.rows.push_back(std::move(r.csv));
  }
  emit_json(g, batch_json(std::move(out)));
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

int cmd_macro_test(const Globals& g, const std::vector<std::string>& states, const FrameArgs& a) {
  const auto tol = g.tolerance();
  const qmacro::InferentialFrame f = load_frame(a, g);
  warn_pruned(f.povm());
  struct Row {
    Json j;
    std::vector<std::string> csv;
  };
  auto rows = run_batch<Row>(states.size(), g.jobs, [&](std::size_t i) {
    const auto rho = qmacro::io::state_from_json(qmacro::io::read_file(states[i]), tol, states[i]);
    const auto rep = qmacro::macro_test(rho, f);
    Json j = qmacro::io::to_json(rep);
    j["state"] = states[i];
    return Row{j,
               {states[i], rep.verdict ? "true" : "false", fmt12(rep.deficit.as_double()),
                fmt12(rep.cg_fixed.residual), fmt12(rep.rdm_fixed.residual), fmt12(rep.decomposition.residual)}};
  });
  std::vector<Json> out;
  CsvTable t{{"state", "verdict", "deficit", "cg_residual", "rdm_residual", "fit_residual"}, {}};
  for (auto& r : rows) {
    out.push_back(std::move(r.j));
    t.rows.push_back(std::move(r.csv));
  }
  emit_json(g, batch_json(std::move(out)));
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

int cmd_classify(const Globals& g, const std::vector<std::string>& channels, int random_count, const FrameArgs& a) {
  const qmacro::InferentialFrame f = load_frame(a, g);
  warn_pruned(f.povm());
  CsvTable t{{"channel", "cco", "rco", "mno", "cco_residual", "rco_residual", "mno_residual"}, {}};
  auto row = [&](const std::string& name, const qmacro::ChannelClassification& c) {
    t.rows.push_back({name, c.is_cco ? "true" : "false", c.is_rco ? "true" : "false", c.is_mno ? "true" : "false",
                      fmt12(c.cco_residual), fmt12(c.rco_residual), fmt12(c.mno_residual)});
  };
  std::vector<Json> out;
  auto results = run_batch<std::pair<Json, qmacro::ChannelClassification>>(
      channels.size(), g.jobs, [&](std::size_t i) {
        const auto e = qmacro::io::channel_from_json(qmacro::io::read_file(channels[i]), channels[i]);
        const auto c = qmacro::classify_channel(e, f);
        Json j = qmacro::io::to_json(c);
        j["channel"] = channels[i];
        return std::make_pair(j, c);
      });
  for (auto& [j, c] : results) {
    row(j["channel"].get<std::string>(), c);
    out.push_back(std::move(j));
  }
  if (random_count > 0) {
    qmacro::Rng rng(g.seed);
    Json summary{{"seed", g.seed}, {"count", random_count}, {"cco", 0}, {"rco", 0}, {"mno", 0}};
    int cco = 0, rco = 0, mno = 0;
    for (int k = 0; k < random_count; ++k) {
      const auto e = qmacro::random_channel(f.dim(), f.dim(), rng);
      const auto c = qmacro::classify_channel(e, f);
      cco += c.is_cco;
      rco += c.is_rco;
      mno += c.is_mno;
      row("random#" + std::to_string(k), c);
    }
    summary["cco"] = cco;
    summary["rco"] = rco;
    summary["mno"] = mno;
    out.push_back(Json{{"random_sample", summary}});
  }
  if (out.empty()) throw Error(ErrorKind::Schema, "need --channel or --random");
  emit_json(g, batch_json(std::move(out)));
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

int cmd_discord(const Globals& g, const std::vector<std::string>& states, const std::string& povm_path,
                const std::vector<int>& dims) {
  const auto tol = g.tolerance();
  const qmacro::Povm p = qmacro::io::povm_from_json(qmacro::io::read_file(povm_path), tol, povm_path);
  warn_pruned(p);
  struct Row {
    Json j;
    std::vector<std::string> csv;
  };
  auto rows = run_batch<Row>(states.size(), g.jobs, [&](std::size_t i) {
    const auto rho = qmacro::io::state_from_json(qmacro::io::read_file(states[i]), tol, states[i]);
    const auto rep = qmacro::observational_discord(rho, p, dims[0], dims[1]);
    Json j = qmacro::io::to_json(rep);
    j["state"] = states[i];
    const std::string vanish = rep.vanishing ? (rep.vanishing->verdict ? "true" : "false") : "";
    return Row{j, {states[i], fmt12(rep.total_mi.value), fmt12(rep.measured_mi.value), fmt12(rep.discord.value), vanish}};
  });
  std::vector<Json> out;
  CsvTable t{{"state", "total_mi", "measured_mi", "discord", "vanishing"}, {}};
  for (auto& r : rows) {
    out.push_back(std::move(r.j));
    t.rows.push_back(std::move(r.csv));
  }
  emit_json(g, batch_json(std::move(out)));
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

struct EvolveArgs {
  FrameArgs frame;
  std::string hamiltonian;
  double t_max = 1.0;
  int steps = 100;
  std::vector<double> initial_p;
  std::string initial_state;
};

int cmd_evolve(const Globals& g, const EvolveArgs& a) {
  const auto tol = g.tolerance();
  const qmacro::InferentialFrame f = load_frame(a.frame, g, true);
  warn_pruned(f.povm());
  const qmacro::Matrix h = qmacro::io::operator_from_json(qmacro::io::read_file(a.hamiltonian), a.hamiltonian);
  if (h.rows() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian dimension does not match the frame");
  if (!qmacro::is_hermitian(h, tol)) throw Error(ErrorKind::NotHermitian, "Hamiltonian is not Hermitian");
  if (a.steps < 1) throw Error(ErrorKind::PreconditionViolated, "--steps must be positive");

  std::optional<qmacro::DensityMatrix> rho0;
  if (!a.initial_state.empty()) {
    rho0 = qmacro::io::state_from_json(qmacro::io::read_file(a.initial_state), tol, a.initial_state);
  } else {
    const auto& ext = f.free_extremes();
    if (a.initial_p.size() != ext.size()) {
      throw Error(ErrorKind::PreconditionViolated, "--initial-p needs " + std::to_string(ext.size()) +
                                                       " weights, one per MPPP block");
    }
    double s = 0.0;
    qmacro::Matrix m = qmacro::Matrix::Zero(f.dim(), f.dim());
    for (std::size_t y = 0; y < ext.size(); ++y) {
      if (a.initial_p[y] < 0.0) throw Error(ErrorKind::PreconditionViolated, "--initial-p has a negative weight");
      s += a.initial_p[y];
      m += a.initial_p[y] * ext[y].matrix();
    }
    if (std::abs(s - 1.0) > 1e-9) throw Error(ErrorKind::PreconditionViolated, "--initial-p must sum to 1");
    rho0 = qmacro::DensityMatrix::normalized(m, tol);
  }

  const auto u = qmacro::DensityMatrix::maximally_mixed(f.dim());
  CsvTable t{{"t", "S", "S_P", "deficit"}, {}};
  double s0 = 0.0;
  for (int k = 0; k < a.steps; ++k) {
    const double time = a.steps == 1 ? 0.0 : a.t_max * k / (a.steps - 1);
    const qmacro::Matrix ut = qmacro::unitary_evolution(h, time, tol);
    const qmacro::DensityMatrix rho = qmacro::DensityMatrix::normalized(
        qmacro::hermitian_part(ut * rho0->matrix() * ut.adjoint()), tol);
    const double s = qmacro::von_neumann_entropy(rho, tol).value;
    const double sp = qmacro::observational_entropy(rho, f.povm()).value;
    const double dp = qmacro::observational_deficit(rho, u, f.povm(), tol).as_double();
    if (k == 0) s0 = s;
    if (sp < s - 1e-8) throw Error(ErrorKind::TheoremViolation, "observational entropy below von Neumann entropy");
    if (std::abs(s - s0) > 1e-8) throw Error(ErrorKind::TheoremViolation, "von Neumann entropy drifted under unitary evolution");
    t.rows.push_back({fmt12(time), fmt12(s), fmt12(sp), fmt12(dp)});
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  emit_text(g, os.str());
  if (!g.csv.empty()) append_csv(g.csv, t);
  return kExitOk;
}

int cmd_scenario_coherence(const Globals& g, int d) {
  const auto f = qmacro::scenario_coherence(d);
  Json j = qmacro::io::frame_to_json(f);
  j["scenario"] = "coherence";
  emit_json(g, j);
  return kExitOk;
}

int cmd_scenario_athermality(const Globals& g, const std::string& h_path, double beta, const std::string& povm_path) {
  const auto tol = g.tolerance();
  const qmacro::Matrix h = qmacro::io::operator_from_json(qmacro::io::read_file(h_path), h_path);
  if (!qmacro::is_hermitian(h, tol)) throw Error(ErrorKind::NotHermitian, "Hamiltonian is not Hermitian");
  const qmacro::Povm p = qmacro::io::povm_from_json(qmacro::io::read_file(povm_path), tol, povm_path);
  const auto f = qmacro::scenario_athermality(h, beta, p);
  Json j = qmacro::io::frame_to_json(f);
  j["scenario"] = "athermality";
  j["beta"] = beta;
  emit_json(g, j);
  return kExitOk;
}

int cmd_scenario_asymmetry(const Globals& g, const std::string& rep_path) {
  const Json doc = qmacro::io::read_file(rep_path);
  const Json& list = doc.is_object() && doc.contains("unitaries") ? doc["unitaries"] : doc;
  if (!list.is_array() || list.empty()) throw Error(ErrorKind::Schema, rep_path + ": expected a list of unitaries");
  std::vector<qmacro::Matrix> rep;
  for (std::size_t i = 0; i < list.size(); ++i) {
    rep.push_back(qmacro::io::matrix_from_json(list[i], rep_path + ".unitaries[" + std::to_string(i) + "]"));
  }
  const auto f = qmacro::scenario_asymmetry(rep);
  Json j = qmacro::io::frame_to_json(f);
  j["scenario"] = "asymmetry";
  j["group_order"] = rep.size();
  emit_json(g, j);
  return kExitOk;
}

constexpr const char* kFooter =
    "Exit codes: 0 ok, 2 schema or usage error, 3 precondition violated\n"
    "(singular prior, non-Hermitian Hamiltonian, ...), 4 internal theorem\n"
    "violation (equivalent conditions disagreed; indicates a numerical issue).";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macroscopic-state analysis for finite-dimensional quantum systems"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "relative tolerance of the operator zero test")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized subcommands");
  app.add_option("--jobs", g.jobs, "worker threads for batch inputs")->check(CLI::PositiveNumber);
  app.add_option("--csv", g.csv, "append result rows to this CSV file");
  app.add_option("--output", g.output, "write output here instead of stdout");

  FrameArgs mppp_frame;
  auto* mppp = app.add_subcommand("mppp", "maximal projective post-processing of a POVM and prior");
  add_frame_options(mppp, mppp_frame);

  std::vector<std::string> ent_states;
  std::string ent_povm;
  auto* ent = app.add_subcommand("entropy", "von Neumann and observational entropy");
  ent->add_option("--state", ent_states, "state JSON (repeatable)")->required();
  ent->add_option("--povm", ent_povm, "POVM JSON")->required();

  std::vector<std::string> def_states;
  std::string def_povm, def_prior;
  auto* def = app.add_subcommand("deficit", "observational deficit against a prior");
  def->add_option("--state", def_states, "state JSON (repeatable)")->required();
  def->add_option("--povm", def_povm, "POVM JSON")->required();
  def->add_option("--prior", def_prior, "prior state JSON")->required();

  std::vector<std::string> mt_states;
  FrameArgs mt_frame;
  auto* mt = app.add_subcommand("macro-test", "evaluate the four macroscopicity conditions");
  mt->add_option("--state", mt_states, "state JSON (repeatable)")->required();
  add_frame_options(mt, mt_frame);

  std::vector<std::string> cl_channels;
  int cl_random = 0;
  FrameArgs cl_frame;
  auto* cl = app.add_subcommand("classify", "classify channels as CCO / RCO / MNO");
  cl->add_option("--channel", cl_channels, "channel JSON (repeatable)");
  cl->add_option("--random", cl_random, "also classify this many random channels drawn with --seed");
  add_frame_options(cl, cl_frame);

  std::vector<std::string> dc_states;
  std::string dc_povm;
  std::vector<int> dc_dims;
  auto* dc = app.add_subcommand("discord", "observational discord of a bipartite state");
  dc->add_option("--state", dc_states, "bipartite state JSON (repeatable)")->required();
  dc->add_option("--povm", dc_povm, "POVM on subsystem A")->required();
  dc->add_option("--dims", dc_dims, "dA dB")->expected(2)->required();

  EvolveArgs ev;
  auto* evo = app.add_subcommand("evolve", "entropy along unitary evolution, as CSV (t,S,S_P,deficit)");
  add_frame_options(evo, ev.frame, true);
  evo->add_option("--hamiltonian", ev.hamiltonian, "Hamiltonian matrix JSON")->required();
  evo->add_option("--t-max", ev.t_max, "final time");
  evo->add_option("--steps", ev.steps, "number of grid points including t = 0");
  auto* ip = evo->add_option("--initial-p", ev.initial_p, "weights of the macroscopic initial state")->delimiter(',');
  auto* is = evo->add_option("--initial-state", ev.initial_state, "initial state JSON");
  ip->excludes(is);

  auto* sc = app.add_subcommand("scenario", "reference frames of standard resource theories");
  sc->require_subcommand(1);
  int sc_dim = 2;
  auto* sc_coh = sc->add_subcommand("coherence", "basis PVM with uniform prior");
  sc_coh->add_option("--dim", sc_dim, "dimension")->required();
  std::string sc_h, sc_povm;
  double sc_beta = 1.0;
  auto* sc_ath = sc->add_subcommand("athermality", "Gibbs prior with a trivial-MPPP POVM");
  sc_ath->add_option("--hamiltonian", sc_h, "Hamiltonian matrix JSON")->required();
  sc_ath->add_option("--beta", sc_beta, "inverse temperature");
  sc_ath->add_option("--povm", sc_povm, "POVM JSON")->required();
  std::string sc_rep;
  auto* sc_asy = sc->add_subcommand("asymmetry", "G-twirl of a finite group representation");
  sc_asy->add_option("--rep", sc_rep, "JSON {\"unitaries\": [matrix, ...]}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitSchema;
  }

  try {
    if (*mppp) return cmd_mppp(g, mppp_frame);
    if (*ent) return cmd_entropy(g, ent_states, ent_povm);
    if (*def) return cmd_deficit(g, def_states, def_povm, def_prior);
    if (*mt) return cmd_macro_test(g, mt_states, mt_frame);
    if (*cl) return cmd_classify(g, cl_channels, cl_random, cl_frame);
    if (*dc) return cmd_discord(g, dc_states, dc_povm, dc_dims);
    if (*evo) return cmd_evolve(g, ev);
    if (*sc_coh) return cmd_scenario_coherence(g, sc_dim);
    if (*sc_ath) return cmd_scenario_athermality(g, sc_h, sc_beta, sc_povm);
    if (*sc_asy) return cmd_scenario_asymmetry(g, sc_rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
