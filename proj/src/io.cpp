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

#include "qmacro/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qmacro/error.hpp"

namespace qmacro::io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Schema, path + ": " + msg);
}

const Json& require_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int require_positive_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) schema_error(path, "expected a positive integer");
  return j.get<int>();
}

// Validation failures inside a payload are reported as schema errors at the
// field that produced them.
template <typename F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema_error(path, e.what());
  }
}

std::vector<Matrix> matrix_list(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty list of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
    throw Error(ErrorKind::Schema, os.str());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Schema, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty list of rows");
  const std::size_t n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const Json& row = j[r];
    if (!row.is_array()) schema_error(rp, "expected a row (list of [re, im] pairs)");
    if (row.size() != n) schema_error(rp, "row length " + std::to_string(row.size()) + " in a " +
                                              std::to_string(n) + "-row matrix (matrices must be square)");
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = row[c];
      const std::string ep = rp + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        schema_error(ep, "expected [re, im]");
      }
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) schema_error(ep, "non-finite entry");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx(re, im);
    }
  }
  return m;
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"matrix", to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const Json& j, const Tolerance& tol, const std::string& path) {
  const Matrix m = matrix_from_json(require_field(j, "matrix", path), path + ".matrix");
  return at_field(path + ".matrix", [&] { return DensityMatrix(m, tol); });
}

Json to_json(const Povm& p) {
  Json els = Json::array();
  for (const Matrix& e : p.elements()) els.push_back(to_json(e));
  return Json{{"labels", p.labels()}, {"elements", std::move(els)}};
}

Povm povm_from_json(const Json& j, const Tolerance& tol, const std::string& path) {
  std::vector<Matrix> els = matrix_list(require_field(j, "elements", path), path + ".elements");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_array()) schema_error(path + ".labels", "expected a list of strings");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i].is_string()) {
        labels.push_back(l[i].get<std::string>());
      } else if (l[i].is_number_integer()) {
        labels.push_back(std::to_string(l[i].get<long long>()));
      } else {
        schema_error(path + ".labels[" + std::to_string(i) + "]", "expected a string");
      }
    }
    if (labels.size() != els.size()) schema_error(path + ".labels", "length differs from elements");
  } else {
    for (std::size_t i = 0; i < els.size(); ++i) labels.push_back(std::to_string(i));
  }
  return at_field(path + ".elements", [&] { return Povm(labels, els, tol); });
}

Json to_json(const Channel& e) {
  return Json{{"dim_in", e.dim_in()}, {"dim_out", e.dim_out()}, {"choi", to_json(e.choi())}};
}

Channel channel_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  if (j.contains("kraus")) {
    std::vector<Matrix> ks;
    const Json& kj = j["kraus"];
    if (!kj.is_array() || kj.empty()) schema_error(path + ".kraus", "expected a non-empty list of matrices");
    const int din = require_positive_int(require_field(j, "dim_in", path), path + ".dim_in");
    const int dout = require_positive_int(require_field(j, "dim_out", path), path + ".dim_out");
    for (std::size_t i = 0; i < kj.size(); ++i) {
      const std::string kp = path + ".kraus[" + std::to_string(i) + "]";
      const Json& k = kj[i];
      if (!k.is_array() || k.size() != static_cast<std::size_t>(dout)) {
        schema_error(kp, "expected " + std::to_string(dout) + " rows");
      }
      Matrix m(dout, din);
      for (int r = 0; r < dout; ++r) {
        const Json& row = k[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(din)) {
          schema_error(kp + "[" + std::to_string(r) + "]", "expected " + std::to_string(din) + " entries");
        }
        for (int c = 0; c < din; ++c) {
          const Json& e = row[static_cast<std::size_t>(c)];
          if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            schema_error(kp + "[" + std::to_string(r) + "][" + std::to_string(c) + "]", "expected [re, im]");
          }
          m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
      }
      ks.push_back(std::move(m));
    }
    return at_field(path + ".kraus", [&] { return Channel::from_kraus(ks); });
  }
  if (j.contains("choi")) {
    const Matrix c = matrix_from_json(j["choi"], path + ".choi");
    int din = 0, dout = 0;
    if (j.contains("dim_in") && j.contains("dim_out")) {
      din = require_positive_int(j["dim_in"], path + ".dim_in");
      dout = require_positive_int(j["dim_out"], path + ".dim_out");
    } else {
      // Square channel assumed: dim^2 = size of the Choi matrix.
      const auto n = static_cast<int>(c.rows());
      const auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (r * r != n) schema_error(path + ".choi", "cannot infer dimensions; give dim_in and dim_out");
      din = dout = r;
    }
    if (static_cast<int>(c.rows()) != din * dout) schema_error(path + ".choi", "size is not dim_in * dim_out");
    return at_field(path + ".choi", [&] { return Channel::from_choi(din, dout, c); });
  }
  schema_error(path, "channel needs \"kraus\" or \"choi\"");
}

Json to_json(const EntropyValue& v) {
  if (v.finite) return Json(v.value);
  return Json("inf");
}

Json to_json(const MacroReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["deficit"] = to_json(r.deficit);
  j["conditions"] = {
      {"deficit_zero", r.deficit_zero},
      {"cg_fixed", r.cg_fixed.holds},
      {"rdm_fixed", r.rdm_fixed.holds},
      {"decomposition", r.decomposition.holds},
  };
  j["residuals"] = {
      {"cg", r.cg_fixed.residual},
      {"rdm", r.rdm_fixed.residual},
      {"decomposition", r.decomposition.residual},
  };
  if (r.coefficients) j["coefficients"] = *r.coefficients;
  return j;
}

Json to_json(const ChannelClassification& c) {
  return Json{{"cco", c.is_cco},
              {"rco", c.is_rco},
              {"mno", c.is_mno},
              {"residuals", {{"cco", c.cco_residual}, {"rco", c.rco_residual}, {"mno", c.mno_residual}}}};
}

Json to_json(const DiscordReport& r) {
  Json j{{"total_mi", to_json(r.total_mi)}, {"measured_mi", to_json(r.measured_mi)}, {"discord", to_json(r.discord)}};
  if (r.vanishing) {
    j["vanishing"] = to_json(*r.vanishing);
  } else {
    j["vanishing"] = nullptr;
  }
  return j;
}

Json frame_to_json(const InferentialFrame& f) {
  Json part = Json::array();
  for (const auto& block : f.partition().blocks) {
    Json b = Json::array();
    for (std::size_t x : block) b.push_back(f.povm().labels()[x]);
    part.push_back(std::move(b));
  }
  Json j;
  j["povm"] = to_json(f.povm());
  j["prior"] = to_json(f.prior());
  j["partition"] = std::move(part);
  j["mppp"] = to_json(f.mppp());
  j["rdm_choi"] = to_json(f.rdm().choi());
  return j;
}

InferentialFrame frame_from_json(const Json& j, const Tolerance& tol, const std::string& path) {
  const Povm p = povm_from_json(require_field(j, "povm", path), tol, path + ".povm");
  const DensityMatrix g = state_from_json(require_field(j, "prior", path), tol, path + ".prior");
  return compute_mppp(p, g, tol);
}

Matrix operator_from_json(const Json& j, const std::string& path) {
  if (j.is_object()) return matrix_from_json(require_field(j, "matrix", path), path + ".matrix");
  return matrix_from_json(j, path);
}

}  // namespace qmacro::io
