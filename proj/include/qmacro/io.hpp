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

// JSON schema shared by the library and the CLI.
//
//   matrix  : [[[re, im], ...], ...]           list of rows
//   state   : {"matrix": matrix}
//   povm    : {"labels": [str, ...], "elements": [matrix, ...]}
//   channel : {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]} | {"choi": matrix}
//
// Readers raise Error(Schema) naming the offending field path.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmacro/correlations.hpp"
#include "qmacro/mppp.hpp"
#include "qmacro/resources.hpp"

namespace qmacro::io {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become Schema errors with line and column.
Json parse(const std::string& text, const std::string& source = "<input>");
Json read_file(const std::string& path);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path = "matrix");

Json to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const Json& j, const Tolerance& tol = {}, const std::string& path = "$");

Json to_json(const Povm& p);
Povm povm_from_json(const Json& j, const Tolerance& tol = {}, const std::string& path = "$");

/// Emitted as {"dim_in", "dim_out", "choi"}.
Json to_json(const Channel& e);
Channel channel_from_json(const Json& j, const std::string& path = "$");

Json to_json(const EntropyValue& v);
Json to_json(const MacroReport& r);
Json to_json(const ChannelClassification& c);
Json to_json(const DiscordReport& r);

/// {"povm", "prior", "partition": [[labels]], "mppp", "rdm_choi"}.
Json frame_to_json(const InferentialFrame& f);
/// Rebuilds a frame from its "povm" and "prior" fields.
InferentialFrame frame_from_json(const Json& j, const Tolerance& tol = {}, const std::string& path = "$");

/// A Hermitian operator given either as a bare matrix or {"matrix": ...}.
Matrix operator_from_json(const Json& j, const std::string& path = "$");

}  // namespace qmacro::io
