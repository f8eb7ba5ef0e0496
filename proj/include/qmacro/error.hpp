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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmacro {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  DimensionMismatch,
  InvalidState,
  InvalidPovm,
  InvalidStochasticMap,
  InvalidChannel,
  PreconditionViolated,
  PriorNotInvertible,
  ImageNotInvertible,
  IndeterminateDifference,
  TooManyOutcomes,
  MpppNotTrivial,
  NotARepresentation,
  NontrivialMultiplicity,
  MarginalNotInvertible,
  NonProductPrior,
  Schema,
  NumericalFailure,
  TheoremViolation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (notably the CLI) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::InvalidStochasticMap: return "InvalidStochasticMap";
    case ErrorKind::InvalidChannel: return "InvalidChannel";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::PriorNotInvertible: return "PriorNotInvertible";
    case ErrorKind::ImageNotInvertible: return "ImageNotInvertible";
    case ErrorKind::IndeterminateDifference: return "IndeterminateDifference";
    case ErrorKind::TooManyOutcomes: return "TooManyOutcomes";
    case ErrorKind::MpppNotTrivial: return "MpppNotTrivial";
    case ErrorKind::NotARepresentation: return "NotARepresentation";
    case ErrorKind::NontrivialMultiplicity: return "NontrivialMultiplicity";
    case ErrorKind::MarginalNotInvertible: return "MarginalNotInvertible";
    case ErrorKind::NonProductPrior: return "NonProductPrior";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
  }
  return "Unknown";
}

}  // namespace qmacro
