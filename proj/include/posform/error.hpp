// Copyright 2026 The posform Authors
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

namespace posform {

enum class Errc {
  DimensionMismatch,
  NonFinite,
  InvalidArgument,
  DegeneratePairing,
  SolverNonConvergence,
  UnknownSpace,
  UnknownAtom,
  UnknownRegion,
  RepeatedAtom,
  EmptyInterface,
  SelfGluing,
  IncompleteAssignment,
  SpaceMismatch,
  RegionMismatch,
  ZeroDenominator,
  NotSelfAdjoint,
  NotUnitary,
  InvalidState,
  AmbiguousBoundary,
  MissingKernelEntry,
  NegativeKernelEntry,
};

std::string_view to_string(Errc code) noexcept;

/// Every engine failure is reported as an Error carrying a stable code; the
/// message is prefixed with the code name so that records printed by the CLI
/// can be matched on the first token.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace posform
