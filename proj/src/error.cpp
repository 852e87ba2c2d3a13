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

#include "posform/error.hpp"

namespace posform {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DegeneratePairing: return "DegeneratePairing";
    case Errc::SolverNonConvergence: return "SolverNonConvergence";
    case Errc::UnknownSpace: return "UnknownSpace";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::UnknownRegion: return "UnknownRegion";
    case Errc::RepeatedAtom: return "RepeatedAtom";
    case Errc::EmptyInterface: return "EmptyInterface";
    case Errc::SelfGluing: return "SelfGluing";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::RegionMismatch: return "RegionMismatch";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NotSelfAdjoint: return "NotSelfAdjoint";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::InvalidState: return "InvalidState";
    case Errc::AmbiguousBoundary: return "AmbiguousBoundary";
    case Errc::MissingKernelEntry: return "MissingKernelEntry";
    case Errc::NegativeKernelEntry: return "NegativeKernelEntry";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace posform
