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

#include <map>
#include <string>
#include <vector>

#include "posform/complex.hpp"
#include "posform/probe.hpp"

namespace posform::classical {

/// Finite set of boundary states standing in for the germs of solutions on a
/// hypersurface.
struct StateSet {
  explicit StateSet(std::vector<std::string> states);
  std::vector<std::string> states;
};

/// Distributions over the states: orthant cone, counting pairing.
BoundarySpaceSpec stat_space(const StateSet& ss, std::string label = "states");

const std::vector<std::string>& states_of(const Complex& cx, SpaceId space);
/// Throws InvalidState for an unknown label.
std::size_t state_index(const Complex& cx, SpaceId space, const std::string& state);

BCVector indicator(const Complex& cx, SpaceId space, const std::string& state);
BCVector distribution(const Complex& cx, SpaceId space, const std::map<std::string, double>& weights);

struct Solution {
  std::string label;
  /// One state per boundary atom of the owning region, in boundary order.
  std::vector<std::string> boundary;
};

/// Solutions of a region together with their boundary data.
struct SolutionTable {
  RegionId region;
  std::vector<AtomId> atoms;
  std::vector<Solution> solutions;
};

SolutionTable make_solution_table(const Complex& cx, RegionId region, std::vector<Solution> solutions);

using BoundaryStates = std::vector<std::string>;
using ObservableTable = std::map<std::string, double>;

/// 1 iff some solution induces exactly `b`.
int det_null_value(const Complex& cx, const SolutionTable& table, const BoundaryStates& b);

/// O(phi) for the solution phi inducing `b`, 0 if there is none. Throws
/// AmbiguousBoundary when boundary-equivalent solutions disagree on O.
double det_observable_value(const Complex& cx, const SolutionTable& table, const ObservableTable& o,
                            const BoundaryStates& b);

/// Deterministic gluing: pairs of solutions that agree on the interface.
/// The composite's boundary data follow g.composite's boundary order.
SolutionTable glue_tables(const Complex& cx, const SolutionTable& m, const SolutionTable& n,
                          const Gluing& g);

/// Weight for every tuple of boundary states, keyed in boundary order.
using Kernel = std::map<BoundaryStates, double>;

/// Probe whose tensor over the indicator bases holds the kernel values.
Probe stat_probe(const Complex& cx, RegionId region, const Kernel& kernel, bool primitive = true);
/// Kernel identically 1: the permissive null-probe.
Probe permissive_probe(const Complex& cx, RegionId region);

}  // namespace posform::classical
