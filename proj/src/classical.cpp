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

#include "posform/classical.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <unordered_set>

#include "posform/error.hpp"

namespace posform::classical {

namespace {

std::string join(const BoundaryStates& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += b[i];
  }
  return out + ")";
}

void check_tuple(const Complex& cx, const std::vector<AtomId>& atoms, const BoundaryStates& b) {
  if (b.size() != atoms.size()) {
    throw Error(Errc::DimensionMismatch, "boundary tuple " + join(b) + " has " +
                                             std::to_string(b.size()) + " states, region has " +
                                             std::to_string(atoms.size()) + " atoms");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) state_index(cx, cx.atom(atoms[i]).space, b[i]);
}

}  // namespace

StateSet::StateSet(std::vector<std::string> s) : states(std::move(s)) {
  if (states.empty()) throw Error(Errc::InvalidArgument, "state set is empty");
  std::set<std::string> seen;
  for (const auto& st : states) {
    if (!seen.insert(st).second) throw Error(Errc::InvalidArgument, "state '" + st + "' is repeated");
  }
}

BoundarySpaceSpec stat_space(const StateSet& ss, std::string label) {
  const auto d = static_cast<Eigen::Index>(ss.states.size());
  return BoundarySpaceSpec(ss.states.size(), ConeSpec::orthant(), SlicePairing::identity(d),
                           std::move(label), ss.states);
}

const std::vector<std::string>& states_of(const Complex& cx, SpaceId space) {
  const auto& spec = cx.space(space);
  if (spec.basis_labels.empty()) {
    throw Error(Errc::SpaceMismatch, "space '" + spec.label + "' has no named states");
  }
  return spec.basis_labels;
}

std::size_t state_index(const Complex& cx, SpaceId space, const std::string& state) {
  const auto& states = states_of(cx, space);
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == state) return i;
  throw Error(Errc::InvalidState, "'" + state + "' is not a state of space '" + cx.space(space).label + "'");
}

BCVector indicator(const Complex& cx, SpaceId space, const std::string& state) {
  const auto d = static_cast<Eigen::Index>(cx.space(space).dim);
  return {space, Eigen::VectorXd::Unit(d, static_cast<Eigen::Index>(state_index(cx, space, state)))};
}

BCVector distribution(const Complex& cx, SpaceId space, const std::map<std::string, double>& weights) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cx.space(space).dim));
  for (const auto& [state, w] : weights) c(static_cast<Eigen::Index>(state_index(cx, space, state))) += w;
  return {space, std::move(c)};
}

SolutionTable make_solution_table(const Complex& cx, RegionId region, std::vector<Solution> solutions) {
  SolutionTable t{region, cx.region(region).boundary, std::move(solutions)};
  std::unordered_set<std::string> labels;
  for (const auto& s : t.solutions) {
    if (!labels.insert(s.label).second) {
      throw Error(Errc::InvalidArgument, "solution label '" + s.label + "' is repeated");
    }
    check_tuple(cx, t.atoms, s.boundary);
  }
  return t;
}

int det_null_value(const Complex& cx, const SolutionTable& table, const BoundaryStates& b) {
  check_tuple(cx, table.atoms, b);
  for (const auto& s : table.solutions)
    if (s.boundary == b) return 1;
  return 0;
}

double det_observable_value(const Complex& cx, const SolutionTable& table, const ObservableTable& o,
                            const BoundaryStates& b) {
  check_tuple(cx, table.atoms, b);
  std::optional<double> value;
  for (const auto& s : table.solutions) {
    auto it = o.find(s.label);
    if (it == o.end()) {
      throw Error(Errc::InvalidArgument, "observable is undefined on solution '" + s.label + "'");
    }
    if (s.boundary != b) continue;
    if (value && *value != it->second) {
      throw Error(Errc::AmbiguousBoundary, "solutions inducing " + join(b) +
                                               " carry different observable values");
    }
    value = it->second;
  }
  return value.value_or(0.0);
}

SolutionTable glue_tables(const Complex& cx, const SolutionTable& m, const SolutionTable& n,
                          const Gluing& g) {
  if (m.region != g.left || n.region != g.right) {
    throw Error(Errc::RegionMismatch, "solution tables do not sit on the glued regions");
  }
  auto positions = [](const std::vector<AtomId>& atoms, const std::vector<AtomId>& wanted) {
    std::vector<std::size_t> pos;
    for (AtomId a : wanted) {
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == a) pos.push_back(i);
    }
    return pos;
  };
  const auto mi = positions(m.atoms, g.interface);
  const auto ni = positions(n.atoms, g.interface);
  const Region& composite = cx.region(g.composite);
  std::vector<std::pair<int, std::size_t>> source;  // (0 = m, 1 = n, index)
  for (AtomId a : composite.boundary) {
    bool found = false;
    for (std::size_t i = 0; i < m.atoms.size() && !found; ++i)
      if (m.atoms[i] == a) source.emplace_back(0, i), found = true;
    for (std::size_t i = 0; i < n.atoms.size() && !found; ++i)
      if (n.atoms[i] == a) source.emplace_back(1, i), found = true;
  }

  std::vector<Solution> out;
  for (const auto& sm : m.solutions) {
    for (const auto& sn : n.solutions) {
      bool agree = true;
      for (std::size_t k = 0; k < mi.size() && agree; ++k) agree = sm.boundary[mi[k]] == sn.boundary[ni[k]];
      if (!agree) continue;
      Solution s{sm.label + "*" + sn.label, {}};
      for (auto [side, idx] : source) s.boundary.push_back(side == 0 ? sm.boundary[idx] : sn.boundary[idx]);
      out.push_back(std::move(s));
    }
  }
  return make_solution_table(cx, g.composite, std::move(out));
}

Probe stat_probe(const Complex& cx, RegionId region, const Kernel& kernel, bool primitive) {
  const Region& r = cx.region(region);
  std::vector<std::size_t> shape;
  for (AtomId a : r.boundary) shape.push_back(states_of(cx, cx.atom(a).space).size());
  Tensor t(shape);

  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    BoundaryStates key;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      key.push_back(states_of(cx, cx.atom(r.boundary[i]).space)[idx[i]]);
    }
    auto it = kernel.find(key);
    if (it == kernel.end()) throw Error(Errc::MissingKernelEntry, "no kernel value for " + join(key));
    if (!std::isfinite(it->second)) throw Error(Errc::NonFinite, "kernel value for " + join(key));
    if (primitive && it->second < 0.0) {
      throw Error(Errc::NegativeKernelEntry, "kernel value for " + join(key) + " is negative");
    }
    t.data()[flat] = it->second;
    for (std::size_t a = idx.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  for (const auto& [key, value] : kernel) check_tuple(cx, r.boundary, key);
  return make_probe(cx, region, std::move(t), primitive);
}

Probe permissive_probe(const Complex& cx, RegionId region) {
  std::vector<std::size_t> shape;
  for (AtomId a : cx.region(region).boundary) shape.push_back(states_of(cx, cx.atom(a).space).size());
  return make_probe(cx, region, Tensor(shape, 1.0), true);
}

}  // namespace posform::classical
