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

#include "posform/complex.hpp"

#include <algorithm>
#include <unordered_set>

#include "posform/error.hpp"

namespace posform {

std::string_view to_string(RegionKind kind) noexcept {
  switch (kind) {
    case RegionKind::Elementary: return "elementary";
    case RegionKind::Slice: return "slice";
    case RegionKind::Composite: return "composite";
  }
  return "unknown";
}

SpaceId Complex::add_space(BoundarySpaceSpec spec) {
  SignedBasis basis = orthonormalize(spec);
  spaces_.push_back({std::move(spec), std::move(basis)});
  return SpaceId{spaces_.size() - 1};
}

AtomId Complex::make_atom(std::string label, SpaceId space_id) {
  if (space_id.value >= spaces_.size()) {
    throw Error(Errc::UnknownSpace, "no space with id " + std::to_string(space_id.value));
  }
  AtomId id{atoms_.size()};
  atoms_.push_back({id, std::move(label), space_id});
  return id;
}

RegionId Complex::make_region(std::string label, std::vector<AtomId> boundary) {
  std::unordered_set<AtomId> seen;
  for (AtomId a : boundary) {
    atom(a);
    if (!seen.insert(a).second) {
      throw Error(Errc::RepeatedAtom, "atom '" + atoms_[a.value].label +
                                          "' appears twice on the boundary of region '" + label +
                                          "'");
    }
  }
  RegionId id{regions_.size()};
  regions_.push_back({id, std::move(label), std::move(boundary), RegionKind::Elementary});
  gluings_.emplace_back();
  return id;
}

RegionId Complex::slice(AtomId a) {
  const Atom original = atom(a);
  AtomId mirror = make_atom(original.label + "'", original.space);
  RegionId id{regions_.size()};
  regions_.push_back({id, "slice(" + original.label + ")", {a, mirror}, RegionKind::Slice});
  gluings_.emplace_back();
  return id;
}

GlueResult Complex::glue(RegionId m, RegionId n) {
  if (m == n) {
    throw Error(Errc::SelfGluing, "region '" + region(m).label + "' cannot be glued to itself");
  }
  const Region left = region(m);
  const Region right = region(n);

  std::unordered_set<AtomId> right_atoms(right.boundary.begin(), right.boundary.end());
  Gluing g{m, n, RegionId{regions_.size()}, {}};
  for (AtomId a : left.boundary) {
    if (right_atoms.contains(a)) g.interface.push_back(a);
  }
  if (g.interface.empty()) {
    throw Error(Errc::EmptyInterface, "regions '" + left.label + "' and '" + right.label +
                                          "' share no boundary atom");
  }

  std::unordered_set<AtomId> shared(g.interface.begin(), g.interface.end());
  std::vector<AtomId> boundary;
  for (AtomId a : left.boundary)
    if (!shared.contains(a)) boundary.push_back(a);
  for (AtomId a : right.boundary)
    if (!shared.contains(a)) boundary.push_back(a);

  RegionId id = g.composite;
  regions_.push_back({id, left.label + "+" + right.label, std::move(boundary), RegionKind::Composite});
  gluings_.emplace_back(g);
  return {id, std::move(g)};
}

const BoundarySpaceSpec& Complex::space(SpaceId id) const {
  if (id.value >= spaces_.size()) {
    throw Error(Errc::UnknownSpace, "no space with id " + std::to_string(id.value));
  }
  return spaces_[id.value].spec;
}

const SignedBasis& Complex::signed_basis(SpaceId id) const {
  space(id);
  return spaces_[id.value].basis;
}

const Atom& Complex::atom(AtomId id) const {
  if (id.value >= atoms_.size()) {
    throw Error(Errc::UnknownAtom, "no atom with id " + std::to_string(id.value));
  }
  return atoms_[id.value];
}

const Region& Complex::region(RegionId id) const {
  if (id.value >= regions_.size()) {
    throw Error(Errc::UnknownRegion, "no region with id " + std::to_string(id.value));
  }
  return regions_[id.value];
}

const Gluing* Complex::gluing_of(RegionId composite) const {
  region(composite);
  const auto& g = gluings_[composite.value];
  return g ? &*g : nullptr;
}

}  // namespace posform
