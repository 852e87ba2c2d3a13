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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posform/ids.hpp"
#include "posform/linear.hpp"

namespace posform {

/// A boundary component (hypersurface piece) carrying a boundary-condition space.
struct Atom {
  AtomId id;
  std::string label;
  SpaceId space;
};

enum class RegionKind { Elementary, Slice, Composite };

struct Region {
  RegionId id;
  std::string label;
  std::vector<AtomId> boundary;
  RegionKind kind = RegionKind::Elementary;
};

/// Record of M and N composed along their shared boundary atoms.
struct Gluing {
  RegionId left;
  RegionId right;
  RegionId composite;
  /// Shared atoms, in the order they appear on the left boundary.
  std::vector<AtomId> interface;
};

struct GlueResult {
  RegionId region;
  Gluing gluing;
};

std::string_view to_string(RegionKind kind) noexcept;

/// Append-only registry of spaces, atoms and regions. Registering a space
/// caches its signed orthonormal basis.
class Complex {
 public:
  SpaceId add_space(BoundarySpaceSpec spec);

  AtomId make_atom(std::string label, SpaceId space);
  RegionId make_region(std::string label, std::vector<AtomId> boundary);
  /// Thin region over `atom` with boundary (atom, mirror); the mirror is a
  /// fresh atom bound to the same space.
  RegionId slice(AtomId atom);
  /// Boundary of the composite: M's atoms not in the interface, then N's.
  GlueResult glue(RegionId m, RegionId n);

  const BoundarySpaceSpec& space(SpaceId id) const;
  const SignedBasis& signed_basis(SpaceId id) const;
  const Atom& atom(AtomId id) const;
  const Region& region(RegionId id) const;
  /// The gluing that produced a composite region, if any.
  const Gluing* gluing_of(RegionId composite) const;

  const BoundarySpaceSpec& space_of(AtomId id) const { return space(atom(id).space); }

  std::size_t space_count() const noexcept { return spaces_.size(); }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t region_count() const noexcept { return regions_.size(); }

 private:
  struct SpaceEntry {
    BoundarySpaceSpec spec;
    SignedBasis basis;
  };

  std::vector<SpaceEntry> spaces_;
  std::vector<Atom> atoms_;
  std::vector<Region> regions_;
  std::vector<std::optional<Gluing>> gluings_;
};

}  // namespace posform
