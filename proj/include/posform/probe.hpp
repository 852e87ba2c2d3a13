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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posform/complex.hpp"
#include "posform/error.hpp"
#include "posform/linear.hpp"
#include "posform/tensor.hpp"

namespace posform {

/// A multilinear functional on the boundary spaces of a region. Axis i of the
/// coefficient tensor runs over the reference basis of boundary atom i.
struct Probe {
  RegionId region;
  std::vector<AtomId> boundary;
  std::vector<SpaceId> spaces;
  Tensor tensor;
  /// Claim that values on tuples of cone members are nonnegative.
  bool primitive = false;
};

/// Validates the tensor shape against the region's boundary spaces.
Probe make_probe(const Complex& cx, RegionId region, Tensor tensor, bool primitive = false);
/// The trivial probe that always returns 0.
Probe zero_probe(const Complex& cx, RegionId region);
/// Null-probe of a slice region: its value is the slice pairing.
Probe slice_null_probe(const Complex& cx, RegionId slice_region);

Probe operator+(const Probe& a, const Probe& b);
Probe operator-(const Probe& a, const Probe& b);
Probe operator*(double alpha, const Probe& p);

using BoundaryAssignment = std::map<AtomId, BCVector>;

struct QueryResult {
  double numerator = 0.0;
  double denominator = 0.0;
  std::optional<double> quotient;
  /// Precondition or bound violations; the numbers are still reported.
  std::vector<std::string> diagnostics;
};

/// Thrown when a quotient's denominator vanishes: the boundary condition is
/// incompatible with the probe in the denominator.
class ZeroDenominatorError : public Error {
 public:
  ZeroDenominatorError(double numerator, double denominator);
  double numerator() const noexcept { return numerator_; }
  double denominator() const noexcept { return denominator_; }

 private:
  double numerator_;
  double denominator_;
};

struct QueryOptions {
  /// Tolerance for cone membership, order and the [0, 1] quotient bound.
  double tol = kConeTolerance;
  /// |denominator| at or below this is treated as zero.
  double zero_denominator = 1e-12;
  /// Run probe_le to certify 0 <= P_spec <= P_gen before cond_prob_probe.
  bool check_hierarchy = false;
};

struct ProbeOrderOptions {
  double tol = kConeTolerance;
  /// Extra random pure-state projectors per PSD slot.
  std::size_t psd_random_samples = 24;
  std::uint64_t seed = 0x5eed;
};

/// (P, b)_M: full contraction of the tensor with the coordinates of b.
double evaluate(const Probe& p, const BoundaryAssignment& b);

using BasisLookup = std::function<const SignedBasis&(SpaceId)>;

/// Glued probe on g.composite: one signed sum over the basis of each
/// interface atom, sum_k (-1)^sigma(k) P[.., b_k] Q[b_k, ..].
Probe compose(const Complex& cx, const Probe& p, const Probe& q, const Gluing& g);
/// Same, with caller-supplied signed bases for the interface spaces.
Probe compose(const Complex& cx, const Probe& p, const Probe& q, const Gluing& g,
              const BasisLookup& bases);

/// Per-slot test vectors used by probe_le: generators for ORTHANT and
/// GENERATORS cones (exact), extremal projectors plus random pure states for
/// PSD cones (sampled).
std::vector<Eigen::VectorXd> cone_test_vectors(const ConeSpec& cone, std::size_t dim,
                                               const ProbeOrderOptions& opts);

/// Minimum of (Q - P) over all tuples of test vectors.
double probe_order_margin(const Complex& cx, const Probe& p, const Probe& q,
                          const ProbeOrderOptions& opts = {});
/// P <= Q. Exact for finitely generated cones; for PSD slots a true answer is
/// certified on the sampled set only.
bool probe_le(const Complex& cx, const Probe& p, const Probe& q, const ProbeOrderOptions& opts = {});

/// (P_spec, b) / (P_gen, b).
QueryResult cond_prob_probe(const Complex& cx, const Probe& p_spec, const Probe& p_gen,
                            const BoundaryAssignment& b, const QueryOptions& opts = {});
/// (P, c) / (P, b) for a specialization c <= b.
QueryResult cond_prob_boundary(const Complex& cx, const Probe& p, const BoundaryAssignment& c,
                               const BoundaryAssignment& b, const QueryOptions& opts = {});
/// (Q, b) / (Q0, b); not bounded.
QueryResult expectation(const Probe& q, const Probe& q0, const BoundaryAssignment& b,
                        const QueryOptions& opts = {});

/// The condition q on `interface_atom` that reproduces Q with the rest of its
/// boundary fixed: evaluate(Q, c_partial + {atom: x}) == pairing(x, q).
BCVector induced_boundary_condition(const Complex& cx, const Probe& q,
                                    const BoundaryAssignment& c_partial, AtomId interface_atom);

}  // namespace posform
