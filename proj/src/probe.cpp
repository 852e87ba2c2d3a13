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

#include "posform/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace posform {

namespace {

void require_same_region(const Probe& a, const Probe& b) {
  if (a.region != b.region) {
    throw Error(Errc::RegionMismatch, "probes live on different regions (" +
                                          std::to_string(a.region.value) + " vs " +
                                          std::to_string(b.region.value) + ")");
  }
}

std::vector<Eigen::VectorXd> gather(const Probe& p, const BoundaryAssignment& b,
                                    std::optional<std::size_t> skip = std::nullopt) {
  std::vector<Eigen::VectorXd> vecs(p.boundary.size());
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    const auto expected = static_cast<Eigen::Index>(p.tensor.shape()[i]);
    if (skip && *skip == i) {
      vecs[i] = Eigen::VectorXd::Zero(expected);
      continue;
    }
    auto it = b.find(p.boundary[i]);
    if (it == b.end()) {
      throw Error(Errc::IncompleteAssignment,
                  "no boundary condition for atom " + std::to_string(p.boundary[i].value));
    }
    const BCVector& v = it->second;
    if (v.space.valid() && v.space != p.spaces[i]) {
      throw Error(Errc::SpaceMismatch, "boundary condition for atom " +
                                           std::to_string(p.boundary[i].value) +
                                           " belongs to another space");
    }
    if (v.dim() != expected) {
      throw Error(Errc::DimensionMismatch, "boundary condition for atom " +
                                               std::to_string(p.boundary[i].value) + " has length " +
                                               std::to_string(v.dim()));
    }
    vecs[i] = v.coords;
  }
  return vecs;
}

std::ptrdiff_t position_of(const std::vector<AtomId>& boundary, AtomId a) {
  auto it = std::find(boundary.begin(), boundary.end(), a);
  return it == boundary.end() ? -1 : it - boundary.begin();
}

QueryResult make_quotient(double num, double den, const QueryOptions& opts) {
  if (!(std::abs(den) > opts.zero_denominator)) throw ZeroDenominatorError(num, den);
  QueryResult r;
  r.numerator = num;
  r.denominator = den;
  r.quotient = num / den;
  return r;
}

void flag_unit_interval(QueryResult& r, const QueryOptions& opts) {
  const double q = *r.quotient;
  if (q < -opts.tol || q > 1.0 + opts.tol) {
    std::ostringstream os;
    os.precision(17);
    os << "quotient " << q << " outside [0, 1]: hierarchy violation";
    r.diagnostics.push_back(os.str());
  }
}

Eigen::VectorXd projector_coords(const HermitianBasis& basis, const Eigen::VectorXcd& v) {
  return basis.coords(v * v.adjoint());
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

ZeroDenominatorError::ZeroDenominatorError(double numerator, double denominator)
    : Error(Errc::ZeroDenominator, "denominator " + short_number(denominator) +
                                       " vanishes; the boundary condition is incompatible"),
      numerator_(numerator),
      denominator_(denominator) {}

Probe make_probe(const Complex& cx, RegionId region_id, Tensor tensor, bool primitive) {
  const Region& r = cx.region(region_id);
  Probe p{region_id, r.boundary, {}, std::move(tensor), primitive};
  if (p.tensor.rank() != r.boundary.size()) {
    throw Error(Errc::DimensionMismatch, "probe tensor has rank " +
                                             std::to_string(p.tensor.rank()) + " but region '" +
                                             r.label + "' has " +
                                             std::to_string(r.boundary.size()) + " boundary atoms");
  }
  for (std::size_t i = 0; i < r.boundary.size(); ++i) {
    const Atom& a = cx.atom(r.boundary[i]);
    p.spaces.push_back(a.space);
    if (p.tensor.shape()[i] != cx.space(a.space).dim) {
      throw Error(Errc::DimensionMismatch, "axis " + std::to_string(i) + " of the probe tensor has " +
                                               std::to_string(p.tensor.shape()[i]) +
                                               " entries but atom '" + a.label + "' has dimension " +
                                               std::to_string(cx.space(a.space).dim));
    }
  }
  for (double x : p.tensor.data()) {
    if (!std::isfinite(x)) throw Error(Errc::NonFinite, "probe tensor entry is not finite");
  }
  return p;
}

Probe zero_probe(const Complex& cx, RegionId region_id) {
  std::vector<std::size_t> shape;
  for (AtomId a : cx.region(region_id).boundary) shape.push_back(cx.space_of(a).dim);
  return make_probe(cx, region_id, Tensor(shape), true);
}

Probe slice_null_probe(const Complex& cx, RegionId slice_region) {
  const Region& r = cx.region(slice_region);
  if (r.kind != RegionKind::Slice) {
    throw Error(Errc::InvalidArgument, "region '" + r.label + "' is not a slice region");
  }
  return make_probe(cx, slice_region, Tensor::from_matrix(cx.space_of(r.boundary[0]).pairing.gram()));
}

Probe operator+(const Probe& a, const Probe& b) {
  require_same_region(a, b);
  Probe out = a;
  out.tensor += b.tensor;
  out.primitive = a.primitive && b.primitive;
  return out;
}

Probe operator-(const Probe& a, const Probe& b) {
  require_same_region(a, b);
  Probe out = a;
  out.tensor -= b.tensor;
  out.primitive = false;
  return out;
}

Probe operator*(double alpha, const Probe& p) {
  Probe out = p;
  out.tensor *= alpha;
  out.primitive = p.primitive && alpha >= 0.0;
  return out;
}

double evaluate(const Probe& p, const BoundaryAssignment& b) {
  const auto vecs = gather(p, b);
  return p.tensor.contract_all(vecs);
}

Probe compose(const Complex& cx, const Probe& p, const Probe& q, const Gluing& g) {
  return compose(cx, p, q, g, [&cx](SpaceId s) -> const SignedBasis& { return cx.signed_basis(s); });
}

Probe compose(const Complex& cx, const Probe& p, const Probe& q, const Gluing& g,
              const BasisLookup& bases) {
  if (p.region == g.right && q.region == g.left && p.region != q.region) {
    return compose(cx, q, p, g, bases);
  }
  if (p.region != g.left || q.region != g.right) {
    throw Error(Errc::RegionMismatch, "probes do not sit on the glued regions");
  }

  const std::size_t m = g.interface.size();
  std::vector<std::size_t> pos_p(m), pos_q(m);
  Tensor tp = p.tensor;
  Tensor tq = q.tensor;
  for (std::size_t i = 0; i < m; ++i) {
    const AtomId a = g.interface[i];
    const auto ip = position_of(p.boundary, a);
    const auto iq = position_of(q.boundary, a);
    if (ip < 0 || iq < 0) {
      throw Error(Errc::RegionMismatch, "interface atom " + std::to_string(a.value) +
                                            " is not on both probe boundaries");
    }
    pos_p[i] = static_cast<std::size_t>(ip);
    pos_q[i] = static_cast<std::size_t>(iq);

    const SpaceId sid = cx.atom(a).space;
    const SignedBasis& basis = bases(sid);
    if (basis.size() != cx.space(sid).dim) {
      throw Error(Errc::DimensionMismatch, "signed basis size differs from interface dimension");
    }
    const Eigen::MatrixXd bmat = basis.matrix();
    Eigen::VectorXd signs(bmat.cols());
    for (std::size_t k = 0; k < basis.size(); ++k) signs(static_cast<Eigen::Index>(k)) = basis.sign_factor(k);
    tp = tp.contract_axis(pos_p[i], bmat * signs.asDiagonal());
    tq = tq.contract_axis(pos_q[i], bmat);
  }

  // Bring P's interface axes to the back and Q's to the front, both in
  // interface order, then contract them away in one matrix product.
  std::vector<std::size_t> perm_p, perm_q;
  for (std::size_t ax = 0; ax < p.boundary.size(); ++ax)
    if (std::find(pos_p.begin(), pos_p.end(), ax) == pos_p.end()) perm_p.push_back(ax);
  perm_p.insert(perm_p.end(), pos_p.begin(), pos_p.end());
  perm_q = pos_q;
  for (std::size_t ax = 0; ax < q.boundary.size(); ++ax)
    if (std::find(pos_q.begin(), pos_q.end(), ax) == pos_q.end()) perm_q.push_back(ax);

  Tensor glued = contract_pair(tp.permuted(perm_p), tq.permuted(perm_q), m);
  return make_probe(cx, g.composite, std::move(glued), p.primitive && q.primitive);
}

std::vector<Eigen::VectorXd> cone_test_vectors(const ConeSpec& cone, std::size_t dim,
                                               const ProbeOrderOptions& opts) {
  std::vector<Eigen::VectorXd> out;
  switch (cone.kind()) {
    case ConeSpec::Kind::Orthant:
      for (std::size_t i = 0; i < dim; ++i) {
        out.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(i)));
      }
      break;
    case ConeSpec::Kind::Generators:
      out = cone.as_generators()->generators;
      break;
    case ConeSpec::Kind::Psd: {
      const auto& basis = *cone.as_psd()->basis;
      const auto n = static_cast<Eigen::Index>(basis.n());
      const double r = 1.0 / std::sqrt(2.0);
      for (Eigen::Index i = 0; i < n; ++i) {
        out.push_back(projector_coords(basis, Eigen::VectorXcd::Unit(n, i)));
      }
      // |i> + |j> and |i> + i|j> projectors span the self-adjoint matrices.
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
          v(i) = r;
          v(j) = r;
          out.push_back(projector_coords(basis, v));
          v(j) = std::complex<double>(0.0, r);
          out.push_back(projector_coords(basis, v));
          v(j) = -r;
          out.push_back(projector_coords(basis, v));
        }
      }
      std::mt19937_64 rng(opts.seed);
      std::normal_distribution<double> gauss;
      for (std::size_t s = 0; s < opts.psd_random_samples; ++s) {
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = {gauss(rng), gauss(rng)};
        v.normalize();
        out.push_back(projector_coords(basis, v));
      }
      break;
    }
  }
  return out;
}

double probe_order_margin(const Complex& cx, const Probe& p, const Probe& q,
                          const ProbeOrderOptions& opts) {
  require_same_region(p, q);
  Tensor diff = q.tensor - p.tensor;
  for (std::size_t ax = 0; ax < p.boundary.size(); ++ax) {
    const auto& space = cx.space(p.spaces[ax]);
    const auto tests = cone_test_vectors(space.cone, space.dim, opts);
    Eigen::MatrixXd cols(static_cast<Eigen::Index>(space.dim), static_cast<Eigen::Index>(tests.size()));
    for (std::size_t j = 0; j < tests.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = tests[j];
    diff = diff.contract_axis(ax, cols);
  }
  const auto d = diff.data();
  return *std::min_element(d.begin(), d.end());
}

bool probe_le(const Complex& cx, const Probe& p, const Probe& q, const ProbeOrderOptions& opts) {
  return probe_order_margin(cx, p, q, opts) >= -opts.tol;
}

QueryResult cond_prob_probe(const Complex& cx, const Probe& p_spec, const Probe& p_gen,
                            const BoundaryAssignment& b, const QueryOptions& opts) {
  require_same_region(p_spec, p_gen);
  std::vector<std::string> pre;
  if (opts.check_hierarchy) {
    ProbeOrderOptions po;
    po.tol = opts.tol;
    if (!probe_le(cx, zero_probe(cx, p_spec.region), p_spec, po)) {
      pre.emplace_back("specific probe is not certified nonnegative");
    }
    if (!probe_le(cx, p_spec, p_gen, po)) {
      pre.emplace_back("specific probe is not certified below the general probe");
    }
  }
  QueryResult r = make_quotient(evaluate(p_spec, b), evaluate(p_gen, b), opts);
  r.diagnostics = std::move(pre);
  flag_unit_interval(r, opts);
  return r;
}

QueryResult cond_prob_boundary(const Complex& cx, const Probe& p, const BoundaryAssignment& c,
                               const BoundaryAssignment& b, const QueryOptions& opts) {
  std::vector<std::string> pre;
  if (!p.primitive) pre.emplace_back("probe is not marked primitive");
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    const AtomId a = p.boundary[i];
    auto ci = c.find(a);
    auto bi = b.find(a);
    if (ci == c.end() || bi == b.end()) continue;  // evaluate reports the gap
    const auto& cone = cx.space(p.spaces[i]).cone;
    if (!cone_contains(cone, ci->second, opts.tol)) {
      pre.push_back("condition on atom " + std::to_string(a.value) + " is outside the cone");
    }
    if (!cone_le(cone, ci->second, bi->second, opts.tol)) {
      pre.push_back("condition on atom " + std::to_string(a.value) +
                    " is not a specialization of the given condition");
    }
  }
  QueryResult r = make_quotient(evaluate(p, c), evaluate(p, b), opts);
  r.diagnostics = std::move(pre);
  flag_unit_interval(r, opts);
  return r;
}

QueryResult expectation(const Probe& q, const Probe& q0, const BoundaryAssignment& b,
                        const QueryOptions& opts) {
  require_same_region(q, q0);
  return make_quotient(evaluate(q, b), evaluate(q0, b), opts);
}

BCVector induced_boundary_condition(const Complex& cx, const Probe& q,
                                    const BoundaryAssignment& c_partial, AtomId interface_atom) {
  const auto pos = position_of(q.boundary, interface_atom);
  if (pos < 0) {
    throw Error(Errc::InvalidArgument, "atom " + std::to_string(interface_atom.value) +
                                           " is not on the probe's boundary");
  }
  const auto slot = static_cast<std::size_t>(pos);
  const auto vecs = gather(q, c_partial, slot);
  // (Q, x) = w . x for x on the interface slot.
  const Eigen::VectorXd w = q.tensor.contract_all_but(slot, vecs);

  const SpaceId sid = q.spaces[slot];
  const SignedBasis& basis = cx.signed_basis(sid);
  Eigen::VectorXd induced = Eigen::VectorXd::Zero(w.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    induced += basis.sign_factor(k) * w.dot(basis.vectors[k]) * basis.vectors[k];
  }
  return {sid, std::move(induced)};
}

}  // namespace posform
