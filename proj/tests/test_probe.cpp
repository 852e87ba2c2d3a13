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

#include <doctest.h>

#include "posform/classical.hpp"
#include "posform/probe.hpp"
#include "posform/quantum.hpp"
#include "support.hpp"

using namespace posform;
namespace pt = posform::testing;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

Tensor random_tensor(std::vector<std::size_t> shape) {
  Tensor t(std::move(shape));
  for (double& x : t.data()) x = pt::gauss();
  return t;
}

/// Orthant space with a random non-degenerate pairing of mixed signature.
SpaceId random_signed_space(Complex& cx, Eigen::Index dim) {
  for (;;) {
    const Eigen::MatrixXd a = pt::random_matrix(dim, dim);
    const Eigen::MatrixXd g = a + a.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.eigenvalues().cwiseAbs().minCoeff() < 0.2) continue;
    return cx.add_space(BoundarySpaceSpec(static_cast<std::size_t>(dim), ConeSpec::orthant(), SlicePairing(g), "rnd"));
  }
}

Probe random_probe(const Complex& cx, RegionId r) {
  std::vector<std::size_t> shape;
  for (AtomId a : cx.region(r).boundary) shape.push_back(cx.space_of(a).dim);
  return make_probe(cx, r, random_tensor(shape));
}

BCVector random_bc(const Complex& cx, AtomId a) {
  const SpaceId s = cx.atom(a).space;
  return {s, pt::random_vector(static_cast<Eigen::Index>(cx.space(s).dim))};
}

SignedBasis rotated(const SignedBasis& b) {
  SignedBasis out = b;
  std::vector<std::size_t> pos, neg;
  for (std::size_t k = 0; k < b.size(); ++k) (b.signs[k] ? neg : pos).push_back(k);
  for (const auto* part : {&pos, &neg}) {
    const auto n = static_cast<Eigen::Index>(part->size());
    if (n == 0) continue;
    const Eigen::MatrixXd r = pt::random_orthogonal(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(b.vectors[0].size());
      for (Eigen::Index j = 0; j < n; ++j) v += r(j, i) * b.vectors[(*part)[static_cast<std::size_t>(j)]];
      out.vectors[(*part)[static_cast<std::size_t>(i)]] = v;
    }
  }
  // A hyperbolic rotation mixing one positive and one negative vector also
  // preserves the (-1)^sigma delta relations.
  if (!pos.empty() && !neg.empty()) {
    const double t = pt::uniform(-1.0, 1.0);
    const Eigen::VectorXd p = out.vectors[pos[0]];
    const Eigen::VectorXd m = out.vectors[neg[0]];
    out.vectors[pos[0]] = std::cosh(t) * p + std::sinh(t) * m;
    out.vectors[neg[0]] = std::sinh(t) * p + std::cosh(t) * m;
  }
  return out;
}

}  // namespace

TEST_SUITE("evaluate") {
  TEST_CASE("zero and rank-one probes") {
    Complex cx;
    const SpaceId s = cx.add_space(BoundarySpaceSpec(3, ConeSpec::orthant(), SlicePairing::identity(3), "r3"));
    const AtomId x = cx.make_atom("x", s);
    const AtomId y = cx.make_atom("y", s);
    const RegionId r = cx.make_region("R", {x, y});
    BoundaryAssignment b{{x, random_bc(cx, x)}, {y, random_bc(cx, y)}};
    CHECK(evaluate(zero_probe(cx, r), b) == 0.0);

    const Eigen::VectorXd u = pt::random_vector(3);
    const Eigen::VectorXd v = pt::random_vector(3);
    const Probe outer = make_probe(cx, r, Tensor::from_matrix(u * v.transpose()));
    const double want = u.dot(b.at(x).coords) * v.dot(b.at(y).coords);
    CHECK(evaluate(outer, b) == doctest::Approx(want).epsilon(1e-12));

    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(3, 0);
    const Probe unit = make_probe(cx, r, Tensor::from_matrix(e1 * e1.transpose()));
    CHECK(evaluate(unit, {{x, {s, e1}}, {y, {s, e1}}}) == 1.0);
  }

  TEST_CASE("quantum identity channel on (|0><0|, |+><+|) is 1/2") {
    Complex cx;
    const SpaceId q = cx.add_space(quantum::qm_space(2));
    const AtomId in = cx.make_atom("in", q);
    const AtomId out = cx.make_atom("out", q);
    const RegionId r = cx.make_region("T", {in, out});
    Eigen::Matrix2cd rho0 = Eigen::Matrix2cd::Zero();
    rho0(0, 0) = 1;
    Eigen::Matrix2cd plus = Eigen::Matrix2cd::Constant(0.5);
    // Oracle: tr(|+><+| |0><0|) by explicit entrywise sum.
    std::complex<double> tr = 0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) tr += plus(i, k) * rho0(k, i);
    CHECK(tr.real() == doctest::Approx(0.5));
    const double val = evaluate(quantum::null_probe_qm(cx, r),
                                {{in, quantum::state_bc(cx, q, rho0).bc}, {out, quantum::effect_bc(cx, q, plus)}});
    CHECK(val == doctest::Approx(tr.real()).epsilon(1e-14));
  }

  TEST_CASE("evaluate errors") {
    Complex cx;
    const SpaceId s2 = cx.add_space(BoundarySpaceSpec(2, ConeSpec::orthant(), SlicePairing::identity(2), "r2"));
    const SpaceId s2b = cx.add_space(BoundarySpaceSpec(2, ConeSpec::orthant(), SlicePairing::identity(2), "r2b"));
    const AtomId x = cx.make_atom("x", s2);
    const AtomId y = cx.make_atom("y", s2);
    const RegionId r = cx.make_region("R", {x, y});
    const Probe p = random_probe(cx, r);
    CHECK(code_of([&] { evaluate(p, {{x, random_bc(cx, x)}}); }) == Errc::IncompleteAssignment);
    CHECK(code_of([&] { evaluate(p, {{x, random_bc(cx, x)}, {y, {s2b, Eigen::Vector2d(1, 0)}}}); }) ==
          Errc::SpaceMismatch);
    CHECK(code_of([&] { evaluate(p, {{x, random_bc(cx, x)}, {y, {s2, Eigen::Vector3d(1, 0, 0)}}}); }) ==
          Errc::DimensionMismatch);
    CHECK(code_of([&] { make_probe(cx, r, Tensor({2, 3})); }) == Errc::DimensionMismatch);
  }

  TEST_CASE("evaluate is linear in the probe and in each slot") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 3);
    const AtomId x = cx.make_atom("x", s), y = cx.make_atom("y", s), z = cx.make_atom("z", s);
    const RegionId r = cx.make_region("R", {x, y, z});
    for (int trial = 0; trial < 50; ++trial) {
      const Probe p = random_probe(cx, r), q = random_probe(cx, r);
      BoundaryAssignment b{{x, random_bc(cx, x)}, {y, random_bc(cx, y)}, {z, random_bc(cx, z)}};
      const double alpha = pt::gauss();
      CHECK(evaluate(alpha * p + q, b) == doctest::Approx(alpha * evaluate(p, b) + evaluate(q, b)).epsilon(1e-10));
      BoundaryAssignment b2 = b;
      const BCVector extra = random_bc(cx, y);
      b2[y] = alpha * b.at(y) + extra;
      BoundaryAssignment b3 = b;
      b3[y] = extra;
      CHECK(evaluate(p, b2) == doctest::Approx(alpha * evaluate(p, b) + evaluate(p, b3)).epsilon(1e-10));
    }
  }
}

TEST_SUITE("compose") {
  TEST_CASE("slice null-probe acts as the identity") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 3);
    const SpaceId t = random_signed_space(cx, 2);
    const AtomId sigma = cx.make_atom("sigma", s);
    const AtomId other = cx.make_atom("other", t);
    const RegionId n = cx.make_region("N", {other, sigma});
    const Probe q = random_probe(cx, n);
    const RegionId sl = cx.slice(sigma);
    auto res = cx.glue(sl, n);
    const Probe glued = compose(cx, slice_null_probe(cx, sl), q, res.gluing);
    // Boundary is (sigma', other); Q's own order is (other, sigma).
    REQUIRE(glued.boundary == std::vector<AtomId>{cx.region(sl).boundary[1], other});
    const std::size_t perm[2] = {1, 0};
    CHECK(max_abs_diff(glued.tensor, q.tensor.permuted(perm)) < 1e-12);
  }

  TEST_CASE("unitary channels compose to the product unitary") {
    Complex cx;
    const SpaceId q = cx.add_space(quantum::qm_space(2));
    const AtomId a = cx.make_atom("a", q), b = cx.make_atom("b", q), c = cx.make_atom("c", q);
    const RegionId m = cx.make_region("M", {a, b});
    const RegionId n = cx.make_region("N", {b, c});
    auto g = cx.glue(m, n);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXcd u1 = pt::random_unitary(2), u2 = pt::random_unitary(2);
      const Probe p = quantum::null_probe_qm(cx, m, u1);
      const Probe r = quantum::null_probe_qm(cx, n, u2);
      const Probe glued = compose(cx, p, r, g.gluing);
      // Oracle: value on (rho, E) is tr(E (U2 U1) rho (U2 U1)^dagger), by direct matrix products.
      const Eigen::MatrixXcd u = u2 * u1;
      for (int k = 0; k < 5; ++k) {
        const Eigen::MatrixXcd rho = pt::random_density(2);
        const Eigen::MatrixXcd e = pt::random_hermitian(2);
        const double want = (e * u * rho * u.adjoint()).trace().real();
        const double got = evaluate(glued, {{a, quantum::state_bc(cx, q, rho).bc}, {c, quantum::effect_bc(cx, q, e)}});
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
      CHECK(glued.primitive);
    }
  }

  TEST_CASE("classical kernels compose by summing over the interface states") {
    Complex cx;
    const SpaceId two = cx.add_space(classical::stat_space(classical::StateSet({"s1", "s2"})));
    const AtomId a = cx.make_atom("a", two), b = cx.make_atom("b", two), c = cx.make_atom("c", two);
    const RegionId m = cx.make_region("M", {a, b});
    const RegionId n = cx.make_region("N", {b, c});
    auto g = cx.glue(m, n);
    classical::Kernel ka, kb;
    const std::vector<std::string> st = {"s1", "s2"};
    for (const auto& i : st)
      for (const auto& j : st) {
        ka[{i, j}] = pt::uniform();
        kb[{i, j}] = pt::uniform();
      }
    const Probe glued = compose(cx, classical::stat_probe(cx, m, ka), classical::stat_probe(cx, n, kb), g.gluing);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) {
        double want = 0.0;
        for (std::size_t j = 0; j < 2; ++j) want += ka.at({st[i], st[j]}) * kb.at({st[j], st[k]});
        const std::size_t idx[2] = {i, k};
        CHECK(std::abs(glued.tensor.at(idx) - want) <= 1e-15);
      }
  }

  TEST_CASE("compose rejects probes on the wrong regions") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 2);
    const AtomId a = cx.make_atom("a", s), b = cx.make_atom("b", s), c = cx.make_atom("c", s);
    const RegionId m = cx.make_region("M", {a, b}), n = cx.make_region("N", {b, c}), o = cx.make_region("O", {a, c});
    auto g = cx.glue(m, n);
    CHECK(code_of([&] { compose(cx, random_probe(cx, m), random_probe(cx, o), g.gluing); }) == Errc::RegionMismatch);
  }

  TEST_CASE("composition consistency with the induced boundary condition") {
    for (int trial = 0; trial < 100; ++trial) {
      Complex cx;
      const SpaceId si = random_signed_space(cx, pt::uniform_int(1, 4));
      const SpaceId sx = random_signed_space(cx, pt::uniform_int(1, 4));
      const SpaceId sy = random_signed_space(cx, pt::uniform_int(1, 4));
      const AtomId x1 = cx.make_atom("x1", sx), x2 = cx.make_atom("x2", sx);
      const AtomId i = cx.make_atom("i", si), y = cx.make_atom("y", sy);
      const RegionId m = cx.make_region("M", {x1, i, x2});
      const RegionId n = cx.make_region("N", {i, y});
      auto g = cx.glue(m, n);
      const Probe p = random_probe(cx, m), q = random_probe(cx, n);
      const Probe glued = compose(cx, p, q, g.gluing);
      const BCVector b1 = random_bc(cx, x1), b2 = random_bc(cx, x2), c = random_bc(cx, y);
      const BCVector induced = induced_boundary_condition(cx, q, {{y, c}}, i);
      const double lhs = evaluate(glued, {{x1, b1}, {x2, b2}, {y, c}});
      const double rhs = evaluate(p, {{x1, b1}, {i, induced}, {x2, b2}});
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }

  TEST_CASE("compose is bilinear") {
    for (int trial = 0; trial < 50; ++trial) {
      Complex cx;
      const SpaceId s = random_signed_space(cx, pt::uniform_int(1, 4));
      const AtomId a = cx.make_atom("a", s), b = cx.make_atom("b", s), c = cx.make_atom("c", s);
      const RegionId m = cx.make_region("M", {a, b}), n = cx.make_region("N", {b, c});
      auto g = cx.glue(m, n);
      const Probe p = random_probe(cx, m), p2 = random_probe(cx, m);
      const Probe q = random_probe(cx, n), q2 = random_probe(cx, n);
      const double alpha = pt::gauss();
      const Tensor left = compose(cx, alpha * p + p2, q, g.gluing).tensor;
      const Tensor left_want = alpha * compose(cx, p, q, g.gluing).tensor + compose(cx, p2, q, g.gluing).tensor;
      CHECK(max_abs_diff(left, left_want) <= 1e-10 * std::max(1.0, left.max_abs()));
      const Tensor right = compose(cx, p, alpha * q + q2, g.gluing).tensor;
      const Tensor right_want = alpha * compose(cx, p, q, g.gluing).tensor + compose(cx, p, q2, g.gluing).tensor;
      CHECK(max_abs_diff(right, right_want) <= 1e-10 * std::max(1.0, right.max_abs()));
    }
  }

  TEST_CASE("compose is associative and basis independent on three-region chains") {
    for (int trial = 0; trial < 50; ++trial) {
      Complex cx;
      const SpaceId si = random_signed_space(cx, pt::uniform_int(1, 4));
      const SpaceId sj = random_signed_space(cx, pt::uniform_int(1, 4));
      const SpaceId se = random_signed_space(cx, pt::uniform_int(1, 3));
      const AtomId a = cx.make_atom("a", se), i = cx.make_atom("i", si), j = cx.make_atom("j", sj);
      const AtomId c = cx.make_atom("c", se), e = cx.make_atom("e", se);
      const RegionId m = cx.make_region("M", {a, i});
      const RegionId n = cx.make_region("N", {i, e, j});
      const RegionId o = cx.make_region("O", {j, c});
      const Probe p = random_probe(cx, m), q = random_probe(cx, n), r = random_probe(cx, o);

      auto mn = cx.glue(m, n);
      auto mn_o = cx.glue(mn.region, o);
      auto no = cx.glue(n, o);
      auto m_no = cx.glue(m, no.region);
      REQUIRE(cx.region(mn_o.region).boundary == cx.region(m_no.region).boundary);

      const Probe left = compose(cx, compose(cx, p, q, mn.gluing), r, mn_o.gluing);
      const Probe right = compose(cx, p, compose(cx, q, r, no.gluing), m_no.gluing);
      const double scale = std::max(1.0, left.tensor.max_abs());
      CHECK(max_abs_diff(left.tensor, right.tensor) <= 1e-9 * scale);

      const SignedBasis bi = rotated(cx.signed_basis(si));
      const SignedBasis bj = rotated(cx.signed_basis(sj));
      REQUIRE(signed_basis_defect(cx.space(si), bi) < 1e-9);
      BasisLookup lookup = [&](SpaceId s) -> const SignedBasis& {
        if (s == si) return bi;
        if (s == sj) return bj;
        return cx.signed_basis(s);
      };
      const Probe alt = compose(cx, compose(cx, p, q, mn.gluing, lookup), r, mn_o.gluing, lookup);
      CHECK(max_abs_diff(left.tensor, alt.tensor) <= 1e-9 * scale);
    }
  }

  TEST_CASE("multiple interface atoms contract independently") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 2);
    const SpaceId t = random_signed_space(cx, 3);
    const AtomId a = cx.make_atom("a", s), b = cx.make_atom("b", t), c = cx.make_atom("c", s), d = cx.make_atom("d", t);
    const RegionId m = cx.make_region("M", {a, b, c});
    const RegionId n = cx.make_region("N", {c, d, b});
    auto g = cx.glue(m, n);
    REQUIRE(g.gluing.interface == std::vector<AtomId>{b, c});
    const Probe p = random_probe(cx, m), q = random_probe(cx, n);
    const Probe glued = compose(cx, p, q, g.gluing);
    // Brute force: kernel of each interface is the inverse Gram matrix.
    const Eigen::MatrixXd kb = cx.space(t).pairing.gram().inverse();
    const Eigen::MatrixXd kc = cx.space(s).pairing.gram().inverse();
    for (std::size_t ia = 0; ia < 2; ++ia)
      for (std::size_t id = 0; id < 3; ++id) {
        double want = 0.0;
        for (std::size_t ib = 0; ib < 3; ++ib)
          for (std::size_t jb = 0; jb < 3; ++jb)
            for (std::size_t ic = 0; ic < 2; ++ic)
              for (std::size_t jc = 0; jc < 2; ++jc) {
                const std::size_t pi[3] = {ia, ib, ic};
                const std::size_t qi[3] = {jc, id, jb};
                want += p.tensor.at(pi) * kb(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(jb)) *
                        kc(static_cast<Eigen::Index>(ic), static_cast<Eigen::Index>(jc)) * q.tensor.at(qi);
              }
        const std::size_t gi[2] = {ia, id};
        CHECK(glued.tensor.at(gi) == doctest::Approx(want).epsilon(1e-10));
      }
  }
}

TEST_SUITE("order and conditional values") {
  struct OneLight {
    Complex cx;
    SpaceId signal = cx.add_space(classical::stat_space(classical::StateSet({"u", "v", "w"}), "signal"));
    AtomId in = cx.make_atom("in", signal);
    RegionId lab = cx.make_region("lab", {in});
    // Dyadic weights keep the tensor sum exact.
    Probe green = classical::stat_probe(cx, lab, {{{"u"}, 0.5}, {{"v"}, 0.125}, {{"w"}, 0.0}});
    Probe red = classical::stat_probe(cx, lab, {{{"u"}, 0.25}, {{"v"}, 0.75}, {{"w"}, 0.0}});
    Probe any = classical::stat_probe(cx, lab, {{{"u"}, 0.75}, {{"v"}, 0.875}, {{"w"}, 0.0}});
  };

  TEST_CASE_FIXTURE(OneLight, "one-light hierarchy") {
    CHECK(max_abs_diff(any.tensor, green.tensor + red.tensor) == 0.0);
    CHECK(probe_le(cx, zero_probe(cx, lab), green));
    CHECK(probe_le(cx, green, any));
    CHECK(probe_le(cx, zero_probe(cx, lab), red));
    CHECK(probe_le(cx, red, any));
    CHECK(probe_le(cx, green, green));
    // Witness: on the generator "v" red is 0.75 > 0, so any > green there.
    CHECK(evaluate(red, {{in, classical::indicator(cx, signal, "v")}}) > 0.0);
    CHECK_FALSE(probe_le(cx, any, green));
  }

  TEST_CASE_FIXTURE(OneLight, "cond_prob_probe") {
    const BoundaryAssignment b{{in, classical::indicator(cx, signal, "u")}};
    CHECK(*cond_prob_probe(cx, any, any, b).quotient == 1.0);
    CHECK(*cond_prob_probe(cx, zero_probe(cx, lab), any, b).quotient == 0.0);
    const auto r = cond_prob_probe(cx, green, any, b, {.check_hierarchy = true});
    CHECK(*r.quotient == doctest::Approx(0.5 / 0.75));
    CHECK(r.diagnostics.empty());
    const auto bad = cond_prob_probe(cx, any, green, b, {.check_hierarchy = true});
    CHECK_FALSE(bad.diagnostics.empty());
    // "w" is incompatible with the apparatus.
    CHECK(code_of([&] { cond_prob_probe(cx, green, any, {{in, classical::indicator(cx, signal, "w")}}); }) ==
          Errc::ZeroDenominator);
  }

  TEST_CASE_FIXTURE(OneLight, "zero denominator keeps the numbers") {
    try {
      cond_prob_probe(cx, green, any, {{in, classical::indicator(cx, signal, "w")}});
      FAIL("expected ZeroDenominator");
    } catch (const ZeroDenominatorError& e) {
      CHECK(e.numerator() == 0.0);
      CHECK(e.denominator() == 0.0);
    }
  }

  TEST_CASE_FIXTURE(OneLight, "expectation") {
    const BoundaryAssignment b{{in, classical::distribution(cx, signal, {{"u", 1.0}, {"v", 2.0}})}};
    CHECK(*expectation(any, any, b).quotient == 1.0);
    CHECK(*expectation(2.0 * any, any, b).quotient == doctest::Approx(2.0));
    CHECK(code_of([&] { expectation(any, zero_probe(cx, lab), b); }) == Errc::ZeroDenominator);
  }

  TEST_CASE("cond_prob_boundary") {
    Complex cx;
    const SpaceId s = cx.add_space(classical::stat_space(classical::StateSet({"s1", "s2"})));
    const AtomId a = cx.make_atom("a", s);
    const RegionId r = cx.make_region("R", {a});
    const Probe perm = classical::permissive_probe(cx, r);
    const BCVector b = classical::distribution(cx, s, {{"s1", 1.0}, {"s2", 1.0}});
    const BCVector c = classical::indicator(cx, s, "s1");
    CHECK(*cond_prob_boundary(cx, perm, {{a, b}}, {{a, b}}).quotient == 1.0);
    CHECK(*cond_prob_boundary(cx, perm, {{a, BCVector(s, Eigen::Vector2d::Zero())}}, {{a, b}}).quotient == 0.0);
    // Enumeration: (1 + 0) / (1 + 1).
    const auto half = cond_prob_boundary(cx, perm, {{a, c}}, {{a, b}});
    CHECK(*half.quotient == 0.5);
    CHECK(half.diagnostics.empty());
    // c not below b is reported, not silent.
    const auto bad = cond_prob_boundary(cx, perm, {{a, b}}, {{a, c}});
    CHECK_FALSE(bad.diagnostics.empty());
  }

  TEST_CASE("order monotonicity on generators") {
    Complex cx;
    const SpaceId s = cx.add_space(classical::stat_space(classical::StateSet({"p", "q", "r"})));
    const AtomId a = cx.make_atom("a", s), b = cx.make_atom("b", s);
    const RegionId reg = cx.make_region("R", {a, b});
    for (int trial = 0; trial < 50; ++trial) {
      Tensor base({3, 3}), extra({3, 3});
      for (double& x : base.data()) x = pt::uniform();
      for (double& x : extra.data()) x = pt::uniform() < 0.3 ? 0.0 : pt::uniform();
      const Probe p = make_probe(cx, reg, base, true);
      const Probe p2 = make_probe(cx, reg, base + extra, true);
      REQUIRE(probe_le(cx, zero_probe(cx, reg), p));
      REQUIRE(probe_le(cx, p, p2));
      for (const auto* sa : {"p", "q", "r"})
        for (const auto* sb : {"p", "q", "r"}) {
          const BoundaryAssignment g{{a, classical::indicator(cx, s, sa)}, {b, classical::indicator(cx, s, sb)}};
          CHECK(evaluate(p, g) <= evaluate(p2, g));
        }
    }
  }

  TEST_CASE("probe_le over generator cones is exact") {
    Complex cx;
    const SpaceId s = cx.add_space(BoundarySpaceSpec(
        2, ConeSpec::generators({Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)}), SlicePairing::identity(2), "wedge"));
    const AtomId a = cx.make_atom("a", s);
    const RegionId r = cx.make_region("R", {a});
    // Linear functional (1, -1): value 1 on (1,0), 0 on (1,1): nonnegative on the wedge.
    const Probe f = make_probe(cx, r, Tensor({2}, {1.0, -1.0}));
    CHECK(probe_le(cx, zero_probe(cx, r), f));
    const Probe g = make_probe(cx, r, Tensor({2}, {1.0, -1.5}));
    CHECK_FALSE(probe_le(cx, zero_probe(cx, r), g));
  }
}

TEST_SUITE("induced boundary condition") {
  TEST_CASE("slice null-probe reproduces the fixed condition") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 3);
    const AtomId sigma = cx.make_atom("sigma", s);
    const RegionId sl = cx.slice(sigma);
    const AtomId mirror = cx.region(sl).boundary[1];
    const BCVector v = random_bc(cx, mirror);
    const BCVector q = induced_boundary_condition(cx, slice_null_probe(cx, sl), {{mirror, v}}, sigma);
    CHECK((q.coords - v.coords).norm() < 1e-12 * std::max(1.0, v.coords.norm()) * 1e3);
  }

  TEST_CASE("outer-product probe") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 3);
    const AtomId x = cx.make_atom("x", s), y = cx.make_atom("y", s);
    const RegionId r = cx.make_region("R", {x, y});
    const Eigen::VectorXd u = pt::random_vector(3), v = pt::random_vector(3), yv = pt::random_vector(3);
    const Probe p = make_probe(cx, r, Tensor::from_matrix(u * v.transpose()));
    const BCVector q = induced_boundary_condition(cx, p, {{y, {s, yv}}}, x);
    // Independent route: q solves G q = (v . y) u.
    const Eigen::VectorXd want = cx.space(s).pairing.gram().fullPivLu().solve(v.dot(yv) * u);
    CHECK((q.coords - want).norm() < 1e-9 * std::max(1.0, want.norm()));
    for (int k = 0; k < 10; ++k) {
      const Eigen::VectorXd xv = pt::random_vector(3);
      CHECK(pairing_eval(cx.space(s), xv, q.coords) == doctest::Approx(u.dot(xv) * v.dot(yv)).epsilon(1e-9));
    }
  }

  TEST_CASE("classical kernel propagates the distribution") {
    Complex cx;
    const SpaceId s = cx.add_space(classical::stat_space(classical::StateSet({"a", "b", "c"})));
    const AtomId in = cx.make_atom("in", s), out = cx.make_atom("out", s);
    const RegionId r = cx.make_region("R", {in, out});
    classical::Kernel k;
    const std::vector<std::string> st = {"a", "b", "c"};
    for (const auto& i : st)
      for (const auto& j : st) k[{i, j}] = pt::uniform();
    const Probe p = classical::stat_probe(cx, r, k);
    // Fixing the final condition to the indicator of "b" gives q(i) = k(i, b).
    const BCVector q = induced_boundary_condition(cx, p, {{out, classical::indicator(cx, s, "b")}}, in);
    for (std::size_t i = 0; i < 3; ++i) CHECK(q.coords(static_cast<Eigen::Index>(i)) == k.at({st[i], "b"}));
    // Fixing the initial distribution propagates it forward: q(j) = sum_i p(i) k(i, j).
    const BCVector p0 = classical::distribution(cx, s, {{"a", 0.2}, {"b", 0.5}, {"c", 0.3}});
    const BCVector fwd = induced_boundary_condition(cx, p, {{in, p0}}, out);
    for (std::size_t j = 0; j < 3; ++j) {
      double want = 0;
      for (std::size_t i = 0; i < 3; ++i) want += p0.coords(static_cast<Eigen::Index>(i)) * k.at({st[i], st[j]});
      CHECK(fwd.coords(static_cast<Eigen::Index>(j)) == doctest::Approx(want).epsilon(1e-14));
    }
  }

  TEST_CASE("interface atom must be on the boundary") {
    Complex cx;
    const SpaceId s = random_signed_space(cx, 2);
    const AtomId x = cx.make_atom("x", s), y = cx.make_atom("y", s), z = cx.make_atom("z", s);
    const RegionId r = cx.make_region("R", {x, y});
    CHECK(code_of([&] { induced_boundary_condition(cx, random_probe(cx, r), {{y, random_bc(cx, y)}}, z); }) ==
          Errc::InvalidArgument);
  }
}
