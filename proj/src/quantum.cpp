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

#include "posform/quantum.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "posform/error.hpp"

namespace posform::quantum {

KrausSet::KrausSet(std::vector<Eigen::MatrixXcd> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(Errc::InvalidArgument, "Kraus set is empty");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  if (rows == 0 || cols == 0) throw Error(Errc::InvalidArgument, "Kraus operator is empty");
  for (const auto& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw Error(Errc::DimensionMismatch, "Kraus operators have different shapes");
    }
    if (!k.allFinite()) throw Error(Errc::NonFinite, "Kraus operator has a non-finite entry");
  }
}

bool KrausSet::trace_preserving(double tol) const {
  const auto n = static_cast<Eigen::Index>(n_in());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return (sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd KrausSet::apply(const Eigen::MatrixXcd& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != n_in() || static_cast<std::size_t>(rho.cols()) != n_in()) {
    throw Error(Errc::DimensionMismatch, "operator does not match the Kraus input dimension");
  }
  const auto m = static_cast<Eigen::Index>(n_out());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& k : ops_) out += k * rho * k.adjoint();
  return out;
}

KrausSet KrausSet::then(const KrausSet& next) const {
  if (next.n_in() != n_out()) throw Error(Errc::DimensionMismatch, "channels do not chain");
  std::vector<Eigen::MatrixXcd> ops;
  ops.reserve(ops_.size() * next.ops_.size());
  for (const auto& b : next.ops_)
    for (const auto& a : ops_) ops.push_back(b * a);
  return KrausSet(std::move(ops));
}

BoundarySpaceSpec qm_space(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "Hilbert space dimension must be positive");
  const auto d = static_cast<Eigen::Index>(n * n);
  return BoundarySpaceSpec(n * n, ConeSpec::psd(n), SlicePairing::identity(d),
                           "qm(" + std::to_string(n) + ")");
}

const HermitianBasis& operator_basis(const Complex& cx, SpaceId space) {
  const auto& spec = cx.space(space);
  const auto* psd = spec.cone.as_psd();
  if (!psd) throw Error(Errc::SpaceMismatch, "space '" + spec.label + "' is not an operator space");
  return *psd->basis;
}

namespace {

struct Interval {
  const HermitianBasis& in;
  const HermitianBasis& out;
};

Interval interval_of(const Complex& cx, RegionId region) {
  const Region& r = cx.region(region);
  if (r.boundary.size() != 2) {
    throw Error(Errc::InvalidArgument, "region '" + r.label + "' needs exactly two boundary atoms (in, out)");
  }
  return {operator_basis(cx, cx.atom(r.boundary[0]).space),
          operator_basis(cx, cx.atom(r.boundary[1]).space)};
}

Probe probe_from_map(const Complex& cx, RegionId region, std::size_t n_in, std::size_t n_out,
                     const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& map,
                     bool primitive) {
  const Interval iv = interval_of(cx, region);
  if (iv.in.n() != n_in || iv.out.n() != n_out) {
    throw Error(Errc::DimensionMismatch,
                "operation maps " + std::to_string(n_in) + " -> " + std::to_string(n_out) +
                    " but the region's atoms have dimensions " + std::to_string(iv.in.n()) +
                    " -> " + std::to_string(iv.out.n()));
  }
  Tensor t({iv.in.dim(), iv.out.dim()});
  for (std::size_t i = 0; i < iv.in.dim(); ++i) {
    Eigen::MatrixXcd image = map(iv.in[i]);
    // Hermitian part only; the map is Hermiticity-preserving up to rounding.
    image = 0.5 * (image + image.adjoint()).eval();
    const Eigen::VectorXd row = iv.out.coords(image);
    for (std::size_t j = 0; j < iv.out.dim(); ++j) {
      const std::size_t idx[2] = {i, j};
      t.at(idx) = row(static_cast<Eigen::Index>(j));
    }
  }
  return make_probe(cx, region, std::move(t), primitive);
}

}  // namespace

Probe probe_from_kraus(const Complex& cx, RegionId region, const KrausSet& ks) {
  return probe_from_map(
      cx, region, ks.n_in(), ks.n_out(), [&ks](const Eigen::MatrixXcd& b) { return ks.apply(b); },
      true);
}

Probe null_probe_qm(const Complex& cx, RegionId region, const std::optional<Eigen::MatrixXcd>& dynamics) {
  const Interval iv = interval_of(cx, region);
  const auto n = static_cast<Eigen::Index>(iv.in.n());
  Eigen::MatrixXcd u = dynamics.value_or(Eigen::MatrixXcd::Identity(n, n));
  if (u.rows() != u.cols()) throw Error(Errc::NotUnitary, "dynamics matrix is not square");
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-10)) {
    throw Error(Errc::NotUnitary, "U^dagger U deviates from identity by " + std::to_string(defect));
  }
  return probe_from_kraus(cx, region, KrausSet({std::move(u)}));
}

Probe effect_probe(const Complex& cx, RegionId region, const Eigen::MatrixXcd& effect) {
  if (effect.rows() != effect.cols()) throw Error(Errc::DimensionMismatch, "effect is not square");
  const double defect = self_adjoint_defect(effect);
  if (defect > 1e-10) throw Error(Errc::NotSelfAdjoint, "effect asymmetry " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (effect + effect.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(Errc::InvalidArgument, "effect is not positive semidefinite");
  }
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXcd root = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  return probe_from_kraus(cx, region, KrausSet({std::move(root)}));
}

Probe observable_probe(const Complex& cx, RegionId region, const Eigen::MatrixXcd& observable) {
  if (observable.rows() != observable.cols()) {
    throw Error(Errc::DimensionMismatch, "observable is not square");
  }
  const double defect = self_adjoint_defect(observable);
  if (defect > 1e-10) throw Error(Errc::NotSelfAdjoint, "observable asymmetry " + std::to_string(defect));
  const auto n = static_cast<std::size_t>(observable.rows());
  return probe_from_map(
      cx, region, n, n,
      [&observable](const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
        return 0.5 * (observable * rho + rho * observable);
      },
      false);
}

StateCondition state_bc(const Complex& cx, SpaceId space, const Eigen::MatrixXcd& rho) {
  const HermitianBasis& basis = operator_basis(cx, space);
  StateCondition sc{BCVector(space, basis.coords(rho)), false, rho.trace().real()};
  sc.psd = cone_contains(cx.space(space).cone, sc.bc);
  return sc;
}

BCVector effect_bc(const Complex& cx, SpaceId space, const Eigen::MatrixXcd& op) {
  return {space, operator_basis(cx, space).coords(op)};
}

Eigen::MatrixXcd operator_of(const Complex& cx, const BCVector& v) {
  return operator_basis(cx, v.space).matrix(v.coords);
}

Eigen::MatrixXcd pure_state(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

}  // namespace posform::quantum
