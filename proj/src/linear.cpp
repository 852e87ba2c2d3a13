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

#include "posform/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "posform/error.hpp"

namespace posform {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw Error(Errc::DimensionMismatch, std::string(what) + ": dimensions " + std::to_string(a) +
                                             " and " + std::to_string(b) + " differ");
  }
}

void require_compatible(const BCVector& u, const BCVector& v) {
  if (u.space.valid() && v.space.valid() && u.space != v.space) {
    throw Error(Errc::SpaceMismatch, "boundary conditions belong to different spaces");
  }
  require_same_dim(u.dim(), v.dim(), "boundary conditions");
}

}  // namespace

BCVector::BCVector(SpaceId space_id, Eigen::VectorXd c) : space(space_id), coords(std::move(c)) {
  if (!coords.allFinite()) throw Error(Errc::NonFinite, "boundary condition has a non-finite entry");
}

BCVector operator+(const BCVector& a, const BCVector& b) {
  require_compatible(a, b);
  return {a.space, a.coords + b.coords};
}

BCVector operator-(const BCVector& a, const BCVector& b) {
  require_compatible(a, b);
  return {a.space, a.coords - b.coords};
}

BCVector operator*(double alpha, const BCVector& v) { return {v.space, alpha * v.coords}; }

ConeSpec ConeSpec::psd(std::size_t n) { return psd(HermitianBasis::standard(n)); }

ConeSpec ConeSpec::psd(std::shared_ptr<const HermitianBasis> basis) {
  if (!basis) throw Error(Errc::InvalidArgument, "PSD cone needs an operator basis");
  return ConeSpec(PsdCone{std::move(basis)});
}

ConeSpec ConeSpec::generators(std::vector<Eigen::VectorXd> gens) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "generator list is empty");
  const auto d = gens.front().size();
  for (const auto& g : gens) {
    require_same_dim(g.size(), d, "cone generators");
    if (!g.allFinite()) throw Error(Errc::NonFinite, "cone generator is not finite");
    if (g.isZero(0.0)) throw Error(Errc::InvalidArgument, "cone generator is zero");
  }
  return ConeSpec(GeneratorCone{std::move(gens)});
}

std::optional<Eigen::Index> ConeSpec::fixed_dim() const {
  if (const auto* p = as_psd()) return static_cast<Eigen::Index>(p->basis->dim());
  if (const auto* g = as_generators()) return g->generators.front().size();
  return std::nullopt;
}

SlicePairing::SlicePairing(Eigen::MatrixXd gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw Error(Errc::DimensionMismatch, "Gram matrix is not square");
  if (!gram_.allFinite()) throw Error(Errc::NonFinite, "Gram matrix has a non-finite entry");
  if (gram_.size() > 0 && (gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw Error(Errc::InvalidArgument, "Gram matrix is not symmetric within 1e-12");
  }
}

BoundarySpaceSpec::BoundarySpaceSpec(std::size_t d, ConeSpec c, SlicePairing p, std::string l,
                                     std::vector<std::string> names)
    : dim(d), cone(std::move(c)), pairing(std::move(p)), label(std::move(l)),
      basis_labels(std::move(names)) {
  if (dim == 0) throw Error(Errc::InvalidArgument, "space dimension must be positive");
  const auto di = static_cast<Eigen::Index>(dim);
  if (auto fixed = cone.fixed_dim()) require_same_dim(*fixed, di, "cone and space");
  require_same_dim(pairing.gram().rows(), di, "pairing and space");
  if (!basis_labels.empty() && basis_labels.size() != dim) {
    throw Error(Errc::DimensionMismatch, "basis label count differs from space dimension");
  }
}

Eigen::MatrixXd SignedBasis::matrix() const {
  if (vectors.empty()) return {};
  Eigen::MatrixXd m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vectors[k];
  return m;
}

std::size_t SignedBasis::negative_count() const noexcept {
  return static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 1));
}

bool cone_contains(const ConeSpec& cone, const BCVector& v, double tol) {
  switch (cone.kind()) {
    case ConeSpec::Kind::Orthant:
      return v.coords.size() == 0 || v.coords.minCoeff() >= -tol;
    case ConeSpec::Kind::Psd: {
      const auto& basis = *cone.as_psd()->basis;
      require_same_dim(v.dim(), static_cast<Eigen::Index>(basis.dim()), "PSD cone membership");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(basis.matrix(v.coords),
                                                         Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tol;
    }
    case ConeSpec::Kind::Generators: {
      const auto& gens = cone.as_generators()->generators;
      require_same_dim(v.dim(), gens.front().size(), "generator cone membership");
      Eigen::MatrixXd a(v.dim(), static_cast<Eigen::Index>(gens.size()));
      for (std::size_t j = 0; j < gens.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = gens[j];
      const auto fit = nnls(a, v.coords);
      return fit.residual <= tol * std::max(1.0, v.coords.norm());
    }
  }
  return false;
}

bool cone_contains(const BoundarySpaceSpec& space, const BCVector& v, double tol) {
  require_same_dim(v.dim(), static_cast<Eigen::Index>(space.dim), "cone membership");
  return cone_contains(space.cone, v, tol);
}

bool cone_le(const ConeSpec& cone, const BCVector& u, const BCVector& v, double tol) {
  require_compatible(u, v);
  return cone_contains(cone, v - u, tol);
}

double pairing_eval(const BoundarySpaceSpec& space, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& v) {
  const auto& g = space.pairing.gram();
  require_same_dim(u.size(), g.rows(), "pairing argument");
  require_same_dim(v.size(), g.rows(), "pairing argument");
  return u.dot(g * v);
}

double pairing_eval(const BoundarySpaceSpec& space, const BCVector& u, const BCVector& v) {
  require_compatible(u, v);
  return pairing_eval(space, u.coords, v.coords);
}

SignedBasis orthonormalize(const BoundarySpaceSpec& space) {
  const auto& g = space.pairing.gram();
  const Eigen::Index d = g.rows();

  Eigen::VectorXd lambda;
  Eigen::MatrixXd vecs;
  if (g.isDiagonal(0.0)) {
    // Exact path: avoids rounding in the common identity-Gram case.
    lambda = g.diagonal();
    vecs = Eigen::MatrixXd::Identity(d, d);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success) {
      throw Error(Errc::SolverNonConvergence, "eigendecomposition of the slice pairing failed");
    }
    lambda = es.eigenvalues();
    vecs = es.eigenvectors();
  }

  const double scale = lambda.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < d; ++k) {
    if (!(std::abs(lambda(k)) >= kDegeneracyTolerance * scale) || scale == 0.0) {
      throw Error(Errc::DegeneratePairing,
                  "slice pairing of space '" + space.label + "' has eigenvalue " +
                      std::to_string(lambda(k)) + "; the pairing must be non-degenerate");
    }
  }

  // Positive part first; within a part, order by the dominant reference index.
  std::vector<Eigen::Index> lead(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index arg = 0;
    vecs.col(k).cwiseAbs().maxCoeff(&arg);
    lead[static_cast<std::size_t>(k)] = arg;
    if (vecs(arg, k) < 0) vecs.col(k) *= -1.0;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const bool na = lambda(a) < 0;
    const bool nb = lambda(b) < 0;
    if (na != nb) return !na;
    return lead[static_cast<std::size_t>(a)] < lead[static_cast<std::size_t>(b)];
  });

  SignedBasis out;
  for (Eigen::Index k : order) {
    out.vectors.emplace_back(vecs.col(k) / std::sqrt(std::abs(lambda(k))));
    out.signs.push_back(lambda(k) < 0 ? 1 : 0);
  }
  return out;
}

double signed_basis_defect(const BoundarySpaceSpec& space, const SignedBasis& basis) {
  if (basis.size() != space.dim || basis.signs.size() != basis.size()) return INFINITY;
  const Eigen::MatrixXd b = basis.matrix();
  const Eigen::MatrixXd p = b.transpose() * space.pairing.gram() * b;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < p.rows(); ++k) {
    for (Eigen::Index l = 0; l < p.cols(); ++l) {
      const double want = k == l ? basis.sign_factor(static_cast<std::size_t>(k)) : 0.0;
      worst = std::max(worst, std::abs(p(k, l) - want));
    }
  }
  return worst;
}

Eigen::MatrixXd completeness_kernel(const SignedBasis& basis) {
  const Eigen::MatrixXd b = basis.matrix();
  Eigen::VectorXd s(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) s(static_cast<Eigen::Index>(k)) = basis.sign_factor(k);
  return b * s.asDiagonal() * b.transpose();
}

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index p = a.cols();
  require_same_dim(a.rows(), b.size(), "nnls right-hand side");
  const double eps = 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max(1.0, b.norm());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  std::vector<bool> passive(static_cast<std::size_t>(p), false);

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < p; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) ap.col(static_cast<Eigen::Index>(i)) = a.col(idx[i]);
    Eigen::VectorXd sp = ap.completeOrthogonalDecomposition().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(p);
    for (std::size_t i = 0; i < idx.size(); ++i) s(idx[i]) = sp(static_cast<Eigen::Index>(i));
    return s;
  };

  const int max_outer = 3 * static_cast<int>(p) + 10;
  int outer = 0;
  for (;;) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = eps;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    if (++outer > max_outer) {
      throw Error(Errc::SolverNonConvergence, "nonnegative least squares did not converge");
    }
    passive[static_cast<std::size_t>(best)] = true;

    Eigen::VectorXd s = solve_passive();
    int inner = 0;
    for (;;) {
      double alpha = INFINITY;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      if (!std::isfinite(alpha)) break;
      if (++inner > max_outer) {
        throw Error(Errc::SolverNonConvergence, "nonnegative least squares did not converge");
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= eps) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
      s = solve_passive();
    }
    x = s;
  }
  return {x, (a * x - b).norm()};
}

}  // namespace posform
