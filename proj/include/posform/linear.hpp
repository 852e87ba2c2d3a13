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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "posform/hermitian_basis.hpp"
#include "posform/ids.hpp"

namespace posform {

/// Membership and order tolerance for cones.
inline constexpr double kConeTolerance = 1e-9;
/// Relative eigenvalue threshold below which a slice pairing counts as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kSignedBasisTolerance = 1e-10;

/// A boundary condition: coordinates in the reference basis of its space.
struct BCVector {
  SpaceId space;
  Eigen::VectorXd coords;

  BCVector() = default;
  BCVector(SpaceId space, Eigen::VectorXd coords);

  Eigen::Index dim() const noexcept { return coords.size(); }
};

BCVector operator+(const BCVector& a, const BCVector& b);
BCVector operator-(const BCVector& a, const BCVector& b);
BCVector operator*(double alpha, const BCVector& v);

struct OrthantCone {};

/// Positive semidefinite operators, coordinates taken in `basis`.
struct PsdCone {
  std::shared_ptr<const HermitianBasis> basis;
  std::size_t n() const noexcept { return basis->n(); }
};

/// Nonnegative combinations of finitely many nonzero generators.
struct GeneratorCone {
  std::vector<Eigen::VectorXd> generators;
};

class ConeSpec {
 public:
  enum class Kind { Orthant, Psd, Generators };

  static ConeSpec orthant() { return ConeSpec(OrthantCone{}); }
  static ConeSpec psd(std::size_t n);
  static ConeSpec psd(std::shared_ptr<const HermitianBasis> basis);
  static ConeSpec generators(std::vector<Eigen::VectorXd> gens);

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  /// Ambient dimension if the cone fixes one (PSD, GENERATORS).
  std::optional<Eigen::Index> fixed_dim() const;

  const PsdCone* as_psd() const noexcept { return std::get_if<PsdCone>(&rep_); }
  const GeneratorCone* as_generators() const noexcept { return std::get_if<GeneratorCone>(&rep_); }

 private:
  using Rep = std::variant<OrthantCone, PsdCone, GeneratorCone>;
  explicit ConeSpec(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// Symmetric bilinear form on a boundary space, given by its Gram matrix.
class SlicePairing {
 public:
  explicit SlicePairing(Eigen::MatrixXd gram);
  static SlicePairing identity(Eigen::Index dim) {
    return SlicePairing(Eigen::MatrixXd::Identity(dim, dim));
  }

  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

 private:
  Eigen::MatrixXd gram_;
};

struct BoundarySpaceSpec {
  BoundarySpaceSpec(std::size_t dim, ConeSpec cone, SlicePairing pairing, std::string label,
                    std::vector<std::string> basis_labels = {});

  std::size_t dim;
  ConeSpec cone;
  SlicePairing pairing;
  std::string label;
  /// Optional names for the reference basis vectors (classical state labels).
  std::vector<std::string> basis_labels;
};

/// Basis {b_k} with pairing(b_k, b_l) = (-1)^sign[k] delta_kl.
struct SignedBasis {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<int> signs;

  std::size_t size() const noexcept { return vectors.size(); }
  double sign_factor(std::size_t k) const noexcept { return signs[k] ? -1.0 : 1.0; }
  /// Basis vectors as columns.
  Eigen::MatrixXd matrix() const;
  /// Number of negative-signature vectors.
  std::size_t negative_count() const noexcept;
};

bool cone_contains(const ConeSpec& cone, const BCVector& v, double tol = kConeTolerance);
bool cone_contains(const BoundarySpaceSpec& space, const BCVector& v, double tol = kConeTolerance);

/// u <= v iff v - u lies in the cone.
bool cone_le(const ConeSpec& cone, const BCVector& u, const BCVector& v,
             double tol = kConeTolerance);

double pairing_eval(const BoundarySpaceSpec& space, const BCVector& u, const BCVector& v);
double pairing_eval(const BoundarySpaceSpec& space, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& v);

/// Signed orthonormal basis of the slice pairing: positive-signature vectors
/// first, each eigenvector scaled by 1/sqrt(|lambda|). Throws DegeneratePairing
/// when some |lambda| < 1e-10 * max |lambda|.
SignedBasis orthonormalize(const BoundarySpaceSpec& space);

/// Max deviation of pairing(b_k, b_l) from (-1)^sign[k] delta_kl.
double signed_basis_defect(const BoundarySpaceSpec& space, const SignedBasis& basis);

/// sum_k (-1)^sign[k] b_k b_k^T; equals the inverse Gram matrix for a valid basis.
Eigen::MatrixXd completeness_kernel(const SignedBasis& basis);

/// Lawson-Hanson nonnegative least squares: min |A x - b| subject to x >= 0.
struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;
};
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace posform
