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

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace posform {

/// A real basis of the n x n self-adjoint matrices, orthonormal under the
/// trace pairing tr(A B). Coordinates of a self-adjoint A are tr(B_i A).
class HermitianBasis {
 public:
  /// Identity / sqrt(n) first, then for each pair j < k the symmetric and
  /// antisymmetric off-diagonal elements, then the n - 1 traceless diagonal
  /// elements (generalized Gell-Mann family, trace-normalized).
  static std::shared_ptr<const HermitianBasis> standard(std::size_t n);

  /// Accepts any family of n^2 self-adjoint matrices that is trace-orthonormal
  /// within 1e-12.
  explicit HermitianBasis(std::vector<Eigen::MatrixXcd> elements);

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return elements_.size(); }
  const std::vector<Eigen::MatrixXcd>& elements() const noexcept { return elements_; }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return elements_[i]; }

  /// Throws NotSelfAdjoint if max |A - A^dagger| exceeds 1e-10.
  Eigen::VectorXd coords(const Eigen::MatrixXcd& a) const;
  Eigen::MatrixXcd matrix(const Eigen::VectorXd& coords) const;

 private:
  std::size_t n_ = 0;
  std::vector<Eigen::MatrixXcd> elements_;
};

double self_adjoint_defect(const Eigen::MatrixXcd& a);

}  // namespace posform
