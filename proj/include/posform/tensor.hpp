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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace posform {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense real tensor stored row-major (last index fastest). A rank-0 tensor
/// holds a single scalar.
class Tensor {
 public:
  Tensor() : data_(1, 0.0) {}
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor from_matrix(const Eigen::MatrixXd& m);

  std::size_t rank() const noexcept { return shape_.size(); }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double& at(std::span<const std::size_t> index);
  double at(std::span<const std::size_t> index) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;

  /// Axis a of the result is axis perm[a] of this tensor.
  Tensor permuted(std::span<const std::size_t> perm) const;

  /// Replaces index i on `axis` by k: result[..k..] = sum_i this[..i..] * m(i, k).
  Tensor contract_axis(std::size_t axis, const Eigen::MatrixXd& m) const;

  /// Full contraction with one vector per axis.
  double contract_all(std::span<const Eigen::VectorXd> vectors) const;

  /// Contracts every axis except `keep`; the result is a vector over that axis.
  Eigen::VectorXd contract_all_but(std::size_t keep, std::span<const Eigen::VectorXd> vectors) const;

  /// View with the first `leading` axes as rows and the rest as columns.
  Eigen::Map<const RowMajorMatrix> as_matrix(std::size_t leading) const;

  double max_abs() const noexcept;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double alpha) noexcept;

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double alpha, Tensor a) { return a *= alpha; }

 private:
  void check_same_shape(const Tensor& other) const;

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Contracts the trailing `count` axes of `lhs` with the leading `count` axes
/// of `rhs`. The result carries lhs's remaining axes followed by rhs's.
Tensor contract_pair(const Tensor& lhs, const Tensor& rhs, std::size_t count);

double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace posform
