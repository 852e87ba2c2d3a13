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

#include "posform/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "posform/error.hpp"

namespace posform {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

std::string shape_string(std::span<const std::size_t> shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + ")";
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(product(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != product(shape_)) {
    throw Error(Errc::DimensionMismatch, "tensor of shape " + shape_string(shape_) + " needs " +
                                             std::to_string(product(shape_)) + " entries, got " +
                                             std::to_string(data_.size()));
  }
  for (double x : data_) {
    if (!std::isfinite(x)) throw Error(Errc::NonFinite, "tensor entry is not finite");
  }
}

Tensor Tensor::from_matrix(const Eigen::MatrixXd& m) {
  Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  Eigen::Map<RowMajorMatrix>(t.data_.data(), m.rows(), m.cols()) = m;
  return t;
}

std::size_t Tensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw Error(Errc::DimensionMismatch, "index rank " + std::to_string(index.size()) +
                                             " for tensor of rank " + std::to_string(rank()));
  }
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (index[a] >= shape_[a]) throw Error(Errc::DimensionMismatch, "tensor index out of range");
    flat = flat * shape_[a] + index[a];
  }
  return flat;
}

double& Tensor::at(std::span<const std::size_t> index) { return data_[flat_index(index)]; }

double Tensor::at(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }

Tensor Tensor::permuted(std::span<const std::size_t> perm) const {
  const std::size_t r = rank();
  if (perm.size() != r) throw Error(Errc::DimensionMismatch, "permutation rank mismatch");
  std::vector<std::size_t> new_shape(r);
  for (std::size_t a = 0; a < r; ++a) new_shape[a] = shape_.at(perm[a]);

  std::vector<std::size_t> src_stride(r, 1);
  for (std::size_t a = r; a-- > 1;) src_stride[a - 1] = src_stride[a] * shape_[a];

  Tensor out(new_shape);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t flat = 0; flat < out.data_.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t a = 0; a < r; ++a) src += idx[a] * src_stride[perm[a]];
    out.data_[flat] = data_[src];
    for (std::size_t a = r; a-- > 0;) {
      if (++idx[a] < new_shape[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

Tensor Tensor::contract_axis(std::size_t axis, const Eigen::MatrixXd& m) const {
  if (axis >= rank() || static_cast<std::size_t>(m.rows()) != shape_[axis]) {
    throw Error(Errc::DimensionMismatch, "cannot contract axis " + std::to_string(axis) +
                                             " of shape " + shape_string(shape_));
  }
  const std::size_t outer = product(std::span(shape_).first(axis));
  const std::size_t inner = product(std::span(shape_).subspan(axis + 1));
  const auto dim = static_cast<Eigen::Index>(shape_[axis]);
  const auto k = m.cols();

  std::vector<std::size_t> new_shape = shape_;
  new_shape[axis] = static_cast<std::size_t>(k);
  Tensor out(new_shape);
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const RowMajorMatrix> block(data_.data() + o * dim * inner, dim,
                                           static_cast<Eigen::Index>(inner));
    Eigen::Map<RowMajorMatrix> dst(out.data_.data() + o * k * inner, k,
                                   static_cast<Eigen::Index>(inner));
    dst.noalias() = m.transpose() * block;
  }
  return out;
}

double Tensor::contract_all(std::span<const Eigen::VectorXd> vectors) const {
  if (vectors.size() != rank()) throw Error(Errc::DimensionMismatch, "contraction arity mismatch");
  Eigen::VectorXd acc = Eigen::Map<const Eigen::VectorXd>(data_.data(), data_.size());
  for (std::size_t a = rank(); a-- > 0;) {
    const auto dim = static_cast<Eigen::Index>(shape_[a]);
    if (vectors[a].size() != dim) {
      throw Error(Errc::DimensionMismatch, "vector for axis " + std::to_string(a) + " has length " +
                                               std::to_string(vectors[a].size()));
    }
    Eigen::Map<const RowMajorMatrix> view(acc.data(), acc.size() / dim, dim);
    Eigen::VectorXd next = view * vectors[a];
    acc = std::move(next);
  }
  return acc(0);
}

Eigen::VectorXd Tensor::contract_all_but(std::size_t keep,
                                         std::span<const Eigen::VectorXd> vectors) const {
  if (keep >= rank() || vectors.size() != rank()) {
    throw Error(Errc::DimensionMismatch, "contraction arity mismatch");
  }
  Tensor t = *this;
  // Trailing axes first keeps each step a plain matrix-vector product.
  for (std::size_t a = rank(); a-- > 0;) {
    if (a == keep) continue;
    Eigen::MatrixXd col = vectors[a];
    t = t.contract_axis(a, col);
  }
  return Eigen::Map<const Eigen::VectorXd>(t.data_.data(), t.data_.size());
}

Eigen::Map<const RowMajorMatrix> Tensor::as_matrix(std::size_t leading) const {
  const std::size_t rows = product(std::span(shape_).first(leading));
  return {data_.data(), static_cast<Eigen::Index>(rows),
          static_cast<Eigen::Index>(data_.size() / rows)};
}

double Tensor::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void Tensor::check_same_shape(const Tensor& other) const {
  if (shape_ != other.shape_) {
    throw Error(Errc::DimensionMismatch,
                "shapes " + shape_string(shape_) + " and " + shape_string(other.shape_) + " differ");
  }
}

Tensor& Tensor::operator+=(const Tensor& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double alpha) noexcept {
  for (double& x : data_) x *= alpha;
  return *this;
}

Tensor contract_pair(const Tensor& lhs, const Tensor& rhs, std::size_t count) {
  if (count > lhs.rank() || count > rhs.rank()) {
    throw Error(Errc::DimensionMismatch, "contraction count exceeds tensor rank");
  }
  const auto& ls = lhs.shape();
  const auto& rs = rhs.shape();
  const std::size_t lkeep = lhs.rank() - count;
  for (std::size_t i = 0; i < count; ++i) {
    if (ls[lkeep + i] != rs[i]) throw Error(Errc::DimensionMismatch, "contracted axes differ");
  }
  std::vector<std::size_t> shape(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(lkeep));
  shape.insert(shape.end(), rs.begin() + static_cast<std::ptrdiff_t>(count), rs.end());
  Tensor out(shape);
  auto a = lhs.as_matrix(lkeep);
  auto b = rhs.as_matrix(count);
  Eigen::Map<RowMajorMatrix>(out.data().data(), a.rows(), b.cols()).noalias() = a * b;
  return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) throw Error(Errc::DimensionMismatch, "shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace posform
