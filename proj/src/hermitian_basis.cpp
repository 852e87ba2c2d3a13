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

#include "posform/hermitian_basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "posform/error.hpp"

namespace posform {

using cd = std::complex<double>;

double self_adjoint_defect(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

std::shared_ptr<const HermitianBasis> HermitianBasis::standard(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "Hilbert space dimension must be positive");

  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const HermitianBasis>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  const auto dn = static_cast<Eigen::Index>(n);
  std::vector<Eigen::MatrixXcd> els;
  els.reserve(n * n);
  els.push_back(Eigen::MatrixXcd::Identity(dn, dn) / std::sqrt(static_cast<double>(n)));

  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < dn; ++j) {
    for (Eigen::Index k = j + 1; k < dn; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(dn, dn);
      sym(j, k) = sym(k, j) = r;
      Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(dn, dn);
      asym(j, k) = cd(0, -r);
      asym(k, j) = cd(0, r);
      els.push_back(std::move(sym));
      els.push_back(std::move(asym));
    }
  }
  for (Eigen::Index l = 1; l < dn; ++l) {
    const double ld = static_cast<double>(l);
    const double norm = 1.0 / std::sqrt(ld * (ld + 1.0));
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dn, dn);
    for (Eigen::Index j = 0; j < l; ++j) d(j, j) = norm;
    d(l, l) = -ld * norm;
    els.push_back(std::move(d));
  }

  auto basis = std::make_shared<const HermitianBasis>(std::move(els));
  cache.emplace(n, basis);
  return basis;
}

HermitianBasis::HermitianBasis(std::vector<Eigen::MatrixXcd> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(Errc::InvalidArgument, "empty operator basis");
  n_ = static_cast<std::size_t>(elements_.front().rows());
  if (elements_.size() != n_ * n_) {
    throw Error(Errc::DimensionMismatch, "operator basis for n = " + std::to_string(n_) +
                                             " needs " + std::to_string(n_ * n_) + " elements");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& b = elements_[i];
    if (static_cast<std::size_t>(b.rows()) != n_ || static_cast<std::size_t>(b.cols()) != n_) {
      throw Error(Errc::DimensionMismatch, "operator basis element has the wrong shape");
    }
    if (self_adjoint_defect(b) > 1e-12) {
      throw Error(Errc::NotSelfAdjoint, "operator basis element " + std::to_string(i));
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double ip = (b * elements_[j]).trace().real();
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-12) {
        throw Error(Errc::InvalidArgument, "operator basis is not trace-orthonormal");
      }
    }
  }
}

Eigen::VectorXd HermitianBasis::coords(const Eigen::MatrixXcd& a) const {
  if (static_cast<std::size_t>(a.rows()) != n_ || static_cast<std::size_t>(a.cols()) != n_) {
    throw Error(Errc::DimensionMismatch, "expected a " + std::to_string(n_) + "x" +
                                             std::to_string(n_) + " matrix");
  }
  if (!a.allFinite()) throw Error(Errc::NonFinite, "matrix entry is not finite");
  const double defect = self_adjoint_defect(a);
  if (defect > 1e-10) {
    throw Error(Errc::NotSelfAdjoint, "asymmetry " + std::to_string(defect) + " exceeds 1e-10");
  }
  Eigen::VectorXd c(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    // tr(B A) = sum_jk B_jk A_kj = sum_jk conj(B_kj) A_kj for self-adjoint B.
    c(static_cast<Eigen::Index>(i)) = elements_[i].cwiseProduct(a.transpose()).sum().real();
  }
  return c;
}

Eigen::MatrixXcd HermitianBasis::matrix(const Eigen::VectorXd& coords) const {
  if (static_cast<std::size_t>(coords.size()) != dim()) {
    throw Error(Errc::DimensionMismatch, "coordinate vector has length " +
                                             std::to_string(coords.size()) + ", expected " +
                                             std::to_string(dim()));
  }
  const auto dn = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dn, dn);
  for (std::size_t i = 0; i < dim(); ++i) m += coords(static_cast<Eigen::Index>(i)) * elements_[i];
  return m;
}

}  // namespace posform
