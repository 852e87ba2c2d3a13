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

// Random instance generators and independent oracles shared by the test
// suites. Nothing here calls into the composition or evaluation code paths.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace posform::testing {

using cd = std::complex<double>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261015);
  return gen;
}

inline double gauss() {
  static std::normal_distribution<double> d;
  return d(rng());
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Eigen::VectorXd random_vector(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss();
  return v;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = gauss();
  return m;
}

inline Eigen::MatrixXcd random_complex_matrix(Eigen::Index r, Eigen::Index c) {
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cd(gauss(), gauss());
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(n, n));
  return qr.householderQ();
}

inline Eigen::VectorXcd random_pure(Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cd(gauss(), gauss());
  return v.normalized();
}

inline Eigen::MatrixXcd random_density(Eigen::Index n) {
  Eigen::MatrixXcd a = random_complex_matrix(n, n);
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::MatrixXcd random_psd(Eigen::Index n, Eigen::Index rank) {
  Eigen::MatrixXcd a = random_complex_matrix(n, rank);
  return a * a.adjoint();
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n) {
  Eigen::MatrixXcd a = random_complex_matrix(n, n);
  return 0.5 * (a + a.adjoint());
}

inline Eigen::MatrixXcd random_unitary(Eigen::Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex_matrix(n, n));
  return qr.householderQ();
}

/// Kraus operators of a random CPTP map: blocks of a random isometry
/// (Stinespring dilation with `k` environment levels).
inline std::vector<Eigen::MatrixXcd> random_cptp(Eigen::Index n_in, Eigen::Index n_out, Eigen::Index k) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex_matrix(n_out * k, n_in));
  Eigen::MatrixXcd iso = qr.householderQ() * Eigen::MatrixXcd::Identity(n_out * k, n_in);
  std::vector<Eigen::MatrixXcd> ops;
  for (Eigen::Index j = 0; j < k; ++j) ops.push_back(iso.block(j * n_out, 0, n_out, n_in));
  return ops;
}

/// Direct channel application, written out independently of KrausSet.
inline Eigen::MatrixXcd apply_kraus(const std::vector<Eigen::MatrixXcd>& ops, const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ops.front().rows(), ops.front().rows());
  for (const auto& k : ops) out += k * rho * k.adjoint();
  return out;
}

/// Eigenvalues of a 2x2 Hermitian matrix from its characteristic polynomial.
inline std::pair<double, double> eig2x2(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {mean - rad, mean + rad};
}

/// Direct-sum contraction of a rank-2 coefficient array with two vectors.
inline double bilinear(const Eigen::MatrixXd& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) s += x(i) * t(i, j) * y(j);
  return s;
}

}  // namespace posform::testing
