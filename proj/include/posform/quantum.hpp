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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "posform/complex.hpp"
#include "posform/probe.hpp"

namespace posform::quantum {

/// Operators K_i of a quantum operation rho -> sum_i K_i rho K_i^dagger.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Eigen::MatrixXcd> ops);

  const std::vector<Eigen::MatrixXcd>& ops() const noexcept { return ops_; }
  std::size_t n_in() const noexcept { return static_cast<std::size_t>(ops_.front().cols()); }
  std::size_t n_out() const noexcept { return static_cast<std::size_t>(ops_.front().rows()); }

  /// sum_i K_i^dagger K_i == identity within `tol`.
  bool trace_preserving(double tol = 1e-10) const;
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  /// Kraus set of the sequential map: this first, then `next`.
  KrausSet then(const KrausSet& next) const;

 private:
  std::vector<Eigen::MatrixXcd> ops_;
};

/// Self-adjoint n x n operators: dimension n^2, PSD cone, Hilbert-Schmidt
/// pairing (identity Gram in the trace-orthonormal reference basis).
BoundarySpaceSpec qm_space(std::size_t n);

/// Reference operator basis of a quantum space; throws if the cone is not PSD.
const HermitianBasis& operator_basis(const Complex& cx, SpaceId space);

/// Probe of a quantum operation on a region with boundary (in, out); the value
/// on (rho, E) is tr(E * sum_k K_k rho K_k^dagger).
Probe probe_from_kraus(const Complex& cx, RegionId region, const KrausSet& ks);

/// Null-probe of a time-interval region: the unitary channel of `dynamics`,
/// or the identity channel when none is given.
Probe null_probe_qm(const Complex& cx, RegionId region,
                    const std::optional<Eigen::MatrixXcd>& dynamics = std::nullopt);

/// Operation rho -> sqrt(E) rho sqrt(E); with final condition I its value is tr(E rho).
Probe effect_probe(const Complex& cx, RegionId region, const Eigen::MatrixXcd& effect);

/// Observable measured at the end of the interval: rho -> (A rho + rho A) / 2,
/// so that with final condition I the value is tr(A rho).
Probe observable_probe(const Complex& cx, RegionId region, const Eigen::MatrixXcd& observable);

struct StateCondition {
  BCVector bc;
  bool psd = false;
  double trace = 0.0;
};

/// Density-operator boundary condition. Non-PSD input is accepted and flagged.
StateCondition state_bc(const Complex& cx, SpaceId space, const Eigen::MatrixXcd& rho);
BCVector effect_bc(const Complex& cx, SpaceId space, const Eigen::MatrixXcd& op);

/// Inverse of the coordinate map.
Eigen::MatrixXcd operator_of(const Complex& cx, const BCVector& v);

Eigen::MatrixXcd pure_state(const Eigen::VectorXcd& psi);

}  // namespace posform::quantum
