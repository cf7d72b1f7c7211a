// Copyright 2026 The icdkit Authors
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

#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"

namespace icd {

/// A state ψ(x) = Σ_i tr(D_i x_i) on a block algebra, stored through its
/// weighted densities D_i = w_i ρ_i (PSD, Σ_i tr D_i = 1).
class StateOnAlgebra {
 public:
  StateOnAlgebra() = default;
  /// Validates Hermiticity, positivity and normalization within tol;
  /// throws DomainError otherwise.
  StateOnAlgebra(BlockAlgebra parent, std::vector<Matrix> weighted_densities, double tol = 1e-9);

  /// From coefficients c_k = ψ(e_k) on the matrix-unit basis.
  static StateOnAlgebra from_coefficients(const BlockAlgebra& a, const Vector& coeffs, double tol = 1e-9);
  /// From a morphism C → A (its op-matrix is the coefficient row).
  static StateOnAlgebra from_morphism(const UMap& phi, double tol = 1e-9);
  /// Normalized trace Σ_i tr(x_i) / Σ_i n_i.
  static StateOnAlgebra tracial(const BlockAlgebra& a);

  const BlockAlgebra& parent() const { return parent_; }
  const std::vector<Matrix>& weighted_densities() const { return dens_; }
  /// Block weight w_i = tr D_i.
  double weight(Index b) const;
  /// Normalized density ρ_i; the maximally mixed one when w_i = 0.
  Matrix density(Index b) const;

  Complex operator()(const Element& x) const;
  /// ψ(e_k) for every matrix unit.
  const Vector& coefficients() const { return coeffs_; }
  /// The state as a morphism C → A.
  UMap as_morphism() const;

 private:
  BlockAlgebra parent_;
  std::vector<Matrix> dens_;
  Vector coeffs_;
};

StateOnAlgebra tensor_state(const StateOnAlgebra& psi, const StateOnAlgebra& omega);
/// ψ^{⊗n}; the degree-0 power is the unique state on C.
StateOnAlgebra power_state(const StateOnAlgebra& psi, int n);
/// Σ_j λ_j ψ_j. Weights must be nonnegative and sum to one.
StateOnAlgebra convex_combination(const std::vector<double>& weights, const std::vector<StateOnAlgebra>& states);

/// max_k |ψ(e_k) - ω(e_k)|.
double max_abs_diff(const StateOnAlgebra& psi, const StateOnAlgebra& omega);

}  // namespace icd
