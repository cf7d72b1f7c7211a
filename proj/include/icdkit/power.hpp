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
#include "icdkit/layout.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/state.hpp"

namespace icd {

// Slots of A^{⊗n} ⊗ B are numbered 0..n-1 from the left; the side factor B
// is always last and is never permuted or deleted. Permutations are 0-based:
// under A_σ^op the output slot i receives input slot σ[i].

/// Throws DomainError unless sigma is a permutation of {0..n-1}.
void validate_permutation(const std::vector<int>& sigma, int n);

UMap permutation_morphism(const BlockAlgebra& a, int n, const std::vector<int>& sigma,
                          const BlockAlgebra& side = complex_numbers());
/// A^{⊗n} ⊗ B → A^{⊗|slots|} ⊗ B; the op-map puts units into the deleted
/// slots. Slots must be strictly increasing.
UMap projection(const BlockAlgebra& a, int n, const std::vector<int>& slots,
                const BlockAlgebra& side = complex_numbers());

/// A_σ^op(x).
Element permute_element(const Element& x, const BlockAlgebra& a, int n, const std::vector<int>& sigma,
                        const BlockAlgebra& side = complex_numbers());
/// ψ ∘ A_σ^op.
StateOnAlgebra permute_state(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, const std::vector<int>& sigma,
                             const BlockAlgebra& side = complex_numbers());
/// Restriction of a state on A^{⊗n} ⊗ B along x ↦ x with 1 inserted at slot.
StateOnAlgebra marginal(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, int slot,
                        const BlockAlgebra& side = complex_numbers());

/// Invariance under adjacent transpositions of the first n slots.
double exchangeability_residual(const UMap& phi, const BlockAlgebra& a, int n,
                                const BlockAlgebra& side = complex_numbers());
double exchangeability_residual(const StateOnAlgebra& psi, const BlockAlgebra& a, int n,
                                const BlockAlgebra& side = complex_numbers());
bool is_exchangeable(const UMap& phi, const BlockAlgebra& a, int n, const BlockAlgebra& side = complex_numbers(),
                     double tol = kDefaultTol);
bool is_exchangeable(const StateOnAlgebra& psi, const BlockAlgebra& a, int n,
                     const BlockAlgebra& side = complex_numbers(), double tol = kDefaultTol);

/// States on A^{⊗n} ⊗ B for n = 0..max_degree.
struct ExchangeableFamily {
  BlockAlgebra base;
  BlockAlgebra side = complex_numbers();
  int max_degree = 0;
  std::vector<StateOnAlgebra> states;

  const StateOnAlgebra& at(int n) const;
};

struct FamilyReport {
  bool shapes_ok = true;
  bool exchangeable = true;
  bool consistent = true;
  double permutation_residual = 0.0;
  double consistency_residual = 0.0;

  bool ok() const { return shapes_ok && exchangeable && consistent; }
};

FamilyReport family_check(const ExchangeableFamily& fam, double tol = kDefaultTol);

/// Degree-n member Σ_j λ_j ψ_j^{⊗n} ⊗ ω_j. An empty omegas list means B = C.
ExchangeableFamily mixture_family(const std::vector<double>& weights, const std::vector<StateOnAlgebra>& psis,
                                  const std::vector<StateOnAlgebra>& omegas, int max_degree);

}  // namespace icd
