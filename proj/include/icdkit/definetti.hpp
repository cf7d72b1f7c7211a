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

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "icdkit/algebra.hpp"
#include "icdkit/power.hpp"
#include "icdkit/state.hpp"

namespace icd {

// Qubit states.

/// ρ = (1 + r·σ)/2 on M₂. Throws DomainError if ‖r‖ > 1.
StateOnAlgebra bloch(const Eigen::Vector3d& r);
/// r_i = ψ(σ_i). Requires parent M₂.
Eigen::Vector3d bloch_inverse(const StateOnAlgebra& psi);
/// 1 - Σ_b tr(D_b²) ≤ tol.
bool is_pure(const StateOnAlgebra& psi, double tol = kDefaultTol);

// Conditioning and extremality.

struct ConditionalState {
  double lambda = 0.0;
  std::optional<StateOnAlgebra> state;
  /// When lambda vanishes: max |φ(a ⊗ y)| over basis y. Otherwise zero.
  double null_residual = 0.0;
  /// Adjacent-transposition residual of the conditional state.
  double exchangeability_residual = 0.0;
};

/// Contracts the first slot of a state on A^{⊗n} ⊗ B with a positive a ∈ A:
/// λ = φ(a ⊗ 1) and, for λ > tol, the state y ↦ φ(a ⊗ y)/λ.
ConditionalState conditional_state(const StateOnAlgebra& phi, const Element& a, int n,
                                   const BlockAlgebra& side = complex_numbers(), double tol = kDefaultTol);

/// max |φ_{k+1}(a ⊗ y) - φ_{k+1}(a ⊗ 1) φ_k(y)| over the positive spanning
/// set a of A and the matrix units y of A^{⊗k} ⊗ B.
double extremality_identity_residual(const ExchangeableFamily& fam, int k);

// Moments.

struct MomentMatrix {
  int degree = 0;
  /// Self-adjoint letters indexing the words.
  std::vector<Element> letters;
  /// Words of length ≤ degree, by length and then lexicographically.
  std::vector<std::vector<int>> words;
  Matrix entries;

  double min_eigenvalue() const;
};

MomentMatrix moment_matrix(const ExchangeableFamily& fam, int d);
bool moment_psd_check(const MomentMatrix& m, double tol = kDefaultTol);

// Seminorm sup_ψ |ψ^{⊗k}(x)|.

struct QaConfig {
  int restarts = 32;
  int steps = 500;
  double step = 0.05;
  std::uint64_t seed = 0;
};

struct QaResult {
  double value = 0.0;
  /// Maximizing state, when x ≠ 0.
  std::optional<StateOnAlgebra> argmax;
};

/// Objective |ψ^{⊗k}(x)|² at ψ with densities D_b = M_b^* M_b / Σ tr(M^* M).
double qa_objective(const Element& x, const BlockAlgebra& a, int k, const std::vector<Matrix>& m);
/// Gradient of qa_objective with respect to the real and imaginary parts of M.
std::vector<Matrix> qa_gradient(const Element& x, const BlockAlgebra& a, int k, const std::vector<Matrix>& m);

QaResult qa_optimize(const Element& x, const BlockAlgebra& a, int k, const QaConfig& cfg = {});
/// Lower bound on the seminorm obtained by multi-start gradient ascent.
double qa_seminorm(const Element& x, const BlockAlgebra& a, int k, const QaConfig& cfg = {});

// Finite mixing measures.

struct MixingAtom {
  double weight = 0.0;
  StateOnAlgebra psi;
  /// State on the side factor; the unique state on C when there is none.
  StateOnAlgebra omega;
};

struct MixingMeasure {
  std::vector<MixingAtom> atoms;
};

/// The mixture family Σ_j λ_j ψ_j^{⊗n} ⊗ ω_j up to max_degree.
ExchangeableFamily family_of(const MixingMeasure& mu, const BlockAlgebra& side, int max_degree);
/// Largest coefficient deviation between fam and the family generated by mu.
double verify_measure(const ExchangeableFamily& fam, const MixingMeasure& mu);

struct ScalarMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool rank_deficient = false;
};

/// Prony solve for Σ_j λ_j t_j^n = m_n, n = 0..2d-1, with at most d atoms.
/// Throws Error("not a moment sequence") if the Hankel matrix is indefinite.
ScalarMeasure reconstruct_from_moments(const std::vector<double>& moments, int d);

struct Reconstruction {
  MixingMeasure measure;
  int rank = 0;
  bool rank_deficient = false;
  double moment_residual = 0.0;
};

/// Recovers a measure with at most d atoms from a family over A = C^m.
/// Needs fam.max_degree ≥ 2d - 1. Throws Error("inconsistent moments") if the
/// recovered measure does not reproduce the family within verify_tol.
Reconstruction reconstruct(const ExchangeableFamily& fam, int d, double verify_tol = 1e-6);

}  // namespace icd
