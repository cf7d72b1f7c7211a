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

// Morphisms of the involutive Markov category of finite-dimensional
// C*-algebras. A morphism φ: A → B is stored in the operator-algebra
// direction as the matrix of φ^op: B ⇝ A in the matrix-unit bases, so
// op() has shape dim(A) × dim(B).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "icdkit/algebra.hpp"

namespace icd {

class UMap {
 public:
  UMap() = default;
  /// Throws ShapeError unless op is dim(dom) × dim(cod). Unitality is not
  /// enforced here so that generalized maps can be represented; see
  /// is_unital() and make_unital_map().
  UMap(BlockAlgebra dom, BlockAlgebra cod, Matrix op);

  const BlockAlgebra& dom() const { return dom_; }
  const BlockAlgebra& cod() const { return cod_; }
  const Matrix& op() const { return op_; }

  /// φ^op(y) for y in the categorical codomain.
  Element apply(const Element& y) const;

  bool is_unital(double tol = kDefaultTol) const;

 private:
  BlockAlgebra dom_;
  BlockAlgebra cod_;
  Matrix op_;
};

/// Like the UMap constructor but throws DomainError if φ^op(1) ≠ 1.
UMap make_unital_map(BlockAlgebra dom, BlockAlgebra cod, Matrix op, double tol = kDefaultTol);

/// Builds φ: dom → cod from its op-direction action on elements of cod.
UMap map_from_function(const BlockAlgebra& dom, const BlockAlgebra& cod,
                       const std::function<Element(const Element&)>& op_action);

/// Kraus form φ^op(y) = Σ K_i^* y K_i for single-block dom M_n and cod M_m,
/// each K_i being m × n.
UMap map_from_kraus(const BlockAlgebra& dom, const BlockAlgebra& cod, const std::vector<Matrix>& kraus);

/// Largest entrywise modulus of the difference of two op-matrices.
double max_abs_diff(const UMap& f, const UMap& g);
bool approx_equal(const UMap& f, const UMap& g, double tol = kDefaultTol);

// Category structure.

/// ψ ∘ φ. Throws ShapeError unless cod(φ) = dom(ψ).
UMap compose(const UMap& psi, const UMap& phi);
UMap tensor(const UMap& phi, const UMap& psi);
UMap identity(const BlockAlgebra& a);
/// x ↦ φ^op(x*)*.
UMap involution(const UMap& phi);

UMap copy(const BlockAlgebra& a);
UMap discard(const BlockAlgebra& a);
UMap swap(const BlockAlgebra& a, const BlockAlgebra& b);

/// ⟨φ, ψ⟩ with ⟨φ,ψ⟩^op(x ⊗ y) = φ^op(x) ψ^op(y).
UMap product_map(const UMap& phi, const UMap& psi);
/// φ^(0) = discard, φ^(n) = ⟨φ^(n-1), φ⟩.
UMap power(const UMap& phi, int n);

// Positivity.

/// Choi blocks of φ^op, one for every (dom block i, cod block j) pair,
/// ordered i-major. Block (i,j) is Σ_{rc} E_rc ⊗ φ^op(e^{(j)}_{rc})_i.
std::vector<Matrix> choi_blocks(const UMap& phi);
/// Block-diagonal assembly of choi_blocks().
Matrix choi_matrix(const UMap& phi);
/// Minimum eigenvalue over the Hermitian parts of all Choi blocks.
double choi_min_eigenvalue(const UMap& phi);
/// Largest anti-Hermitian entry over the Choi blocks.
double choi_hermiticity_residual(const UMap& phi);

bool is_completely_positive(const UMap& phi, double tol = kDefaultTol);
/// Completely positive and unital.
bool is_cpu(const UMap& phi, double tol = kDefaultTol);

struct PositivityConfig {
  int samples = 1000;
  int ascent_steps = 50;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

enum class PositivityVerdict { Positive, NotPositive, Unknown };

/// A pure state vv* in cod block `cod_block` and a unit vector w in dom
/// block `dom_block` with w* φ^op(vv*) w = value < 0, or (when
/// hermitian_violation is set) φ^op(vv*) not Hermitian.
struct PositivityWitness {
  Index dom_block = 0;
  Index cod_block = 0;
  Vector v;
  Vector w;
  double value = 0.0;
  bool hermitian_violation = false;
};

struct PositivityResult {
  PositivityVerdict verdict = PositivityVerdict::Unknown;
  /// True when the verdict is a proof (a witness, or complete positivity).
  bool certified = false;
  /// Smallest w* φ^op(vv*) w encountered by the search.
  double min_value = 0.0;
  std::optional<PositivityWitness> witness;
};

/// Semi-decision for plain positivity. CP maps are certified positive. A
/// found witness certifies NotPositive. Otherwise random restarts with
/// alternating minimization over (v, w) report Positive with
/// certified = false, or Unknown when the sample budget is zero.
PositivityResult is_positive(const UMap& phi, const PositivityConfig& cfg = {});

// Predicates.

bool is_selfadjoint(const UMap& phi, double tol = kDefaultTol);
/// Self-adjoint, unital and multiplicative on all pairs of basis elements,
/// with residual ≤ tol·(1 + ‖φ^op‖).
bool is_deterministic(const UMap& phi, double tol = kDefaultTol);
bool is_classical(const BlockAlgebra& a);
/// Ranges of φ^op and ψ^op commute (same categorical domain required).
bool is_compatible(const UMap& phi, const UMap& psi, double tol = kDefaultTol);
bool is_autocompatible(const UMap& phi, double tol = kDefaultTol);
/// Range of φ^op lies in the center of the domain algebra.
bool is_noninvasive(const UMap& phi, double tol = kDefaultTol);

struct KadisonSchwarzResult {
  bool holds = false;
  /// Minimum eigenvalue of φ^op(x*x) - φ^op(x)* φ^op(x).
  double min_eigenvalue = 0.0;
  /// Whether φ passed the Choi test; the inequality is only guaranteed then.
  bool completely_positive = false;
};

KadisonSchwarzResult kadison_schwarz_check(const UMap& phi, const Element& x, double tol = kDefaultTol);

// Effects. The two outcomes of C^2 are ordered (1,0), (0,1); the effect of
// φ: A → C^2 is φ^op((0,1)).

Element effect_of(const UMap& phi);
/// φ^op((s,t)) = s(1 - a) + t a. With require_cpu, throws DomainError
/// unless 0 ≤ a ≤ 1.
UMap morphism_of_effect(const Element& a, bool require_cpu = true, double tol = kDefaultTol);

}  // namespace icd
