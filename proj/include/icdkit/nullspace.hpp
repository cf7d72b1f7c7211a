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

#include <string>
#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"

namespace icd {

enum class NullspaceKind { Left, Right, Symmetric };

std::string to_string(NullspaceKind k);
/// Accepts "left", "right", "symmetric".
NullspaceKind parse_nullspace_kind(const std::string& s);

inline constexpr double kNullspaceTol = 1e-10;

/// A subspace of an algebra with a Hilbert–Schmidt orthonormal basis.
struct NullspaceBasis {
  NullspaceKind kind = NullspaceKind::Right;
  BlockAlgebra parent;
  std::vector<Element> basis;
  /// Columns are the coordinates of the basis elements.
  Matrix coords;
  /// Largest deviation from the ideal property expected of this kind.
  double ideal_residual = 0.0;

  Index dim() const { return static_cast<Index>(basis.size()); }
  /// Distance from x to the subspace, in Hilbert–Schmidt norm.
  double distance(const Element& x) const;
  bool contains(const Element& x, double tol = kDefaultTol) const;
};

/// {x : ω^op(x*x) = 0}, a left ideal of cod(ω). Rejects non-CPU maps.
NullspaceBasis right_nullspace(const UMap& omega, double tol = kNullspaceTol);
/// {x : ω^op(x x*) = 0}, a right ideal.
NullspaceBasis left_nullspace(const UMap& omega, double tol = kNullspaceTol);
/// Largest two-sided ideal inside the right nullspace.
NullspaceBasis symmetric_nullspace(const UMap& omega, double tol = kNullspaceTol);
NullspaceBasis nullspace(const UMap& omega, NullspaceKind kind, double tol = kNullspaceTol);

enum class AsMode { Left, Right, Both, Symmetric };

std::string to_string(AsMode m);
/// Accepts "left", "right", "both", "symmetric".
AsMode parse_as_mode(const std::string& s);

/// Almost-sure equality of φ and ψ with respect to ω, decided by checking
/// that φ^op(y) - ψ^op(y) lies in the relevant nullspace for every basis y.
bool as_equal(const UMap& phi, const UMap& psi, const UMap& omega, AsMode mode, double tol = kDefaultTol);

/// Largest distance of φ^op(y) - ψ^op(y) from the nullspace over basis y.
double as_residual(const UMap& phi, const UMap& psi, const NullspaceBasis& n);

}  // namespace icd
