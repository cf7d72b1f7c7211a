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

// Finite-dimensional C*-algebras realized as direct sums of full matrix
// blocks M_{n_1} ⊕ ... ⊕ M_{n_k}, and their elements.
//
// Canonical basis: the matrix units e^{(b)}_{rc}, enumerated block by block
// and row-major inside a block. Every linear map in icdkit is a matrix in
// this basis.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace icd {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance used by eigenvalue-based predicates unless overridden.
inline constexpr double kDefaultTol = 1e-9;

/// Position of a matrix unit inside a block algebra.
struct MatrixUnit {
  Index block;
  Index row;
  Index col;
};

class BlockAlgebra {
 public:
  /// The zero algebra (no blocks).
  BlockAlgebra() = default;
  /// Throws DomainError if any block size is < 1.
  explicit BlockAlgebra(std::vector<Index> blocks, std::string label = {});

  std::span<const Index> blocks() const { return blocks_; }
  Index num_blocks() const { return static_cast<Index>(blocks_.size()); }
  Index block_size(Index b) const { return blocks_[static_cast<std::size_t>(b)]; }
  /// Vector-space dimension, Σ n_i².
  Index dim() const { return dim_; }
  /// First basis coordinate belonging to block b.
  Index offset(Index b) const { return offsets_[static_cast<std::size_t>(b)]; }
  bool is_zero() const { return blocks_.empty(); }
  const std::string& label() const { return label_; }

  MatrixUnit unit_at(Index k) const;
  Index position(Index block, Index row, Index col) const {
    return offset(block) + row * block_size(block) + col;
  }

  /// Algebras compare by block structure only; labels are cosmetic.
  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<Index> blocks_;
  std::vector<Index> offsets_;
  Index dim_ = 0;
  std::string label_;
};

BlockAlgebra make_algebra(std::vector<Index> blocks);
/// The monoidal unit C, a single 1x1 block.
BlockAlgebra complex_numbers();
/// C^n: n blocks of size one.
BlockAlgebra diagonal_algebra(Index n);
/// M_n: a single block of size n.
BlockAlgebra matrix_algebra(Index n);

std::string to_string(const BlockAlgebra& a);

class Element {
 public:
  /// Zero element of the zero algebra.
  Element() = default;
  /// Throws ShapeError if the matrices do not match the block sizes.
  Element(BlockAlgebra parent, std::vector<Matrix> mats);

  static Element zero(const BlockAlgebra& a);
  static Element unit(const BlockAlgebra& a);
  static Element matrix_unit(const BlockAlgebra& a, Index k);
  static Element matrix_unit(const BlockAlgebra& a, Index block, Index row, Index col);
  static Element from_coords(const BlockAlgebra& a, const Vector& coords);

  const BlockAlgebra& parent() const { return parent_; }
  const std::vector<Matrix>& mats() const { return mats_; }
  const Matrix& block(Index b) const { return mats_[static_cast<std::size_t>(b)]; }
  Matrix& block(Index b) { return mats_[static_cast<std::size_t>(b)]; }

  /// Coordinates in the matrix-unit basis.
  Vector coords() const;

  Element& operator+=(const Element& y);
  Element& operator-=(const Element& y);
  Element& operator*=(Complex s);

 private:
  BlockAlgebra parent_;
  std::vector<Matrix> mats_;
};

Element operator+(Element x, const Element& y);
Element operator-(Element x, const Element& y);
Element operator-(Element x);
Element operator*(Complex s, Element x);
/// Algebra product; same as mul().
Element operator*(const Element& x, const Element& y);

Element mul(const Element& x, const Element& y);
Element star(const Element& x);
Element commutator(const Element& x, const Element& y);

/// C*-norm: the largest singular value over all blocks.
double norm(const Element& x);
/// Largest entrywise modulus of x - y.
double max_abs_diff(const Element& x, const Element& y);
/// Hilbert-Schmidt inner product Σ_b tr(x_b^* y_b).
Complex hs_inner(const Element& x, const Element& y);

struct Spectrum {
  std::vector<Complex> eigenvalues;
};

/// Union of the block spectra. Hermitian blocks use a self-adjoint solver,
/// everything else a dense complex Schur-based solver.
Spectrum spectrum(const Element& x);
/// Eigenvalues of the Hermitian part (x + x*)/2, ascending over all blocks.
RealVector hermitian_eigenvalues(const Element& x);

bool is_selfadjoint(const Element& x, double tol = kDefaultTol);
bool is_positive(const Element& x, double tol = kDefaultTol);
bool in_unit_interval(const Element& x, double tol = kDefaultTol);

BlockAlgebra tensor_algebra(const BlockAlgebra& a, const BlockAlgebra& b);
Element tensor_element(const Element& x, const Element& y);

/// For basis indices k of a and l of b, entry [k * b.dim() + l] is the basis
/// position of e_k ⊗ e_l in tensor_algebra(a, b).
std::vector<Index> tensor_index_map(const BlockAlgebra& a, const BlockAlgebra& b);

/// Block-identity projections; they span the center.
std::vector<Element> center_basis(const BlockAlgebra& a);
bool is_commutative(const BlockAlgebra& a);
/// True when every block of x is a scalar multiple of the identity.
bool is_central(const Element& x, double tol = kDefaultTol);

/// Self-adjoint basis: per block the identity projection, e_ii for i < n-1,
/// and e_ij + e_ji, i(e_ij - e_ji) for i < j.
std::vector<Element> selfadjoint_basis(const BlockAlgebra& a);
/// Positive elements spanning a: e_ii, (e_i+e_j)(e_i+e_j)^*/2 and
/// (e_i+ie_j)(e_i+ie_j)^*/2 in every block.
std::vector<Element> positive_spanning_set(const BlockAlgebra& a);

/// Transpose permutation of the basis: position of e_{cr} given e_{rc}.
std::vector<Index> star_permutation(const BlockAlgebra& a);

}  // namespace icd
