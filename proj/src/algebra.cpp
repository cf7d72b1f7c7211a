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

#include "icdkit/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "icdkit/error.hpp"

namespace icd {

BlockAlgebra::BlockAlgebra(std::vector<Index> blocks, std::string label)
    : blocks_(std::move(blocks)), label_(std::move(label)) {
  offsets_.reserve(blocks_.size());
  for (Index n : blocks_) {
    if (n < 1) throw DomainError("block sizes must be positive, got " + std::to_string(n));
    offsets_.push_back(dim_);
    dim_ += n * n;
  }
}

MatrixUnit BlockAlgebra::unit_at(Index k) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
  const Index b = static_cast<Index>(it - offsets_.begin()) - 1;
  const Index local = k - offset(b);
  const Index n = block_size(b);
  return {b, local / n, local % n};
}

BlockAlgebra make_algebra(std::vector<Index> blocks) { return BlockAlgebra(std::move(blocks)); }
BlockAlgebra complex_numbers() { return BlockAlgebra({1}); }
BlockAlgebra diagonal_algebra(Index n) { return BlockAlgebra(std::vector<Index>(static_cast<std::size_t>(n), 1)); }
BlockAlgebra matrix_algebra(Index n) { return BlockAlgebra({n}); }

std::string to_string(const BlockAlgebra& a) {
  std::ostringstream os;
  os << '[';
  for (Index b = 0; b < a.num_blocks(); ++b) os << (b ? "," : "") << a.block_size(b);
  os << ']';
  return os.str();
}

namespace {

void require_same_parent(const Element& x, const Element& y, const char* op) {
  if (!(x.parent() == y.parent()))
    throw ShapeError(std::string(op) + ": elements of " + to_string(x.parent()) + " and " +
                     to_string(y.parent()));
}

}  // namespace

Element::Element(BlockAlgebra parent, std::vector<Matrix> mats)
    : parent_(std::move(parent)), mats_(std::move(mats)) {
  if (static_cast<Index>(mats_.size()) != parent_.num_blocks())
    throw ShapeError("element has " + std::to_string(mats_.size()) + " blocks, algebra " +
                     to_string(parent_) + " expects " + std::to_string(parent_.num_blocks()));
  for (Index b = 0; b < parent_.num_blocks(); ++b) {
    const Matrix& m = block(b);
    if (m.rows() != parent_.block_size(b) || m.cols() != parent_.block_size(b))
      throw ShapeError("block " + std::to_string(b) + " has shape " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()) + ", expected size " +
                       std::to_string(parent_.block_size(b)));
  }
}

Element Element::zero(const BlockAlgebra& a) {
  std::vector<Matrix> mats;
  for (Index n : a.blocks()) mats.push_back(Matrix::Zero(n, n));
  return Element(a, std::move(mats));
}

Element Element::unit(const BlockAlgebra& a) {
  std::vector<Matrix> mats;
  for (Index n : a.blocks()) mats.push_back(Matrix::Identity(n, n));
  return Element(a, std::move(mats));
}

Element Element::matrix_unit(const BlockAlgebra& a, Index k) {
  const MatrixUnit u = a.unit_at(k);
  return matrix_unit(a, u.block, u.row, u.col);
}

Element Element::matrix_unit(const BlockAlgebra& a, Index block, Index row, Index col) {
  Element e = zero(a);
  e.block(block)(row, col) = 1.0;
  return e;
}

Element Element::from_coords(const BlockAlgebra& a, const Vector& coords) {
  if (coords.size() != a.dim())
    throw ShapeError("coordinate vector of length " + std::to_string(coords.size()) +
                     " for algebra of dimension " + std::to_string(a.dim()));
  std::vector<Matrix> mats;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    Matrix m(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) m(r, c) = coords(a.position(b, r, c));
    mats.push_back(std::move(m));
  }
  return Element(a, std::move(mats));
}

Vector Element::coords() const {
  Vector v(parent_.dim());
  for (Index b = 0; b < parent_.num_blocks(); ++b) {
    const Index n = parent_.block_size(b);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) v(parent_.position(b, r, c)) = block(b)(r, c);
  }
  return v;
}

Element& Element::operator+=(const Element& y) {
  require_same_parent(*this, y, "add");
  for (std::size_t b = 0; b < mats_.size(); ++b) mats_[b] += y.mats_[b];
  return *this;
}

Element& Element::operator-=(const Element& y) {
  require_same_parent(*this, y, "subtract");
  for (std::size_t b = 0; b < mats_.size(); ++b) mats_[b] -= y.mats_[b];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& m : mats_) m *= s;
  return *this;
}

Element operator+(Element x, const Element& y) { return x += y; }
Element operator-(Element x, const Element& y) { return x -= y; }
Element operator-(Element x) { return x *= -1.0; }
Element operator*(Complex s, Element x) { return x *= s; }
Element operator*(const Element& x, const Element& y) { return mul(x, y); }

Element mul(const Element& x, const Element& y) {
  require_same_parent(x, y, "mul");
  std::vector<Matrix> mats;
  mats.reserve(x.mats().size());
  for (std::size_t b = 0; b < x.mats().size(); ++b) mats.push_back(x.mats()[b] * y.mats()[b]);
  return Element(x.parent(), std::move(mats));
}

Element star(const Element& x) {
  std::vector<Matrix> mats;
  mats.reserve(x.mats().size());
  for (const auto& m : x.mats()) mats.push_back(m.adjoint());
  return Element(x.parent(), std::move(mats));
}

Element commutator(const Element& x, const Element& y) { return x * y - y * x; }

double norm(const Element& x) {
  double best = 0.0;
  for (const auto& m : x.mats()) {
    if (m.size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(m);
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

double max_abs_diff(const Element& x, const Element& y) {
  require_same_parent(x, y, "max_abs_diff");
  double best = 0.0;
  for (std::size_t b = 0; b < x.mats().size(); ++b) {
    if (x.mats()[b].size() == 0) continue;
    best = std::max(best, (x.mats()[b] - y.mats()[b]).cwiseAbs().maxCoeff());
  }
  return best;
}

Complex hs_inner(const Element& x, const Element& y) {
  require_same_parent(x, y, "hs_inner");
  Complex s = 0.0;
  for (std::size_t b = 0; b < x.mats().size(); ++b)
    s += (x.mats()[b].adjoint() * y.mats()[b]).trace();
  return s;
}

namespace {

bool block_is_hermitian(const Matrix& m, double tol) {
  return m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

Spectrum spectrum(const Element& x) {
  Spectrum s;
  for (const auto& m : x.mats()) {
    if (block_is_hermitian(m, 1e-14 * (1.0 + m.cwiseAbs().maxCoeff()))) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
      for (Index i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
    } else {
      Eigen::ComplexEigenSolver<Matrix> es(m, false);
      for (Index i = 0; i < es.eigenvalues().size(); ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
    }
  }
  return s;
}

RealVector hermitian_eigenvalues(const Element& x) {
  std::vector<double> all;
  for (const auto& m : x.mats()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    for (Index i = 0; i < es.eigenvalues().size(); ++i) all.push_back(es.eigenvalues()(i));
  }
  std::sort(all.begin(), all.end());
  return Eigen::Map<RealVector>(all.data(), static_cast<Index>(all.size()));
}

bool is_selfadjoint(const Element& x, double tol) {
  return std::all_of(x.mats().begin(), x.mats().end(),
                     [tol](const Matrix& m) { return block_is_hermitian(m, tol); });
}

bool is_positive(const Element& x, double tol) {
  if (!is_selfadjoint(x, tol)) return false;
  const RealVector ev = hermitian_eigenvalues(x);
  return ev.size() == 0 || ev.minCoeff() >= -tol;
}

bool in_unit_interval(const Element& x, double tol) {
  if (!is_selfadjoint(x, tol)) return false;
  const RealVector ev = hermitian_eigenvalues(x);
  return ev.size() == 0 || (ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol);
}

BlockAlgebra tensor_algebra(const BlockAlgebra& a, const BlockAlgebra& b) {
  std::vector<Index> blocks;
  blocks.reserve(static_cast<std::size_t>(a.num_blocks() * b.num_blocks()));
  for (Index n : a.blocks())
    for (Index m : b.blocks()) blocks.push_back(n * m);
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "⊗" + b.label();
  return BlockAlgebra(std::move(blocks), std::move(label));
}

Element tensor_element(const Element& x, const Element& y) {
  const BlockAlgebra ab = tensor_algebra(x.parent(), y.parent());
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(ab.num_blocks()));
  for (const auto& xm : x.mats())
    for (const auto& ym : y.mats()) mats.push_back(Eigen::kroneckerProduct(xm, ym));
  return Element(ab, std::move(mats));
}

std::vector<Index> tensor_index_map(const BlockAlgebra& a, const BlockAlgebra& b) {
  const BlockAlgebra ab = tensor_algebra(a, b);
  std::vector<Index> map(static_cast<std::size_t>(a.dim() * b.dim()));
  for (Index k = 0; k < a.dim(); ++k) {
    const MatrixUnit u = a.unit_at(k);
    for (Index l = 0; l < b.dim(); ++l) {
      const MatrixUnit v = b.unit_at(l);
      const Index m = b.block_size(v.block);
      const Index blk = u.block * b.num_blocks() + v.block;
      map[static_cast<std::size_t>(k * b.dim() + l)] =
          ab.position(blk, u.row * m + v.row, u.col * m + v.col);
    }
  }
  return map;
}

std::vector<Element> center_basis(const BlockAlgebra& a) {
  std::vector<Element> basis;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    Element p = Element::zero(a);
    p.block(b).setIdentity();
    basis.push_back(std::move(p));
  }
  return basis;
}

bool is_commutative(const BlockAlgebra& a) {
  return std::all_of(a.blocks().begin(), a.blocks().end(), [](Index n) { return n == 1; });
}

bool is_central(const Element& x, double tol) {
  for (const auto& m : x.mats()) {
    const Index n = m.rows();
    if (n == 0) continue;
    const Complex avg = m.trace() / static_cast<double>(n);
    if ((m - avg * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::vector<Element> selfadjoint_basis(const BlockAlgebra& a) {
  const Complex i(0.0, 1.0);
  std::vector<Element> basis;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    Element id = Element::zero(a);
    id.block(b).setIdentity();
    basis.push_back(std::move(id));
    for (Index r = 0; r + 1 < n; ++r) basis.push_back(Element::matrix_unit(a, b, r, r));
    for (Index r = 0; r < n; ++r)
      for (Index c = r + 1; c < n; ++c) {
        Element re = Element::zero(a);
        re.block(b)(r, c) = 1.0;
        re.block(b)(c, r) = 1.0;
        Element im = Element::zero(a);
        im.block(b)(r, c) = i;
        im.block(b)(c, r) = -i;
        basis.push_back(std::move(re));
        basis.push_back(std::move(im));
      }
  }
  return basis;
}

std::vector<Element> positive_spanning_set(const BlockAlgebra& a) {
  const Complex i(0.0, 1.0);
  std::vector<Element> set;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    for (Index r = 0; r < n; ++r) set.push_back(Element::matrix_unit(a, b, r, r));
    for (Index r = 0; r < n; ++r)
      for (Index c = r + 1; c < n; ++c) {
        for (Complex phase : {Complex(1.0), i}) {
          Vector v = Vector::Zero(n);
          v(r) = 1.0;
          v(c) = phase;
          Element p = Element::zero(a);
          p.block(b) = 0.5 * v * v.adjoint();
          set.push_back(std::move(p));
        }
      }
  }
  return set;
}

std::vector<Index> star_permutation(const BlockAlgebra& a) {
  std::vector<Index> perm(static_cast<std::size_t>(a.dim()));
  for (Index k = 0; k < a.dim(); ++k) {
    const MatrixUnit u = a.unit_at(k);
    perm[static_cast<std::size_t>(k)] = a.position(u.block, u.col, u.row);
  }
  return perm;
}

}  // namespace icd
