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

#include "icdkit/nullspace.hpp"

#include <Eigen/Eigenvalues>

#include "icdkit/error.hpp"

namespace icd {

std::string to_string(NullspaceKind k) {
  switch (k) {
    case NullspaceKind::Left: return "left";
    case NullspaceKind::Right: return "right";
    case NullspaceKind::Symmetric: return "symmetric";
  }
  return "?";
}

NullspaceKind parse_nullspace_kind(const std::string& s) {
  if (s == "left") return NullspaceKind::Left;
  if (s == "right") return NullspaceKind::Right;
  if (s == "symmetric") return NullspaceKind::Symmetric;
  throw DomainError("unknown nullspace kind '" + s + "'");
}

std::string to_string(AsMode m) {
  switch (m) {
    case AsMode::Left: return "left";
    case AsMode::Right: return "right";
    case AsMode::Both: return "both";
    case AsMode::Symmetric: return "symmetric";
  }
  return "?";
}

AsMode parse_as_mode(const std::string& s) {
  if (s == "left") return AsMode::Left;
  if (s == "right") return AsMode::Right;
  if (s == "both") return AsMode::Both;
  if (s == "symmetric") return AsMode::Symmetric;
  throw DomainError("unknown almost-sure mode '" + s + "'");
}

double NullspaceBasis::distance(const Element& x) const {
  const Vector c = x.coords();
  if (coords.cols() == 0) return c.norm();
  return (c - coords * (coords.adjoint() * c)).norm();
}

bool NullspaceBasis::contains(const Element& x, double tol) const {
  const double n = x.coords().norm();
  return distance(x) <= tol * (1.0 + n);
}

namespace {

// Orthonormal basis of the eigenspace of a PSD matrix below the relative cutoff.
Matrix kernel(const Matrix& g, double tol) {
  if (g.rows() == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()));
  const RealVector& ev = es.eigenvalues();
  const double cutoff = tol * (std::max(ev.maxCoeff(), 0.0) + 1.0);
  Index k = 0;
  while (k < ev.size() && ev(k) <= cutoff) ++k;
  return es.eigenvectors().leftCols(k);
}

// Position of e_j e_k, or -1 when the product vanishes.
Index unit_product(const BlockAlgebra& a, Index j, Index k) {
  const MatrixUnit u = a.unit_at(j);
  const MatrixUnit v = a.unit_at(k);
  if (u.block != v.block || u.col != v.row) return -1;
  return a.position(u.block, u.row, v.col);
}

NullspaceBasis make_basis(NullspaceKind kind, const BlockAlgebra& a, Matrix coords) {
  NullspaceBasis n;
  n.kind = kind;
  n.parent = a;
  for (Index c = 0; c < coords.cols(); ++c) n.basis.push_back(Element::from_coords(a, coords.col(c)));
  n.coords = std::move(coords);
  return n;
}

double ideal_residual(const NullspaceBasis& n, bool left_mult, bool right_mult, bool star_closed) {
  const BlockAlgebra& a = n.parent;
  double r = 0;
  for (const Element& x : n.basis) {
    if (star_closed) r = std::max(r, n.distance(star(x)));
    for (Index k = 0; k < a.dim(); ++k) {
      const Element e = Element::matrix_unit(a, k);
      if (left_mult) r = std::max(r, n.distance(e * x));
      if (right_mult) r = std::max(r, n.distance(x * e));
    }
  }
  return r;
}

}  // namespace

NullspaceBasis right_nullspace(const UMap& omega, double tol) {
  if (!is_cpu(omega, 1e-8)) throw DomainError("right_nullspace: ω must be completely positive and unital");
  const BlockAlgebra& dom = omega.dom();
  const BlockAlgebra& a = omega.cod();
  Index trace_dim = 0;
  for (Index n : dom.blocks()) trace_dim += n;
  // t_k = τ(e_k) with τ the normalized trace of ω^op.
  Vector t = Vector::Zero(a.dim());
  for (Index b = 0; b < dom.num_blocks(); ++b)
    for (Index p = 0; p < dom.block_size(b); ++p) t += omega.op().row(dom.position(b, p, p)).transpose();
  if (trace_dim > 0) t /= static_cast<double>(trace_dim);
  // G_{jk} = τ(e_j^* e_k); e_{pq}^* e_{rs} = δ_{pr} e_{qs}.
  Matrix g = Matrix::Zero(a.dim(), a.dim());
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        for (Index s = 0; s < n; ++s) g(a.position(b, p, q), a.position(b, p, s)) = t(a.position(b, q, s));
  }
  NullspaceBasis out = make_basis(NullspaceKind::Right, a, kernel(g, tol));
  out.ideal_residual = ideal_residual(out, true, false, false);
  return out;
}

NullspaceBasis left_nullspace(const UMap& omega, double tol) {
  NullspaceBasis r = right_nullspace(omega, tol);
  const BlockAlgebra& a = r.parent;
  const std::vector<Index> perm = star_permutation(a);
  Matrix coords(a.dim(), r.coords.cols());
  for (Index c = 0; c < r.coords.cols(); ++c)
    for (Index k = 0; k < a.dim(); ++k) coords(perm[static_cast<std::size_t>(k)], c) = std::conj(r.coords(k, c));
  NullspaceBasis out = make_basis(NullspaceKind::Left, a, std::move(coords));
  out.ideal_residual = ideal_residual(out, false, true, false);
  return out;
}

NullspaceBasis symmetric_nullspace(const UMap& omega, double tol) {
  const NullspaceBasis r = right_nullspace(omega, tol);
  const BlockAlgebra& a = r.parent;
  const Index d = a.dim();
  const Matrix perp = Matrix::Identity(d, d) - r.coords * r.coords.adjoint();
  // Kernel of Σ_j R_j^* P⊥ R_j, with R_j right multiplication by e_j.
  Matrix q = Matrix::Zero(d, d);
  std::vector<Index> image(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) image[static_cast<std::size_t>(k)] = unit_product(a, k, j);
    for (Index k = 0; k < d; ++k) {
      const Index mk = image[static_cast<std::size_t>(k)];
      if (mk < 0) continue;
      for (Index l = 0; l < d; ++l) {
        const Index ml = image[static_cast<std::size_t>(l)];
        if (ml >= 0) q(k, l) += perp(mk, ml);
      }
    }
  }
  NullspaceBasis out = make_basis(NullspaceKind::Symmetric, a, kernel(q, tol));
  out.ideal_residual = ideal_residual(out, true, true, true);
  return out;
}

NullspaceBasis nullspace(const UMap& omega, NullspaceKind kind, double tol) {
  switch (kind) {
    case NullspaceKind::Left: return left_nullspace(omega, tol);
    case NullspaceKind::Right: return right_nullspace(omega, tol);
    case NullspaceKind::Symmetric: return symmetric_nullspace(omega, tol);
  }
  throw DomainError("unknown nullspace kind");
}

double as_residual(const UMap& phi, const UMap& psi, const NullspaceBasis& n) {
  const Matrix diff = phi.op() - psi.op();
  Matrix res = diff;
  if (n.coords.cols() > 0) res -= n.coords * (n.coords.adjoint() * diff);
  double r = 0;
  for (Index c = 0; c < res.cols(); ++c) r = std::max(r, res.col(c).norm() / (1.0 + diff.col(c).norm()));
  return r;
}

bool as_equal(const UMap& phi, const UMap& psi, const UMap& omega, AsMode mode, double tol) {
  if (!(phi.dom() == psi.dom()) || !(phi.cod() == psi.cod()))
    throw ShapeError("as_equal: φ and ψ must have the same domain and codomain");
  if (!(phi.dom() == omega.cod())) throw ShapeError("as_equal: dom(φ) must equal cod(ω)");
  switch (mode) {
    case AsMode::Left: return as_residual(phi, psi, left_nullspace(omega)) <= tol;
    case AsMode::Right: return as_residual(phi, psi, right_nullspace(omega)) <= tol;
    case AsMode::Both:
      return as_residual(phi, psi, left_nullspace(omega)) <= tol && as_residual(phi, psi, right_nullspace(omega)) <= tol;
    case AsMode::Symmetric: return as_residual(phi, psi, symmetric_nullspace(omega)) <= tol;
  }
  return false;
}

}  // namespace icd
