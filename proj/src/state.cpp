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

#include "icdkit/state.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "icdkit/error.hpp"

namespace icd {

namespace {

Vector coefficients_of(const BlockAlgebra& a, const std::vector<Matrix>& dens) {
  // ψ(e^{(b)}_{rc}) = tr(D_b e_{rc}) = D_b(c, r).
  Vector c(a.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    const MatrixUnit u = a.unit_at(k);
    c(k) = dens[static_cast<std::size_t>(u.block)](u.col, u.row);
  }
  return c;
}

}  // namespace

StateOnAlgebra::StateOnAlgebra(BlockAlgebra parent, std::vector<Matrix> weighted_densities, double tol)
    : parent_(std::move(parent)), dens_(std::move(weighted_densities)) {
  if (static_cast<Index>(dens_.size()) != parent_.num_blocks())
    throw ShapeError("state needs one density per block of " + to_string(parent_));
  Complex total = 0.0;
  for (Index b = 0; b < parent_.num_blocks(); ++b) {
    Matrix& d = dens_[static_cast<std::size_t>(b)];
    const Index n = parent_.block_size(b);
    if (d.rows() != n || d.cols() != n) throw ShapeError("density block has the wrong size");
    if ((d - d.adjoint()).cwiseAbs().maxCoeff() > tol) throw DomainError("density is not Hermitian");
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) throw DomainError("density is not positive semidefinite");
    total += d.trace();
  }
  if (!parent_.is_zero() && std::abs(total - 1.0) > tol) throw DomainError("state is not normalized: ψ(1) ≠ 1");
  coeffs_ = coefficients_of(parent_, dens_);
}

StateOnAlgebra StateOnAlgebra::from_coefficients(const BlockAlgebra& a, const Vector& coeffs, double tol) {
  if (coeffs.size() != a.dim()) throw ShapeError("state coefficient vector has the wrong length");
  std::vector<Matrix> dens;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    Matrix d(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) d(c, r) = coeffs(a.position(b, r, c));
    dens.push_back(std::move(d));
  }
  return StateOnAlgebra(a, std::move(dens), tol);
}

StateOnAlgebra StateOnAlgebra::from_morphism(const UMap& phi, double tol) {
  if (!(phi.dom() == complex_numbers())) throw ShapeError("a state is a morphism out of C");
  return from_coefficients(phi.cod(), phi.op().row(0).transpose(), tol);
}

StateOnAlgebra StateOnAlgebra::tracial(const BlockAlgebra& a) {
  Index total = 0;
  for (Index n : a.blocks()) total += n;
  std::vector<Matrix> dens;
  for (Index n : a.blocks()) dens.push_back(Matrix::Identity(n, n) / static_cast<double>(total));
  return StateOnAlgebra(a, std::move(dens));
}

double StateOnAlgebra::weight(Index b) const { return dens_[static_cast<std::size_t>(b)].trace().real(); }

Matrix StateOnAlgebra::density(Index b) const {
  const double w = weight(b);
  const Index n = parent_.block_size(b);
  if (w <= 1e-15) return Matrix::Identity(n, n) / static_cast<double>(n);
  return dens_[static_cast<std::size_t>(b)] / w;
}

Complex StateOnAlgebra::operator()(const Element& x) const {
  if (!(x.parent() == parent_)) throw ShapeError("state evaluated on an element of another algebra");
  Complex s = 0.0;
  for (Index b = 0; b < parent_.num_blocks(); ++b)
    s += (dens_[static_cast<std::size_t>(b)] * x.block(b)).trace();
  return s;
}

UMap StateOnAlgebra::as_morphism() const {
  return UMap(complex_numbers(), parent_, coeffs_.transpose());
}

StateOnAlgebra tensor_state(const StateOnAlgebra& psi, const StateOnAlgebra& omega) {
  const BlockAlgebra ab = tensor_algebra(psi.parent(), omega.parent());
  const auto map = tensor_index_map(psi.parent(), omega.parent());
  Vector c(ab.dim());
  const Index m = omega.parent().dim();
  for (Index k = 0; k < psi.parent().dim(); ++k)
    for (Index l = 0; l < m; ++l)
      c(map[static_cast<std::size_t>(k * m + l)]) = psi.coefficients()(k) * omega.coefficients()(l);
  return StateOnAlgebra::from_coefficients(ab, c);
}

StateOnAlgebra power_state(const StateOnAlgebra& psi, int n) {
  if (n < 0) throw DomainError("power_state: negative degree");
  StateOnAlgebra out(complex_numbers(), {Matrix::Identity(1, 1)});
  for (int k = 0; k < n; ++k) out = tensor_state(out, psi);
  return out;
}

StateOnAlgebra convex_combination(const std::vector<double>& weights, const std::vector<StateOnAlgebra>& states) {
  if (weights.size() != states.size() || states.empty())
    throw ShapeError("convex_combination: need one weight per state");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError("convex_combination: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("convex_combination: weights do not sum to 1");
  const BlockAlgebra& a = states.front().parent();
  Vector c = Vector::Zero(a.dim());
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (!(states[j].parent() == a)) throw ShapeError("convex_combination: states on different algebras");
    c += weights[j] * states[j].coefficients();
  }
  return StateOnAlgebra::from_coefficients(a, c);
}

double max_abs_diff(const StateOnAlgebra& psi, const StateOnAlgebra& omega) {
  if (!(psi.parent() == omega.parent())) throw ShapeError("max_abs_diff: states on different algebras");
  const Vector d = psi.coefficients() - omega.coefficients();
  return d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace icd
