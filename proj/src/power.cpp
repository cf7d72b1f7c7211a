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

#include "icdkit/power.hpp"

#include <cmath>

#include "icdkit/error.hpp"

namespace icd {

void validate_permutation(const std::vector<int>& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) throw DomainError("permutation has the wrong length");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)]) throw DomainError("invalid permutation");
    seen[static_cast<std::size_t>(s)] = 1;
  }
}

namespace {

// perm[pos] = position of the matrix unit obtained by permuting the slots of pos.
std::vector<Index> slot_permutation(const TensorLayout& lay, const std::vector<int>& sigma) {
  std::vector<Index> out(static_cast<std::size_t>(lay.dim()));
  std::vector<Index> idx(lay.num_factors());
  for (Index pos = 0; pos < lay.dim(); ++pos) {
    auto in = lay.indices(pos);
    std::copy(in.begin(), in.end(), idx.begin());
    for (std::size_t i = 0; i < sigma.size(); ++i) idx[i] = in[static_cast<std::size_t>(sigma[i])];
    out[static_cast<std::size_t>(pos)] = lay.position(idx);
  }
  return out;
}

std::vector<int> adjacent(int n, int i) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) s[static_cast<std::size_t>(k)] = k;
  std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
  return s;
}

void check_parent(const BlockAlgebra& got, const BlockAlgebra& a, int n, const BlockAlgebra& side) {
  if (!(got == power_algebra(a, n, side)))
    throw ShapeError("expected an element of " + to_string(power_algebra(a, n, side)) + ", got " + to_string(got));
}

}  // namespace

UMap permutation_morphism(const BlockAlgebra& a, int n, const std::vector<int>& sigma, const BlockAlgebra& side) {
  validate_permutation(sigma, n);
  const TensorLayout lay(power_factors(a, n, side));
  const std::vector<Index> perm = slot_permutation(lay, sigma);
  Matrix op = Matrix::Zero(lay.dim(), lay.dim());
  for (Index pos = 0; pos < lay.dim(); ++pos) op(perm[static_cast<std::size_t>(pos)], pos) = 1.0;
  return UMap(lay.algebra(), lay.algebra(), std::move(op));
}

UMap projection(const BlockAlgebra& a, int n, const std::vector<int>& slots, const BlockAlgebra& side) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] < 0 || slots[i] >= n) throw DomainError("projection slot out of range");
    if (i > 0 && slots[i] <= slots[i - 1]) throw DomainError("projection slots must be strictly increasing");
  }
  const bool has_side = !(side == complex_numbers());
  const TensorLayout big(power_factors(a, n, side));
  const TensorLayout small(power_factors(a, static_cast<int>(slots.size()), side));
  const Element one = Element::unit(a);
  const Vector unit_coords = one.coords();
  Matrix op = Matrix::Zero(big.dim(), small.dim());
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (int s : slots) kept[static_cast<std::size_t>(s)] = 1;
  std::vector<Index> idx(big.num_factors());
  std::vector<Index> diag;
  for (Index k = 0; k < a.dim(); ++k)
    if (unit_coords(k) != Complex(0.0)) diag.push_back(k);
  for (Index pos = 0; pos < small.dim(); ++pos) {
    auto in = small.indices(pos);
    for (std::size_t i = 0; i < slots.size(); ++i) idx[static_cast<std::size_t>(slots[i])] = in[i];
    if (has_side) idx.back() = in.back();
    // Sum over all choices of diagonal units in the deleted slots.
    std::vector<std::size_t> free;
    for (int s = 0; s < n; ++s)
      if (!kept[static_cast<std::size_t>(s)]) free.push_back(static_cast<std::size_t>(s));
    std::vector<std::size_t> counter(free.size(), 0);
    for (;;) {
      for (std::size_t f = 0; f < free.size(); ++f) idx[free[f]] = diag[counter[f]];
      op(big.position(idx), pos) += 1.0;
      std::size_t f = 0;
      for (; f < free.size(); ++f) {
        if (++counter[f] < diag.size()) break;
        counter[f] = 0;
      }
      if (f == free.size()) break;
    }
  }
  return UMap(big.algebra(), small.algebra(), std::move(op));
}

Element permute_element(const Element& x, const BlockAlgebra& a, int n, const std::vector<int>& sigma,
                        const BlockAlgebra& side) {
  validate_permutation(sigma, n);
  check_parent(x.parent(), a, n, side);
  const TensorLayout lay(power_factors(a, n, side));
  const std::vector<Index> perm = slot_permutation(lay, sigma);
  const Vector c = x.coords();
  Vector out(c.size());
  for (Index pos = 0; pos < c.size(); ++pos) out(perm[static_cast<std::size_t>(pos)]) = c(pos);
  return Element::from_coords(x.parent(), out);
}

StateOnAlgebra permute_state(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, const std::vector<int>& sigma,
                             const BlockAlgebra& side) {
  validate_permutation(sigma, n);
  check_parent(psi.parent(), a, n, side);
  const TensorLayout lay(power_factors(a, n, side));
  const std::vector<Index> perm = slot_permutation(lay, sigma);
  const Vector& c = psi.coefficients();
  Vector out(c.size());
  for (Index pos = 0; pos < c.size(); ++pos) out(pos) = c(perm[static_cast<std::size_t>(pos)]);
  return StateOnAlgebra::from_coefficients(psi.parent(), out, 1e-6);
}

StateOnAlgebra marginal(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, int slot, const BlockAlgebra& side) {
  if (slot < 0 || slot >= n) throw DomainError("marginal slot out of range");
  check_parent(psi.parent(), a, n, side);
  const TensorLayout big(power_factors(a, n, side));
  const TensorLayout small(power_factors(a, n - 1, side));
  const Vector& c = psi.coefficients();
  Vector out = Vector::Zero(small.dim());
  std::vector<Index> idx(small.num_factors());
  for (Index pos = 0; pos < big.dim(); ++pos) {
    auto in = big.indices(pos);
    const MatrixUnit u = a.unit_at(in[static_cast<std::size_t>(slot)]);
    if (u.row != u.col) continue;
    std::size_t t = 0;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (i != static_cast<std::size_t>(slot)) idx[t++] = in[i];
    out(small.position(idx)) += c(pos);
  }
  return StateOnAlgebra::from_coefficients(small.algebra(), out, 1e-6);
}

double exchangeability_residual(const UMap& phi, const BlockAlgebra& a, int n, const BlockAlgebra& side) {
  check_parent(phi.cod(), a, n, side);
  const TensorLayout lay(power_factors(a, n, side));
  double r = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const std::vector<Index> perm = slot_permutation(lay, adjacent(n, i));
    // (A_σ ∘ φ)^op = φ^op ∘ A_σ^op permutes the columns of φ^op.
    for (Index pos = 0; pos < lay.dim(); ++pos)
      r = std::max(r, (phi.op().col(perm[static_cast<std::size_t>(pos)]) - phi.op().col(pos)).cwiseAbs().maxCoeff());
  }
  return r;
}

double exchangeability_residual(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, const BlockAlgebra& side) {
  check_parent(psi.parent(), a, n, side);
  const TensorLayout lay(power_factors(a, n, side));
  const Vector& c = psi.coefficients();
  double r = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const std::vector<Index> perm = slot_permutation(lay, adjacent(n, i));
    for (Index pos = 0; pos < lay.dim(); ++pos)
      r = std::max(r, std::abs(c(perm[static_cast<std::size_t>(pos)]) - c(pos)));
  }
  return r;
}

bool is_exchangeable(const UMap& phi, const BlockAlgebra& a, int n, const BlockAlgebra& side, double tol) {
  return exchangeability_residual(phi, a, n, side) <= tol;
}

bool is_exchangeable(const StateOnAlgebra& psi, const BlockAlgebra& a, int n, const BlockAlgebra& side, double tol) {
  return exchangeability_residual(psi, a, n, side) <= tol;
}

const StateOnAlgebra& ExchangeableFamily::at(int n) const {
  if (n < 0 || n > max_degree || static_cast<std::size_t>(n) >= states.size())
    throw DomainError("family has no member of degree " + std::to_string(n));
  return states[static_cast<std::size_t>(n)];
}

FamilyReport family_check(const ExchangeableFamily& fam, double tol) {
  FamilyReport rep;
  if (fam.max_degree < 0 || static_cast<int>(fam.states.size()) != fam.max_degree + 1) {
    rep.shapes_ok = false;
    return rep;
  }
  for (int n = 0; n <= fam.max_degree; ++n)
    if (!(fam.at(n).parent() == power_algebra(fam.base, n, fam.side))) {
      rep.shapes_ok = false;
      return rep;
    }
  for (int n = 0; n <= fam.max_degree; ++n) {
    rep.permutation_residual =
        std::max(rep.permutation_residual, exchangeability_residual(fam.at(n), fam.base, n, fam.side));
    if (n == 0) continue;
    for (int slot = 0; slot < n; ++slot) {
      const StateOnAlgebra m = marginal(fam.at(n), fam.base, n, slot, fam.side);
      rep.consistency_residual = std::max(rep.consistency_residual, max_abs_diff(m, fam.at(n - 1)));
    }
  }
  rep.exchangeable = rep.permutation_residual <= tol;
  rep.consistent = rep.consistency_residual <= tol;
  return rep;
}

ExchangeableFamily mixture_family(const std::vector<double>& weights, const std::vector<StateOnAlgebra>& psis,
                                  const std::vector<StateOnAlgebra>& omegas, int max_degree) {
  if (weights.empty() || weights.size() != psis.size()) throw DomainError("mixture_family: one weight per atom");
  if (!omegas.empty() && omegas.size() != psis.size()) throw DomainError("mixture_family: one side state per atom");
  if (max_degree < 0) throw DomainError("mixture_family: negative degree");
  double total = 0;
  for (double w : weights) {
    if (!(w > 0)) throw DomainError("mixture_family: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("mixture_family: weights must sum to one");
  ExchangeableFamily fam;
  fam.base = psis.front().parent();
  fam.side = omegas.empty() ? complex_numbers() : omegas.front().parent();
  fam.max_degree = max_degree;
  for (std::size_t j = 0; j < psis.size(); ++j) {
    if (!(psis[j].parent() == fam.base)) throw ShapeError("mixture_family: atoms live on different algebras");
    if (!omegas.empty() && !(omegas[j].parent() == fam.side))
      throw ShapeError("mixture_family: side states live on different algebras");
  }
  const bool has_side = !(fam.side == complex_numbers());
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<StateOnAlgebra> members;
    for (std::size_t j = 0; j < psis.size(); ++j) {
      StateOnAlgebra m = power_state(psis[j], n);
      if (has_side) m = tensor_state(m, omegas[j]);
      members.push_back(std::move(m));
    }
    fam.states.push_back(convex_combination(weights, members));
  }
  return fam;
}

}  // namespace icd
