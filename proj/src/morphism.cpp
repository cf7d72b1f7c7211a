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

#include "icdkit/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "icdkit/error.hpp"

namespace icd {

UMap::UMap(BlockAlgebra dom, BlockAlgebra cod, Matrix op)
    : dom_(std::move(dom)), cod_(std::move(cod)), op_(std::move(op)) {
  if (op_.rows() != dom_.dim() || op_.cols() != cod_.dim())
    throw ShapeError("op matrix is " + std::to_string(op_.rows()) + "x" + std::to_string(op_.cols()) +
                     ", expected " + std::to_string(dom_.dim()) + "x" + std::to_string(cod_.dim()));
}

Element UMap::apply(const Element& y) const {
  if (!(y.parent() == cod_))
    throw ShapeError("apply: element of " + to_string(y.parent()) + " given to map with codomain " +
                     to_string(cod_));
  return Element::from_coords(dom_, op_ * y.coords());
}

bool UMap::is_unital(double tol) const {
  const Vector image = op_ * Element::unit(cod_).coords();
  const Vector one = Element::unit(dom_).coords();
  return image.size() == 0 || (image - one).cwiseAbs().maxCoeff() <= tol;
}

UMap make_unital_map(BlockAlgebra dom, BlockAlgebra cod, Matrix op, double tol) {
  UMap f(std::move(dom), std::move(cod), std::move(op));
  if (!f.is_unital(tol)) throw DomainError("map is not unital: φ^op(1) ≠ 1");
  return f;
}

UMap map_from_function(const BlockAlgebra& dom, const BlockAlgebra& cod,
                       const std::function<Element(const Element&)>& op_action) {
  Matrix op(dom.dim(), cod.dim());
  for (Index l = 0; l < cod.dim(); ++l) {
    const Element image = op_action(Element::matrix_unit(cod, l));
    if (!(image.parent() == dom)) throw ShapeError("map_from_function: image lies in the wrong algebra");
    op.col(l) = image.coords();
  }
  return UMap(dom, cod, std::move(op));
}

UMap map_from_kraus(const BlockAlgebra& dom, const BlockAlgebra& cod, const std::vector<Matrix>& kraus) {
  if (dom.num_blocks() != 1 || cod.num_blocks() != 1)
    throw ShapeError("Kraus form requires single-block domain and codomain");
  const Index n = dom.block_size(0);
  const Index m = cod.block_size(0);
  for (const auto& k : kraus)
    if (k.rows() != m || k.cols() != n)
      throw ShapeError("Kraus operator must be " + std::to_string(m) + "x" + std::to_string(n));
  return map_from_function(dom, cod, [&](const Element& y) {
    Matrix out = Matrix::Zero(n, n);
    for (const auto& k : kraus) out += k.adjoint() * y.block(0) * k;
    return Element(dom, {out});
  });
}

namespace {

void require_same_shape(const UMap& f, const UMap& g, const char* what) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw ShapeError(std::string(what) + ": maps have different domain or codomain");
}

double op_scale(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double max_abs_diff(const UMap& f, const UMap& g) {
  require_same_shape(f, g, "max_abs_diff");
  return op_scale(f.op() - g.op());
}

bool approx_equal(const UMap& f, const UMap& g, double tol) {
  return f.dom() == g.dom() && f.cod() == g.cod() && max_abs_diff(f, g) <= tol;
}

UMap compose(const UMap& psi, const UMap& phi) {
  if (!(phi.cod() == psi.dom()))
    throw ShapeError("compose: codomain " + to_string(phi.cod()) + " does not match domain " +
                     to_string(psi.dom()));
  return UMap(phi.dom(), psi.cod(), phi.op() * psi.op());
}

UMap tensor(const UMap& phi, const UMap& psi) {
  const BlockAlgebra dom = tensor_algebra(phi.dom(), psi.dom());
  const BlockAlgebra cod = tensor_algebra(phi.cod(), psi.cod());
  const auto dmap = tensor_index_map(phi.dom(), psi.dom());
  const auto cmap = tensor_index_map(phi.cod(), psi.cod());
  Matrix op = Matrix::Zero(dom.dim(), cod.dim());
  const Index d1 = phi.dom().dim(), d2 = psi.dom().dim();
  const Index c1 = phi.cod().dim(), c2 = psi.cod().dim();
  for (Index a = 0; a < d1; ++a)
    for (Index b = 0; b < c1; ++b) {
      const Complex f = phi.op()(a, b);
      if (f == 0.0) continue;
      for (Index c = 0; c < d2; ++c)
        for (Index d = 0; d < c2; ++d) {
          const Complex g = psi.op()(c, d);
          if (g == 0.0) continue;
          op(dmap[static_cast<std::size_t>(a * d2 + c)], cmap[static_cast<std::size_t>(b * c2 + d)]) = f * g;
        }
    }
  return UMap(dom, cod, std::move(op));
}

UMap identity(const BlockAlgebra& a) { return UMap(a, a, Matrix::Identity(a.dim(), a.dim())); }

UMap involution(const UMap& phi) {
  const auto tdom = star_permutation(phi.dom());
  const auto tcod = star_permutation(phi.cod());
  Matrix op(phi.op().rows(), phi.op().cols());
  for (Index k = 0; k < op.rows(); ++k)
    for (Index l = 0; l < op.cols(); ++l)
      op(k, l) = std::conj(phi.op()(tdom[static_cast<std::size_t>(k)], tcod[static_cast<std::size_t>(l)]));
  return UMap(phi.dom(), phi.cod(), std::move(op));
}

UMap copy(const BlockAlgebra& a) {
  const BlockAlgebra aa = tensor_algebra(a, a);
  const auto map = tensor_index_map(a, a);
  Matrix op = Matrix::Zero(a.dim(), aa.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    const MatrixUnit u = a.unit_at(k);
    const Index n = a.block_size(u.block);
    // e_{r c} e_{c s} = e_{r s}; all other products within the block vanish.
    for (Index s = 0; s < n; ++s) {
      const Index l = a.position(u.block, u.col, s);
      op(a.position(u.block, u.row, s), map[static_cast<std::size_t>(k * a.dim() + l)]) = 1.0;
    }
  }
  return UMap(a, aa, std::move(op));
}

UMap discard(const BlockAlgebra& a) {
  return UMap(a, complex_numbers(), Element::unit(a).coords());
}

UMap swap(const BlockAlgebra& a, const BlockAlgebra& b) {
  const BlockAlgebra ab = tensor_algebra(a, b);
  const BlockAlgebra ba = tensor_algebra(b, a);
  const auto abmap = tensor_index_map(a, b);
  const auto bamap = tensor_index_map(b, a);
  Matrix op = Matrix::Zero(ab.dim(), ba.dim());
  for (Index k = 0; k < a.dim(); ++k)
    for (Index l = 0; l < b.dim(); ++l)
      op(abmap[static_cast<std::size_t>(k * b.dim() + l)], bamap[static_cast<std::size_t>(l * a.dim() + k)]) = 1.0;
  return UMap(ab, ba, std::move(op));
}

UMap product_map(const UMap& phi, const UMap& psi) {
  if (!(phi.dom() == psi.dom())) throw ShapeError("product_map: maps must share their domain");
  return compose(tensor(phi, psi), copy(phi.dom()));
}

UMap power(const UMap& phi, int n) {
  if (n < 0) throw DomainError("power: negative exponent");
  UMap result = discard(phi.dom());
  for (int k = 1; k <= n; ++k) result = k == 1 ? phi : product_map(result, phi);
  return result;
}

std::vector<Matrix> choi_blocks(const UMap& phi) {
  const BlockAlgebra& a = phi.dom();
  const BlockAlgebra& b = phi.cod();
  std::vector<Matrix> blocks;
  for (Index i = 0; i < a.num_blocks(); ++i) {
    const Index n = a.block_size(i);
    for (Index j = 0; j < b.num_blocks(); ++j) {
      const Index m = b.block_size(j);
      Matrix c(m * n, m * n);
      for (Index r = 0; r < m; ++r)
        for (Index s = 0; s < m; ++s) {
          const Index col = b.position(j, r, s);
          for (Index p = 0; p < n; ++p)
            for (Index q = 0; q < n; ++q) c(r * n + p, s * n + q) = phi.op()(a.position(i, p, q), col);
        }
      blocks.push_back(std::move(c));
    }
  }
  return blocks;
}

Matrix choi_matrix(const UMap& phi) {
  const auto blocks = choi_blocks(phi);
  Index total = 0;
  for (const auto& c : blocks) total += c.rows();
  Matrix out = Matrix::Zero(total, total);
  Index at = 0;
  for (const auto& c : blocks) {
    out.block(at, at, c.rows(), c.cols()) = c;
    at += c.rows();
  }
  return out;
}

double choi_min_eigenvalue(const UMap& phi) {
  double best = 0.0;
  bool first = true;
  for (const auto& c : choi_blocks(phi)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
    const double m = es.eigenvalues().minCoeff();
    best = first ? m : std::min(best, m);
    first = false;
  }
  return best;
}

double choi_hermiticity_residual(const UMap& phi) {
  double best = 0.0;
  for (const auto& c : choi_blocks(phi)) best = std::max(best, op_scale(c - c.adjoint()));
  return best;
}

bool is_completely_positive(const UMap& phi, double tol) {
  return choi_hermiticity_residual(phi) <= tol && choi_min_eigenvalue(phi) >= -tol;
}

bool is_cpu(const UMap& phi, double tol) { return phi.is_unital(tol) && is_completely_positive(phi, tol); }

namespace {

// φ^op(vv*) restricted to dom block i, for v supported on cod block j.
Matrix image_of_pure(const UMap& phi, Index i, Index j, const Vector& v) {
  const BlockAlgebra& a = phi.dom();
  const BlockAlgebra& b = phi.cod();
  const Index n = a.block_size(i);
  const Index m = b.block_size(j);
  Matrix out = Matrix::Zero(n, n);
  for (Index r = 0; r < m; ++r)
    for (Index s = 0; s < m; ++s) {
      const Complex coeff = v(r) * std::conj(v(s));
      if (coeff == 0.0) continue;
      const Index col = b.position(j, r, s);
      for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q) out(p, q) += coeff * phi.op()(a.position(i, p, q), col);
    }
  return out;
}

Vector random_unit(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index k = 0; k < n; ++k) v(k) = Complex(g(rng), g(rng));
  return v.normalized();
}

}  // namespace

PositivityResult is_positive(const UMap& phi, const PositivityConfig& cfg) {
  PositivityResult result;
  const BlockAlgebra& a = phi.dom();
  const BlockAlgebra& b = phi.cod();

  // A positive map sends self-adjoints to self-adjoints; pure states on
  // pairs of basis vectors span all Hermitian matrices, so test those.
  for (Index j = 0; j < b.num_blocks(); ++j) {
    const Index m = b.block_size(j);
    for (Index r = 0; r < m; ++r)
      for (Index s = r; s < m; ++s)
        for (Complex phase : {Complex(1.0), Complex(0.0, 1.0)}) {
          if (r == s && phase != 1.0) continue;
          Vector v = Vector::Zero(m);
          v(r) = 1.0;
          if (s != r) v(s) = phase;
          v.normalize();
          for (Index i = 0; i < a.num_blocks(); ++i) {
            const Matrix img = image_of_pure(phi, i, j, v);
            if (op_scale(img - img.adjoint()) > cfg.tol) {
              result.verdict = PositivityVerdict::NotPositive;
              result.certified = true;
              result.witness = PositivityWitness{i, j, v, Vector::Zero(a.block_size(i)), 0.0, true};
              return result;
            }
          }
        }
  }

  if (is_completely_positive(phi, cfg.tol)) {
    result.verdict = PositivityVerdict::Positive;
    result.certified = true;
    return result;
  }
  if (cfg.samples <= 0) return result;

  std::mt19937_64 rng(cfg.seed);
  double best = std::numeric_limits<double>::infinity();
  for (int sample = 0; sample < cfg.samples; ++sample) {
    for (Index i = 0; i < a.num_blocks(); ++i)
      for (Index j = 0; j < b.num_blocks(); ++j) {
        const Index n = a.block_size(i);
        const Index m = b.block_size(j);
        Vector v = random_unit(m, rng);
        Vector w(n);
        double value = 0.0;
        for (int step = 0; step <= cfg.ascent_steps; ++step) {
          const Matrix img = image_of_pure(phi, i, j, v);
          Eigen::SelfAdjointEigenSolver<Matrix> ew(0.5 * (img + img.adjoint()));
          w = ew.eigenvectors().col(0);
          value = ew.eigenvalues()(0);
          if (value < -cfg.tol || step == cfg.ascent_steps) break;
          // v ↦ w* φ^op(vv*) w equals u* K u with u = conj(v).
          Matrix k(m, m);
          for (Index r = 0; r < m; ++r)
            for (Index s = 0; s < m; ++s) {
              const Index col = b.position(j, r, s);
              Complex acc = 0.0;
              for (Index p = 0; p < n; ++p)
                for (Index q = 0; q < n; ++q) acc += std::conj(w(p)) * phi.op()(a.position(i, p, q), col) * w(q);
              k(r, s) = acc;
            }
          Eigen::SelfAdjointEigenSolver<Matrix> ev(0.5 * (k + k.adjoint()));
          v = ev.eigenvectors().col(0).conjugate();
        }
        best = std::min(best, value);
        if (value < -cfg.tol) {
          result.verdict = PositivityVerdict::NotPositive;
          result.certified = true;
          result.min_value = value;
          result.witness = PositivityWitness{i, j, v, w, value, false};
          return result;
        }
      }
  }
  result.verdict = PositivityVerdict::Positive;
  result.min_value = best;
  return result;
}

bool is_selfadjoint(const UMap& phi, double tol) {
  return max_abs_diff(involution(phi), phi) <= tol;
}

bool is_deterministic(const UMap& phi, double tol) {
  if (!phi.is_unital(tol) || !is_selfadjoint(phi, tol)) return false;
  const BlockAlgebra& b = phi.cod();
  const double opnorm = phi.op().size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(phi.op()).singularValues()(0);
  const double bound = tol * (1.0 + opnorm);
  std::vector<Element> images;
  for (Index k = 0; k < b.dim(); ++k) images.push_back(phi.apply(Element::matrix_unit(b, k)));
  for (Index k = 0; k < b.dim(); ++k) {
    const MatrixUnit u = b.unit_at(k);
    for (Index l = 0; l < b.dim(); ++l) {
      const MatrixUnit v = b.unit_at(l);
      const Element lhs = images[static_cast<std::size_t>(k)] * images[static_cast<std::size_t>(l)];
      Element rhs = Element::zero(phi.dom());
      if (u.block == v.block && u.col == v.row)
        rhs = images[static_cast<std::size_t>(b.position(u.block, u.row, v.col))];
      if (max_abs_diff(lhs, rhs) > bound) return false;
    }
  }
  return true;
}

bool is_classical(const BlockAlgebra& a) { return is_commutative(a); }

bool is_compatible(const UMap& phi, const UMap& psi, double tol) {
  if (!(phi.dom() == psi.dom())) throw ShapeError("is_compatible: maps must share their domain");
  std::vector<Element> rp, rq;
  for (Index k = 0; k < phi.cod().dim(); ++k) rp.push_back(phi.apply(Element::matrix_unit(phi.cod(), k)));
  for (Index k = 0; k < psi.cod().dim(); ++k) rq.push_back(psi.apply(Element::matrix_unit(psi.cod(), k)));
  for (const auto& x : rp)
    for (const auto& y : rq) {
      const Element c = commutator(x, y);
      for (const auto& m : c.mats())
        if (m.size() && m.cwiseAbs().maxCoeff() > tol) return false;
    }
  return true;
}

bool is_autocompatible(const UMap& phi, double tol) { return is_compatible(phi, phi, tol); }

bool is_noninvasive(const UMap& phi, double tol) {
  for (Index k = 0; k < phi.cod().dim(); ++k)
    if (!is_central(phi.apply(Element::matrix_unit(phi.cod(), k)), tol)) return false;
  return true;
}

KadisonSchwarzResult kadison_schwarz_check(const UMap& phi, const Element& x, double tol) {
  KadisonSchwarzResult r;
  r.completely_positive = is_completely_positive(phi, tol);
  const Element fx = phi.apply(x);
  const Element gap = phi.apply(star(x) * x) - star(fx) * fx;
  const RealVector ev = hermitian_eigenvalues(gap);
  r.min_eigenvalue = ev.size() ? ev.minCoeff() : 0.0;
  r.holds = r.min_eigenvalue >= -tol;
  return r;
}

Element effect_of(const UMap& phi) {
  if (!(phi.cod() == diagonal_algebra(2))) throw ShapeError("effect_of: codomain must be C^2");
  return phi.apply(Element::matrix_unit(phi.cod(), 1));
}

UMap morphism_of_effect(const Element& a, bool require_cpu, double tol) {
  if (require_cpu && !in_unit_interval(a, tol))
    throw DomainError("morphism_of_effect: effect is not in the unit interval [0,1]");
  const BlockAlgebra& dom = a.parent();
  Matrix op(dom.dim(), 2);
  op.col(0) = (Element::unit(dom) - a).coords();
  op.col(1) = a.coords();
  return UMap(dom, diagonal_algebra(2), std::move(op));
}

}  // namespace icd
