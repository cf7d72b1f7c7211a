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

#include "icdkit/definetti.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "icdkit/error.hpp"
#include "icdkit/layout.hpp"
#include "icdkit/random.hpp"

namespace icd {

namespace {

Matrix pauli(int i) {
  Matrix s(2, 2);
  switch (i) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

// Σ_pos ψ(e_pos) Π_i f_i(in_i): the value of ψ on f_0 ⊗ f_1 ⊗ ... given the
// factor coordinate vectors.
Complex eval_product(const TensorLayout& lay, const Vector& c, const std::vector<const Vector*>& f) {
  Complex total = 0;
  for (Index pos = 0; pos < lay.dim(); ++pos) {
    const Complex cp = c(pos);
    if (cp == Complex(0.0)) continue;
    auto in = lay.indices(pos);
    Complex prod = cp;
    for (std::size_t i = 0; i < f.size() && prod != Complex(0.0); ++i) prod *= (*f[i])(in[i]);
    total += prod;
  }
  return total;
}

// y ↦ φ(a ⊗ y) as a coefficient vector over A^{⊗(n-1)} ⊗ B.
Vector contract_first(const StateOnAlgebra& phi, const Vector& a_coords, const BlockAlgebra& a, int n,
                      const BlockAlgebra& side) {
  const TensorLayout big(power_factors(a, n, side));
  const TensorLayout small(power_factors(a, n - 1, side));
  const Vector& c = phi.coefficients();
  Vector out = Vector::Zero(small.dim());
  for (Index pos = 0; pos < big.dim(); ++pos) {
    auto in = big.indices(pos);
    const Complex w = a_coords(in[0]);
    if (w == Complex(0.0)) continue;
    out(small.position(in.subspan(1))) += w * c(pos);
  }
  return out;
}

}  // namespace

StateOnAlgebra bloch(const Eigen::Vector3d& r) {
  if (r.norm() > 1.0 + 1e-12) throw DomainError("bloch vector must have norm at most one");
  Matrix rho = Matrix::Identity(2, 2);
  for (int i = 0; i < 3; ++i) rho += r(i) * pauli(i);
  return StateOnAlgebra(matrix_algebra(2), {0.5 * rho});
}

Eigen::Vector3d bloch_inverse(const StateOnAlgebra& psi) {
  if (!(psi.parent() == matrix_algebra(2))) throw ShapeError("bloch_inverse needs a state on M2");
  const Matrix& rho = psi.weighted_densities()[0];
  Eigen::Vector3d r;
  for (int i = 0; i < 3; ++i) r(i) = (rho * pauli(i)).trace().real();
  return r;
}

bool is_pure(const StateOnAlgebra& psi, double tol) {
  double purity = 0;
  for (const Matrix& d : psi.weighted_densities()) purity += (d * d).trace().real();
  return 1.0 - purity <= tol;
}

ConditionalState conditional_state(const StateOnAlgebra& phi, const Element& a, int n, const BlockAlgebra& side,
                                   double tol) {
  if (n < 1) throw DomainError("conditional_state needs at least one slot");
  if (!(phi.parent() == power_algebra(a.parent(), n, side)))
    throw ShapeError("conditional_state: state does not live on A^n ⊗ B");
  if (!is_positive(a, tol)) throw DomainError("conditional_state: a must be positive");
  const BlockAlgebra& base = a.parent();
  const Vector out = contract_first(phi, a.coords(), base, n, side);
  const BlockAlgebra small = power_algebra(base, n - 1, side);
  ConditionalState res;
  const Vector unit = Element::unit(small).coords();
  for (Index k = 0; k < out.size(); ++k) res.lambda += (out(k) * unit(k)).real();
  if (res.lambda <= tol) {
    res.null_residual = out.size() ? out.cwiseAbs().maxCoeff() : 0.0;
    return res;
  }
  res.state = StateOnAlgebra::from_coefficients(small, out / res.lambda, 1e-6);
  res.exchangeability_residual = exchangeability_residual(*res.state, base, n - 1, side);
  return res;
}

double extremality_identity_residual(const ExchangeableFamily& fam, int k) {
  if (k < 0 || k + 1 > fam.max_degree)
    throw DomainError("extremality residual at degree " + std::to_string(k) + " needs a member of degree " +
                      std::to_string(k + 1));
  const StateOnAlgebra& upper = fam.at(k + 1);
  const Vector& lower = fam.at(k).coefficients();
  const Vector unit = Element::unit(power_algebra(fam.base, k, fam.side)).coords();
  double r = 0;
  for (const Element& a : positive_spanning_set(fam.base)) {
    const Vector out = contract_first(upper, a.coords(), fam.base, k + 1, fam.side);
    Complex lambda = 0;
    for (Index i = 0; i < out.size(); ++i) lambda += out(i) * unit(i);
    r = std::max(r, (out - lambda * lower).cwiseAbs().maxCoeff());
  }
  return r;
}

double MomentMatrix::min_eigenvalue() const {
  if (entries.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (entries + entries.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MomentMatrix moment_matrix(const ExchangeableFamily& fam, int d) {
  if (d < 0) throw DomainError("moment_matrix: negative degree");
  if (2 * d > fam.max_degree)
    throw DomainError("moment_matrix at degree " + std::to_string(d) + " needs family members up to degree " +
                      std::to_string(2 * d));
  MomentMatrix mm;
  mm.degree = d;
  mm.letters = selfadjoint_basis(fam.base);
  const int nl = static_cast<int>(mm.letters.size());
  std::vector<Vector> coords;
  for (const Element& l : mm.letters) coords.push_back(l.coords());
  const Vector side_unit = Element::unit(fam.side).coords();
  const bool has_side = !(fam.side == complex_numbers());

  mm.words.push_back({});
  std::size_t start = 0;
  for (int len = 1; len <= d; ++len) {
    const std::size_t end = mm.words.size();
    for (std::size_t w = start; w < end; ++w)
      for (int l = 0; l < nl; ++l) {
        std::vector<int> word = mm.words[w];
        word.push_back(l);
        mm.words.push_back(std::move(word));
      }
    start = end;
  }

  std::vector<TensorLayout> layouts;
  for (int n = 0; n <= 2 * d; ++n) layouts.emplace_back(power_factors(fam.base, n, fam.side));
  const Index nw = static_cast<Index>(mm.words.size());
  mm.entries = Matrix::Zero(nw, nw);
  for (Index u = 0; u < nw; ++u)
    for (Index v = u; v < nw; ++v) {
      const auto& wu = mm.words[static_cast<std::size_t>(u)];
      const auto& wv = mm.words[static_cast<std::size_t>(v)];
      std::vector<const Vector*> f;
      for (auto it = wu.rbegin(); it != wu.rend(); ++it) f.push_back(&coords[static_cast<std::size_t>(*it)]);
      for (int l : wv) f.push_back(&coords[static_cast<std::size_t>(l)]);
      if (has_side) f.push_back(&side_unit);
      const int n = static_cast<int>(wu.size() + wv.size());
      const Complex val = eval_product(layouts[static_cast<std::size_t>(n)], fam.at(n).coefficients(), f);
      mm.entries(u, v) = val;
      mm.entries(v, u) = std::conj(val);
    }
  return mm;
}

bool moment_psd_check(const MomentMatrix& m, double tol) { return m.min_eigenvalue() >= -tol; }

// ---------------------------------------------------------------- seminorm

namespace {

struct Expanded {
  std::vector<Complex> coef;
  std::vector<Index> idx;  // k indices per term
  int k = 0;
};

Expanded expand(const Element& x, const BlockAlgebra& a, int k) {
  if (k < 1) throw DomainError("qa_seminorm needs degree at least one");
  if (!(x.parent() == power_algebra(a, k))) throw ShapeError("qa_seminorm: element does not live on A^k");
  const TensorLayout lay(power_factors(a, k, complex_numbers()));
  const Vector c = x.coords();
  Expanded e;
  e.k = k;
  for (Index pos = 0; pos < c.size(); ++pos) {
    if (c(pos) == Complex(0.0)) continue;
    e.coef.push_back(c(pos));
    auto in = lay.indices(pos);
    e.idx.insert(e.idx.end(), in.begin(), in.end());
  }
  return e;
}

struct Densities {
  std::vector<Matrix> d;
  Vector coeffs;
  double t = 0;
};

Densities densities(const BlockAlgebra& a, const std::vector<Matrix>& m) {
  if (static_cast<Index>(m.size()) != a.num_blocks()) throw ShapeError("qa: one parameter matrix per block");
  Densities out;
  for (const Matrix& mb : m) out.t += mb.squaredNorm();
  out.coeffs = Vector(a.dim());
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Matrix& mb = m[static_cast<std::size_t>(b)];
    out.d.push_back(mb.adjoint() * mb / out.t);
    for (Index r = 0; r < a.block_size(b); ++r)
      for (Index c = 0; c < a.block_size(b); ++c) out.coeffs(a.position(b, r, c)) = out.d.back()(c, r);
  }
  return out;
}

// v = ψ^{⊗k}(x) and, if requested, g_j = ∂v/∂c_j.
Complex value(const Expanded& e, const Vector& c, Vector* grad) {
  Complex v = 0;
  if (grad) grad->setZero(c.size());
  std::vector<Complex> prefix(static_cast<std::size_t>(e.k) + 1);
  for (std::size_t t = 0; t < e.coef.size(); ++t) {
    const Index* in = e.idx.data() + t * static_cast<std::size_t>(e.k);
    prefix[0] = 1.0;
    for (int i = 0; i < e.k; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] * c(in[i]);
    v += e.coef[t] * prefix[static_cast<std::size_t>(e.k)];
    if (!grad) continue;
    Complex suffix = 1.0;
    for (int i = e.k - 1; i >= 0; --i) {
      (*grad)(in[i]) += e.coef[t] * prefix[static_cast<std::size_t>(i)] * suffix;
      suffix *= c(in[i]);
    }
  }
  return v;
}

std::vector<Matrix> gradient(const Expanded& e, const BlockAlgebra& a, const std::vector<Matrix>& m, double* f) {
  const Densities dn = densities(a, m);
  Vector g;
  const Complex v = value(e, dn.coeffs, &g);
  if (f) *f = std::norm(v);
  std::vector<Matrix> h;
  double s = 0;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    Matrix w(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) w(r, c) = std::conj(v) * g(a.position(b, r, c));
    h.push_back(0.5 * (w + w.adjoint()));
    s += (h.back() * dn.d[static_cast<std::size_t>(b)]).trace().real();
  }
  std::vector<Matrix> out;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Matrix& mb = m[static_cast<std::size_t>(b)];
    out.push_back((4.0 / dn.t) * (mb * h[static_cast<std::size_t>(b)] - s * mb));
  }
  return out;
}

double objective(const Expanded& e, const BlockAlgebra& a, const std::vector<Matrix>& m) {
  return std::norm(value(e, densities(a, m).coeffs, nullptr));
}

void normalize(std::vector<Matrix>& m) {
  double t = 0;
  for (const Matrix& mb : m) t += mb.squaredNorm();
  const double s = 1.0 / std::sqrt(t);
  for (Matrix& mb : m) mb *= s;
}

}  // namespace

double qa_objective(const Element& x, const BlockAlgebra& a, int k, const std::vector<Matrix>& m) {
  return objective(expand(x, a, k), a, m);
}

std::vector<Matrix> qa_gradient(const Element& x, const BlockAlgebra& a, int k, const std::vector<Matrix>& m) {
  return gradient(expand(x, a, k), a, m, nullptr);
}

QaResult qa_optimize(const Element& x, const BlockAlgebra& a, int k, const QaConfig& cfg) {
  const double scale = x.coords().norm();
  QaResult res;
  if (scale == 0.0 || a.is_zero()) return res;
  Element xn = x;
  xn *= Complex(1.0 / scale);
  const Expanded e = expand(xn, a, k);
  Rng rng(cfg.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double best = -1;
  std::vector<Matrix> best_m;
  for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
    std::vector<Matrix> m;
    for (Index n : a.blocks()) {
      if (restart == 0) {
        m.push_back(Matrix::Identity(n, n));
        continue;
      }
      Matrix mb(n, n);
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) mb(r, c) = Complex(g(rng), g(rng));
      m.push_back(std::move(mb));
    }
    normalize(m);
    double f = objective(e, a, m);
    double eta = cfg.step;
    for (int it = 0; it < cfg.steps; ++it) {
      const std::vector<Matrix> grad = gradient(e, a, m, nullptr);
      double gn = 0;
      for (const Matrix& gb : grad) gn += gb.squaredNorm();
      if (gn < 1e-28) break;
      std::vector<Matrix> trial = m;
      for (std::size_t b = 0; b < m.size(); ++b) trial[b] += eta * grad[b];
      normalize(trial);
      const double ft = objective(e, a, trial);
      if (ft > f) {
        m = std::move(trial);
        f = ft;
        eta = std::min(eta * 1.5, 10.0);
      } else {
        eta *= 0.5;
        if (eta < 1e-12) break;
      }
    }
    if (f > best) {
      best = f;
      best_m = m;
    }
  }
  res.value = std::sqrt(std::max(best, 0.0)) * scale;
  const Densities dn = densities(a, best_m);
  res.argmax = StateOnAlgebra(a, dn.d, 1e-6);
  return res;
}

double qa_seminorm(const Element& x, const BlockAlgebra& a, int k, const QaConfig& cfg) {
  return qa_optimize(x, a, k, cfg).value;
}

// ---------------------------------------------------------------- measures

ExchangeableFamily family_of(const MixingMeasure& mu, const BlockAlgebra& side, int max_degree) {
  std::vector<double> w;
  std::vector<StateOnAlgebra> psis, omegas;
  const bool has_side = !(side == complex_numbers());
  for (const MixingAtom& at : mu.atoms) {
    w.push_back(at.weight);
    psis.push_back(at.psi);
    if (has_side) omegas.push_back(at.omega);
  }
  return mixture_family(w, psis, omegas, max_degree);
}

double verify_measure(const ExchangeableFamily& fam, const MixingMeasure& mu) {
  const ExchangeableFamily other = family_of(mu, fam.side, fam.max_degree);
  double r = 0;
  for (int n = 0; n <= fam.max_degree; ++n) r = std::max(r, max_abs_diff(fam.at(n), other.at(n)));
  return r;
}

ScalarMeasure reconstruct_from_moments(const std::vector<double>& moments, int d) {
  if (d < 1) throw DomainError("reconstruct: need at least one atom");
  if (static_cast<int>(moments.size()) < 2 * d) throw DomainError("reconstruct: need moments up to degree 2d-1");
  Eigen::MatrixXd h0(d, d), h1(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      h0(i, j) = moments[static_cast<std::size_t>(i + j)];
      h1(i, j) = moments[static_cast<std::size_t>(i + j + 1)];
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-6) throw Error("not a moment sequence");
  int r = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-10 * std::max(1.0, ev.maxCoeff())) ++r;
  if (r == 0) throw Error("not a moment sequence");
  ScalarMeasure out;
  out.rank_deficient = r < d;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(h1.topLeftCorner(r, r), h0.topLeftCorner(r, r),
                                                                 Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw Error("not a moment sequence");
  const Eigen::VectorXd nodes = ges.eigenvalues();
  Eigen::MatrixXd v(2 * d, r);
  Eigen::VectorXd rhs(2 * d);
  for (int n = 0; n < 2 * d; ++n) {
    rhs(n) = moments[static_cast<std::size_t>(n)];
    for (int j = 0; j < r; ++j) v(n, j) = std::pow(nodes(j), n);
  }
  const Eigen::VectorXd w = v.colPivHouseholderQr().solve(rhs);
  out.nodes.assign(nodes.data(), nodes.data() + r);
  out.weights.assign(w.data(), w.data() + r);
  return out;
}

Reconstruction reconstruct(const ExchangeableFamily& fam, int d, double verify_tol) {
  const BlockAlgebra& a = fam.base;
  for (Index n : a.blocks())
    if (n != 1) throw DomainError("reconstruct needs a commutative base algebra C^m");
  if (d < 1) throw DomainError("reconstruct: need at least one atom");
  if (fam.max_degree < 2 * d - 1)
    throw DomainError("reconstruct with " + std::to_string(d) + " atoms needs family members up to degree " +
                      std::to_string(2 * d - 1));
  const Index m = a.dim();
  const bool has_side = !(fam.side == complex_numbers());
  // Generic functional t = Σ_i w_i e_i separating the atoms.
  Vector t(m);
  for (Index i = 0; i < m; ++i) t(i) = std::fmod(0.5 + static_cast<double>(i) * 0.6180339887498949, 1.0);
  const Vector side_unit = Element::unit(fam.side).coords();
  std::vector<TensorLayout> layouts;
  for (int n = 0; n <= fam.max_degree; ++n) layouts.emplace_back(power_factors(a, n, fam.side));

  auto moment = [&](int n, const Vector* first, const Vector* last) {
    std::vector<const Vector*> f;
    if (first) f.push_back(first);
    while (static_cast<int>(f.size()) < n) f.push_back(&t);
    if (has_side) f.push_back(last ? last : &side_unit);
    return eval_product(layouts[static_cast<std::size_t>(n)], fam.at(n).coefficients(), f);
  };

  std::vector<double> mom;
  for (int n = 0; n < 2 * d; ++n) mom.push_back(moment(n, nullptr, nullptr).real());
  const ScalarMeasure sm = reconstruct_from_moments(mom, d);
  const int r = static_cast<int>(sm.nodes.size());

  Eigen::MatrixXcd van(r, r);
  for (int n = 0; n < r; ++n)
    for (int j = 0; j < r; ++j) van(n, j) = std::pow(sm.nodes[static_cast<std::size_t>(j)], n);
  const auto lu = van.fullPivLu();

  Reconstruction rec;
  rec.rank = r;
  rec.rank_deficient = sm.rank_deficient;
  for (int j = 0; j < r; ++j)
    if (!(sm.weights[static_cast<std::size_t>(j)] > 0)) throw Error("inconsistent moments: nonpositive weight");

  // Atom coordinates p_{j,i} from φ_{n+1}(e_i ⊗ t^{⊗n} ⊗ 1).
  Eigen::MatrixXcd coords(r, m);
  for (Index i = 0; i < m; ++i) {
    const Vector ei = Element::matrix_unit(a, i).coords();
    Eigen::VectorXcd q(r);
    for (int n = 0; n < r; ++n) q(n) = moment(n + 1, &ei, nullptr);
    coords.col(i) = lu.solve(q);
  }
  // Side coefficients ω_j(e_b) from φ_n(t^{⊗n} ⊗ e_b).
  Eigen::MatrixXcd side_coords(r, fam.side.dim());
  if (has_side) {
    for (Index b = 0; b < fam.side.dim(); ++b) {
      const Vector eb = Element::matrix_unit(fam.side, b).coords();
      Eigen::VectorXcd q(r);
      for (int n = 0; n < r; ++n) q(n) = moment(n, nullptr, &eb);
      side_coords.col(b) = lu.solve(q);
    }
  }
  try {
    for (int j = 0; j < r; ++j) {
      const double w = sm.weights[static_cast<std::size_t>(j)];
      MixingAtom at;
      at.weight = w;
      at.psi = StateOnAlgebra::from_coefficients(a, coords.row(j).transpose() / w, 1e-6);
      at.omega = has_side ? StateOnAlgebra::from_coefficients(fam.side, side_coords.row(j).transpose() / w, 1e-6)
                          : StateOnAlgebra::tracial(complex_numbers());
      rec.measure.atoms.push_back(std::move(at));
    }
    rec.moment_residual = verify_measure(fam, rec.measure);
  } catch (const DomainError& e) {
    throw Error(std::string("inconsistent moments: ") + e.what());
  }
  if (rec.moment_residual > verify_tol)
    throw Error("inconsistent moments: recovered measure misses the family by " + std::to_string(rec.moment_residual));
  return rec;
}

}  // namespace icd
