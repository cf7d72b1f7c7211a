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

#include <algorithm>
#include <cmath>

#include "icdkit/definetti.hpp"
#include "icdkit/error.hpp"
#include "support.hpp"

using namespace icd;
using testing::mat2;

namespace {

StateOnAlgebra classical_state(const std::vector<double>& p) {
  const BlockAlgebra a = diagonal_algebra(static_cast<Index>(p.size()));
  std::vector<Matrix> d;
  for (double v : p) d.push_back(Matrix::Constant(1, 1, v));
  return StateOnAlgebra(a, d);
}

StateOnAlgebra coin(double p) { return classical_state({p, 1 - p}); }

Matrix pauli(int i) {
  const Complex j(0, 1);
  switch (i) {
    case 0: return mat2(0, 1, 1, 0);
    case 1: return mat2(0, -j, j, 0);
    default: return mat2(1, 0, 0, -1);
  }
}

// Singlet on M₂ ⊗ M₂, written through the Pauli expansion (1 - Σ σ_i⊗σ_i)/4.
StateOnAlgebra singlet() {
  const BlockAlgebra m2 = matrix_algebra(2);
  const BlockAlgebra m22 = tensor_algebra(m2, m2);
  Vector coeffs(m22.dim());
  for (Index k = 0; k < m22.dim(); ++k) coeffs(k) = 0;
  // ψ(e_ab ⊗ e_cd) = (δ_ab δ_cd - Σ_i σ_i(b,a) σ_i(d,c)) / 4.
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b)
      for (Index c = 0; c < 2; ++c)
        for (Index d = 0; d < 2; ++d) {
          Complex v = (a == b && c == d) ? 1.0 : 0.0;
          for (int i = 0; i < 3; ++i) v -= pauli(i)(b, a) * pauli(i)(d, c);
          const Element e = tensor_element(Element::matrix_unit(m2, 0, a, b), Element::matrix_unit(m2, 0, c, d));
          coeffs += (v / 4.0) * e.coords();
        }
  return StateOnAlgebra::from_coefficients(m22, coeffs);
}

ExchangeableFamily singlet_family() {
  ExchangeableFamily fam;
  fam.base = matrix_algebra(2);
  fam.max_degree = 2;
  fam.states = {StateOnAlgebra::tracial(complex_numbers()), StateOnAlgebra::tracial(matrix_algebra(2)), singlet()};
  return fam;
}

Element sym_e1e2() {
  const BlockAlgebra c2 = diagonal_algebra(2);
  const Element e1 = Element::matrix_unit(c2, 0, 0, 0), e2 = Element::matrix_unit(c2, 1, 0, 0);
  return 0.5 * (tensor_element(e1, e2) + tensor_element(e2, e1));
}

}  // namespace

TEST_SUITE("definetti") {

TEST_CASE("Bloch ball") {
  const StateOnAlgebra mixed = bloch(Eigen::Vector3d::Zero());
  CHECK(max_abs_diff(mixed, StateOnAlgebra::tracial(matrix_algebra(2))) <= 1e-15);
  CHECK_FALSE(is_pure(mixed));
  const StateOnAlgebra up = bloch(Eigen::Vector3d(0, 0, 1));
  CHECK(is_pure(up));
  CHECK((up.density(0) - mat2(1, 0, 0, 0)).norm() <= 1e-15);
  CHECK_THROWS_AS(bloch(Eigen::Vector3d(0.8, 0.7, 0)), DomainError);
  CHECK_THROWS_AS(bloch_inverse(coin(0.5)), ShapeError);

  Rng rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Eigen::Vector3d r(g(rng), g(rng), g(rng));
    r.normalize();
    if (t % 2) r *= std::uniform_real_distribution<double>(0, 1)(rng);
    const StateOnAlgebra s = bloch(r);
    CHECK((bloch_inverse(s) - r).norm() <= 1e-12);
    // Closed form: ψ(σ_i) = r_i.
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s(Element(matrix_algebra(2), {pauli(i)})) - r(i)) <= 1e-12);
    CHECK(is_pure(s, 1e-9) == (std::abs(r.norm() - 1) <= 1e-9));
  }
}

TEST_CASE("purity on block algebras") {
  CHECK(is_pure(coin(1.0)));
  CHECK_FALSE(is_pure(coin(0.5)));
  CHECK(is_pure(classical_state({0, 0, 1})));
  CHECK_FALSE(is_pure(StateOnAlgebra::tracial(matrix_algebra(3))));
}

TEST_CASE("conditional states of product powers") {
  Rng rng(2);
  const BlockAlgebra a = make_algebra({1, 2});
  const BlockAlgebra side = diagonal_algebra(2);
  const StateOnAlgebra psi = random_state(a, rng), w = random_state(side, rng);
  const StateOnAlgebra phi = tensor_state(power_state(psi, 3), w);
  const Element e = random_effect(a, rng);
  const ConditionalState c = conditional_state(phi, e, 3, side);
  CHECK(c.lambda == doctest::Approx(psi(e).real()).epsilon(1e-12));
  REQUIRE(c.state.has_value());
  CHECK(max_abs_diff(*c.state, tensor_state(power_state(psi, 2), w)) <= 1e-10);
  CHECK(c.exchangeability_residual <= 1e-12);

  const ConditionalState one = conditional_state(phi, Element::unit(a), 3, side);
  CHECK(one.lambda == doctest::Approx(1.0));
  CHECK(max_abs_diff(*one.state, marginal(phi, a, 3, 0, side)) <= 1e-14);
}

TEST_CASE("conditioning on a null effect") {
  const BlockAlgebra c2 = diagonal_algebra(2);
  const ExchangeableFamily fam = mixture_family({1.0}, {coin(1.0)}, {}, 2);
  const Element e2 = Element::matrix_unit(c2, 1, 0, 0);
  const ConditionalState c = conditional_state(fam.at(2), e2, 2);
  CHECK(c.lambda == 0.0);
  CHECK_FALSE(c.state.has_value());
  CHECK(c.null_residual <= 1e-15);
  CHECK_THROWS_AS(conditional_state(fam.at(2), Element(c2, {Matrix::Constant(1, 1, -1.0), Matrix::Zero(1, 1)}), 2),
                  DomainError);
}

TEST_CASE("conditional states of mixtures stay exchangeable") {
  Rng rng(3);
  const BlockAlgebra a = matrix_algebra(2);
  const ExchangeableFamily fam =
      mixture_family({0.4, 0.6}, {random_state(a, rng), random_state(a, rng)}, {}, 3);
  const Element e = random_effect(a, rng);
  const ConditionalState c = conditional_state(fam.at(3), e, 3);
  REQUIRE(c.state.has_value());
  CHECK(c.exchangeability_residual <= 1e-12);
  CHECK(c.lambda > 0);
  CHECK(c.lambda <= 1);
}

TEST_CASE("extremality identity") {
  Rng rng(4);
  for (const BlockAlgebra& a : {diagonal_algebra(2), matrix_algebra(2), make_algebra({1, 2})}) {
    const ExchangeableFamily single = mixture_family({1.0}, {random_state(a, rng)}, {}, 3);
    for (int k = 0; k <= 2; ++k) CHECK(extremality_identity_residual(single, k) <= 1e-12);
  }
  const ExchangeableFamily two = mixture_family({0.5, 0.5}, {coin(1.0), coin(0.0)}, {}, 2);
  CHECK(extremality_identity_residual(two, 1) >= 0.1);
  CHECK(extremality_identity_residual(two, 1) == doctest::Approx(0.25));
  CHECK_THROWS_AS(extremality_identity_residual(two, 2), DomainError);
  CHECK_THROWS_AS(extremality_identity_residual(singlet_family(), 2), DomainError);
  // Distinct product powers are separated by some self-adjoint a.
  CHECK(std::pow(coin(1.0)(Element::matrix_unit(diagonal_algebra(2), 0, 0, 0)).real() -
                     coin(0.0)(Element::matrix_unit(diagonal_algebra(2), 0, 0, 0)).real(),
                 2) > 0);
}

TEST_CASE("moment matrices") {
  Rng rng(5);
  const BlockAlgebra a = make_algebra({1, 2});
  const ExchangeableFamily fam =
      mixture_family({0.3, 0.3, 0.4}, {random_state(a, rng), random_state(a, rng), random_state(a, rng)}, {}, 4);
  const MomentMatrix m = moment_matrix(fam, 2);
  const Index letters = static_cast<Index>(m.letters.size());
  CHECK(m.words.size() == static_cast<std::size_t>(1 + letters + letters * letters));
  CHECK((m.entries - m.entries.adjoint()).norm() <= 1e-12);
  CHECK(moment_psd_check(m));
  CHECK(m.min_eigenvalue() >= -1e-12);
  CHECK(m.words[0].empty());
  CHECK(m.entries(0, 0) == Complex(1.0));

  // Entries against direct evaluation: M_{u,v} = φ(u* ⊗ v) with u* the reversed word.
  for (std::size_t i = 0; i < m.words.size(); i += 3)
    for (std::size_t j = 0; j < m.words.size(); j += 2) {
      std::vector<Element> factors;
      for (auto it = m.words[i].rbegin(); it != m.words[i].rend(); ++it)
        factors.push_back(m.letters[static_cast<std::size_t>(*it)]);
      for (int l : m.words[j]) factors.push_back(m.letters[static_cast<std::size_t>(l)]);
      const int n = static_cast<int>(factors.size());
      const Complex direct = fam.at(n)(tensor_elements(factors));
      CHECK(std::abs(m.entries(static_cast<Index>(i), static_cast<Index>(j)) - direct) <= 1e-12);
    }

  const MomentMatrix mixed = moment_matrix(mixture_family({1.0}, {StateOnAlgebra::tracial(matrix_algebra(2))}, {}, 2), 1);
  CHECK(moment_psd_check(mixed));

  const MomentMatrix s = moment_matrix(singlet_family(), 1);
  CHECK(s.min_eigenvalue() <= -0.9);
  CHECK_FALSE(moment_psd_check(s));
  CHECK_THROWS_AS(moment_matrix(singlet_family(), 2), DomainError);
}

TEST_CASE("qa objective gradient matches finite differences") {
  Rng rng(6);
  const BlockAlgebra a = make_algebra({2, 1});
  const Element x = random_element(power_algebra(a, 2), rng);
  std::vector<Matrix> m{random_matrix(2, 2, rng), random_matrix(1, 1, rng)};
  const std::vector<Matrix> g = qa_gradient(x, a, 2, m);
  const double h = 1e-6;
  for (std::size_t b = 0; b < m.size(); ++b)
    for (Index r = 0; r < m[b].rows(); ++r)
      for (Index c = 0; c < m[b].cols(); ++c)
        for (Complex dir : {Complex(1, 0), Complex(0, 1)}) {
          auto mp = m, mm = m;
          mp[b](r, c) += h * dir;
          mm[b](r, c) -= h * dir;
          const double fd = (qa_objective(x, a, 2, mp) - qa_objective(x, a, 2, mm)) / (2 * h);
          const double an = dir.real() != 0 ? g[b](r, c).real() : g[b](r, c).imag();
          CHECK(std::abs(fd - an) <= 1e-6 * (1 + std::abs(fd)));
        }
}

TEST_CASE("qa seminorm values") {
  const BlockAlgebra c2 = diagonal_algebra(2);
  CHECK(qa_seminorm(Element::unit(power_algebra(c2, 3)), c2, 3) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qa_seminorm(Element::unit(power_algebra(matrix_algebra(2), 2)), matrix_algebra(2), 2) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qa_seminorm(Element::zero(power_algebra(c2, 2)), c2, 2) == 0.0);

  // Grid oracle over the coin states.
  const Element x = sym_e1e2();
  double oracle = 0;
  for (int i = 0; i <= 10000; ++i) oracle = std::max(oracle, std::abs(power_state(coin(i / 1e4), 2)(x)));
  CHECK(oracle == doctest::Approx(0.25));
  const QaResult r = qa_optimize(x, c2, 2);
  CHECK(std::abs(r.value - oracle) <= 1e-3 * oracle);
  REQUIRE(r.argmax.has_value());
  CHECK(std::abs(r.argmax->weight(0) - 0.5) <= 1e-3);
}

TEST_CASE("qa seminorm kills permutation differences") {
  Rng rng(7);
  const BlockAlgebra a = make_algebra({1, 2});
  QaConfig cfg;
  cfg.restarts = 4;
  cfg.steps = 100;
  for (int t = 0; t < 5; ++t) {
    const Element x = random_element(power_algebra(a, 3), rng);
    const Element d = x - permute_element(x, a, 3, {2, 0, 1});
    CHECK(qa_seminorm(d, a, 3, cfg) <= 1e-9);
  }
}

TEST_CASE("qa seminorm is a seminorm") {
  Rng rng(8);
  const BlockAlgebra a = diagonal_algebra(2);
  for (int t = 0; t < 5; ++t) {
    const Element x = random_element(power_algebra(a, 2), rng);
    const Element y = random_element(power_algebra(a, 2), rng);
    const double qx = qa_seminorm(x, a, 2), qy = qa_seminorm(y, a, 2);
    const Complex c(0.3, -1.7);
    CHECK(qa_seminorm(c * x, a, 2) == doctest::Approx(std::abs(c) * qx).epsilon(1e-12));
    CHECK(qa_seminorm(x + y, a, 2) <= qx + qy + 1e-6);
    CHECK(qa_seminorm(star(x) * x, a, 2) >= 0);
    // A lower bound that cannot beat the operator norm.
    CHECK(qx <= norm(x) + 1e-12);
  }
  CHECK_THROWS_AS(qa_seminorm(Element::unit(diagonal_algebra(2)), a, 2), ShapeError);
}

TEST_CASE("qa seminorm is deterministic for a seed") {
  Rng rng(9);
  const BlockAlgebra a = matrix_algebra(2);
  const Element x = random_element(power_algebra(a, 2), rng);
  QaConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 42;
  CHECK(qa_seminorm(x, a, 2, cfg) == qa_seminorm(x, a, 2, cfg));
}

TEST_CASE("scalar moment reconstruction") {
  std::vector<double> moments;
  for (int n = 0; n < 6; ++n) moments.push_back(0.3 * std::pow(0.2, n) + 0.7 * std::pow(0.9, n));
  const ScalarMeasure s = reconstruct_from_moments(moments, 3);
  CHECK(s.rank_deficient);
  REQUIRE(s.nodes.size() == 2);
  std::vector<std::pair<double, double>> atoms{{s.nodes[0], s.weights[0]}, {s.nodes[1], s.weights[1]}};
  std::sort(atoms.begin(), atoms.end());
  CHECK(atoms[0].first == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(atoms[1].first == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(atoms[0].second == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(atoms[1].second == doctest::Approx(0.7).epsilon(1e-9));

  std::vector<double> bad{1.0, 0.5, 0.5 * 0.5 - 0.1, 0.1};
  try {
    reconstruct_from_moments(bad, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("not a moment sequence") != std::string::npos);
  }
}

TEST_CASE("reconstruct a two-atom coin mixture") {
  const ExchangeableFamily fam = mixture_family({0.3, 0.7}, {coin(0.2), coin(0.9)}, {}, 5);
  const Reconstruction r = reconstruct(fam, 2);
  REQUIRE(r.measure.atoms.size() == 2);
  CHECK_FALSE(r.rank_deficient);
  auto atoms = r.measure.atoms;
  std::sort(atoms.begin(), atoms.end(), [](const MixingAtom& x, const MixingAtom& y) {
    return x.psi.coefficients()(0).real() < y.psi.coefficients()(0).real();
  });
  CHECK(std::abs(atoms[0].psi.coefficients()(0).real() - 0.2) <= 1e-6);
  CHECK(std::abs(atoms[1].psi.coefficients()(0).real() - 0.9) <= 1e-6);
  CHECK(std::abs(atoms[0].weight - 0.3) <= 1e-6);
  CHECK(std::abs(atoms[1].weight - 0.7) <= 1e-6);
  CHECK(r.moment_residual <= 1e-9);
  CHECK(verify_measure(fam, r.measure) <= 1e-9);
}

TEST_CASE("reconstruct a single atom") {
  const ExchangeableFamily fam = mixture_family({1.0}, {classical_state({0.1, 0.6, 0.3})}, {}, 1);
  const Reconstruction r = reconstruct(fam, 1);
  REQUIRE(r.measure.atoms.size() == 1);
  CHECK(r.measure.atoms[0].weight == doctest::Approx(1.0));
  CHECK(max_abs_diff(r.measure.atoms[0].psi, classical_state({0.1, 0.6, 0.3})) <= 1e-12);
}

TEST_CASE("reconstruct on C^3 with a side factor") {
  const BlockAlgebra side = matrix_algebra(2);
  const std::vector<StateOnAlgebra> psis{classical_state({0.7, 0.2, 0.1}), classical_state({0.1, 0.3, 0.6})};
  const std::vector<StateOnAlgebra> omegas{bloch(Eigen::Vector3d(0.3, 0, 0.5)), bloch(Eigen::Vector3d(0, -0.4, 0.1))};
  const ExchangeableFamily fam = mixture_family({0.45, 0.55}, psis, omegas, 3);
  const Reconstruction r = reconstruct(fam, 2);
  REQUIRE(r.measure.atoms.size() == 2);
  CHECK(verify_measure(fam, r.measure) <= 1e-8);
  for (const MixingAtom& at : r.measure.atoms) {
    const std::size_t j = std::abs(at.psi.coefficients()(0).real() - 0.7) < 1e-4 ? 0 : 1;
    CHECK(max_abs_diff(at.psi, psis[j]) <= 1e-6);
    CHECK(max_abs_diff(at.omega, omegas[j]) <= 1e-6);
    CHECK(at.weight == doctest::Approx(j == 0 ? 0.45 : 0.55).epsilon(1e-6));
  }
}

TEST_CASE("reconstruct rejects what it cannot do") {
  CHECK_THROWS_AS(reconstruct(mixture_family({1.0}, {StateOnAlgebra::tracial(matrix_algebra(2))}, {}, 3), 1), DomainError);
  CHECK_THROWS_AS(reconstruct(mixture_family({1.0}, {coin(0.5)}, {}, 2), 2), DomainError);
  // Three atoms cannot be explained by two.
  const ExchangeableFamily three = mixture_family({0.2, 0.3, 0.5}, {coin(0.1), coin(0.5), coin(0.95)}, {}, 5);
  try {
    reconstruct(three, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("inconsistent moments") != std::string::npos);
  }
}

TEST_CASE("measures and their families") {
  Rng rng(10);
  const BlockAlgebra a = matrix_algebra(2);
  MixingMeasure mu;
  mu.atoms.push_back({0.25, random_state(a, rng), StateOnAlgebra::tracial(complex_numbers())});
  mu.atoms.push_back({0.75, random_state(a, rng), StateOnAlgebra::tracial(complex_numbers())});
  const ExchangeableFamily fam = family_of(mu, complex_numbers(), 3);
  CHECK(family_check(fam).ok());
  CHECK(verify_measure(fam, mu) == 0.0);
  MixingMeasure other = mu;
  other.atoms[0].weight = 0.5;
  other.atoms[1].weight = 0.5;
  CHECK(verify_measure(fam, other) > 1e-3);
}

}
