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

#include "icdkit/diagram.hpp"
#include "icdkit/error.hpp"
#include "support.hpp"

using namespace icd;

namespace {

// A = M₂, B = C², f: A → B, g: B → A, h: A → A⊗B.
Signature test_signature(Rng& rng) {
  Signature sig;
  const BlockAlgebra a = matrix_algebra(2), b = diagonal_algebra(2);
  sig.add_object("A", a);
  sig.add_object("B", b);
  sig.add_generator("f", {"A"}, {"B"}, random_cpu_map(a, b, rng));
  sig.add_generator("g", {"B"}, {"A"}, random_cpu_map(b, a, rng));
  sig.add_generator("h", {"A"}, {"A", "B"}, random_cpu_map(a, tensor_algebra(a, b), rng));
  return sig;
}

struct Typed {
  TermPtr t;
  Wires dom, cod;
};

Wires concat(Wires a, const Wires& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class TermGen {
 public:
  TermGen(Rng& rng) : rng_(rng) {}

  // A random term whose domain is the given wire list.
  Typed from(const Wires& dom, int depth) {
    if (dom.empty()) return {make_id("A"), {"A"}, {"A"}};  // callers never pass empty
    const int pick = uniform(depth > 0 ? 5 : 2);
    if (pick == 0 || pick == 1 || dom.size() > 1) {
      if (dom.size() == 1 || pick == 0) return tensor_atoms(dom);
    }
    if (dom.size() > 1) {
      const std::size_t cut = 1 + uniform(static_cast<int>(dom.size()) - 1);
      const Wires l(dom.begin(), dom.begin() + cut), r(dom.begin() + cut, dom.end());
      Typed a = from(l, depth - 1), b = from(r, depth - 1);
      return {make_tensor(a.t, b.t), dom, concat(a.cod, b.cod)};
    }
    if (pick == 2) {
      Typed a = from(dom, depth - 1);
      if (a.cod.empty() || a.cod.size() > 3) return a;
      Typed b = from(a.cod, depth - 1);
      return {make_comp(b.t, a.t), dom, b.cod};
    }
    if (pick == 3) {
      Typed a = from(dom, depth - 1);
      return {make_invo(a.t), a.dom, a.cod};
    }
    return tensor_atoms(dom);
  }

 private:
  int uniform(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Typed atom(const std::string& w, int budget) {
    switch (uniform(budget > 1 ? 4 : 3)) {
      case 0: return {make_id(w), {w}, {w}};
      case 1: return w == "A" ? Typed{make_gen("f"), {"A"}, {"B"}} : Typed{make_gen("g"), {"B"}, {"A"}};
      case 2:
        if (w == "A" && budget > 1) return {make_gen("h"), {"A"}, {"A", "B"}};
        return {make_id(w), {w}, {w}};
      default: return {make_copy(w), {w}, {w, w}};
    }
  }

  Typed tensor_atoms(const Wires& dom) {
    if (dom.size() >= 2 && uniform(4) == 0)
      return with_rest({make_swap(dom[0], dom[1]), {dom[0], dom[1]}, {dom[1], dom[0]}}, dom, 2);
    if (dom.size() >= 2 && uniform(6) == 0) return with_rest({make_del(dom[0]), {dom[0]}, {}}, dom, 1);
    Typed first = atom(dom[0], 3 - static_cast<int>(dom.size()));
    return with_rest(first, dom, 1);
  }

  Typed with_rest(Typed first, const Wires& dom, std::size_t used) {
    for (std::size_t i = used; i < dom.size(); ++i)
      first = {make_tensor(first.t, make_id(dom[i])), concat(first.dom, {dom[i]}), concat(first.cod, {dom[i]})};
    return first;
  }

  Rng& rng_;
};

// The structural identity that the evaluator must satisfy, recomputed bottom-up.
UMap rebuild(const DiagramTerm& t, const Signature& sig) {
  if (const auto* c = std::get_if<term::Comp>(&t.node()))
    return compose(evaluate(*c->outer, sig), evaluate(*c->inner, sig));
  if (const auto* x = std::get_if<term::Tensor>(&t.node()))
    return tensor(evaluate(*x->left, sig), evaluate(*x->right, sig));
  if (const auto* v = std::get_if<term::Invo>(&t.node())) return involution(evaluate(*v->body, sig));
  return evaluate(t, sig);
}

void check_functorial(const DiagramTerm& t, const Signature& sig) {
  CHECK(max_abs_diff(evaluate(t, sig), rebuild(t, sig)) == 0.0);
  if (const auto* c = std::get_if<term::Comp>(&t.node())) {
    check_functorial(*c->outer, sig);
    check_functorial(*c->inner, sig);
  } else if (const auto* x = std::get_if<term::Tensor>(&t.node())) {
    check_functorial(*x->left, sig);
    check_functorial(*x->right, sig);
  } else if (const auto* v = std::get_if<term::Invo>(&t.node())) {
    check_functorial(*v->body, sig);
  }
}

ParseError parse_error(std::string_view src, const Signature& sig) {
  try {
    parse(src, sig);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << src);
  return ParseError("", 0, 0);
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("parse builds the expected tree") {
  Rng rng(1);
  const Signature sig = test_signature(rng);
  const TermPtr t = parse("copy[A] ; (f ⊗ id[A])", sig);
  const TermPtr expected = make_comp(make_tensor(make_gen("f"), make_id("A")), make_copy("A"));
  CHECK(equal(*t, *expected));
  CHECK(equal(*parse("inv(f)", sig), *make_invo(make_gen("f"))));
  CHECK(equal(*parse("copy[A];(f (x) id[A])", sig), *expected));
  CHECK(equal(*parse("  inv ( f )  ", sig), *make_invo(make_gen("f"))));
  const WireType w = type_of(*t, sig);
  CHECK(w.dom == Wires{"A"});
  CHECK(w.cod == Wires{"B", "A"});
}

TEST_CASE("tensor binds tighter than sequencing, both associate left") {
  Rng rng(2);
  const Signature sig = test_signature(rng);
  const TermPtr t = parse("f ⊗ id[A] ; g ⊗ f", sig);
  CHECK(equal(*t, *make_comp(make_tensor(make_gen("g"), make_gen("f")), make_tensor(make_gen("f"), make_id("A")))));
  const TermPtr s = parse("f ; g ; f", sig);
  CHECK(equal(*s, *make_comp(make_gen("f"), make_comp(make_gen("g"), make_gen("f")))));
  const TermPtr u = parse("id[A] ⊗ id[B] ⊗ id[A]", sig);
  CHECK(equal(*u, *make_tensor(make_tensor(make_id("A"), make_id("B")), make_id("A"))));
  CHECK_FALSE(equal(*u, *make_tensor(make_id("A"), make_tensor(make_id("B"), make_id("A")))));
}

TEST_CASE("parse errors carry positions") {
  Rng rng(3);
  const Signature sig = test_signature(rng);
  ParseError e = parse_error("f ; q", sig);
  CHECK(e.line() == 1);
  CHECK(e.column() == 5);
  CHECK(std::string(e.what()).find("unknown identifier 'q'") != std::string::npos);

  e = parse_error("f ;\n  f", sig);
  CHECK(e.line() == 1);
  CHECK(e.column() == 3);
  CHECK(std::string(e.what()).find("wire-type mismatch") != std::string::npos);

  e = parse_error("id[A] ⊗\n  id[Z]", sig);
  CHECK(e.line() == 2);
  CHECK(e.column() == 6);

  e = parse_error("f ⊗ $", sig);
  CHECK(e.column() == 5);
  CHECK(parse_error("(f", sig).column() == 3);
  CHECK(parse_error("f g", sig).column() == 3);
  CHECK(parse_error("", sig).column() == 1);
  CHECK(parse_error("swap[A B]", sig).column() == 8);
  CHECK_THROWS_AS(parse("copy", sig), ParseError);
}

TEST_CASE("signatures validate generators") {
  Signature sig;
  sig.add_object("A", matrix_algebra(2));
  Rng rng(4);
  CHECK_THROWS_AS(sig.add_generator("f", {"A"}, {"Z"}, identity(matrix_algebra(2))), DomainError);
  CHECK_THROWS_AS(sig.add_generator("f", {"A"}, {"A", "A"}, identity(matrix_algebra(2))), DomainError);
  sig.add_generator("e", {"A"}, {}, discard(matrix_algebra(2)));
  CHECK(type_of(*parse("e", sig), sig).cod.empty());
  CHECK(sig.algebra_of({}) == complex_numbers());
  CHECK(sig.algebra_of({"A", "A"}).dim() == 16);
  CHECK_THROWS_AS(type_of(*make_comp(make_copy("A"), make_copy("A")), sig), DomainError);
  CHECK_THROWS_AS(evaluate(*make_comp(make_copy("A"), make_copy("A")), sig), DomainError);
}

TEST_CASE("print and parse round trip") {
  Rng rng(5);
  const Signature sig = test_signature(rng);
  TermGen gen(rng);
  for (int i = 0; i < 200; ++i) {
    const Typed t = gen.from(i % 3 ? Wires{"A"} : Wires{"B", "A"}, 1 + i % 6);
    const std::string s = print(*t.t);
    const TermPtr back = parse(s, sig);
    CHECK_MESSAGE(equal(*back, *t.t), s);
    CHECK(print(*back) == s);
    const WireType w = type_of(*t.t, sig);
    CHECK(w.dom == t.dom);
    CHECK(w.cod == t.cod);
  }
}

TEST_CASE("evaluation is a strict monoidal functor") {
  Rng rng(6);
  const Signature sig = test_signature(rng);
  TermGen gen(rng);
  for (int i = 0; i < 60; ++i) {
    const Typed t = gen.from(Wires{"A"}, 6);
    const UMap m = evaluate(*t.t, sig);
    CHECK(m.dom() == sig.algebra_of(t.dom));
    CHECK(m.cod() == sig.algebra_of(t.cod));
    check_functorial(*t.t, sig);
  }
}

TEST_CASE("evaluation laws on concrete terms") {
  Rng rng(7);
  const Signature sig = test_signature(rng);
  auto ev = [&](const char* s) { return evaluate(*parse(s, sig), sig); };
  CHECK(max_abs_diff(ev("copy[A] ; (del[A] ⊗ id[A])"), ev("id[A]")) <= 1e-14);
  CHECK(max_abs_diff(ev("copy[A] ; (id[A] ⊗ del[A])"), ev("id[A]")) <= 1e-14);
  CHECK(max_abs_diff(ev("inv(copy[A])"), ev("copy[A] ; swap[A,A]")) <= 1e-14);
  CHECK(max_abs_diff(ev("inv(inv(h))"), ev("h")) == 0.0);
  CHECK(max_abs_diff(ev("(f ; g) ; h"), ev("f ; (g ; h)")) <= 1e-14);
  CHECK(max_abs_diff(ev("(f ⊗ g) ; (g ⊗ f)"), ev("(f ; g) ⊗ (g ; f)")) <= 1e-14);
  CHECK(max_abs_diff(ev("f ⊗ (g ⊗ h)"), ev("(f ⊗ g) ⊗ h")) <= 1e-15);
  CHECK(max_abs_diff(ev("swap[A,B]"), ev("inv(swap[A,B])")) == 0.0);
  CHECK(max_abs_diff(ev("id[A] ⊗ id[B]"), ev("inv(id[A] ⊗ id[B])")) == 0.0);
  CHECK(max_abs_diff(ev("swap[A,B] ; swap[B,A]"), ev("id[A] ⊗ id[B]")) == 0.0);
  // Naturality of the swap.
  CHECK(max_abs_diff(ev("(f ⊗ g) ; swap[B,A]"), ev("swap[A,B] ; (g ⊗ f)")) <= 1e-14);
  // Delete is natural for unital maps.
  CHECK(max_abs_diff(ev("h ; del[A] ⊗ del[B]"), ev("del[A]")) <= 1e-13);
}

TEST_CASE("copy on C^2 multiplies componentwise") {
  Signature sig;
  const BlockAlgebra c2 = diagonal_algebra(2);
  sig.add_object("X", c2);
  const UMap cp = evaluate(*parse("copy[X]", sig), sig);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      const Element ei = Element::matrix_unit(c2, i, 0, 0), ej = Element::matrix_unit(c2, j, 0, 0);
      const Element expected = i == j ? ei : Element::zero(c2);
      CHECK(max_abs_diff(cp.apply(tensor_element(ei, ej)), expected) == 0.0);
    }
}

TEST_CASE("copy respects the monoidal structure") {
  Signature sig;
  sig.add_object("A", matrix_algebra(2));
  sig.add_object("B", make_algebra({1, 1}));
  auto ev = [&](const char* s) { return evaluate(*parse(s, sig), sig); };
  const UMap direct = copy(tensor_algebra(matrix_algebra(2), make_algebra({1, 1})));
  const UMap interchange = ev("copy[A] ⊗ copy[B] ; id[A] ⊗ swap[A,B] ⊗ id[B]");
  CHECK(max_abs_diff(direct, interchange) <= 1e-14);
}

TEST_CASE("axioms hold on small algebras") {
  for (const BlockAlgebra& a : testing::small_algebras()) {
    const AxiomReport r = check_axioms(a);
    CHECK(r.max_law_residual() <= 1e-12);
    CHECK(r.classical == is_commutative(a));
    if (!is_commutative(a)) CHECK(r.classicality >= 1.0);
    else CHECK(r.classicality == 0.0);
  }
  const AxiomReport c3 = check_axioms(diagonal_algebra(3));
  CHECK(c3.max_law_residual() == 0.0);
  const AxiomReport mixed = check_axioms(matrix_algebra(2), make_algebra({1, 1}));
  CHECK(mixed.monoidal_copy <= 1e-12);
  CHECK(mixed.monoidal_discard <= 1e-12);
  CHECK(mixed.monoidal_unit == 0.0);
}

TEST_CASE("custom comonoid structures") {
  const BlockAlgebra c2 = diagonal_algebra(2);
  const AxiomReport std_report = check_comonoid(c2, copy(c2), discard(c2));
  CHECK(std_report.max_law_residual() == 0.0);
  CHECK(std_report.classical);

  // Copying with one output's coordinates swapped keeps one counit law and breaks the other.
  const UMap flip = map_from_function(c2, c2, [&](const Element& y) {
    return Element(c2, {y.block(1), y.block(0)});
  });
  const AxiomReport bad = check_comonoid(c2, compose(tensor(flip, identity(c2)), copy(c2)), discard(c2));
  CHECK(std::min(bad.left_counit, bad.right_counit) == 0.0);
  CHECK(std::max(bad.left_counit, bad.right_counit) >= 0.5);
  CHECK(bad.max_law_residual() >= 0.5);

  // A non-unital "delete" breaks counitality.
  const UMap half(c2, complex_numbers(), Matrix::Constant(2, 1, 0.5));
  const AxiomReport nonunital = check_comonoid(c2, copy(c2), half);
  CHECK(nonunital.left_counit >= 0.4);
  CHECK(nonunital.right_counit >= 0.4);
  CHECK_THROWS_AS(check_comonoid(c2, identity(c2), discard(c2)), ShapeError);
}

TEST_CASE("even and odd morphisms") {
  Rng rng(8);
  const BlockAlgebra a = make_algebra({1, 2});
  const EvenOddMorphism s = star_morphism(a);
  CHECK(s.parity == Parity::Odd);
  const EvenOddMorphism ss = qcd_compose(s, s);
  CHECK(ss.parity == Parity::Even);
  CHECK(max_abs_diff(unwrap_even(ss), identity(a)) == 0.0);

  for (int i = 0; i < 20; ++i) {
    const UMap f(a, a, random_matrix(a.dim(), a.dim(), rng));
    const EvenOddMorphism e = wrap_even(f);
    CHECK(max_abs_diff(unwrap_even(e), f) == 0.0);
    const EvenOddMorphism conj = qcd_compose(s, qcd_compose(e, s));
    CHECK(conj.parity == Parity::Even);
    CHECK(max_abs_diff(unwrap_even(conj), involution(f)) == 0.0);
    CHECK(qcd_compose(s, e).parity == Parity::Odd);
    CHECK(qcd_compose(e, s).parity == Parity::Odd);
  }
  CHECK_THROWS_AS(unwrap_even(s), DomainError);
  CHECK_THROWS_AS(qcd_tensor(s, wrap_even(identity(a))), DomainError);
  const EvenOddMorphism st = qcd_tensor(s, star_morphism(matrix_algebra(2)));
  CHECK(st.parity == Parity::Odd);
  const EvenOddMorphism back = qcd_compose(st, st);
  CHECK(max_abs_diff(unwrap_even(back), identity(tensor_algebra(a, matrix_algebra(2)))) == 0.0);
}

}
