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

#include <cctype>
#include <sstream>

#include "icdkit/error.hpp"

namespace icd {

// ---------------------------------------------------------------- signature

void Signature::add_object(const std::string& name, BlockAlgebra a) {
  if (name.empty()) throw DomainError("object name must be nonempty");
  objects_[name] = std::move(a);
}

void Signature::add_generator(const std::string& name, Wires dom, Wires cod, UMap map) {
  for (const auto& w : dom)
    if (!has_object(w)) throw DomainError("generator " + name + ": undeclared object " + w);
  for (const auto& w : cod)
    if (!has_object(w)) throw DomainError("generator " + name + ": undeclared object " + w);
  if (!(map.dom() == algebra_of(dom)) || !(map.cod() == algebra_of(cod)))
    throw DomainError("generator " + name + ": map algebras do not match its wire types");
  generators_[name] = Generator{std::move(dom), std::move(cod), std::move(map)};
}

const BlockAlgebra& Signature::object(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) throw DomainError("unknown object " + name);
  return it->second;
}

const Generator& Signature::generator(const std::string& name) const {
  auto it = generators_.find(name);
  if (it == generators_.end()) throw DomainError("unknown generator " + name);
  return it->second;
}

BlockAlgebra Signature::algebra_of(const Wires& w) const {
  BlockAlgebra out = complex_numbers();
  for (const auto& name : w) out = tensor_algebra(out, object(name));
  return out;
}

// ---------------------------------------------------------------- terms

TermPtr make_id(std::string obj) { return std::make_shared<DiagramTerm>(term::Id{std::move(obj)}); }
TermPtr make_gen(std::string name) { return std::make_shared<DiagramTerm>(term::Gen{std::move(name)}); }
TermPtr make_copy(std::string obj) { return std::make_shared<DiagramTerm>(term::Copy{std::move(obj)}); }
TermPtr make_del(std::string obj) { return std::make_shared<DiagramTerm>(term::Del{std::move(obj)}); }
TermPtr make_swap(std::string a, std::string b) {
  return std::make_shared<DiagramTerm>(term::Swap{std::move(a), std::move(b)});
}
TermPtr make_comp(TermPtr outer, TermPtr inner) {
  return std::make_shared<DiagramTerm>(term::Comp{std::move(outer), std::move(inner)});
}
TermPtr make_tensor(TermPtr left, TermPtr right) {
  return std::make_shared<DiagramTerm>(term::Tensor{std::move(left), std::move(right)});
}
TermPtr make_invo(TermPtr body) { return std::make_shared<DiagramTerm>(term::Invo{std::move(body)}); }

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool equal(const DiagramTerm& a, const DiagramTerm& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const term::Id& x) { return x.obj == std::get<term::Id>(b.node()).obj; },
          [&](const term::Gen& x) { return x.name == std::get<term::Gen>(b.node()).name; },
          [&](const term::Copy& x) { return x.obj == std::get<term::Copy>(b.node()).obj; },
          [&](const term::Del& x) { return x.obj == std::get<term::Del>(b.node()).obj; },
          [&](const term::Swap& x) {
            const auto& y = std::get<term::Swap>(b.node());
            return x.a == y.a && x.b == y.b;
          },
          [&](const term::Comp& x) {
            const auto& y = std::get<term::Comp>(b.node());
            return equal(*x.outer, *y.outer) && equal(*x.inner, *y.inner);
          },
          [&](const term::Tensor& x) {
            const auto& y = std::get<term::Tensor>(b.node());
            return equal(*x.left, *y.left) && equal(*x.right, *y.right);
          },
          [&](const term::Invo& x) { return equal(*x.body, *std::get<term::Invo>(b.node()).body); },
      },
      a.node());
}

namespace {

std::string wires_to_string(const Wires& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i];
  return s + "]";
}

Wires concat(Wires a, const Wires& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

WireType type_of(const DiagramTerm& t, const Signature& sig) {
  auto need = [&](const std::string& obj) {
    if (!sig.has_object(obj)) throw DomainError("unknown object " + obj);
  };
  return std::visit(
      Overloaded{
          [&](const term::Id& x) { need(x.obj); return WireType{{x.obj}, {x.obj}}; },
          [&](const term::Gen& x) {
            const Generator& g = sig.generator(x.name);
            return WireType{g.dom, g.cod};
          },
          [&](const term::Copy& x) { need(x.obj); return WireType{{x.obj}, {x.obj, x.obj}}; },
          [&](const term::Del& x) { need(x.obj); return WireType{{x.obj}, {}}; },
          [&](const term::Swap& x) {
            need(x.a);
            need(x.b);
            return WireType{{x.a, x.b}, {x.b, x.a}};
          },
          [&](const term::Comp& x) {
            const WireType inner = type_of(*x.inner, sig);
            const WireType outer = type_of(*x.outer, sig);
            if (inner.cod != outer.dom)
              throw DomainError("wire-type mismatch: " + wires_to_string(inner.cod) + " vs " +
                                wires_to_string(outer.dom));
            return WireType{inner.dom, outer.cod};
          },
          [&](const term::Tensor& x) {
            const WireType l = type_of(*x.left, sig);
            const WireType r = type_of(*x.right, sig);
            return WireType{concat(l.dom, r.dom), concat(l.cod, r.cod)};
          },
          [&](const term::Invo& x) { return type_of(*x.body, sig); },
      },
      t.node());
}

// ---------------------------------------------------------------- parser

namespace {

constexpr std::string_view kTensorGlyph = "\xE2\x8A\x97";  // ⊗

struct Typed {
  TermPtr term;
  WireType type;
};

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig) : src_(src), sig_(sig) {}

  TermPtr run() {
    Typed t = seq();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected input", pos_);
    return t.term;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  bool accept(std::string_view s) {
    skip_ws();
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    skip_ws();
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'", pos_);
    pos_ += s.size();
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= src_.size() || !(std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      fail(pos_ >= src_.size() ? "unexpected end of input" : "unexpected character", pos_);
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string object() {
    skip_ws();
    const std::size_t at = pos_;
    std::string name = ident();
    if (!sig_.has_object(name)) fail("unknown identifier '" + name + "'", at);
    return name;
  }

  Typed seq() {
    Typed left = tensor();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept(";")) return left;
      Typed right = tensor();
      if (left.type.cod != right.type.dom)
        fail("wire-type mismatch: " + wires_to_string(left.type.cod) + " vs " + wires_to_string(right.type.dom), at);
      left = Typed{make_comp(right.term, left.term), WireType{left.type.dom, right.type.cod}};
    }
  }

  Typed tensor() {
    Typed left = atom();
    while (accept(kTensorGlyph) || accept("(x)")) {
      Typed right = atom();
      left = Typed{make_tensor(left.term, right.term),
                   WireType{concat(left.type.dom, right.type.dom), concat(left.type.cod, right.type.cod)}};
    }
    return left;
  }

  bool keyword(std::string_view word, char open) {
    skip_ws();
    const std::size_t save = pos_;
    if (!starts_with(word)) return false;
    std::size_t p = pos_ + word.size();
    if (p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) return false;
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    if (p >= src_.size() || src_[p] != open) {
      pos_ = save;
      return false;
    }
    pos_ = p + 1;
    return true;
  }

  Typed atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (keyword("id", '[')) {
      std::string a = object();
      expect("]");
      return {make_id(a), {{a}, {a}}};
    }
    if (keyword("copy", '[')) {
      std::string a = object();
      expect("]");
      return {make_copy(a), {{a}, {a, a}}};
    }
    if (keyword("del", '[')) {
      std::string a = object();
      expect("]");
      return {make_del(a), {{a}, {}}};
    }
    if (keyword("swap", '[')) {
      std::string a = object();
      expect(",");
      std::string b = object();
      expect("]");
      return {make_swap(a, b), {{a, b}, {b, a}}};
    }
    if (keyword("inv", '(')) {
      Typed body = seq();
      expect(")");
      return {make_invo(body.term), body.type};
    }
    if (accept("(")) {
      Typed inner = seq();
      expect(")");
      return inner;
    }
    if (pos_ >= src_.size()) fail("unexpected end of input", pos_);
    std::string name = ident();
    if (!sig_.has_generator(name)) fail("unknown identifier '" + name + "'", at);
    const Generator& g = sig_.generator(name);
    return {make_gen(name), {g.dom, g.cod}};
  }

  std::string_view src_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

// Precedence: 0 = sequence, 1 = tensor, 2 = atom.
void print_to(std::ostringstream& os, const DiagramTerm& t, int min_level) {
  const int level = std::holds_alternative<term::Comp>(t.node())     ? 0
                    : std::holds_alternative<term::Tensor>(t.node()) ? 1
                                                                     : 2;
  const bool paren = level < min_level;
  if (paren) os << '(';
  std::visit(Overloaded{
                 [&](const term::Id& x) { os << "id[" << x.obj << ']'; },
                 [&](const term::Gen& x) { os << x.name; },
                 [&](const term::Copy& x) { os << "copy[" << x.obj << ']'; },
                 [&](const term::Del& x) { os << "del[" << x.obj << ']'; },
                 [&](const term::Swap& x) { os << "swap[" << x.a << ',' << x.b << ']'; },
                 [&](const term::Comp& x) {
                   print_to(os, *x.inner, 0);
                   os << " ; ";
                   print_to(os, *x.outer, 1);
                 },
                 [&](const term::Tensor& x) {
                   print_to(os, *x.left, 1);
                   os << ' ' << kTensorGlyph << ' ';
                   print_to(os, *x.right, 2);
                 },
                 [&](const term::Invo& x) {
                   os << "inv(";
                   print_to(os, *x.body, 0);
                   os << ')';
                 },
             },
             t.node());
  if (paren) os << ')';
}

}  // namespace

TermPtr parse(std::string_view src, const Signature& sig) { return Parser(src, sig).run(); }

std::string print(const DiagramTerm& t) {
  std::ostringstream os;
  print_to(os, t, 0);
  return os.str();
}

// ---------------------------------------------------------------- evaluation

UMap evaluate(const DiagramTerm& t, const Signature& sig) {
  return std::visit(
      Overloaded{
          [&](const term::Id& x) { return identity(sig.object(x.obj)); },
          [&](const term::Gen& x) { return sig.generator(x.name).map; },
          [&](const term::Copy& x) { return copy(sig.object(x.obj)); },
          [&](const term::Del& x) { return discard(sig.object(x.obj)); },
          [&](const term::Swap& x) { return swap(sig.object(x.a), sig.object(x.b)); },
          [&](const term::Comp& x) {
            const WireType inner = type_of(*x.inner, sig);
            const WireType outer = type_of(*x.outer, sig);
            if (inner.cod != outer.dom)
              throw DomainError("wire-type mismatch: " + wires_to_string(inner.cod) + " vs " +
                                wires_to_string(outer.dom));
            return compose(evaluate(*x.outer, sig), evaluate(*x.inner, sig));
          },
          [&](const term::Tensor& x) { return tensor(evaluate(*x.left, sig), evaluate(*x.right, sig)); },
          [&](const term::Invo& x) { return involution(evaluate(*x.body, sig)); },
      },
      t.node());
}

// ---------------------------------------------------------------- axioms

double AxiomReport::max_law_residual() const {
  return std::max({coassociativity, left_counit, right_counit, involution_copy, involution_discard,
                   monoidal_copy, monoidal_discard, monoidal_unit});
}

AxiomReport check_comonoid(const BlockAlgebra& a, const UMap& cp, const UMap& del, double tol) {
  const BlockAlgebra aa = tensor_algebra(a, a);
  if (!(cp.dom() == a) || !(cp.cod() == aa)) throw ShapeError("check_comonoid: copy must be A → A⊗A");
  if (!(del.dom() == a) || !(del.cod() == complex_numbers())) throw ShapeError("check_comonoid: del must be A → C");
  const UMap id = identity(a);
  AxiomReport r;
  r.coassociativity = max_abs_diff(compose(tensor(cp, id), cp), compose(tensor(id, cp), cp));
  r.left_counit = max_abs_diff(compose(tensor(del, id), cp), id);
  r.right_counit = max_abs_diff(compose(tensor(id, del), cp), id);
  const UMap swapped = compose(swap(a, a), cp);
  r.involution_copy = max_abs_diff(involution(cp), swapped);
  r.involution_discard = max_abs_diff(involution(del), del);
  r.classicality = max_abs_diff(swapped, cp);
  r.classical = r.classicality <= tol;
  return r;
}

AxiomReport check_axioms(const BlockAlgebra& a, const BlockAlgebra& b, double tol) {
  AxiomReport r = check_comonoid(a, copy(a), discard(a), tol);
  const UMap interchange = tensor(tensor(identity(a), swap(a, b)), identity(b));
  r.monoidal_copy = max_abs_diff(copy(tensor_algebra(a, b)), compose(interchange, tensor(copy(a), copy(b))));
  r.monoidal_discard = max_abs_diff(discard(tensor_algebra(a, b)), tensor(discard(a), discard(b)));
  const BlockAlgebra c = complex_numbers();
  r.monoidal_unit = std::max(max_abs_diff(copy(c), identity(c)), max_abs_diff(discard(c), identity(c)));
  return r;
}

AxiomReport check_axioms(const BlockAlgebra& a, double tol) { return check_axioms(a, a, tol); }

// ---------------------------------------------------------------- even/odd

EvenOddMorphism wrap_even(UMap f) { return {std::move(f), Parity::Even}; }

EvenOddMorphism star_morphism(const BlockAlgebra& a) { return {identity(a), Parity::Odd}; }

UMap unwrap_even(const EvenOddMorphism& m) {
  if (m.parity != Parity::Even) throw DomainError("unwrap_even: morphism is odd");
  return m.base;
}

EvenOddMorphism qcd_compose(const EvenOddMorphism& b, const EvenOddMorphism& a) {
  const bool odd_a = a.parity == Parity::Odd;
  const bool odd_b = b.parity == Parity::Odd;
  if (!odd_b) return {compose(b.base, a.base), odd_a ? Parity::Odd : Parity::Even};
  // ψ* ∘ φ = (ψ ∘ inv(φ))*   and   ψ* ∘ φ* = ψ ∘ inv(φ).
  return {compose(b.base, involution(a.base)), odd_a ? Parity::Even : Parity::Odd};
}

EvenOddMorphism qcd_tensor(const EvenOddMorphism& a, const EvenOddMorphism& b) {
  if (a.parity != b.parity) throw DomainError("qcd_tensor: cannot tensor an even with an odd morphism");
  return {tensor(a.base, b.base), a.parity};
}

}  // namespace icd
