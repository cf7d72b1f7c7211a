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

#include "icdkit/statespace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "icdkit/error.hpp"

namespace icd {

// ---------------------------------------------------------------- free

FreeStarPoly FreeStarPoly::constant(Complex c) { return word({}, c); }

FreeStarPoly FreeStarPoly::letter(int gen, bool starred) { return word({Letter{gen, starred}}); }

FreeStarPoly FreeStarPoly::word(Word w, Complex c) {
  FreeStarPoly p;
  p.add(w, c);
  return p;
}

void FreeStarPoly::add(const Word& w, Complex c) {
  Complex& slot = terms_[w];
  slot += c;
  if (std::abs(slot) < kCoefficientCutoff) terms_.erase(w);
}

int FreeStarPoly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }

FreeStarPoly& FreeStarPoly::operator+=(const FreeStarPoly& q) {
  for (const auto& [w, c] : q.terms_) add(w, c);
  return *this;
}

FreeStarPoly& FreeStarPoly::operator-=(const FreeStarPoly& q) {
  for (const auto& [w, c] : q.terms_) add(w, -c);
  return *this;
}

FreeStarPoly& FreeStarPoly::operator*=(Complex s) {
  Terms old;
  old.swap(terms_);
  for (const auto& [w, c] : old) add(w, s * c);
  return *this;
}

FreeStarPoly operator*(const FreeStarPoly& p, const FreeStarPoly& q) {
  FreeStarPoly out;
  for (const auto& [w1, c1] : p.terms())
    for (const auto& [w2, c2] : q.terms()) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add(w, c1 * c2);
    }
  return out;
}

FreeStarPoly star(const FreeStarPoly& p) {
  FreeStarPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    for (Letter& l : r) l.starred = !l.starred;
    out += FreeStarPoly::word(std::move(r), std::conj(c));
  }
  return out;
}

// ---------------------------------------------------------------- commutative

CommPoly CommPoly::constant(Complex c) { return monomial({}, c); }

CommPoly CommPoly::ev(int gen, bool starred) { return monomial({Letter{gen, starred}}); }

CommPoly CommPoly::monomial(Word w, Complex c) {
  CommPoly p;
  p.add(std::move(w), c);
  return p;
}

void CommPoly::add(Word w, Complex c) {
  std::sort(w.begin(), w.end());
  Complex& slot = terms_[w];
  slot += c;
  if (std::abs(slot) < kCoefficientCutoff) terms_.erase(w);
}

int CommPoly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }

CommPoly& CommPoly::operator+=(const CommPoly& q) {
  for (const auto& [w, c] : q.terms_) add(w, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& q) {
  for (const auto& [w, c] : q.terms_) add(w, -c);
  return *this;
}

CommPoly& CommPoly::operator*=(Complex s) {
  Terms old;
  old.swap(terms_);
  for (const auto& [w, c] : old) add(w, s * c);
  return *this;
}

CommPoly operator*(const CommPoly& p, const CommPoly& q) {
  CommPoly out;
  for (const auto& [w1, c1] : p.terms())
    for (const auto& [w2, c2] : q.terms()) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add(std::move(w), c1 * c2);
    }
  return out;
}

CommPoly star(const CommPoly& p) {
  CommPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word r = w;
    for (Letter& l : r) l.starred = !l.starred;
    out += CommPoly::monomial(std::move(r), std::conj(c));
  }
  return out;
}

CommPoly pow(const CommPoly& p, int n) {
  if (n < 0) throw DomainError("negative polynomial exponent");
  CommPoly out = CommPoly::constant(1.0);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

CommPoly abelianize(const FreeStarPoly& p) {
  CommPoly out;
  for (const auto& [w, c] : p.terms()) out += CommPoly::monomial(w, c);
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

const Element& generator(const std::vector<Element>& gens, int g) {
  if (g < 0 || static_cast<std::size_t>(g) >= gens.size())
    throw DomainError("unresolved generator index " + std::to_string(g));
  return gens[static_cast<std::size_t>(g)];
}

}  // namespace

Element delta_collapse(const FreeStarPoly& p, const BlockAlgebra& a, const std::vector<Element>& gens) {
  for (const Element& g : gens)
    if (!(g.parent() == a)) throw ShapeError("delta_collapse: generator outside " + to_string(a));
  Element out = Element::zero(a);
  for (const auto& [w, c] : p.terms()) {
    Element prod = Element::unit(a);
    for (const Letter& l : w) {
      const Element& x = generator(gens, l.gen);
      prod = prod * (l.starred ? star(x) : x);
    }
    out += c * prod;
  }
  return out;
}

std::pair<Word, Word> laxator(const std::vector<std::pair<Letter, Letter>>& word) {
  std::pair<Word, Word> out;
  for (const auto& [x, y] : word) {
    if (x.starred != y.starred) throw DomainError("laxator: a product letter is starred as a whole");
    out.first.push_back(x);
    out.second.push_back(y);
  }
  return out;
}

Element phi_natural(const CommPoly& p, const UMap& phi, const std::vector<Element>& gens) {
  const BlockAlgebra& b = phi.dom();
  if (!is_commutative(b)) throw DomainError("phi_natural needs a commutative target, got " + to_string(b));
  std::vector<Element> images;
  for (const Element& g : gens) images.push_back(phi.apply(g));
  Element out = Element::zero(b);
  for (const auto& [w, c] : p.terms()) {
    Element prod = Element::unit(b);
    for (const Letter& l : w) {
      const Element& x = generator(images, l.gen);
      prod = prod * (l.starred ? star(x) : x);
    }
    out += c * prod;
  }
  return out;
}

Complex evaluate_comm(const CommPoly& p, const StateOnAlgebra& psi, const std::vector<Element>& gens) {
  std::vector<Complex> vals;
  for (const Element& g : gens) vals.push_back(psi(g));
  Complex out = 0;
  for (const auto& [w, c] : p.terms()) {
    Complex prod = c;
    for (const Letter& l : w) {
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= vals.size())
        throw DomainError("unresolved generator index " + std::to_string(l.gen));
      const Complex v = vals[static_cast<std::size_t>(l.gen)];
      prod *= l.starred ? std::conj(v) : v;
    }
    out += prod;
  }
  return out;
}

// ---------------------------------------------------------------- text

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view src, const std::vector<std::string>& names) : src_(src), names_(names) {}

  CommPoly run() {
    skip_ws();
    if (pos_ >= src_.size()) fail("empty polynomial");
    CommPoly p = expr();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  CommPoly expr() {
    CommPoly p;
    bool first = true;
    for (;;) {
      double sign = 1.0;
      if (accept('-')) {
        sign = -1.0;
      } else if (!accept('+') && !first) {
        return p;
      }
      p += Complex(sign) * term();
      first = false;
    }
  }

  CommPoly term() {
    CommPoly p = factor();
    while (accept('*')) p = p * factor();
    return p;
  }

  CommPoly factor() {
    CommPoly p = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected an exponent");
      int n = 0;
      std::from_chars(src_.data() + start, src_.data() + pos_, n);
      p = pow(p, n);
    }
    return p;
  }

  CommPoly primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      CommPoly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == 'i' && !ident_char(pos_ + 1)) {
      ++pos_;
      return CommPoly::constant(Complex(0, 1));
    }
    if (src_.substr(pos_, 2) == "ev") {
      const std::size_t at = pos_;
      pos_ += 2;
      if (!accept('[')) fail_at("expected 'ev[name]'", at);
      skip_ws();
      const std::size_t start = pos_;
      while (ident_char(pos_)) ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      if (name.empty()) fail("expected a generator name");
      const bool starred = accept('*');
      expect(']');
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail_at("unknown generator '" + name + "'", start);
      return CommPoly::ev(static_cast<int>(it - names_.begin()), starred);
    }
    fail("unexpected character");
  }

  bool ident_char(std::size_t p) const {
    return p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_');
  }

  CommPoly number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail_at("malformed number", start);
    if (pos_ < src_.size() && src_[pos_] == 'i' && !ident_char(pos_ + 1)) {
      ++pos_;
      return CommPoly::constant(Complex(0, v));
    }
    return CommPoly::constant(v);
  }

  std::string_view src_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

CommPoly parse_comm_poly(std::string_view src, const std::vector<std::string>& names) {
  return PolyParser(src, names).run();
}

std::string to_string(const CommPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    Complex coef = c;
    bool negative = false;
    if (coef.imag() == 0.0 && coef.real() < 0) {
      negative = true;
      coef = -coef;
    } else if (coef.real() == 0.0 && coef.imag() < 0) {
      negative = true;
      coef = -coef;
    }
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    std::string cs;
    if (coef.imag() == 0.0) {
      cs = fmt(coef.real());
    } else if (coef.real() == 0.0) {
      cs = coef.imag() == 1.0 ? "i" : fmt(coef.imag()) + "i";
    } else {
      cs = "(" + fmt(coef.real()) + (coef.imag() < 0 ? "-" : "+") + fmt(std::abs(coef.imag())) + "i)";
    }
    std::vector<std::string> factors;
    if (w.empty() || cs != "1") factors.push_back(cs);
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const int g = w[i].gen;
      const std::string name =
          g >= 0 && static_cast<std::size_t>(g) < names.size() ? names[static_cast<std::size_t>(g)] : "g" + std::to_string(g);
      std::string f = "ev[" + name + (w[i].starred ? "*" : "") + "]";
      if (j - i > 1) f += "^" + std::to_string(j - i);
      factors.push_back(f);
      i = j;
    }
    for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? "*" : "") + factors[k];
  }
  return out;
}

}  // namespace icd
