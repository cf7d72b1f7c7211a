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

#pragma once

// Symbolic layer for distribution and state-space objects. Generators are
// referred to by index into a table of elements of A. A FreeStarPoly is a
// linear combination of words in the free unital *-algebra on the
// generators; a CommPoly is a polynomial in the commuting symbols ev_x.

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/state.hpp"

namespace icd {

struct Letter {
  int gen = 0;
  bool starred = false;

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Total degree first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using Terms = std::map<Word, Complex, WordOrder>;

inline constexpr double kCoefficientCutoff = 1e-14;

class FreeStarPoly {
 public:
  FreeStarPoly() = default;
  static FreeStarPoly constant(Complex c);
  static FreeStarPoly letter(int gen, bool starred = false);
  static FreeStarPoly word(Word w, Complex c = 1.0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  FreeStarPoly& operator+=(const FreeStarPoly& q);
  FreeStarPoly& operator-=(const FreeStarPoly& q);
  FreeStarPoly& operator*=(Complex s);

  friend FreeStarPoly operator+(FreeStarPoly p, const FreeStarPoly& q) { return p += q; }
  friend FreeStarPoly operator-(FreeStarPoly p, const FreeStarPoly& q) { return p -= q; }
  friend FreeStarPoly operator*(Complex s, FreeStarPoly p) { return p *= s; }
  /// Concatenation of words.
  friend FreeStarPoly operator*(const FreeStarPoly& p, const FreeStarPoly& q);
  friend bool operator==(const FreeStarPoly&, const FreeStarPoly&) = default;

 private:
  void add(const Word& w, Complex c);
  Terms terms_;
};

/// Reverses words, stars letters and conjugates coefficients.
FreeStarPoly star(const FreeStarPoly& p);

class CommPoly {
 public:
  CommPoly() = default;
  static CommPoly constant(Complex c);
  /// ev_x, or (ev_x)* = ev_{x*} when starred.
  static CommPoly ev(int gen, bool starred = false);
  /// Monomial; the letters are sorted.
  static CommPoly monomial(Word w, Complex c = 1.0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  CommPoly& operator+=(const CommPoly& q);
  CommPoly& operator-=(const CommPoly& q);
  CommPoly& operator*=(Complex s);

  friend CommPoly operator+(CommPoly p, const CommPoly& q) { return p += q; }
  friend CommPoly operator-(CommPoly p, const CommPoly& q) { return p -= q; }
  friend CommPoly operator*(Complex s, CommPoly p) { return p *= s; }
  friend CommPoly operator*(const CommPoly& p, const CommPoly& q);
  friend bool operator==(const CommPoly&, const CommPoly&) = default;

 private:
  void add(Word w, Complex c);
  Terms terms_;
};

CommPoly star(const CommPoly& p);
CommPoly pow(const CommPoly& p, int n);

/// Words become commutative monomials.
CommPoly abelianize(const FreeStarPoly& p);

/// Multiplies out each word in A: [x_1 ⊙ ... ⊙ x_n] ↦ x_1 ⋯ x_n.
Element delta_collapse(const FreeStarPoly& p, const BlockAlgebra& a, const std::vector<Element>& gens);

/// Laxator on a word of product letters:
/// [(x_1 ⊗ y_1) ⊙ ... ⊙ (x_n ⊗ y_n)] ↦ [x_1 ⊙ ... ⊙ x_n] ⊗ [y_1 ⊙ ... ⊙ y_n].
std::pair<Word, Word> laxator(const std::vector<std::pair<Letter, Letter>>& word);

/// ev_x ↦ φ^op(x) multiplied out in the commutative algebra dom(φ).
/// Throws DomainError if dom(φ) is not commutative.
Element phi_natural(const CommPoly& p, const UMap& phi, const std::vector<Element>& gens);

/// ev_x ↦ ψ(x).
Complex evaluate_comm(const CommPoly& p, const StateOnAlgebra& psi, const std::vector<Element>& gens);

/// Parses text such as "2.0*ev[x1]*ev[x2] + i*ev[x3]^2 - (1+2i)*ev[x1*]".
/// Generator names index into `names`; ev[x*] is the starred symbol.
CommPoly parse_comm_poly(std::string_view src, const std::vector<std::string>& names);
std::string to_string(const CommPoly& p, const std::vector<std::string>& names);

}  // namespace icd
