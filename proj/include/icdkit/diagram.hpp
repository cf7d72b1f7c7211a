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

// String-diagram terms over a signature, their parser and printer, and the
// strict evaluator into UMaps.
//
// Grammar (';' is diagrammatic order, so "f ; g" means g ∘ f; '⊗' binds
// tighter than ';' and both associate to the left):
//
//   seq    ::= tensor (';' tensor)*
//   tensor ::= atom (('⊗' | '(x)') atom)*
//   atom   ::= 'id[' obj ']' | 'copy[' obj ']' | 'del[' obj ']'
//            | 'swap[' obj ',' obj ']' | 'inv(' seq ')' | ident | '(' seq ')'

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"

namespace icd {

/// A list of object names; the empty list is the monoidal unit.
using Wires = std::vector<std::string>;

struct Generator {
  Wires dom;
  Wires cod;
  UMap map;
};

/// Objects and generators available to terms. Immutable once built.
class Signature {
 public:
  void add_object(const std::string& name, BlockAlgebra a);
  /// Throws DomainError if the wire names are undeclared or if the map's
  /// algebras do not match the tensor of the wire algebras.
  void add_generator(const std::string& name, Wires dom, Wires cod, UMap map);

  bool has_object(const std::string& name) const { return objects_.count(name) != 0; }
  bool has_generator(const std::string& name) const { return generators_.count(name) != 0; }
  const BlockAlgebra& object(const std::string& name) const;
  const Generator& generator(const std::string& name) const;
  const std::map<std::string, BlockAlgebra>& objects() const { return objects_; }
  const std::map<std::string, Generator>& generators() const { return generators_; }

  /// Tensor of the named object algebras (C for no wires).
  BlockAlgebra algebra_of(const Wires& w) const;

 private:
  std::map<std::string, BlockAlgebra> objects_;
  std::map<std::string, Generator> generators_;
};

class DiagramTerm;
using TermPtr = std::shared_ptr<const DiagramTerm>;

namespace term {
struct Id { std::string obj; };
struct Gen { std::string name; };
struct Copy { std::string obj; };
struct Del { std::string obj; };
struct Swap { std::string a, b; };
/// outer ∘ inner; printed "inner ; outer".
struct Comp { TermPtr outer, inner; };
struct Tensor { TermPtr left, right; };
struct Invo { TermPtr body; };
}  // namespace term

class DiagramTerm {
 public:
  using Node = std::variant<term::Id, term::Gen, term::Copy, term::Del, term::Swap, term::Comp,
                            term::Tensor, term::Invo>;

  explicit DiagramTerm(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

TermPtr make_id(std::string obj);
TermPtr make_gen(std::string name);
TermPtr make_copy(std::string obj);
TermPtr make_del(std::string obj);
TermPtr make_swap(std::string a, std::string b);
TermPtr make_comp(TermPtr outer, TermPtr inner);
TermPtr make_tensor(TermPtr left, TermPtr right);
TermPtr make_invo(TermPtr body);

/// Structural equality.
bool equal(const DiagramTerm& a, const DiagramTerm& b);

struct WireType {
  Wires dom;
  Wires cod;
};

/// Throws DomainError on unknown names or mismatched wires.
WireType type_of(const DiagramTerm& t, const Signature& sig);

/// Parses and type-checks. Errors carry 1-based line and column.
TermPtr parse(std::string_view src, const Signature& sig);
/// Canonical text with minimal parentheses; parse(print(t)) reproduces t.
std::string print(const DiagramTerm& t);

/// Strict evaluation: associators and unitors are identities and the unit
/// C disappears from wire lists.
UMap evaluate(const DiagramTerm& t, const Signature& sig);

// Axiom suites for the copy/discard structure.

struct AxiomReport {
  double coassociativity = 0.0;
  double left_counit = 0.0;
  double right_counit = 0.0;
  /// ‖inv(copy) - swap∘copy‖ and ‖inv(del) - del‖.
  double involution_copy = 0.0;
  double involution_discard = 0.0;
  /// ‖copy_{A⊗B} - (id⊗swap⊗id)∘(copy_A⊗copy_B)‖ and its discard analogue.
  double monoidal_copy = 0.0;
  double monoidal_discard = 0.0;
  /// copy_C = id_C and del_C = id_C.
  double monoidal_unit = 0.0;
  /// ‖swap∘copy - copy‖; zero exactly for classical objects.
  double classicality = 0.0;
  bool classical = false;

  /// Largest residual over the ICD laws (classicality excluded).
  double max_law_residual() const;
};

/// Checks the laws for the canonical copy and discard of A, with the
/// monoidal laws taken against B.
AxiomReport check_axioms(const BlockAlgebra& a, const BlockAlgebra& b, double tol = kDefaultTol);
AxiomReport check_axioms(const BlockAlgebra& a, double tol = kDefaultTol);
/// Comonoid and involution laws for a user-supplied copy: A → A⊗A and
/// del: A → C. Monoidal fields are left at zero.
AxiomReport check_comonoid(const BlockAlgebra& a, const UMap& copy_map, const UMap& del_map,
                           double tol = kDefaultTol);

// Even/odd wrapper turning the ICD structure into a quantum CD-category.

enum class Parity { Even, Odd };

struct EvenOddMorphism {
  UMap base;
  Parity parity = Parity::Even;
};

EvenOddMorphism wrap_even(UMap f);
/// The odd identity id*, which plays the role of the star on A.
EvenOddMorphism star_morphism(const BlockAlgebra& a);
/// Returns the underlying map of an even morphism; throws DomainError on odd.
UMap unwrap_even(const EvenOddMorphism& m);

/// b ∘ a under the four composition rules.
EvenOddMorphism qcd_compose(const EvenOddMorphism& b, const EvenOddMorphism& a);
/// Defined for equal parities only; mixed parity throws DomainError.
EvenOddMorphism qcd_tensor(const EvenOddMorphism& a, const EvenOddMorphism& b);

}  // namespace icd
