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

#include "icdkit/io.hpp"

#include <fstream>
#include <sstream>

namespace icd {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<Matrix> densities_from_json(const Json& j, const BlockAlgebra& a) {
  if (!j.is_array()) throw InputError("expected a list of density matrices");
  std::vector<Matrix> out;
  for (const Json& m : j) out.push_back(matrix_from_json(m));
  if (static_cast<Index>(out.size()) != a.num_blocks())
    throw InputError("expected one density matrix per block of " + to_string(a));
  return out;
}

Json densities_to_json(const StateOnAlgebra& s) {
  Json out = Json::array();
  for (const Matrix& d : s.weighted_densities()) out.push_back(to_json(d));
  return out;
}

}  // namespace

Json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open '" + arg + "'");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

BlockAlgebra algebra_from_json(const Json& j) {
  const Json& b = field(j, "blocks");
  if (!b.is_array()) throw InputError("'blocks' must be a list");
  std::vector<Index> blocks;
  for (const Json& n : b) {
    if (!n.is_number_integer() || n.get<long long>() < 1) throw InputError("block sizes must be positive integers");
    blocks.push_back(n.get<Index>());
  }
  return make_algebra(std::move(blocks));
}

Json to_json(const BlockAlgebra& a) { return Json{{"blocks", a.blocks()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a complex number [re, im]");
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (list of rows)");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (const Json& r : j) {
    if (!r.is_array()) throw InputError("matrix rows must be lists");
    if (cols >= 0 && static_cast<Index>(r.size()) != cols) throw InputError("ragged matrix");
    cols = static_cast<Index>(r.size());
  }
  Matrix m(rows, std::max<Index>(cols, 0));
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Element element_from_json(const Json& j) {
  const BlockAlgebra a = algebra_from_json(field(j, "algebra"));
  const Json& mats = field(j, "mats");
  if (!mats.is_array()) throw InputError("'mats' must be a list");
  std::vector<Matrix> ms;
  for (const Json& m : mats) ms.push_back(matrix_from_json(m));
  return Element(a, std::move(ms));
}

Json to_json(const Element& x) {
  Json mats = Json::array();
  for (const Matrix& m : x.mats()) mats.push_back(to_json(m));
  return Json{{"algebra", to_json(x.parent())}, {"mats", mats}};
}

UMap morphism_from_json(const Json& j) {
  const BlockAlgebra dom = algebra_from_json(field(j, "dom"));
  const BlockAlgebra cod = algebra_from_json(field(j, "cod"));
  if (j.contains("op_matrix")) return UMap(dom, cod, matrix_from_json(j["op_matrix"]));
  if (j.contains("kraus")) {
    const Json& k = j["kraus"];
    if (!k.is_array()) throw InputError("'kraus' must be a list of matrices");
    std::vector<Matrix> ks;
    for (const Json& m : k) ks.push_back(matrix_from_json(m));
    return map_from_kraus(dom, cod, ks);
  }
  throw InputError("morphism needs 'op_matrix' or 'kraus'");
}

Json to_json(const UMap& f) {
  return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"op_matrix", to_json(f.op())}};
}

StateOnAlgebra state_from_json(const Json& j) {
  const BlockAlgebra a = algebra_from_json(field(j, "algebra"));
  return StateOnAlgebra(a, densities_from_json(field(j, "densities"), a));
}

Json to_json(const StateOnAlgebra& s) {
  return Json{{"algebra", to_json(s.parent())}, {"densities", densities_to_json(s)}};
}

ExchangeableFamily family_from_json(const Json& j) {
  ExchangeableFamily fam;
  fam.base = algebra_from_json(field(j, "base"));
  fam.side = j.contains("side") ? algebra_from_json(j["side"]) : complex_numbers();
  const Json& md = field(j, "maxDegree");
  if (!md.is_number_integer() || md.get<int>() < 0) throw InputError("'maxDegree' must be a nonnegative integer");
  fam.max_degree = md.get<int>();
  const Json& states = field(j, "states");
  if (!states.is_array() || static_cast<int>(states.size()) != fam.max_degree + 1)
    throw InputError("'states' must list one state per degree 0..maxDegree");
  for (int n = 0; n <= fam.max_degree; ++n) {
    const BlockAlgebra a = power_algebra(fam.base, n, fam.side);
    fam.states.emplace_back(a, densities_from_json(states[static_cast<std::size_t>(n)], a));
  }
  return fam;
}

Json to_json(const ExchangeableFamily& fam) {
  Json states = Json::array();
  for (const StateOnAlgebra& s : fam.states) states.push_back(densities_to_json(s));
  return Json{{"base", to_json(fam.base)},
              {"side", to_json(fam.side)},
              {"maxDegree", fam.max_degree},
              {"states", states}};
}

MixingMeasure measure_from_json(const Json& j, const BlockAlgebra& base, const BlockAlgebra& side) {
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array() || atoms.empty()) throw InputError("'atoms' must be a nonempty list");
  MixingMeasure mu;
  for (const Json& at : atoms) {
    MixingAtom a;
    const Json& w = field(at, "weight");
    if (!w.is_number()) throw InputError("atom weight must be a number");
    a.weight = w.get<double>();
    a.psi = StateOnAlgebra(base, densities_from_json(field(at, "psi"), base));
    a.omega = at.contains("omega") ? StateOnAlgebra(side, densities_from_json(at["omega"], side))
                                   : StateOnAlgebra::tracial(side);
    mu.atoms.push_back(std::move(a));
  }
  return mu;
}

Json to_json(const MixingMeasure& mu) {
  Json atoms = Json::array();
  for (const MixingAtom& a : mu.atoms)
    atoms.push_back(Json{{"weight", a.weight}, {"psi", densities_to_json(a.psi)}, {"omega", densities_to_json(a.omega)}});
  return Json{{"atoms", atoms}};
}

namespace {

Wires wires_from_json(const Json& j) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw InputError("wire type must be an object name or a list of names");
  Wires w;
  for (const Json& s : j) {
    if (!s.is_string()) throw InputError("wire names must be strings");
    w.push_back(s.get<std::string>());
  }
  return w;
}

}  // namespace

Signature signature_from_json(const Json& j) {
  Signature sig;
  const Json& objs = field(j, "objects");
  if (!objs.is_object()) throw InputError("'objects' must map names to algebras");
  for (const auto& [name, a] : objs.items()) sig.add_object(name, algebra_from_json(a));
  if (j.contains("generators")) {
    const Json& gens = j["generators"];
    if (!gens.is_object()) throw InputError("'generators' must map names to morphisms");
    for (const auto& [name, g] : gens.items()) {
      Wires dom = wires_from_json(field(g, "dom"));
      Wires cod = wires_from_json(field(g, "cod"));
      Json m = g;
      m["dom"] = to_json(sig.algebra_of(dom));
      m["cod"] = to_json(sig.algebra_of(cod));
      sig.add_generator(name, std::move(dom), std::move(cod), morphism_from_json(m));
    }
  }
  return sig;
}

Json to_json(const NullspaceBasis& n) {
  Json basis = Json::array();
  for (const Element& x : n.basis) {
    Json mats = Json::array();
    for (const Matrix& m : x.mats()) mats.push_back(to_json(m));
    basis.push_back(mats);
  }
  return Json{{"kind", to_string(n.kind)},
              {"algebra", to_json(n.parent)},
              {"dimension", n.dim()},
              {"ideal_residual", n.ideal_residual},
              {"basis", basis}};
}

}  // namespace icd
