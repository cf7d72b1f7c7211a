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

// JSON formats.
//
//   algebra   {"blocks": [2, 1]}
//   complex   [re, im] or a plain number
//   matrix    list of rows of complex entries
//   element   {"algebra": ..., "mats": [matrix per block]}
//   morphism  {"dom": ..., "cod": ..., "op_matrix": matrix}      (dim dom × dim cod)
//             {"dom": ..., "cod": ..., "kraus": [matrix, ...]}   (single blocks only)
//   state     {"algebra": ..., "densities": [weighted density per block]}
//   family    {"base": ..., "side": ..., "maxDegree": n, "states": [[density per block] per degree]}
//   measure   {"atoms": [{"weight": w, "psi": [density per block], "omega": [density per block]}]}
//   signature {"objects": {"A": algebra}, "generators": {"f": {"dom": "A" | ["A", ...], "cod": ..., <morphism matrix>}}}

#include <string>

#include <json.hpp>

#include "icdkit/algebra.hpp"
#include "icdkit/definetti.hpp"
#include "icdkit/diagram.hpp"
#include "icdkit/error.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/nullspace.hpp"
#include "icdkit/power.hpp"
#include "icdkit/state.hpp"

namespace icd {

using Json = nlohmann::json;

/// Malformed or incomplete JSON input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
Json load_json_arg(const std::string& arg);

BlockAlgebra algebra_from_json(const Json& j);
Json to_json(const BlockAlgebra& a);

Complex complex_from_json(const Json& j);
Json to_json(Complex z);
Matrix matrix_from_json(const Json& j);
Json to_json(const Matrix& m);

Element element_from_json(const Json& j);
Json to_json(const Element& x);

UMap morphism_from_json(const Json& j);
Json to_json(const UMap& f);

StateOnAlgebra state_from_json(const Json& j);
Json to_json(const StateOnAlgebra& s);

ExchangeableFamily family_from_json(const Json& j);
Json to_json(const ExchangeableFamily& fam);

MixingMeasure measure_from_json(const Json& j, const BlockAlgebra& base, const BlockAlgebra& side);
Json to_json(const MixingMeasure& mu);

Signature signature_from_json(const Json& j);

Json to_json(const NullspaceBasis& n);

}  // namespace icd
