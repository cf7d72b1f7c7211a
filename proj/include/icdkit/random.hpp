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

#include <random>
#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/state.hpp"

namespace icd {

using Rng = std::mt19937_64;

/// Entries with independent standard complex Gaussian parts.
Matrix random_matrix(Index rows, Index cols, Rng& rng);
Element random_element(const BlockAlgebra& a, Rng& rng);
Element random_selfadjoint(const BlockAlgebra& a, Rng& rng);
/// Random positive element of norm at most one.
Element random_effect(const BlockAlgebra& a, Rng& rng);

/// Random state; rank 0 means full rank in every block.
StateOnAlgebra random_state(const BlockAlgebra& a, Rng& rng, Index rank = 0);

struct RandomMapOptions {
  int max_kraus = 3;
  /// Probability that a (dom block, cod block) pair is left unconnected.
  double drop_probability = 0.0;
};

/// Random CPU map dom → cod built from Gaussian Kraus operators per block
/// pair, normalized so that φ^op(1) = 1.
UMap random_cpu_map(const BlockAlgebra& dom, const BlockAlgebra& cod, Rng& rng, const RandomMapOptions& opts = {});

/// Random block algebra with at most max_blocks blocks of size at most max_size.
BlockAlgebra random_algebra(Rng& rng, int max_blocks, int max_size);

}  // namespace icd
