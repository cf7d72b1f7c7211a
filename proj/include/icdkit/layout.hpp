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

#include <span>
#include <vector>

#include "icdkit/algebra.hpp"

namespace icd {

/// Basis bookkeeping for an iterated tensor product F_0 ⊗ F_1 ⊗ ... ⊗ F_{k-1},
/// bracketed to the left. Converts between a tuple of factor basis indices
/// and the position of the corresponding pure tensor of matrix units.
class TensorLayout {
 public:
  explicit TensorLayout(std::vector<BlockAlgebra> factors);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<BlockAlgebra>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  Index dim() const { return algebra_.dim(); }

  Index position(std::span<const Index> indices) const;
  /// Factor basis indices of the matrix unit at `pos`.
  std::span<const Index> indices(Index pos) const {
    return {decode_.data() + static_cast<std::size_t>(pos) * factors_.size(), factors_.size()};
  }

 private:
  std::vector<BlockAlgebra> factors_;
  BlockAlgebra algebra_;
  std::vector<std::vector<Index>> step_maps_;
  std::vector<Index> decode_;
};

/// Factor list A, ..., A (n times), followed by `side` unless it is C.
std::vector<BlockAlgebra> power_factors(const BlockAlgebra& a, int n, const BlockAlgebra& side);
/// A^{⊗n} ⊗ side; A^{⊗0} is C.
BlockAlgebra power_algebra(const BlockAlgebra& a, int n, const BlockAlgebra& side = complex_numbers());

/// Pure tensor x_0 ⊗ ... ⊗ x_{k-1}; the empty product is 1 ∈ C.
Element tensor_elements(std::span<const Element> xs);

}  // namespace icd
