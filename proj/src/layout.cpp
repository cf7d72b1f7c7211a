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

#include "icdkit/layout.hpp"

#include "icdkit/error.hpp"

namespace icd {

TensorLayout::TensorLayout(std::vector<BlockAlgebra> factors) : factors_(std::move(factors)) {
  algebra_ = complex_numbers();
  for (const auto& f : factors_) {
    step_maps_.push_back(tensor_index_map(algebra_, f));
    algebra_ = tensor_algebra(algebra_, f);
  }
  const std::size_t k = factors_.size();
  decode_.assign(static_cast<std::size_t>(algebra_.dim()) * k, 0);
  std::vector<Index> idx(k, 0);
  Index total = algebra_.dim();
  for (Index count = 0; count < total; ++count) {
    const Index pos = position(idx);
    std::copy(idx.begin(), idx.end(), decode_.begin() + static_cast<std::ptrdiff_t>(pos * static_cast<Index>(k)));
    for (std::size_t t = k; t-- > 0;) {
      if (++idx[t] < factors_[t].dim()) break;
      idx[t] = 0;
    }
  }
}

Index TensorLayout::position(std::span<const Index> indices) const {
  if (indices.size() != factors_.size()) throw ShapeError("TensorLayout: wrong number of indices");
  Index pos = 0;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    pos = step_maps_[t][static_cast<std::size_t>(pos * factors_[t].dim() + indices[t])];
  }
  return pos;
}

std::vector<BlockAlgebra> power_factors(const BlockAlgebra& a, int n, const BlockAlgebra& side) {
  if (n < 0) throw DomainError("tensor power degree must be nonnegative");
  std::vector<BlockAlgebra> f(static_cast<std::size_t>(n), a);
  if (!(side == complex_numbers())) f.push_back(side);
  return f;
}

BlockAlgebra power_algebra(const BlockAlgebra& a, int n, const BlockAlgebra& side) {
  BlockAlgebra out = complex_numbers();
  for (const auto& f : power_factors(a, n, side)) out = tensor_algebra(out, f);
  return out;
}

Element tensor_elements(std::span<const Element> xs) {
  Element out = Element::unit(complex_numbers());
  for (const auto& x : xs) out = tensor_element(out, x);
  return out;
}

}  // namespace icd
