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

#include <doctest.h>

#include <vector>

#include "icdkit/algebra.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/random.hpp"

namespace testing {

inline std::vector<icd::BlockAlgebra> small_algebras() {
  return {icd::make_algebra({1}), icd::make_algebra({1, 1}), icd::make_algebra({2}),
          icd::make_algebra({1, 2}), icd::make_algebra({3}), icd::make_algebra({2, 2})};
}

/// Largest singular value, computed independently of icd::norm.
inline double op_norm(const icd::Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<icd::Matrix> svd(m);
  return svd.singularValues()(0);
}

inline icd::Matrix mat2(icd::Complex a, icd::Complex b, icd::Complex c, icd::Complex d) {
  icd::Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace testing
