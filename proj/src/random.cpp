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

#include "icdkit/random.hpp"

#include <Eigen/Eigenvalues>

#include "icdkit/error.hpp"

namespace icd {

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Element random_element(const BlockAlgebra& a, Rng& rng) {
  std::vector<Matrix> mats;
  for (Index n : a.blocks()) mats.push_back(random_matrix(n, n, rng));
  return Element(a, std::move(mats));
}

Element random_selfadjoint(const BlockAlgebra& a, Rng& rng) {
  Element x = random_element(a, rng);
  return Complex(0.5) * (x + star(x));
}

Element random_effect(const BlockAlgebra& a, Rng& rng) {
  Element x = random_element(a, rng);
  Element p = star(x) * x;
  const double n = norm(p);
  if (n > 0) p *= Complex(1.0 / n);
  return p;
}

StateOnAlgebra random_state(const BlockAlgebra& a, Rng& rng, Index rank) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w;
  double total = 0;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    w.push_back(e(rng));
    total += w.back();
  }
  std::vector<Matrix> dens;
  for (Index b = 0; b < a.num_blocks(); ++b) {
    const Index n = a.block_size(b);
    const Index r = rank > 0 ? std::min(rank, n) : n;
    Matrix g = random_matrix(n, r, rng);
    Matrix d = g * g.adjoint();
    d *= Complex(w[static_cast<std::size_t>(b)] / total / d.trace().real());
    dens.push_back(0.5 * (d + d.adjoint()));
  }
  return StateOnAlgebra(a, std::move(dens));
}

UMap random_cpu_map(const BlockAlgebra& dom, const BlockAlgebra& cod, Rng& rng, const RandomMapOptions& opts) {
  if (dom.num_blocks() > 0 && cod.num_blocks() == 0) throw DomainError("random_cpu_map: no unital map into the zero algebra");
  std::uniform_int_distribution<int> nk(1, std::max(1, opts.max_kraus));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, std::max<Index>(0, cod.num_blocks() - 1));
  Matrix op = Matrix::Zero(dom.dim(), cod.dim());
  for (Index i = 0; i < dom.num_blocks(); ++i) {
    const Index n = dom.block_size(i);
    std::vector<char> keep(static_cast<std::size_t>(cod.num_blocks()));
    bool any = false;
    for (auto& k : keep) {
      k = u(rng) >= opts.drop_probability;
      any = any || k;
    }
    if (!any) keep[static_cast<std::size_t>(pick(rng))] = 1;
    std::vector<std::pair<Index, Matrix>> kraus;
    Matrix s = Matrix::Zero(n, n);
    Index rows = 0;
    auto add = [&](Index j) {
      Matrix k = random_matrix(cod.block_size(j), n, rng);
      s += k.adjoint() * k;
      rows += k.rows();
      kraus.emplace_back(j, std::move(k));
    };
    for (Index j = 0; j < cod.num_blocks(); ++j) {
      if (!keep[static_cast<std::size_t>(j)]) continue;
      const int count = nk(rng);
      for (int c = 0; c < count; ++c) add(j);
    }
    // S must be invertible.
    while (rows < n) add(kraus[static_cast<std::size_t>(rows) % kraus.size()].first);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()));
    const Matrix t = es.operatorInverseSqrt();
    for (auto& [j, k] : kraus) {
      k = k * t;
      const Index m = cod.block_size(j);
      for (Index r = 0; r < m; ++r)
        for (Index c = 0; c < m; ++c) {
          const Index col = cod.position(j, r, c);
          for (Index p = 0; p < n; ++p)
            for (Index q = 0; q < n; ++q) op(dom.position(i, p, q), col) += std::conj(k(r, p)) * k(c, q);
        }
    }
  }
  return UMap(dom, cod, std::move(op));
}

BlockAlgebra random_algebra(Rng& rng, int max_blocks, int max_size) {
  std::uniform_int_distribution<int> nb(1, max_blocks);
  std::uniform_int_distribution<Index> sz(1, max_size);
  std::vector<Index> blocks(static_cast<std::size_t>(nb(rng)));
  for (auto& b : blocks) b = sz(rng);
  return make_algebra(std::move(blocks));
}

}  // namespace icd
