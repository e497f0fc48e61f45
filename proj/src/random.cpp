// Copyright 2026 The symrec Authors
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

#include "symrec/random.hpp"

#include <cmath>

namespace symrec {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = complex_normal(rng);
  return g;
}

Matrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  require(rows >= cols, ErrorCode::kInvalidArgument, "haar_isometry: rows < cols");
  const Matrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix haar_unitary(std::size_t dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

Vector random_pure(std::size_t dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_density(std::size_t dim, Rng& rng) { return random_density(dim, dim, rng); }

Matrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

Matrix random_hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  return hermitian_part(g);
}

}  // namespace symrec
