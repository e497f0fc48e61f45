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

#pragma once

#include <cstdint>
#include <random>

#include "symrec/tensor.hpp"

namespace symrec {

using Rng = std::mt19937_64;

/// Derives an independent stream for task `index` from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

cplx complex_normal(Rng& rng);
Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random unitary on dimension `dim` (QR with the diagonal phase fix).
Matrix haar_unitary(std::size_t dim, Rng& rng);
/// Haar-random isometry with `rows` >= `cols`.
Matrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);

Vector random_pure(std::size_t dim, Rng& rng);
/// Full-rank random state drawn from the Hilbert-Schmidt (Wishart) ensemble.
Matrix random_density(std::size_t dim, Rng& rng);
Matrix random_density(std::size_t dim, std::size_t rank, Rng& rng);
Matrix random_hermitian(std::size_t dim, Rng& rng);

}  // namespace symrec
