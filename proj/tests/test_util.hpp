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

#include <cmath>
#include <complex>

#include "symrec/tensor.hpp"

namespace testutil {

using symrec::cplx;
using symrec::Matrix;
using symrec::Vector;

inline Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix pauli_x() { return mat2(0, 1, 1, 0); }
inline Matrix pauli_y() { return mat2(0, cplx(0, -1), cplx(0, 1), 0); }
inline Matrix pauli_z() { return mat2(1, 0, 0, -1); }
inline Matrix diag01() { return mat2(0, 0, 0, 1); }
inline Matrix hadamard() { return mat2(1, 1, 1, -1) / std::sqrt(2.0); }

inline Vector ket(std::size_t dim, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

}  // namespace testutil
