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

#include "symrec/bounds.hpp"

namespace symrec {

/// Largest M built with dense matrices; larger M use the sparse path only.
inline constexpr int kDenseAlleviationMax = 32;

struct AlleviationInstance {
  int M = 1;
  ScramblingInstance instance;
  QuantumChannel recovery;  // R_V on [A', R_B]
};

AlleviationInstance build_alleviation_instance(int M);

/// Closed-form error of R_V, following the permuted basis vectors directly.
double alleviation_error_sparse(int M);

struct AlleviationReport {
  int M = 1;
  double expected_error = 0.0;  // 1 / sqrt(2M + 1)
  double error_sparse = 0.0;
  double error_dense = 0.0;     // NaN above the dense limit
  double A_single = 0.0;
  double delta_plus = 0.0;
  double F = 0.0;
  double F_expected = 0.0;      // 4 V of X_B on the uniform 2M+1 window
  double siq1 = 0.0;
  double conservation = 0.0;    // NaN above the dense limit
  double bitflip_defect = 0.0;  // NaN above the dense limit
  double seesaw_error = 0.0;    // NaN unless requested
  bool below_A_over_8 = false;  // error < 1/16
  bool pass = false;
};

AlleviationReport verify_alleviation(int M, bool seesaw = false, std::uint64_t seed = 0);

}  // namespace symrec
