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

#include <string>
#include <vector>

#include "symrec/tensor.hpp"

namespace symrec {

inline constexpr double kRankCutoff = 1e-12;

struct DensityMatrix {
  Matrix matrix;
  SystemLayout layout;
};

struct PureState {
  Vector amplitudes;
  SystemLayout layout;
};

/// Validates Hermiticity, positivity and unit trace within 1e-10.
DensityMatrix make_density(Matrix m, SystemLayout layout);
PureState make_pure(Vector v, SystemLayout layout);
DensityMatrix to_density(const PureState& psi);
SystemLayout single_system(const std::string& label, std::size_t dim);

double fidelity(const Matrix& rho, const Matrix& sigma);
/// F for a pure first argument: sqrt(<psi|sigma|psi>).
double fidelity(const Vector& psi, const Matrix& sigma);
double purified_distance(const Matrix& rho, const Matrix& sigma);
double purified_distance_from_fidelity(double f);

/// Purification on layout + reference of dimension rank(rho).
PureState purify(const DensityMatrix& rho, const std::string& reference_label = "ref");

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_deviation = 0.0;
};

double expectation(const Matrix& rho, const Matrix& x);
double variance(const Matrix& rho, const Matrix& x);
double variance(const Vector& psi, const Matrix& x);
Moments moments(const Matrix& rho, const Matrix& x);
double covariance(const Matrix& rho, const Matrix& x, const Matrix& y);

double qfi(const Matrix& rho, const Matrix& x);
RealMatrix qfi_matrix(const Matrix& rho, const std::vector<Matrix>& generators);

struct MinimalVarianceReference {
  PureState purification;  // system first, reference last
  Matrix reference_observable;
  double four_variance = 0.0;
};

MinimalVarianceReference minimal_variance_reference(const DensityMatrix& rho, const Matrix& x);

struct TradeoffCheck {
  double delta = 0.0;             // Tr[(rho - sigma) X]
  double distance = 0.0;
  double lhs = 0.0;               // |delta|
  double rhs = 0.0;               // D (sqrt Vr + sqrt Vs + |delta|)
  double lhs_squared = 0.0;       // delta^2
  double rhs_squared = 0.0;       // D^2 ((sqrt Vr + sqrt Vs)^2 + delta^2)
  bool satisfied = false;         // linear form
  bool satisfied_squared = false;
};

TradeoffCheck mvd_tradeoff_check(const Matrix& rho, const Matrix& sigma, const Matrix& x,
                                 double slack = 1e-9);

}  // namespace symrec
