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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symrec/recovery.hpp"

namespace symrec {

enum class BoundKind {
  kSIQ1, kSIQ2, kSIQ1P, kRSIQ1, kRSIQ2, kVSIQ1, kVSIQ2,
  kSIQV1, kSIQV2, kRSIQV1, kRSIQV2,
  kMSIQ1, kMSIQ2, kMSIQ1P,
  kEK17, kHP13, kHP14, kHP16,
};

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);

/// Operator K' on A with Delta_j = Tr(rho_j K').
Matrix fluctuation_operator(const ScramblingInstance& inst, const Matrix& x_a, const Matrix& x_ap);
double delta_j(const ScramblingInstance& inst, const Matrix& rho_j);

double operator_spread(const Matrix& x);

enum class FluctuationStrategy { kSpectral, kEigen, kRandomEnsembles, kTwoTermSearch };

std::string to_string(FluctuationStrategy s);
FluctuationStrategy parse_strategy(const std::string& name);

struct FluctuationOptions {
  FluctuationStrategy strategy = FluctuationStrategy::kSpectral;
  std::uint64_t seed = 0;
  int ensembles = 64;   // random_ensembles: number of sampled ensembles
  int max_terms = 8;    // random_ensembles: terms per ensemble
  int restarts = 200;   // two_term_search
};

struct FluctuationReport {
  FluctuationStrategy strategy = FluctuationStrategy::kSpectral;
  double A_single = 0.0;
  double A_sum = 0.0;
  double A_two = 0.0;
  double A_two_upper = 0.0;  // dual value (spectral strategy only)
  double A_var = 0.0;
  double delta_max = 0.0;
  double delta_plus = 0.0;
  std::vector<double> deltas;  // per term of `decomposition`
  Decomposition decomposition;  // supplied one, else the A_sum witness
  Decomposition witness_single;
  Decomposition witness_sum;
  Decomposition witness_two;
};

FluctuationReport dynamical_fluctuation(const ScramblingInstance& inst, const FluctuationOptions& options = {},
                                        const Decomposition* decomposition = nullptr);

/// Eigenspace decomposition of rho_A along X_A; requires [rho_A, X_A] = 0.
Decomposition eigen_decomposition(const ScramblingInstance& inst);

struct DeltaInterval {
  double lower = 0.0;
  double upper = 1.0;
};

struct InstanceTerms {
  FluctuationReport fluctuation;
  double F = 0.0;      // 4 V(X_B) on phi_BRB
  double F_f = 0.0;    // 4 V(X_B') on a purification of the final B'
  double F_B = 0.0;    // qfi(rho_B, X_B)
  double D_XA = 0.0;
  double D_XAp = 0.0;
  double V_A = 0.0;    // V_{rho_A}(X_A)
  double V_Ap = 0.0;   // V_{E(rho_A)}(X_A')
  double B = 0.0;      // sum Delta_j^2 / 2 + 8 (V_A + V_Ap)
};

InstanceTerms instance_terms(const ScramblingInstance& inst, const FluctuationOptions& options = {},
                             const Decomposition* decomposition = nullptr);

struct BoundReport {
  BoundKind kind = BoundKind::kSIQ1;
  double lhs = 0.0;          // implied lower bound on the error
  double rhs = 0.0;          // error upper estimate it is compared against
  DeltaInterval delta;
  std::map<std::string, double> terms;
  RealMatrix matrix;         // matrix kinds: F + B - A_V / (8 delta^2)
  double margin = 0.0;       // rhs - lhs, or min eigenvalue of `matrix`
  bool satisfied = true;
  bool applicable = true;
  std::string note;
};

inline constexpr double kBoundSlack = 1e-6;

/// Scalar bounds. SIQ1P is compared against `delta_tilde`; the violated
/// kinds need `violation`.
BoundReport evaluate_bound(BoundKind kind, const InstanceTerms& terms, const DeltaInterval& delta,
                           const DeltaInterval& delta_tilde, const ViolationReport* violation = nullptr);

/// Convenience path: computes the terms and both seesaw upper bounds.
BoundReport evaluate_bound(BoundKind kind, const ScramblingInstance& inst, std::uint64_t seed,
                           const Decomposition* decomposition = nullptr,
                           const ViolationReport* violation = nullptr);

struct GeneratorSet {
  std::vector<Matrix> A, B, Ap, Bp;
};

BoundReport evaluate_matrix_bound(BoundKind kind, const ScramblingInstance& inst, const GeneratorSet& generators,
                                  const Decomposition& decomposition, const DeltaInterval& delta,
                                  const DeltaInterval& delta_tilde);

struct EastinKnill {
  double value = 0.0;
  double variant = 0.0;  // coefficient 1/2 form
};

EastinKnill eastin_knill_bound(double d_xl, double d_max, int n);

struct HPConfigStats {
  int k = 1;
  int N = 1;
  int l = 1;
  double M = 0.0;
  double epsilon = 0.0;
  double F = 0.0;
};

std::vector<BoundReport> hp_bounds(const HPConfigStats& stats, const DeltaInterval& delta);

}  // namespace symrec
