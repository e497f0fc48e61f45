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
#include <string>
#include <utility>
#include <vector>

#include "symrec/channel.hpp"
#include "symrec/random.hpp"
#include "symrec/symmetry.hpp"

namespace symrec {

namespace labels {
inline const std::string kA = "A";
inline const std::string kRA = "R_A";
inline const std::string kB = "B";
inline const std::string kRB = "R_B";
inline const std::string kAp = "A'";
inline const std::string kBp = "B'";
}  // namespace labels

/// psi on [A, R_A], phi on [B, R_B], U maps [A, B] onto `output` = [A', B'].
struct ScramblingInstance {
  PureState psi;
  PureState phi;
  Matrix U;
  SystemLayout output;
  ChargeSpec charges;

  std::size_t dim_A() const { return psi.layout.dim_of(labels::kA); }
  std::size_t dim_RA() const { return psi.layout.dim_of(labels::kRA); }
  std::size_t dim_B() const { return phi.layout.dim_of(labels::kB); }
  std::size_t dim_RB() const { return phi.layout.dim_of(labels::kRB); }
  std::size_t dim_Ap() const { return output.dim_of(labels::kAp); }
  std::size_t dim_Bp() const { return output.dim_of(labels::kBp); }
  SystemLayout input() const;
};

ScramblingInstance make_instance(PureState psi, PureState phi, Matrix u, SystemLayout output,
                                 ChargeSpec charges);

Matrix rho_A(const ScramblingInstance& inst);
Matrix rho_B(const ScramblingInstance& inst);

/// Stinespring channel from A with the requested output labels drawn from
/// {A', B', R_B}; the remaining ones form the environment (in that order).
QuantumChannel instance_channel(const ScramblingInstance& inst, const std::vector<std::string>& outputs);
/// E : A -> A'.
QuantumChannel induced_channel(const ScramblingInstance& inst);

struct ScrambleResult {
  PureState global;  // [A', B', R_A, R_B]
  Matrix rho_Ap;
  Matrix rho_Bp;
  Matrix rho_ApRB;   // [A', R_B]
  Matrix rho_RABp;   // [R_A, B']
};

ScrambleResult scramble(const ScramblingInstance& inst);

QuantumChannel petz_recovery(const QuantumChannel& ch, const Matrix& prior);

enum class RecoveryMode { kWithRB, kWithoutRB };

struct RecoveryResult {
  QuantumChannel recovery;
  double achieved_error = 1.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;
  double petz_error = 1.0;
};

inline constexpr int kSeesawMaxIters = 500;
inline constexpr int kSeesawRestarts = 3;

/// Purified distance between psi and (R x id)(final state) for a recovery
/// R taking [A', R_B] (with) or [A'] (without) to A.
double recovery_error(const ScramblingInstance& inst, const QuantumChannel& recovery, RecoveryMode mode);

RecoveryResult optimize_recovery(const ScramblingInstance& inst, RecoveryMode mode, std::uint64_t seed,
                                 int max_iters = kSeesawMaxIters);

struct WorstInput {
  double min_fidelity2 = 1.0;
  Matrix rho;
};

/// Minimises sum_k |Tr(G_k rho)|^2 over density matrices (Frank-Wolfe with
/// exact line search); starts from I/d and `restarts` random states.
WorstInput worst_case_input(const std::vector<Matrix>& g, Rng& rng, int restarts = 8);

struct ImplementationErrorReport {
  double estimate = 0.0;             // max over sampled inputs (lower bound on the true max)
  double maximally_entangled = 0.0;  // value on the maximally entangled input
  Matrix worst_input;                // reduced state on A of the worst input
};

ImplementationErrorReport implementation_error(const Matrix& u_target, const ScramblingInstance& inst,
                                               std::uint64_t seed = 0);

struct CodeErrorReport {
  double estimate = 1.0;             // worst-case error of the best recovery found
  double maximally_entangled = 1.0;  // error of the best recovery on the maximally entangled input
  int rounds = 0;
  QuantumChannel recovery;
};

inline constexpr int kCodeErrorRounds = 20;

CodeErrorReport code_error(const QuantumChannel& code, const QuantumChannel& noise, std::uint64_t seed = 0,
                           int rounds = kCodeErrorRounds);

struct DecouplingReport {
  double centred_sum = 0.0;
  std::vector<double> per_term;
  double sigma_sum = 0.0;
  Matrix sigma;
};

using Decomposition = std::vector<std::pair<double, Matrix>>;

void validate_decomposition(const Decomposition& d, const Matrix& rho_a);
DecouplingReport decoupling_residuals(const ScramblingInstance& inst, const Decomposition& decomposition);

double avg_from_entanglement_fidelity(double f_ent2, int d_q);

}  // namespace symrec
