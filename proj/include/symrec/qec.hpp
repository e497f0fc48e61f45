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
#include <vector>

#include "symrec/bounds.hpp"

namespace symrec {

struct CodeSpec {
  std::string name;
  QuantumChannel code;              // isometry L -> P_1 ... P_N
  Matrix x_logical;
  std::vector<Matrix> x_physical;   // one per physical subsystem
};

CodeSpec make_code_spec(std::string name, const Matrix& isometry, SystemLayout logical, SystemLayout physical,
                        Matrix x_logical, std::vector<Matrix> x_physical);

/// Qubit into three qubits, logical states rotated inside the charge-1 and
/// charge-2 sectors by `theta`. Covariant for every theta.
CodeSpec phase_covariant_code(double theta);
/// |0> -> |000>, |1> -> |111>; not covariant for X_L = diag(0,1).
CodeSpec repetition_code();
/// Two charge-2 codewords of the [[4,2,2]] code; corrects one erasure, X_L = 0.
CodeSpec four_two_two_code();
/// Identity on a single qubit.
CodeSpec trivial_code();

/// "phase:<theta>", "repetition", "kl422" or "trivial".
CodeSpec builtin_code(const std::string& name);

/// Code file: {"name", "logical": [{"label","dim"}], "physical": [...],
/// "isometry": {"real": [[..]], "imag": [[..]]}, "charges": {"logical": M,
/// "physical": [M, ...]}} where M is {"real","imag"}, {"diag": [..]} or a real
/// nested array.
CodeSpec parse_code_json(const std::string& text);
std::string code_to_json(const CodeSpec& spec);

/// Unitary W with N o C = W (N~ o C) W^dagger, acting on [C, P_1 ... P_N].
Matrix erasure_equivalence(const SystemLayout& physical, const std::vector<Vector>& from,
                           const std::vector<Vector>& to);

struct AuditReport {
  std::string name;
  int N = 0;
  double covariance_deviation = 0.0;
  bool applicable = true;          // covariance_deviation <= 1e-6
  double D_XL = 0.0;
  double D_max = 0.0;
  EastinKnill bound;
  std::vector<double> trial_estimates;
  double delta_C = 1.0;            // best trial estimate
  double delta_C_max_entangled = 1.0;
  double noise_tp_defect = 0.0;
  double noise_covariance = 0.0;
  std::vector<double> shifts;
  double w_defect = 0.0;           // || N o C - W (N~ o C) W^dagger || on matrix units
  double delta_C_plain = 1.0;      // recovery o W^dagger against N o C
  bool w_equivalent = true;
  bool consistent = true;          // bound <= delta_C + 1e-6
};

inline constexpr double kCovarianceTol = 1e-6;

AuditReport audit_code(const CodeSpec& spec, int trials = 1, std::uint64_t seed = 0);

}  // namespace symrec
