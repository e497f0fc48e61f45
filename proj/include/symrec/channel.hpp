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

#include "symrec/states.hpp"

namespace symrec {

/// CPTP map in Stinespring form. Rows of `isometry` index output (most
/// significant) then environment.
struct QuantumChannel {
  Matrix isometry;
  SystemLayout input;
  SystemLayout output;
  SystemLayout environment;
};

QuantumChannel make_channel(Matrix isometry, SystemLayout input, SystemLayout output,
                            SystemLayout environment);
/// Environment is a single subsystem `env_label` of dimension kraus.size().
QuantumChannel channel_from_kraus(const std::vector<Matrix>& kraus, SystemLayout input,
                                  SystemLayout output, const std::string& env_label = "E");
QuantumChannel identity_channel(const SystemLayout& layout);
QuantumChannel unitary_channel(const Matrix& u, const SystemLayout& layout);
/// second after first; the environment is merged into one subsystem "E".
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);

std::vector<Matrix> kraus_operators(const QuantumChannel& ch);
/// Heisenberg-picture image of an output observable.
Matrix adjoint_map(const QuantumChannel& ch, const Matrix& observable);
Matrix apply_map(const QuantumChannel& ch, const Matrix& rho);
Matrix complementary_map(const QuantumChannel& ch, const Matrix& rho);

/// Applies ch to the input subsystems of rho, acting as identity on
/// `spectators`. The result's layout is ch.output followed by the
/// spectators in their original order.
DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho,
                            const std::vector<std::string>& spectators);

}  // namespace symrec
