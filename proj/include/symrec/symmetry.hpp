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
#include <string>
#include <vector>

#include "symrec/channel.hpp"
#include "symrec/random.hpp"

namespace symrec {

struct ChargeSpec {
  std::map<std::string, Matrix> local;  // subsystems without an entry carry zero charge
  SystemLayout input;
  SystemLayout output;

  Matrix total_input() const;
  Matrix total_output() const;
  /// Local charge of `label`, zero if absent.
  Matrix charge(const std::string& label) const;
};

ChargeSpec make_charge_spec(std::map<std::string, Matrix> local, SystemLayout input,
                            SystemLayout output);
Matrix total_charge(const std::map<std::string, Matrix>& local, const SystemLayout& layout);

struct ViolationReport {
  Matrix Z;
  double spread_DZ = 0.0;
};

ViolationReport conservation_check(const Matrix& u, const ChargeSpec& charges);

struct ChargeSector {
  double value = 0.0;
  Matrix basis;  // orthonormal columns spanning the eigenspace
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
  Matrix projector() const { return basis * basis.adjoint(); }
};

inline constexpr double kSectorGap = 1e-8;

/// Sectors in ascending eigenvalue order.
std::vector<ChargeSector> charge_sectors(const Matrix& x_total);

Matrix sample_block_haar(const std::vector<ChargeSector>& sectors, Rng& rng);
Matrix sample_block_haar(const std::vector<ChargeSector>& sectors, std::uint64_t seed);

inline constexpr int kCovarianceGrid = 16;

/// Max over a 16-point angle grid and all matrix units of the covariance
/// defect of ch with respect to (x_in, x_out).
double covariance_check(const QuantumChannel& ch, const Matrix& x_in, const Matrix& x_out,
                        int grid = kCovarianceGrid);

/// Erasure with a classical location register "C" prepended to the output.
QuantumChannel erasure_noise(const SystemLayout& physical, const std::vector<Vector>& reset_states);

struct CovariantErasure {
  QuantumChannel channel;
  std::vector<Vector> reset_states;
  std::vector<double> shifts;  // charge eigenvalue of each reset state
};

CovariantErasure covariant_erasure_noise(const SystemLayout& physical,
                                         const std::vector<Matrix>& local_charges);

}  // namespace symrec
