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
#include <variant>
#include <vector>

#include "symrec/hp_model.hpp"
#include "symrec/qec.hpp"
#include "symrec/showcase.hpp"

namespace symrec {

inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a(const std::string& text);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Result table. Every table starts with schema_version, seed and
/// instance_hash; doubles are written with 12 significant digits.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  /// `cells` covers the columns after the three leading ones.
  void add(std::uint64_t seed, const std::string& descriptor, std::vector<Cell> cells);
  std::string csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_cell(const Cell& c);

struct ExperimentResult {
  std::string command;
  std::uint64_t seed = 0;
  Table table;
  std::map<std::string, double> aggregates;
  int violations = 0;
  std::string json() const;
};

/// Random instance conserving sum_i w_i |1><1|_i with w_i in {1, 2}: k qubits
/// in A and N in B (each at most `max_qubits`), block-Haar U, random pure psi
/// and phi with full-rank references, 1 <= l < k + N.
struct RandomInstance {
  ScramblingInstance instance;
  int k = 1, N = 1, l = 1;
  std::vector<int> weights;
  std::string descriptor;
};

RandomInstance random_conserving_instance(std::uint64_t seed, int max_qubits = 2);

ExperimentResult run_verify(const std::string& suite, int trials, std::uint64_t seed);

enum class HPMode { kEquidistribution, kConcentration, kFoggy };
HPMode parse_hp_mode(const std::string& name);

struct HPRunOptions {
  HPConfig config;
  HPMode mode = HPMode::kFoggy;
  std::vector<double> t_grid{0.05, 0.1, 0.25, 0.5, 1.0, 2.0};
  std::vector<int> l_sweep;  // foggy: empty sweeps 1..N+k
  bool control = true;
};

ExperimentResult run_hp(const HPRunOptions& options);
ExperimentResult run_example(const std::vector<int>& Ms, bool seesaw, std::uint64_t seed);
/// `code` is a JSON code file's text, or "builtin:<name>", or
/// "family:phase" for the shipped phase-covariant family.
ExperimentResult run_qec(const std::string& code, int trials, std::uint64_t seed);
/// `inputs` is JSON; bare keys such as {dxl:1,dmax:1,n:3} are accepted.
ExperimentResult run_bound(const std::string& kind, const std::string& inputs);

}  // namespace symrec
