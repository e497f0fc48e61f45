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
#include <vector>

#include "symrec/bounds.hpp"

namespace symrec {

enum class PsiKind { kMaxEntangled, kEigenMixture };
enum class PhiKind { kMaxEntangled, kSectorTruncated };

struct HPConfig {
  int k = 1;
  int N = 1;
  int l = 1;
  int s_window = 0;
  std::uint64_t seed = 0;
  int samples = 1;
  PsiKind psi = PsiKind::kEigenMixture;
  /// X_A eigenvalues mixed with equal weight; empty selects the default pair.
  std::vector<int> levels;
  PhiKind phi = PhiKind::kMaxEntangled;
  int probes = 16;
};

void validate_config(const HPConfig& c);
/// {3k/4, k/4} when 4 divides k, otherwise {0, k}.
std::vector<int> default_levels(int k);

/// Sum of diag(0,1) over `qubits` qubits.
Matrix qubit_charge(int qubits);

ScramblingInstance build_hp_instance(const HPConfig& c, Rng& rng);
ScramblingInstance build_hp_instance(const HPConfig& c);

struct ProbeRow {
  int sample = 0;
  int probe = 0;
  bool eigenstate = false;
  double x_A = 0.0;
  double x_Ap = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;   // absolute
  double normalized = 0.0;  // 2 |dev| / (M gamma), NaN when M gamma = 0
};

struct EquidistributionSample {
  double sup_deviation = 0.0;  // sup over states on supp(rho_A)
  double epsilon_hat = 0.0;    // NaN when M gamma = 0
  double conservation = 0.0;   // spread_DZ of U
  double bookkeeping = 0.0;    // || E*(X_A') + E*(X_B') - X_A - x_B ||
};

struct EquidistributionReport {
  double M = 0.0;
  double gamma = 0.0;
  double x_B = 0.0;
  bool normalized = true;  // false when M gamma = 0
  double epsilon_hat = 0.0;       // mean over samples
  double epsilon_hat_max = 0.0;
  double sup_deviation_mean = 0.0;
  std::vector<EquidistributionSample> samples;
  std::vector<ProbeRow> probes;
};

EquidistributionSample equidistribution_sample(const ScramblingInstance& inst, const HPConfig& c);
EquidistributionReport equidistribution_check(const HPConfig& c);

double concentration_bound(int n_total, int s, int l, double t);

struct TailRow {
  int probe = 0;
  double t = 0.0;
  double bound = 0.0;
  int exceed = 0;
  int samples = 0;
  double frequency = 0.0;
  double se = 0.0;
  bool pass = true;
};

struct ConcentrationReport {
  std::vector<double> mean_x_Ap;  // per probe, Monte Carlo
  std::vector<double> predicted;  // per probe
  std::vector<double> mean_se;
  std::vector<TailRow> rows;
  bool pass = true;
};

ConcentrationReport concentration_sweep(const HPConfig& c, const std::vector<double>& t_grid);

struct FoggyRow {
  int l = 0;
  int sample = 0;
  bool trivial = false;
  double M = 0.0;
  double gamma = 0.0;
  double F = 0.0;
  double epsilon_hat = 0.0;
  double epsilon_free = 0.0;
  double hp13 = 0.0;
  double hp14 = 0.0;
  double hp16 = 0.0;
  double siq1 = 0.0;
  double siq2 = 0.0;
  double delta_up = 1.0;
  double control_delta = 1.0;  // unrestricted Haar U, NaN when skipped
  double reference = 0.0;      // 2^-(l-k)
  bool pass = true;
};

struct FoggyReport {
  std::vector<FoggyRow> rows;
  bool l_independent = true;  // epsilon-free bound identical across l
  bool pass = true;
};

/// Sweeps `ls` (all of 1..N+k when empty) at fixed k and N; c.l is ignored.
FoggyReport foggy_mirror_experiment(const HPConfig& c, const std::vector<int>& ls = {}, bool control = true);

}  // namespace symrec
