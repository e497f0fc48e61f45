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

#include "symrec/showcase.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace symrec {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// U on (a, k) with k in [-3M, 3M]
std::pair<int, int> apply_u(int M, int a, int k) {
  if (a == 0 && k >= -2 * M && k <= 2 * M) return {1, k - 1};
  if (a == 1 && k >= -2 * M - 1 && k <= 2 * M - 1) return {0, k + 1};
  return {a, k};
}

// V on (a, r) with r in [-3M, 3M]
std::pair<int, int> apply_v(int M, int a, int r) {
  if (a == 1) return r == -3 * M ? std::pair{0, 3 * M} : std::pair{0, r - 1};
  return r == 3 * M ? std::pair{1, -3 * M} : std::pair{1, r + 1};
}

Matrix permutation(int M, std::pair<int, int> (*f)(int, int, int)) {
  const int d = 6 * M + 1;
  Matrix p = Matrix::Zero(2 * d, 2 * d);
  for (int a = 0; a < 2; ++a)
    for (int k = -3 * M; k <= 3 * M; ++k) {
      const auto [b, j] = f(M, a, k);
      p(b * d + j + 3 * M, a * d + k + 3 * M) = 1.0;
    }
  return p;
}

}  // namespace

AlleviationInstance build_alleviation_instance(int M) {
  require(M >= 1, ErrorCode::kInvalidArgument, "alleviation: M must be at least 1");
  const int d = 6 * M + 1;
  const auto ud = static_cast<std::size_t>(d);
  require_within_cap(2 * ud, "alleviation: dim(AB)");
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  Vector phi = Vector::Zero(d * d);
  for (int k = -M; k <= M; ++k) phi((k + 3 * M) * d + k + 3 * M) = 1.0 / std::sqrt(2.0 * M + 1.0);

  Matrix xa = Matrix::Zero(2, 2);
  xa(1, 1) = 1.0;
  Matrix xb = Matrix::Zero(d, d);
  for (int k = -3 * M; k <= 3 * M; ++k) xb(k + 3 * M, k + 3 * M) = k;
  const SystemLayout in({{labels::kA, 2}, {labels::kB, ud}});
  const SystemLayout out({{labels::kAp, 2}, {labels::kBp, ud}});
  auto charges = make_charge_spec({{labels::kA, xa}, {labels::kB, xb}, {labels::kAp, xa}, {labels::kBp, xb}}, in, out);

  AlleviationInstance a;
  a.M = M;
  a.instance = make_instance(make_pure(psi, SystemLayout({{labels::kA, 2}, {labels::kRA, 2}})),
                             make_pure(phi, SystemLayout({{labels::kB, ud}, {labels::kRB, ud}})),
                             permutation(M, apply_u), out, std::move(charges));
  a.recovery = make_channel(permutation(M, apply_v), SystemLayout({{labels::kAp, 2}, {labels::kRB, ud}}),
                            single_system(labels::kA, 2), single_system("E", ud));
  return a;
}

double alleviation_error_sparse(int M) {
  require(M >= 1, ErrorCode::kInvalidArgument, "alleviation: M must be at least 1");
  // amplitudes keyed by (a, r_a, b, r_b) after U then V
  std::map<std::tuple<int, int, int, int>, double> state;
  const double amp = 1.0 / std::sqrt(2.0 * (2.0 * M + 1.0));
  for (int a = 0; a < 2; ++a)
    for (int k = -M; k <= M; ++k) {
      const auto [a1, b1] = apply_u(M, a, k);
      const auto [a2, r2] = apply_v(M, a1, k);
      state[{a2, a, b1, r2}] += amp;
    }
  // <psi| Tr_{B R_B}[.] |psi> with psi = (|00> + |11>)/sqrt 2
  std::map<std::pair<int, int>, double> overlap;
  for (const auto& [key, v] : state) {
    const auto [a, ra, b, rb] = key;
    if (a == ra) overlap[{b, rb}] += v / std::sqrt(2.0);
  }
  double f2 = 0.0;
  for (const auto& [key, v] : overlap) f2 += v * v;
  return std::sqrt(std::max(0.0, 1.0 - f2));
}

AlleviationReport verify_alleviation(int M, bool seesaw, std::uint64_t seed) {
  require(M >= 1, ErrorCode::kInvalidArgument, "alleviation: M must be at least 1");
  AlleviationReport r;
  r.M = M;
  r.expected_error = 1.0 / std::sqrt(2.0 * M + 1.0);
  r.error_sparse = alleviation_error_sparse(M);
  r.F_expected = 4.0 * (M * (M + 1.0) / 3.0);
  r.error_dense = r.conservation = r.bitflip_defect = r.seesaw_error = kNaN;
  bool ok = std::abs(r.error_sparse - r.expected_error) <= 1e-9;
  if (M <= kDenseAlleviationMax) {
    const auto a = build_alleviation_instance(M);
    const auto& inst = a.instance;
    r.error_dense = recovery_error(inst, a.recovery, RecoveryMode::kWithRB);
    r.conservation = conservation_check(inst.U, inst.charges).spread_DZ;
    const auto e = induced_channel(inst);
    r.bitflip_defect = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix in = Matrix::Zero(2, 2), want = Matrix::Zero(2, 2);
        in(i, j) = 1.0;
        if (i == j) want(1 - i, 1 - i) = 1.0;
        r.bitflip_defect = std::max(r.bitflip_defect, (apply_map(e, in) - want).cwiseAbs().maxCoeff());
      }
    const auto t = instance_terms(inst);
    r.A_single = t.fluctuation.A_single;
    r.delta_plus = t.fluctuation.delta_plus;
    r.F = t.F;
    if (seesaw) r.seesaw_error = optimize_recovery(inst, RecoveryMode::kWithRB, seed).achieved_error;
    ok = ok && std::abs(r.error_dense - r.expected_error) <= 1e-9 && r.conservation <= 1e-10 &&
         r.bitflip_defect <= 1e-10 && std::abs(r.A_single - 0.5) <= 1e-12 &&
         std::abs(r.delta_plus - 1.0) <= 1e-12 && std::abs(r.F - r.F_expected) <= 1e-9 * r.F_expected;
    if (seesaw) ok = ok && r.seesaw_error <= r.error_dense + kBoundSlack;
  } else {
    // rho_A = I/2 and the bit flip fix A = 1/2; X_A = X_A' = |1><1| fixes Delta_+ = 1
    r.A_single = 0.5;
    r.delta_plus = 1.0;
    r.F = r.F_expected;
  }
  r.siq1 = r.A_single / (2.0 * (std::sqrt(r.F) + 4.0 * r.delta_plus));
  const double err = std::isnan(r.error_dense) ? r.error_sparse : r.error_dense;
  r.below_A_over_8 = err < r.A_single / 8.0;
  r.pass = ok && r.siq1 <= err + kBoundSlack;
  return r;
}

}  // namespace symrec
