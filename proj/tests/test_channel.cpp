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

#include <doctest.h>

#include <numbers>

#include "symrec/bounds.hpp"
#include "symrec/error.hpp"
#include "symrec/experiments.hpp"
#include "symrec/hp_model.hpp"
#include "symrec/qec.hpp"
#include "symrec/random.hpp"
#include "test_util.hpp"

using namespace symrec;
using namespace testutil;

namespace {

std::vector<Matrix> kraus_from_isometry(const Matrix& v, Eigen::Index dout, Eigen::Index denv) {
  std::vector<Matrix> ks;
  for (Eigen::Index e = 0; e < denv; ++e) {
    Matrix k(dout, v.cols());
    for (Eigen::Index o = 0; o < dout; ++o) k.row(o) = v.row(o * denv + e);
    ks.push_back(k);
  }
  return ks;
}

QuantumChannel depolarizing() {
  const SystemLayout q = single_system("Q", 2);
  return channel_from_kraus({identity(2) / 2.0, pauli_x() / 2.0, pauli_y() / 2.0, pauli_z() / 2.0}, q, q);
}

// A and B qubits, A' = A, B' = B, no charges.
ScramblingInstance plain_instance(const Matrix& u, const Vector& psi, const Vector& phi, std::size_t drb) {
  const SystemLayout in({{labels::kA, 2}, {labels::kB, 2}});
  const SystemLayout out({{labels::kAp, 2}, {labels::kBp, 2}});
  return make_instance(make_pure(psi, SystemLayout({{labels::kA, 2}, {labels::kRA, 2}})),
                       make_pure(phi, SystemLayout({{labels::kB, 2}, {labels::kRB, drb}})), u, out,
                       make_charge_spec({}, in, out));
}

RandomInstance instance_with_sizes(int k, int n, std::uint64_t start) {
  for (std::uint64_t s = start;; ++s) {
    auto r = random_conserving_instance(s);
    if (r.k == k && r.N == n) return r;
  }
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("identity channel leaves states unchanged") {
  Rng rng(1);
  const Matrix rho = random_density(3, rng);
  CHECK(max_diff(apply_map(identity_channel(single_system("S", 3)), rho), rho) < 1e-14);
}

TEST_CASE("full depolarizing maps every input to I/2") {
  Rng rng(2);
  for (int t = 0; t < 5; ++t) CHECK(max_diff(apply_map(depolarizing(), random_density(2, rng)), identity(2) / 2.0) < 1e-14);
}

TEST_CASE("isometry channel agrees with the Kraus sum") {
  Rng rng(3);
  const Matrix v = haar_isometry(6, 2, rng);
  const auto ch = make_channel(v, single_system("I", 2), single_system("O", 2), single_system("E", 3));
  const auto ks = kraus_from_isometry(v, 2, 3);
  const Matrix rho = random_density(2, rng);
  Matrix oracle = Matrix::Zero(2, 2);
  for (const auto& k : ks) oracle += k * rho * k.adjoint();
  CHECK(max_diff(apply_map(ch, rho), oracle) < 1e-10);

  const Matrix joint = random_density(6, rng);
  Matrix joint_oracle = Matrix::Zero(6, 6);
  for (const auto& k : ks) joint_oracle += kron(k, identity(3)) * joint * kron(k, identity(3)).adjoint();
  const auto out = apply_channel(ch, make_density(joint, SystemLayout({{"I", 2}, {"R", 3}})), {"R"});
  CHECK(max_diff(out.matrix, joint_oracle) < 1e-10);
  CHECK(out.layout.dims() == std::vector<std::size_t>{2, 3});

  const Matrix x = random_hermitian(2, rng);
  Matrix adj = Matrix::Zero(2, 2);
  for (const auto& k : ks) adj += k.adjoint() * x * k;
  CHECK(max_diff(adjoint_map(ch, x), adj) < 1e-10);
}

TEST_CASE("non-isometries are rejected") {
  CHECK_THROWS_AS(make_channel(2.0 * identity(2), single_system("I", 2), single_system("O", 2), SystemLayout()),
                  Error);
}

TEST_CASE("scramble with U = I returns the inputs") {
  Rng rng(4);
  const auto inst = plain_instance(identity(4), random_pure(4, rng), random_pure(4, rng), 2);
  const auto s = scramble(inst);
  CHECK(max_diff(s.rho_Ap, rho_A(inst)) < 1e-12);
  CHECK(max_diff(s.rho_Bp, rho_B(inst)) < 1e-12);
}

TEST_CASE("charge bookkeeping under conserving dynamics") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = random_conserving_instance(seed);
    const auto& inst = r.instance;
    const auto s = scramble(inst);
    const double xa = expectation(rho_A(inst), inst.charges.charge(labels::kA));
    const double xb = expectation(rho_B(inst), inst.charges.charge(labels::kB));
    const double xap = expectation(s.rho_Ap, inst.charges.charge(labels::kAp));
    const double xbp = expectation(s.rho_Bp, inst.charges.charge(labels::kBp));
    CHECK(std::abs((xa - xap) - (xbp - xb)) < 1e-10);
  }
}

TEST_CASE("variance inequality on random conserving instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = random_conserving_instance(seed);
    const auto& inst = r.instance;
    const double vb = variance(rho_B(inst), inst.charges.charge(labels::kB));
    const double vbp = variance(scramble(inst).rho_Bp, inst.charges.charge(labels::kBp));
    const double dp = dynamical_fluctuation(inst).delta_plus;
    CHECK(std::sqrt(std::max(vbp, 0.0)) <= std::sqrt(std::max(vb, 0.0)) + dp + 1e-9);
  }
}

TEST_CASE("Petz recovery of a unitary channel inverts it") {
  Rng rng(5);
  const Matrix u = haar_unitary(3, rng);
  const auto ch = unitary_channel(u, single_system("S", 3));
  const auto petz = petz_recovery(ch, random_density(3, rng));
  const Matrix rho = random_density(3, rng);
  CHECK(max_diff(apply_map(petz, apply_map(ch, rho)), rho) < 1e-9);
}

TEST_CASE("Petz recovery of full depolarizing ignores its input") {
  Rng rng(6);
  const auto petz = petz_recovery(depolarizing(), random_density(2, rng));
  CHECK(max_diff(apply_map(petz, random_density(2, rng)), apply_map(petz, random_density(2, rng))) < 1e-10);
}

TEST_CASE("seesaw improves on Petz for a three-qubit conserving instance") {
  HPConfig c;
  c.k = 1;
  c.N = 2;
  c.l = 1;
  c.seed = 17;
  const auto inst = build_hp_instance(c);
  const auto r = optimize_recovery(inst, RecoveryMode::kWithRB, 1);
  CHECK(r.petz_error >= r.achieved_error - 1e-6);
  CHECK(r.monotone);
}

TEST_CASE("trivial dynamics are perfectly recoverable without R_B") {
  Rng rng(7);
  const auto inst = plain_instance(identity(4), random_pure(4, rng), random_pure(4, rng), 2);
  CHECK(optimize_recovery(inst, RecoveryMode::kWithoutRB, 1).achieved_error <= 1e-8);
}

TEST_CASE("recovery with R_B is never worse than without") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = random_conserving_instance(seed);
    const double with = optimize_recovery(r.instance, RecoveryMode::kWithRB, 1).achieved_error;
    const double without = optimize_recovery(r.instance, RecoveryMode::kWithoutRB, 1).achieved_error;
    CHECK(without >= with - 1e-8);
  }
}

TEST_CASE("implementation error examples") {
  Rng rng(8);
  const Matrix target = haar_unitary(2, rng);
  const Vector zero_b = ket(2, 0);
  const auto exact = plain_instance(kron(target, identity(2)), random_pure(4, rng), zero_b, 1);
  CHECK(implementation_error(target, exact).estimate <= 1e-7);

  // target after full dephasing: CNOT copies A onto B
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto deph = plain_instance(kron(target, identity(2)) * cnot, random_pure(4, rng), zero_b, 1);
  const auto e = induced_channel(deph);
  double oracle = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j < 40; ++j) {
      const double th = std::numbers::pi * i / 40.0, ph = 2.0 * std::numbers::pi * j / 40.0;
      Vector psi(2);
      psi << std::cos(th / 2), std::exp(cplx(0, ph)) * std::sin(th / 2);
      const Vector ideal = target * psi;
      const double f2 = std::real(ideal.dot(apply_map(e, projector(psi)) * ideal));
      oracle = std::max(oracle, std::sqrt(std::max(0.0, 1.0 - f2)));
    }
  CHECK(std::abs(implementation_error(target, deph).estimate - oracle) <= 1e-3);
}

TEST_CASE("coherence-cost bound is consistent with the implementation error") {
  HPConfig c;
  c.k = 1;
  c.N = 2;
  c.l = 1;
  c.psi = PsiKind::kMaxEntangled;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    c.seed = seed;
    const auto inst = build_hp_instance(c);
    const auto t = instance_terms(inst);
    const double bound = t.fluctuation.A_single / (2.0 * (std::sqrt(t.F_B) + 4.0 * t.fluctuation.delta_plus));
    CHECK(bound <= implementation_error(identity(2), inst, seed).estimate + 1e-6);
  }
}

TEST_CASE("code error examples") {
  const auto code = four_two_two_code();
  const auto& phys = code.code.output;
  CHECK(code_error(code.code, identity_channel(phys)).estimate <= 1e-6);
  std::vector<Vector> resets(phys.size(), ket(2, 0));
  CHECK(code_error(code.code, erasure_noise(phys, resets)).estimate <= 1e-6);

  const auto trivial = trivial_code();
  const auto& tp = trivial.code.output;
  CHECK(code_error(trivial.code, erasure_noise(tp, {ket(2, 0)})).estimate >= 0.5);
}

TEST_CASE("decoupling residual examples") {
  Rng rng(9);
  const auto r = random_conserving_instance(3);
  const Matrix ra = rho_A(r.instance);
  CHECK(decoupling_residuals(r.instance, {{1.0, ra}}).centred_sum < 1e-12);

  const auto id = plain_instance(identity(4), random_pure(4, rng), random_pure(4, rng), 2);
  const auto spec = hermitian_spectrum(rho_A(id));
  Decomposition d;
  for (int j = 0; j < 2; ++j) d.emplace_back(spec.values(j), projector(spec.vectors.col(j)));
  CHECK(decoupling_residuals(id, d).centred_sum < 1e-12);

  CHECK_THROWS_AS(decoupling_residuals(id, {{0.5, ra}}), Error);
}

TEST_CASE("decoupling residual is controlled by the recovery error") {
  const auto r = instance_with_sizes(2, 2, 0);
  const auto spec = hermitian_spectrum(rho_A(r.instance));
  Decomposition d;
  for (Eigen::Index j = 0; j < spec.values.size(); ++j)
    if (spec.values(j) > 1e-12) d.emplace_back(spec.values(j), projector(spec.vectors.col(j)));
  const double up = optimize_recovery(r.instance, RecoveryMode::kWithRB, 1).achieved_error;
  const auto res = decoupling_residuals(r.instance, d);
  CHECK(res.centred_sum <= 4.0 * up * up + 1e-6);
  CHECK(res.sigma_sum <= res.centred_sum + 1e-12);
}

TEST_CASE("average fidelity from entanglement fidelity") {
  CHECK(avg_from_entanglement_fidelity(1.0, 2) == doctest::Approx(1.0));
  CHECK(avg_from_entanglement_fidelity(0.0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(avg_from_entanglement_fidelity(1.5, 2), Error);

  const double p = 0.3;
  const SystemLayout q = single_system("Q", 2);
  const auto ch = channel_from_kraus({std::sqrt(1 - p) * identity(2), std::sqrt(p) * pauli_z()}, q, q);
  Rng rng(10);
  const int n = 20000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const Vector v = random_pure(2, rng);
    const double f = std::real(v.dot(apply_map(ch, projector(v)) * v));
    s += f;
    s2 += f * f;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - avg_from_entanglement_fidelity(1 - p, 2)) <= 3.0 * se);
}

}
