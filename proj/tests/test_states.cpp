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

#include "symrec/error.hpp"
#include "symrec/random.hpp"
#include "symrec/states.hpp"
#include "test_util.hpp"

using namespace symrec;
using namespace testutil;

namespace {

// SLD formula evaluated entry by entry in the eigenbasis of rho.
double qfi_oracle(const Matrix& rho, const Matrix& a, const Matrix& b) {
  const auto s = hermitian_spectrum(rho);
  const Matrix ae = s.vectors.adjoint() * a * s.vectors, be = s.vectors.adjoint() * b * s.vectors;
  double f = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.rows(); ++j) {
      const double ri = s.values(i), rj = s.values(j);
      if (ri + rj < 1e-14) continue;
      f += 2.0 * (ri - rj) * (ri - rj) / (ri + rj) * std::real(ae(i, j) * be(j, i));
    }
  return f;
}

double finite_difference_qfi(const Matrix& rho, const Matrix& x, double eps) {
  const Matrix u = unitary_from_generator(x, -eps);
  const double d = purified_distance(u * rho * u.adjoint(), rho);
  return 4.0 * d * d / (eps * eps);
}

Matrix rotation(double angle) {
  return mat2(std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle));
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("fidelity examples") {
  Rng rng(1);
  const Matrix rho = random_density(3, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(projector(ket(2, 0)), projector(ket(2, 1))) == doctest::Approx(0.0));
  CHECK(fidelity(projector(ket(2, 0)), identity(2) / 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(fidelity(ket(2, 0), identity(2) / 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fidelity is symmetric and matches the pure-state overlap") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_density(4, rng), b = random_density(4, rng);
    CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-10);
    const Vector psi = random_pure(4, rng);
    CHECK(std::abs(fidelity(projector(psi), b) - std::sqrt(std::real(psi.dot(b * psi)))) < 1e-9);
  }
}

TEST_CASE("purified distance examples") {
  Rng rng(3);
  const Matrix rho = random_density(3, rng);
  CHECK(purified_distance(rho, rho) < 1e-7);
  CHECK(purified_distance(projector(ket(2, 0)), projector(ket(2, 1))) == doctest::Approx(1.0));
  CHECK(purified_distance(projector(ket(2, 0)), identity(2) / 2.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("purify examples") {
  const auto pure = purify(make_density(projector(ket(2, 1)), single_system("S", 2)));
  CHECK(pure.layout.dim_of("ref") == 1);
  CHECK(std::abs(std::abs(pure.amplitudes(1)) - 1.0) < 1e-12);

  const auto bell = purify(make_density(identity(2) / 2.0, single_system("S", 2)));
  const Vector phi = (ket(4, 0) + ket(4, 3)) / std::sqrt(2.0);
  CHECK(std::abs(std::abs(phi.dot(bell.amplitudes)) - 1.0) < 1e-12);

  Rng rng(4);
  const Matrix rho = random_density(3, 2, rng);
  const auto p = purify(make_density(rho, single_system("S", 3)));
  const std::vector<std::string> keep{"S"};
  CHECK(max_diff(reduced_state(p.amplitudes, p.layout, keep), rho) < 1e-10);
  CHECK(p.layout.dim_of("ref") == 2);
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(make_density(identity(2), single_system("S", 2)), Error);
  CHECK_THROWS_AS(make_density(pauli_z() / 2.0 + identity(2) / 2.0 - diag01(), single_system("S", 2)), Error);
  Vector v = ket(2, 0) * 2.0;
  CHECK_THROWS_AS(make_pure(v, single_system("S", 2)), Error);
}

TEST_CASE("moments examples") {
  const auto m0 = moments(projector(ket(2, 0)), diag01());
  CHECK(m0.mean == doctest::Approx(0.0));
  CHECK(m0.variance == doctest::Approx(0.0));
  CHECK(m0.mean_deviation == doctest::Approx(0.0));
  const auto mm = moments(identity(2) / 2.0, diag01());
  CHECK(mm.mean == doctest::Approx(0.5));
  CHECK(mm.variance == doctest::Approx(0.25));
  CHECK(mm.mean_deviation == doctest::Approx(0.5));
  const Vector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  const auto mp = moments(projector(plus), diag01());
  CHECK(mp.mean == doctest::Approx(0.5));
  CHECK(mp.variance == doctest::Approx(0.25));
  CHECK(mp.mean_deviation == doctest::Approx(0.5));
}

TEST_CASE("covariance examples") {
  CHECK(covariance(identity(2) / 2.0, diag01(), diag01()) == doctest::Approx(0.25));
  Rng rng(5);
  const Matrix prod = kron(random_density(2, rng), random_density(2, rng));
  CHECK(std::abs(covariance(prod, kron(pauli_z(), identity(2)), kron(identity(2), pauli_x()))) < 1e-14);
  const Vector bell = (ket(4, 0) + ket(4, 3)) / std::sqrt(2.0);
  CHECK(covariance(projector(bell), kron(pauli_z(), identity(2)), kron(identity(2), pauli_z())) ==
        doctest::Approx(1.0));
}

TEST_CASE("qfi examples") {
  const Vector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  CHECK(qfi(projector(plus), diag01()) == doctest::Approx(1.0));
  CHECK(qfi(identity(2) / 2.0, diag01()) == doctest::Approx(0.0));
  CHECK(qfi(identity(2) / 2.0, pauli_x()) == doctest::Approx(0.0));
  const Vector minus = (ket(2, 0) - ket(2, 1)) / std::sqrt(2.0);
  const Matrix rho = 0.75 * projector(plus) + 0.25 * projector(minus);
  const double q = qfi(rho, diag01());
  CHECK(std::abs(q - finite_difference_qfi(rho, diag01(), 1e-4)) <= 1e-4);
  CHECK(q == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("qfi matches the finite-difference definition on random states") {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto d = static_cast<std::size_t>(2 + t % 3);
    const Matrix rho = random_density(d, rng), x = random_hermitian(d, rng);
    CHECK(std::abs(qfi(rho, x) - finite_difference_qfi(rho, x, 1e-4)) <= 1e-4);
    CHECK(std::abs(qfi(rho, x) - qfi_oracle(rho, x, x)) <= 1e-10);
  }
}

TEST_CASE("pure-state qfi is four times the variance") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Vector psi = random_pure(4, rng);
    const Matrix x = random_hermitian(4, rng);
    CHECK(std::abs(qfi(projector(psi), x) - 4.0 * variance(psi, x)) <= 1e-9);
  }
}

TEST_CASE("qfi matrix examples") {
  Rng rng(8);
  const Matrix rho = random_density(3, rng), x = random_hermitian(3, rng);
  const auto single = qfi_matrix(rho, {x});
  CHECK(single.rows() == 1);
  CHECK(single(0, 0) == doctest::Approx(qfi(rho, x)).epsilon(1e-12));

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  Matrix g1 = Matrix::Zero(3, 3), g2 = Matrix::Zero(3, 3);
  g1(1, 1) = 1.0;
  g2(2, 2) = 2.0;
  CHECK(qfi_matrix(diag, {g1, g2}).cwiseAbs().maxCoeff() < 1e-14);

  Matrix r = Matrix::Zero(2, 2);
  r(0, 0) = 0.9;
  r(1, 1) = 0.1;
  const std::vector<Matrix> gens{pauli_x() / 2.0, pauli_y() / 2.0, pauli_z() / 2.0};
  const auto f = qfi_matrix(r, gens);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(std::abs(f(a, b) - qfi_oracle(r, gens[a], gens[b])) <= 1e-9);
  CHECK(f(0, 0) == doctest::Approx(0.64));
}

TEST_CASE("minimal-variance reference reaches the qfi") {
  const Vector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  const auto pure = minimal_variance_reference(make_density(projector(plus), single_system("S", 2)), diag01());
  CHECK(pure.four_variance == doctest::Approx(1.0));

  const auto mixed = minimal_variance_reference(make_density(identity(2) / 2.0, single_system("S", 2)), diag01());
  CHECK(std::abs(mixed.four_variance) < 1e-12);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = 0.3;
  const Matrix rho = rotation(0.3) * d * rotation(0.3).adjoint();
  const auto m = minimal_variance_reference(make_density(rho, single_system("S", 2)), diag01());
  const auto dr = static_cast<std::size_t>(m.reference_observable.rows());
  const Matrix total = kron(diag01(), identity(dr)) + kron(identity(2), m.reference_observable);
  const double direct = 4.0 * variance(m.purification.amplitudes, total);
  CHECK(std::abs(direct - qfi(rho, diag01())) <= 1e-8);
  CHECK(std::abs(m.four_variance - direct) <= 1e-10);
  const std::vector<std::string> keep{"S"};
  CHECK(max_diff(reduced_state(m.purification.amplitudes, m.purification.layout, keep), rho) < 1e-10);
}

TEST_CASE("minimal-variance reference on random states") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Matrix rho = random_density(3, rng), x = random_hermitian(3, rng);
    const auto m = minimal_variance_reference(make_density(rho, single_system("S", 3)), x);
    CHECK(std::abs(m.four_variance - qfi(rho, x)) <= 1e-8);
  }
}

TEST_CASE("mean-variance-distance trade-off") {
  Rng rng(10);
  const Matrix rho = random_density(3, rng), x = random_hermitian(3, rng);
  const auto same = mvd_tradeoff_check(rho, rho, x);
  CHECK(same.lhs == doctest::Approx(0.0));
  CHECK(same.satisfied);

  const auto ortho = mvd_tradeoff_check(projector(ket(2, 0)), projector(ket(2, 1)), diag01());
  CHECK(ortho.lhs == doctest::Approx(1.0));
  CHECK(ortho.rhs == doctest::Approx(1.0));
  CHECK(ortho.satisfied);
  CHECK(ortho.satisfied_squared);

  int violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const Matrix a = random_density(3, static_cast<std::size_t>(1 + t % 3), rng);
    const Matrix b = random_density(3, static_cast<std::size_t>(1 + (t / 3) % 3), rng);
    const auto c = mvd_tradeoff_check(a, b, random_hermitian(3, rng));
    if (!c.satisfied || !c.satisfied_squared) ++violations;
  }
  CHECK(violations == 0);
}

}
