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

#include <cmath>

#include "symrec/error.hpp"
#include "symrec/hp_model.hpp"
#include "test_util.hpp"

using namespace symrec;
using namespace testutil;

TEST_SUITE("hp") {

TEST_CASE("qubit charge and its sectors") {
  const Matrix x = qubit_charge(2);
  CHECK(x.diagonal().real().transpose() == Eigen::RowVector4d(0, 1, 1, 2));
  const auto s = charge_sectors(x);
  REQUIRE(s.size() == 3);
  CHECK(s[0].dim() == 1);
  CHECK(s[1].dim() == 2);
  CHECK(s[2].dim() == 1);
}

TEST_CASE("default eigen-mixture levels") {
  CHECK(default_levels(1) == std::vector<int>{0, 1});
  CHECK(default_levels(4) == std::vector<int>{3, 1});
}

TEST_CASE("maximally entangled psi gives a flat marginal") {
  HPConfig c;
  c.k = 2;
  c.N = 1;
  c.l = 1;
  c.psi = PsiKind::kMaxEntangled;
  const auto inst = build_hp_instance(c);
  CHECK(max_diff(rho_A(inst), identity(4) / 4.0) < 1e-12);
  CHECK(conservation_check(inst.U, inst.charges).spread_DZ < 1e-10);
}

TEST_CASE("eigen-mixture with k = 4 has unit mean deviation") {
  HPConfig c;
  c.k = 4;
  c.N = 1;
  c.l = 1;
  const auto rep = equidistribution_check(c);
  CHECK(rep.M == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.gamma == doctest::Approx(0.8));
}

TEST_CASE("nothing goes to A' when l = 0") {
  HPConfig c;
  c.k = 1;
  c.N = 2;
  c.l = 0;
  c.probes = 2;
  const auto rep = equidistribution_check(c);
  for (const auto& p : rep.probes) CHECK(std::abs(p.x_Ap) < 1e-12);
}

TEST_CASE("bookkeeping identity holds exactly") {
  HPConfig c;
  c.k = 1;
  c.N = 2;
  c.l = 2;
  for (std::uint64_t s = 0; s < 10; ++s) {
    c.seed = s;
    const auto e = equidistribution_sample(build_hp_instance(c), c);
    CHECK(e.bookkeeping < 1e-10);
    CHECK(e.conservation < 1e-10);
  }
}

TEST_CASE("mean law for charge eigenstates") {
  HPConfig c;
  c.k = 1;
  c.N = 2;
  c.l = 1;
  c.samples = 500;
  c.probes = 0;
  c.seed = 11;
  const auto rep = equidistribution_check(c);
  CHECK(rep.x_B == doctest::Approx(1.0));
  double sum = 0.0, sq = 0.0;
  int n = 0;
  for (const auto& p : rep.probes)
    if (p.eigenstate && std::abs(p.x_A - 1.0) < 1e-12) {
      CHECK(p.predicted == doctest::Approx(2.0 / 3.0));
      sum += p.x_Ap;
      sq += p.x_Ap * p.x_Ap;
      ++n;
    }
  REQUIRE(n == 500);
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean - 2.0 / 3.0) <= 3.0 * se + 1e-12);
}

TEST_CASE("concentration bound") {
  CHECK(concentration_bound(4, 1, 2, 0.5) == doctest::Approx(2.0 * std::exp(-1.0 / 384.0)));
  CHECK(concentration_bound(4, 1, 0, 0.5) == 0.0);
  CHECK(concentration_bound(10, 5, 2, 1.0) < concentration_bound(10, 5, 2, 0.5));
}

TEST_CASE("tail frequency vanishes beyond the largest possible deviation") {
  HPConfig c;
  c.k = 1;
  c.N = 3;
  c.l = 2;
  c.s_window = 1;
  c.phi = PhiKind::kSectorTruncated;
  c.samples = 100;
  const auto rep = concentration_sweep(c, {2.5});
  for (const auto& r : rep.rows) CHECK(r.exceed == 0);
}

TEST_CASE("concentration sweep with truncated phi") {
  HPConfig c;
  c.k = 1;
  c.N = 3;
  c.l = 2;
  c.s_window = 1;
  c.phi = PhiKind::kSectorTruncated;
  c.samples = 1000;
  c.seed = 3;
  const auto rep = concentration_sweep(c, {0.05, 0.1, 0.25, 0.5, 1.0, 2.0});
  CHECK(rep.pass);
  for (std::size_t p = 0; p < rep.predicted.size(); ++p)
    CHECK(std::abs(rep.mean_x_Ap[p] - rep.predicted[p]) <= 4.0 * rep.mean_se[p] + 1e-12);
}

TEST_CASE("concentration rejects a support outside the window") {
  HPConfig c;
  c.k = 1;
  c.N = 3;
  c.l = 2;
  c.s_window = 1;
  c.samples = 2;
  CHECK_THROWS_AS(concentration_sweep(c, {0.1}), Error);
}

TEST_CASE("foggy mirror sweep") {
  HPConfig c;
  c.k = 1;
  c.N = 3;
  c.samples = 1;
  const auto rep = foggy_mirror_experiment(c, {1, 2, 3, 4}, false);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.l_independent);
  for (const auto& r : rep.rows) {
    CHECK(r.M == doctest::Approx(0.5));
    CHECK(r.F == doctest::Approx(3.0));
    CHECK(r.epsilon_free == doctest::Approx(0.05));
    CHECK(std::isnan(r.control_delta));
    if (r.l == 4) {
      CHECK(r.trivial);
      CHECK(r.hp13 == 0.0);
    } else {
      CHECK_FALSE(r.trivial);
      CHECK(r.hp13 == doctest::Approx(0.05 * (1.0 - r.epsilon_hat) / (1.0 + r.epsilon_hat)));
      CHECK(r.hp13 <= r.delta_up + kBoundSlack);
    }
    CHECK(r.reference == doctest::Approx(std::pow(2.0, -(r.l - 1))));
    CHECK(r.pass);
  }
}

TEST_CASE("invalid configurations") {
  HPConfig c;
  c.k = 0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c.k = 1;
  c.N = 2;
  c.l = 4;
  CHECK_THROWS_AS(validate_config(c), Error);
  c.l = 1;
  c.levels = {0, 2};
  CHECK_THROWS_AS(validate_config(c), Error);
  c.levels = {1, 1};
  CHECK_THROWS_AS(validate_config(c), Error);
  c.levels = {};
  c.samples = 0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c.samples = 1;
  c.s_window = 2;
  c.phi = PhiKind::kSectorTruncated;
  CHECK_THROWS_AS(validate_config(c), Error);
  try {
    c.N = 40;
    c.s_window = 0;
    validate_config(c);
    FAIL("expected a dimension cap error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionCap);
  }
}

}
