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

#include "symrec/showcase.hpp"
#include "test_util.hpp"

using namespace symrec;
using namespace testutil;

TEST_SUITE("showcase") {

TEST_CASE("alleviation unitary conserves charge") {
  for (int m = 1; m <= 4; ++m) {
    const auto a = build_alleviation_instance(m);
    CHECK(is_unitary(a.instance.U));
    CHECK(conservation_check(a.instance.U, a.instance.charges).spread_DZ < 1e-10);
  }
}

TEST_CASE("induced channel is a bit flip") {
  const auto a = build_alleviation_instance(2);
  const auto e = induced_channel(a.instance);
  CHECK(max_diff(apply_map(e, projector(ket(2, 0))), projector(ket(2, 1))) < 1e-12);
  CHECK(max_diff(apply_map(e, projector(ket(2, 1))), projector(ket(2, 0))) < 1e-12);
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = 1.0;
  CHECK(max_abs(apply_map(e, off)) < 1e-12);
}

TEST_CASE("M = 1 values") {
  const auto r = verify_alleviation(1);
  CHECK(r.error_dense == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.error_sparse == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.F == doctest::Approx(8.0 / 3.0));
  CHECK(r.delta_plus == doctest::Approx(1.0));
  CHECK(r.A_single == doctest::Approx(0.5));
  CHECK(r.pass);
}

TEST_CASE("error against the A/8 threshold") {
  const auto r8 = verify_alleviation(8);
  CHECK(r8.error_dense == doctest::Approx(1.0 / std::sqrt(17.0)));
  CHECK_FALSE(r8.below_A_over_8);
  const auto r200 = verify_alleviation(200);
  CHECK(std::isnan(r200.error_dense));
  CHECK(r200.error_sparse == doctest::Approx(1.0 / std::sqrt(401.0)).epsilon(1e-12));
  CHECK(r200.below_A_over_8);
  CHECK(r200.pass);
}

TEST_CASE("dense and sparse paths agree") {
  for (int m : {1, 2, 3, 5, 8, 16}) {
    const auto a = build_alleviation_instance(m);
    CHECK(std::abs(recovery_error(a.instance, a.recovery, RecoveryMode::kWithRB) - alleviation_error_sparse(m)) <
          1e-9);
  }
}

TEST_CASE("seesaw does no worse than the analytic recovery") {
  const auto r = verify_alleviation(1, true, 5);
  CHECK(r.seesaw_error <= r.error_dense + 1e-6);
  CHECK(r.pass);
}

TEST_CASE("M must be positive") { CHECK_THROWS_AS(build_alleviation_instance(0), Error); }

}
