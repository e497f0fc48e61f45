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
#include <fstream>
#include <sstream>

#include "symrec/error.hpp"
#include "symrec/qec.hpp"
#include "test_util.hpp"

using namespace symrec;
using namespace testutil;

TEST_SUITE("qec") {

TEST_CASE("kl422 code has a vanishing bound") {
  const auto r = audit_code(four_two_two_code(), 1, 0);
  CHECK(r.N == 4);
  CHECK(r.applicable);
  CHECK(r.bound.value == 0.0);
  CHECK(r.consistent);
  CHECK(r.w_equivalent);
  CHECK(r.delta_C < 1e-4);
}

TEST_CASE("phase covariant code") {
  const auto r = audit_code(phase_covariant_code(0.3), 1, 2);
  CHECK(r.applicable);
  CHECK(r.covariance_deviation < 1e-10);
  CHECK(r.D_XL == doctest::Approx(1.0));
  CHECK(r.D_max == doctest::Approx(1.0));
  CHECK(r.bound.value == doctest::Approx(1.0 / 13.0));
  CHECK(r.consistent);
  CHECK(r.w_equivalent);
  CHECK(r.noise_tp_defect < 1e-10);
  CHECK(r.noise_covariance < 1e-10);
}

TEST_CASE("repetition code is outside the covariant setting") {
  const auto r = audit_code(repetition_code(), 1, 0);
  CHECK(r.covariance_deviation > 0.1);
  CHECK_FALSE(r.applicable);
}

TEST_CASE("more trials never raise the estimate") {
  const auto one = audit_code(phase_covariant_code(0.5), 1, 4);
  const auto three = audit_code(phase_covariant_code(0.5), 3, 4);
  CHECK(three.trial_estimates.size() == 3);
  CHECK(three.delta_C <= one.delta_C + 1e-12);
}

TEST_CASE("builtin names") {
  CHECK(builtin_code("trivial").code.output.size() == 1);
  CHECK(builtin_code("phase:0.25").code.output.size() == 3);
  CHECK_THROWS_AS(builtin_code("phase:abc"), Error);
  CHECK_THROWS_AS(builtin_code("golay"), Error);
}

TEST_CASE("JSON round trip") {
  const auto spec = phase_covariant_code(0.7);
  const auto back = parse_code_json(code_to_json(spec));
  CHECK(back.name == spec.name);
  CHECK(max_diff(back.code.isometry, spec.code.isometry) < 1e-14);
  CHECK(max_diff(back.x_logical, spec.x_logical) < 1e-14);
  REQUIRE(back.x_physical.size() == 3);
  CHECK(back.code.output == spec.code.output);
}

TEST_CASE("malformed code files") {
  auto code_of = [](const std::string& text) {
    try {
      parse_code_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of("{") == ErrorCode::kConfig);
  CHECK(code_of("{\"name\": \"x\"}") == ErrorCode::kConfig);
  CHECK(code_of("[1, 2]") == ErrorCode::kConfig);
}

TEST_CASE("shipped code file parses and audits") {
  std::ifstream in(std::string(SYMREC_SOURCE_DIR) + "/data/codes/phase_covariant.json");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto spec = parse_code_json(ss.str());
  CHECK(spec.name == "phase_covariant_pi_over_8");
  const auto r = audit_code(spec, 1, 0);
  CHECK(r.applicable);
  CHECK(r.consistent);
}

TEST_CASE("erasure equivalence unitary") {
  const SystemLayout phys({{"P1", 2}, {"P2", 2}});
  const std::vector<Vector> from{ket(2, 0), ket(2, 1)};
  const std::vector<Vector> to{hadamard() * ket(2, 0), ket(2, 0)};
  const Matrix w = erasure_equivalence(phys, from, to);
  CHECK(is_unitary(w));
  const auto a = erasure_noise(phys, from);
  const auto b = erasure_noise(phys, to);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Matrix e = Matrix::Zero(4, 4);
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
      CHECK(max_diff(apply_map(b, e), w * apply_map(a, e) * w.adjoint()) < 1e-12);
    }
}

}
