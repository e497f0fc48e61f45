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
#include <cstring>
#include <string>

#include "symrec/symrec.h"

TEST_SUITE("capi") {

TEST_CASE("version and schema") {
  CHECK(std::string(symrec_version()).size() > 0);
  CHECK(symrec_schema_version() == 1);
}

TEST_CASE("example through the C interface") {
  const int ms[] = {1, 2};
  symrec_result* r = nullptr;
  REQUIRE(symrec_run_example(ms, 2, 0, 0, &r) == SYMREC_OK);
  REQUIRE(r != nullptr);
  CHECK(symrec_result_rows(r) == 2);
  CHECK(symrec_result_violations(r) == 0);
  CHECK(std::string(symrec_result_column(r, 0)) == "schema_version");
  CHECK(std::string(symrec_result_cell(r, 0, 0)) == "1");
  CHECK(symrec_result_cell(r, 5, 0) == nullptr);
  CHECK(symrec_result_column(r, 1000) == nullptr);
  const std::string csv = symrec_result_csv(r);
  CHECK(csv.rfind("schema_version,seed,instance_hash,M,", 0) == 0);
  CHECK(std::string(symrec_result_json(r)).find("\"command\": \"example\"") != std::string::npos);
  symrec_result_free(r);
}

TEST_CASE("errors map to status codes") {
  symrec_result* r = nullptr;
  CHECK(symrec_run_verify("nope", 1, 0, &r) == SYMREC_CONFIG);
  CHECK(r == nullptr);
  CHECK(std::strlen(symrec_last_error()) > 0);
  CHECK(symrec_run_verify("metrics", 1, 0, nullptr) == SYMREC_INVALID_ARGUMENT);
  CHECK(symrec_run_bound("EK17", "{dxl:1}", &r) == SYMREC_CONFIG);
  CHECK(symrec_set_jobs(0) == SYMREC_CONFIG);
}

TEST_CASE("dimension cap setting") {
  const size_t old = symrec_dimension_cap();
  REQUIRE(symrec_set_dimension_cap(16) == SYMREC_OK);
  CHECK(symrec_dimension_cap() == 16);
  const int ms[] = {2};
  symrec_result* r = nullptr;
  CHECK(symrec_run_example(ms, 1, 0, 0, &r) == SYMREC_DIMENSION_CAP);
  symrec_set_dimension_cap(old);
}

TEST_CASE("hp options defaults") {
  symrec_hp_options o;
  symrec_hp_options_init(&o);
  o.k = 1;
  o.N = 2;
  o.l = 1;
  o.mode = "equidistribution";
  o.samples = 3;
  o.probes = 1;
  symrec_result* r = nullptr;
  REQUIRE(symrec_run_hp(&o, &r) == SYMREC_OK);
  CHECK(symrec_result_rows(r) > 0);
  symrec_result_free(r);
  o.mode = "bogus";
  CHECK(symrec_run_hp(&o, &r) == SYMREC_CONFIG);
}

TEST_CASE("primitives") {
  const double rho[] = {1, 0, 0, 0};
  const double plus[] = {0.5, 0.5, 0.5, 0.5};
  double f = 0.0;
  REQUIRE(symrec_fidelity(rho, nullptr, plus, nullptr, 2, &f) == SYMREC_OK);
  CHECK(f == doctest::Approx(std::sqrt(0.5)));
  const double x[] = {0, 0, 0, 1};
  double q = -1.0;
  REQUIRE(symrec_qfi(plus, nullptr, x, nullptr, 2, &q) == SYMREC_OK);
  CHECK(q == doctest::Approx(1.0));
  const double twice[] = {1, 0, 0, 1};
  CHECK(symrec_fidelity(twice, nullptr, plus, nullptr, 2, &f) == SYMREC_INVALID_ARGUMENT);
  const double negative[] = {1.5, 0, 0, -0.5};
  CHECK(symrec_fidelity(negative, nullptr, plus, nullptr, 2, &f) == SYMREC_NOT_POSITIVE);
  double b = 0.0, v = 0.0;
  REQUIRE(symrec_eastin_knill(1.0, 1.0, 3, &b, &v) == SYMREC_OK);
  CHECK(b == doctest::Approx(1.0 / 13.0));
  CHECK(v == doctest::Approx(1.0 / 7.0));
}

}
