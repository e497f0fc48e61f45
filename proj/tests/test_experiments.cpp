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
#include <limits>

#include <nlohmann/json.hpp>

#include "symrec/error.hpp"
#include "symrec/experiments.hpp"
#include "symrec/parallel.hpp"

using namespace symrec;

TEST_SUITE("experiments") {

TEST_CASE("cell formatting") {
  CHECK(format_cell(0.1) == "0.1");
  CHECK(format_cell(1.0 / 3.0) == "0.333333333333");
  CHECK(format_cell(-0.0) == "0");
  CHECK(format_cell(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_cell(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_cell(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_cell(std::int64_t{42}) == "42");
  CHECK(format_cell(std::string("a,b")) == "\"a,b\"");
  CHECK(format_cell(std::string("say \"x\"")) == "\"say \"\"x\"\"\"");
}

TEST_CASE("fnv1a test vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("table layout") {
  Table t({"x", "verdict"});
  t.add(7, "d", {1.5, std::string("pass")});
  CHECK(t.columns().front() == "schema_version");
  CHECK(t.columns().size() == 5);
  const auto csv = t.csv();
  CHECK(csv.rfind("schema_version,seed,instance_hash,x,verdict\n", 0) == 0);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a("d")));
  CHECK(csv.find(std::string("1,7,") + hash + ",1.5,pass") != std::string::npos);
  CHECK_THROWS(t.add(7, "d", {1.0}));
}

TEST_CASE("random conserving instances") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = random_conserving_instance(s);
    CHECK(r.k >= 1);
    CHECK(r.k <= 2);
    CHECK(r.N >= 1);
    CHECK(r.N <= 2);
    CHECK(r.l >= 1);
    CHECK(r.l < r.k + r.N);
    CHECK(conservation_check(r.instance.U, r.instance.charges).spread_DZ < 1e-10);
    CHECK(r.descriptor == random_conserving_instance(s).descriptor);
  }
}

TEST_CASE("results do not depend on the worker count") {
  set_worker_count(1);
  const auto a = run_verify("metrics", 4, 9).table.csv();
  set_worker_count(2);
  const auto b = run_verify("metrics", 4, 9).table.csv();
  set_worker_count(1);
  CHECK(a == b);
  CHECK(run_verify("metrics", 4, 9).table.csv() == a);
}

TEST_CASE("unknown suite and bad trial counts") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of([] { run_verify("nope", 1, 0); }) == ErrorCode::kConfig);
  CHECK(code_of([] { run_bound("MSIQ1", "{}"); }) == ErrorCode::kConfig);
  CHECK(code_of([] { run_bound("EK17", "{dxl:1}"); }) == ErrorCode::kConfig);
  CHECK(code_of([] { parse_hp_mode("sideways"); }) == ErrorCode::kConfig);
}

TEST_CASE("bound command with relaxed JSON") {
  const auto r = run_bound("EK17", "{dxl:1, dmax:1, n:3}");
  REQUIRE(r.table.rows().size() == 1);
  CHECK(r.violations == 0);
  const auto j = nlohmann::json::parse(r.json());
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "bound");
  CHECK(r.table.csv().find("0.0769230769231") != std::string::npos);
}

TEST_CASE("example row for M = 1") {
  const auto r = run_example({1}, false, 0);
  REQUIRE(r.table.rows().size() == 1);
  const auto& cols = r.table.columns();
  const auto& row = r.table.rows()[0];
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return row[i];
    FAIL("missing column " << name);
    return Cell{};
  };
  CHECK(std::get<double>(col("error")) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(std::get<double>(col("bound_siq1")) == doctest::Approx(0.5 / (2.0 * (std::sqrt(8.0 / 3.0) + 4.0))));
  CHECK(std::get<std::string>(col("verdict")) == "pass");
  CHECK(r.violations == 0);
  CHECK(r.aggregates.at("rows") == 1.0);
}

}
