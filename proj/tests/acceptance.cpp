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

// Acceptance run: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "symrec/experiments.hpp"

using namespace symrec;

namespace {

int failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-28s %8.1fs  %s%s\n", pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str(),
              in_time ? "" : " (over time budget)");
  std::fflush(stdout);
}

Outcome no_violations(const ExperimentResult& r) {
  return {r.violations == 0,
          "rows=" + std::to_string(r.table.rows().size()) + " violations=" + std::to_string(r.violations)};
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns().size(); ++i)
    if (t.columns()[i] == name) return i;
  throw std::runtime_error("missing column " + name);
}

double number(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::stod(std::get<std::string>(c));
}

}  // namespace

int main() {
  criterion("alleviation M=1..32", 60.0, [] {
    const auto r = run_example({1, 2, 4, 8, 16, 32}, false, 0);
    auto o = no_violations(r);
    const auto err = column(r.table, "error");
    for (const auto& row : r.table.rows()) {
      const double m = number(row[column(r.table, "M")]);
      o.pass = o.pass && std::abs(number(row[err]) - 1.0 / std::sqrt(2.0 * m + 1.0)) <= 1e-9;
    }
    return o;
  });
  criterion("lemma1 100 trials", 600.0, [] { return no_violations(run_verify("lemma1", 100, 0)); });
  criterion("bounds 200 trials", 1800.0, [] { return no_violations(run_verify("bounds", 200, 0)); });
  criterion("violated continuity", 600.0, [] { return no_violations(run_verify("violated", 10, 0)); });
  criterion("matrix bounds 50 seeds", 600.0, [] { return no_violations(run_verify("matrix-bounds", 50, 0)); });
  criterion("metrics", 600.0, [] { return no_violations(run_verify("metrics", 50, 0)); });
  criterion("hp mean law", 600.0, [] {
    HPRunOptions o;
    o.mode = HPMode::kEquidistribution;
    o.config.k = 1;
    o.config.N = 2;
    o.config.l = 1;
    o.config.samples = 500;
    o.config.probes = 0;
    o.config.seed = 0;
    return no_violations(run_hp(o));
  });
  criterion("hp concentration", 600.0, [] {
    HPRunOptions o;
    o.mode = HPMode::kConcentration;
    o.config.k = 1;
    o.config.N = 3;
    o.config.l = 2;
    o.config.s_window = 1;
    o.config.phi = PhiKind::kSectorTruncated;
    o.config.samples = 1000;
    return no_violations(run_hp(o));
  });
  criterion("foggy mirror k=1 N=3", 600.0, [] {
    HPConfig c;
    c.k = 1;
    c.N = 3;
    const auto rep = foggy_mirror_experiment(c, {1, 2, 3}, true);
    Outcome o{rep.pass && rep.l_independent, ""};
    for (const auto& r : rep.rows) {
      const double want = 0.05 * (1.0 - r.epsilon_hat) / (1.0 + r.epsilon_hat);
      o.pass = o.pass && std::abs(r.hp13 - want) <= 1e-12 && r.hp13 <= r.delta_up + kBoundSlack &&
               std::abs(r.epsilon_free - 0.05) <= 1e-12;
      char buf[96];
      std::snprintf(buf, sizeof buf, "l=%d hp13=%.4f delta_up=%.4f ", r.l, r.hp13, r.delta_up);
      o.detail += buf;
    }
    return o;
  });
  criterion("eastin-knill and qec audit", 600.0, [] {
    const auto b = run_bound("EK17", "{dxl:1,dmax:1,n:3}");
    const double v = number(b.table.rows().at(0).at(column(b.table, "value")));
    const auto q = run_qec("family:phase", 1, 0);
    Outcome o{std::abs(v - 1.0 / 13.0) <= 1e-12 && q.violations == 0 && b.violations == 0, ""};
    o.detail = "ek17=" + format_cell(v) + " qec_rows=" + std::to_string(q.table.rows().size()) +
               " qec_violations=" + std::to_string(q.violations);
    return o;
  });
  criterion("average from entanglement fidelity", 600.0, [] { return no_violations(run_verify("avg-ent", 100000, 0)); });
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
