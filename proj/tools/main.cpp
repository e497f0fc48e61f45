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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symrec/symrec.h"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

std::string sibling_json(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return path.substr(0, dot) + ".json";
  return path + ".json";
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int emit(symrec_status status, symrec_result* r, const std::string& out) {
  if (status != SYMREC_OK) {
    std::cerr << "symrec: " << symrec_last_error() << "\n";
    return status == SYMREC_INTERNAL ? kExitInternal : kExitConfig;
  }
  int code = 0;
  if (out.empty()) {
    std::fputs(symrec_result_csv(r), stdout);
    std::fputs(symrec_result_json(r), stderr);
  } else if (!write_file(out, symrec_result_csv(r)) || !write_file(sibling_json(out), symrec_result_json(r))) {
    std::cerr << "symrec: cannot write " << out << "\n";
    code = kExitConfig;
  } else {
    std::fputs(symrec_result_json(r), stdout);
  }
  if (code == 0 && symrec_result_violations(r) > 0) code = kExitViolation;
  symrec_result_free(r);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recovery-error bounds for symmetric scrambling dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  int jobs = 1;
  app.add_option("--out", out, "CSV output path; the JSON summary goes next to it");
  app.add_option("--jobs", jobs, "Worker threads for trials")->check(CLI::PositiveNumber);

  std::uint64_t seed = 0;
  int trials = 0;

  auto* verify = app.add_subcommand("verify", "Property suites with zero-violation contracts");
  std::string suite;
  verify->add_option("--suite", suite, "metrics | lemma1 | bounds | matrix-bounds | violated | avg-ent")
      ->required()
      ->check(CLI::IsMember({"metrics", "lemma1", "bounds", "matrix-bounds", "violated", "avg-ent"}));
  verify->add_option("--trials", trials, "Trials (0 selects the suite default)")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "Base seed");

  auto* hp = app.add_subcommand("hp", "Hayden-Preskill model with a conserved qubit charge");
  symrec_hp_options hpo;
  symrec_hp_options_init(&hpo);
  std::string mode = "foggy", psi = "mixture", phi = "maxent";
  std::vector<int> levels, l_sweep;
  std::vector<double> t_grid;
  bool no_control = false;
  hp->add_option("--k", hpo.k, "Qubits in A")->required();
  hp->add_option("--N", hpo.N, "Qubits in B")->required();
  hp->add_option("--l", hpo.l, "Qubits in A'");
  hp->add_option("--samples", hpo.samples, "Haar samples");
  hp->add_option("--s-window", hpo.s_window, "Sector window s");
  hp->add_option("--probe", hpo.probes, "Random probe states per sample");
  hp->add_option("--mode", mode, "equidistribution | concentration | foggy")
      ->check(CLI::IsMember({"equidistribution", "concentration", "foggy"}));
  hp->add_option("--psi", psi, "mixture | maxent")->check(CLI::IsMember({"mixture", "maxent"}));
  hp->add_option("--levels", levels, "X_A levels of the eigen-mixture")->delimiter(',');
  hp->add_option("--phi", phi, "maxent | truncated")->check(CLI::IsMember({"maxent", "truncated"}));
  hp->add_option("--t-grid", t_grid, "Deviation thresholds for the tail sweep")->delimiter(',');
  hp->add_option("--l-sweep", l_sweep, "Values of l for the foggy sweep")->delimiter(',');
  hp->add_flag("--no-control", no_control, "Skip the unrestricted Haar control");
  hp->add_option("--seed", hpo.seed, "Base seed");

  auto* example = app.add_subcommand("example", "Coherence alleviation example");
  std::vector<int> Ms;
  bool seesaw = false;
  example->add_option("--M", Ms, "Values of M")->required()->delimiter(',');
  example->add_flag("--seesaw", seesaw, "Also run the seesaw optimizer (dense sizes only)");
  example->add_option("--seed", seed, "Base seed");

  auto* qec = app.add_subcommand("qec", "Covariant code audit");
  std::string code;
  int qec_trials = 1;
  qec->add_option("--code", code, "Code JSON file, builtin:<name> or family:phase")->required();
  qec->add_option("--trials", qec_trials, "Seesaw trials")->check(CLI::PositiveNumber);
  qec->add_option("--seed", seed, "Base seed");

  auto* bound = app.add_subcommand("bound", "Evaluate a bound from raw terms");
  std::string kind, inputs;
  bound->add_option("--kind", kind, "EK17, HP13, HP14, HP16 or a scalar instance bound")->required();
  bound->add_option("--inputs", inputs, "JSON object or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (symrec_set_jobs(jobs) != SYMREC_OK) {
    std::cerr << "symrec: " << symrec_last_error() << "\n";
    return kExitConfig;
  }

  symrec_result* r = nullptr;
  symrec_status st = SYMREC_OK;
  if (verify->parsed()) {
    st = symrec_run_verify(suite.c_str(), trials, seed, &r);
  } else if (hp->parsed()) {
    hpo.mode = mode.c_str();
    hpo.psi_max_entangled = psi == "maxent";
    hpo.phi_truncated = phi == "truncated";
    if (!levels.empty()) {
      hpo.levels = levels.data();
      hpo.n_levels = levels.size();
    }
    if (!t_grid.empty()) {
      hpo.t_grid = t_grid.data();
      hpo.n_t = t_grid.size();
    }
    if (!l_sweep.empty()) {
      hpo.l_sweep = l_sweep.data();
      hpo.n_l = l_sweep.size();
    }
    hpo.control = no_control ? 0 : 1;
    st = symrec_run_hp(&hpo, &r);
  } else if (example->parsed()) {
    st = symrec_run_example(Ms.data(), Ms.size(), seesaw ? 1 : 0, seed, &r);
  } else if (qec->parsed()) {
    st = symrec_run_qec(code.c_str(), qec_trials, seed, &r);
  } else {
    st = symrec_run_bound(kind.c_str(), inputs.c_str(), &r);
  }
  return emit(st, r, out);
}
