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

#include "symrec/symrec.h"

#include <exception>
#include <functional>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "symrec/error.hpp"
#include "symrec/experiments.hpp"
#include "symrec/parallel.hpp"

struct symrec_result {
  symrec::ExperimentResult result;
  std::string csv;
  std::string json;
  std::vector<std::vector<std::string>> cells;
};

namespace {

thread_local std::string last_error;

symrec_status status_of(symrec::ErrorCode c) { return static_cast<symrec_status>(static_cast<int>(c)); }

template <class F>
symrec_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return SYMREC_OK;
  } catch (const symrec::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SYMREC_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SYMREC_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SYMREC_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  symrec::require(p != nullptr, symrec::ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

symrec_status deliver(symrec_result** out, const std::function<symrec::ExperimentResult()>& run) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto r = std::make_unique<symrec_result>();
    r->result = run();
    r->csv = r->result.table.csv();
    r->json = r->result.json();
    for (const auto& row : r->result.table.rows()) {
      std::vector<std::string> text;
      for (const auto& c : row) text.push_back(symrec::format_cell(c));
      r->cells.push_back(std::move(text));
    }
    *out = r.release();
  });
}

symrec::Matrix read_matrix(const double* re, const double* im, size_t d) {
  need(re, "real part");
  const auto n = static_cast<Eigen::Index>(d);
  symrec::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto k = static_cast<size_t>(i) * d + static_cast<size_t>(j);
      m(i, j) = symrec::cplx(re[k], im ? im[k] : 0.0);
    }
  return m;
}

symrec::Matrix read_state(const double* re, const double* im, size_t d) {
  return symrec::make_density(read_matrix(re, im, d), symrec::single_system("S", d)).matrix;
}

}  // namespace

extern "C" {

const char* symrec_version(void) { return "0.1.0"; }
int symrec_schema_version(void) { return symrec::kSchemaVersion; }
const char* symrec_last_error(void) { return last_error.c_str(); }

symrec_status symrec_set_jobs(int jobs) {
  return guarded([&] {
    symrec::require(jobs >= 1, symrec::ErrorCode::kConfig, "jobs must be positive");
    symrec::set_worker_count(jobs);
  });
}

symrec_status symrec_set_dimension_cap(size_t cap) {
  return guarded([&] { symrec::set_dimension_cap(cap); });
}

size_t symrec_dimension_cap(void) { return symrec::dimension_cap(); }

void symrec_hp_options_init(symrec_hp_options* o) {
  if (!o) return;
  *o = symrec_hp_options{};
  o->k = 1;
  o->N = 1;
  o->l = 1;
  o->samples = 1;
  o->probes = 16;
  o->mode = "foggy";
  o->control = 1;
}

symrec_status symrec_run_verify(const char* suite, int trials, uint64_t seed, symrec_result** out) {
  return deliver(out, [&] {
    need(suite, "suite");
    return symrec::run_verify(suite, trials, seed);
  });
}

symrec_status symrec_run_hp(const symrec_hp_options* o, symrec_result** out) {
  return deliver(out, [&] {
    need(o, "options");
    symrec::HPRunOptions opt;
    auto& c = opt.config;
    c.k = o->k;
    c.N = o->N;
    c.l = o->l;
    c.s_window = o->s_window;
    c.seed = o->seed;
    c.samples = o->samples;
    c.probes = o->probes;
    c.psi = o->psi_max_entangled ? symrec::PsiKind::kMaxEntangled : symrec::PsiKind::kEigenMixture;
    c.phi = o->phi_truncated ? symrec::PhiKind::kSectorTruncated : symrec::PhiKind::kMaxEntangled;
    if (o->levels) c.levels.assign(o->levels, o->levels + o->n_levels);
    opt.mode = symrec::parse_hp_mode(o->mode ? o->mode : "foggy");
    if (o->t_grid) opt.t_grid.assign(o->t_grid, o->t_grid + o->n_t);
    if (o->l_sweep) opt.l_sweep.assign(o->l_sweep, o->l_sweep + o->n_l);
    opt.control = o->control != 0;
    return symrec::run_hp(opt);
  });
}

symrec_status symrec_run_example(const int* Ms, size_t n, int seesaw, uint64_t seed, symrec_result** out) {
  return deliver(out, [&] {
    need(Ms, "Ms");
    return symrec::run_example(std::vector<int>(Ms, Ms + n), seesaw != 0, seed);
  });
}

symrec_status symrec_run_qec(const char* code, int trials, uint64_t seed, symrec_result** out) {
  return deliver(out, [&] {
    need(code, "code");
    return symrec::run_qec(code, trials, seed);
  });
}

symrec_status symrec_run_bound(const char* kind, const char* inputs, symrec_result** out) {
  return deliver(out, [&] {
    need(kind, "kind");
    need(inputs, "inputs");
    return symrec::run_bound(kind, inputs);
  });
}

const char* symrec_result_csv(const symrec_result* r) { return r ? r->csv.c_str() : nullptr; }
const char* symrec_result_json(const symrec_result* r) { return r ? r->json.c_str() : nullptr; }
int symrec_result_violations(const symrec_result* r) { return r ? r->result.violations : -1; }
size_t symrec_result_rows(const symrec_result* r) { return r ? r->cells.size() : 0; }
size_t symrec_result_cols(const symrec_result* r) { return r ? r->result.table.columns().size() : 0; }

const char* symrec_result_column(const symrec_result* r, size_t col) {
  if (!r || col >= r->result.table.columns().size()) return nullptr;
  return r->result.table.columns()[col].c_str();
}

const char* symrec_result_cell(const symrec_result* r, size_t row, size_t col) {
  if (!r || row >= r->cells.size() || col >= r->cells[row].size()) return nullptr;
  return r->cells[row][col].c_str();
}

void symrec_result_free(symrec_result* r) { delete r; }

symrec_status symrec_fidelity(const double* rho_re, const double* rho_im, const double* sigma_re,
                              const double* sigma_im, size_t d, double* out) {
  return guarded([&] {
    need(out, "out");
    symrec::require(d >= 1, symrec::ErrorCode::kInvalidArgument, "dimension must be positive");
    const auto rho = read_state(rho_re, rho_im, d);
    *out = symrec::fidelity(rho, read_state(sigma_re, sigma_im, d));
  });
}

symrec_status symrec_qfi(const double* rho_re, const double* rho_im, const double* x_re, const double* x_im,
                         size_t d, double* out) {
  return guarded([&] {
    need(out, "out");
    symrec::require(d >= 1, symrec::ErrorCode::kInvalidArgument, "dimension must be positive");
    *out = symrec::qfi(read_state(rho_re, rho_im, d), read_matrix(x_re, x_im, d));
  });
}

symrec_status symrec_eastin_knill(double d_xl, double d_max, int n, double* bound, double* variant) {
  return guarded([&] {
    need(bound, "bound");
    const auto ek = symrec::eastin_knill_bound(d_xl, d_max, n);
    *bound = ek.value;
    if (variant) *variant = ek.variant;
  });
}

}  // extern "C"
