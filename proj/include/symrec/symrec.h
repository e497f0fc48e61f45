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

#ifndef SYMREC_SYMREC_H_
#define SYMREC_SYMREC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SYMREC_BUILDING_LIBRARY)
#define SYMREC_API __attribute__((visibility("default")))
#else
#define SYMREC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum symrec_status {
  SYMREC_OK = 0,
  SYMREC_INVALID_ARGUMENT = 1,
  SYMREC_DIMENSION_MISMATCH = 2,
  SYMREC_NOT_HERMITIAN = 3,
  SYMREC_NOT_UNITARY = 4,
  SYMREC_NOT_POSITIVE = 5,
  SYMREC_UNKNOWN_LABEL = 6,
  SYMREC_DIMENSION_CAP = 7,
  SYMREC_CONFIG = 8,
  SYMREC_NOT_COVARIANT = 9,
  SYMREC_INTERNAL = 100
} symrec_status;

/* Opaque result of an experiment run: a CSV table plus a JSON summary. */
typedef struct symrec_result symrec_result;

SYMREC_API const char* symrec_version(void);
SYMREC_API int symrec_schema_version(void);
/* Message of the last failed call on this thread ("" if none). */
SYMREC_API const char* symrec_last_error(void);

SYMREC_API symrec_status symrec_set_jobs(int jobs);
SYMREC_API symrec_status symrec_set_dimension_cap(size_t cap);
SYMREC_API size_t symrec_dimension_cap(void);

typedef struct symrec_hp_options {
  int k, N, l;
  int s_window;
  uint64_t seed;
  int samples;
  int psi_max_entangled;  /* 0: eigen-mixture */
  const int* levels;      /* may be NULL */
  size_t n_levels;
  int phi_truncated;      /* 0: maximally entangled */
  int probes;
  const char* mode;       /* "equidistribution", "concentration" or "foggy" */
  const double* t_grid;   /* NULL keeps the default grid */
  size_t n_t;
  const int* l_sweep;     /* NULL sweeps 1..N+k */
  size_t n_l;
  int control;
} symrec_hp_options;

SYMREC_API void symrec_hp_options_init(symrec_hp_options* options);

SYMREC_API symrec_status symrec_run_verify(const char* suite, int trials, uint64_t seed, symrec_result** out);
SYMREC_API symrec_status symrec_run_hp(const symrec_hp_options* options, symrec_result** out);
SYMREC_API symrec_status symrec_run_example(const int* Ms, size_t n, int seesaw, uint64_t seed,
                                            symrec_result** out);
/* `code`: path to a code JSON file, "builtin:<name>" or "family:phase". */
SYMREC_API symrec_status symrec_run_qec(const char* code, int trials, uint64_t seed, symrec_result** out);
/* `inputs`: JSON text (bare keys allowed) or a path to a JSON file. */
SYMREC_API symrec_status symrec_run_bound(const char* kind, const char* inputs, symrec_result** out);

SYMREC_API const char* symrec_result_csv(const symrec_result* r);
SYMREC_API const char* symrec_result_json(const symrec_result* r);
SYMREC_API int symrec_result_violations(const symrec_result* r);
SYMREC_API size_t symrec_result_rows(const symrec_result* r);
SYMREC_API size_t symrec_result_cols(const symrec_result* r);
SYMREC_API const char* symrec_result_column(const symrec_result* r, size_t col);
/* Cell text exactly as written to the CSV; NULL when out of range. */
SYMREC_API const char* symrec_result_cell(const symrec_result* r, size_t row, size_t col);
SYMREC_API void symrec_result_free(symrec_result* r);

/* Dense d x d complex matrices, row-major; imaginary parts may be NULL. */
SYMREC_API symrec_status symrec_fidelity(const double* rho_re, const double* rho_im, const double* sigma_re,
                                         const double* sigma_im, size_t d, double* out);
SYMREC_API symrec_status symrec_qfi(const double* rho_re, const double* rho_im, const double* x_re,
                                    const double* x_im, size_t d, double* out);
SYMREC_API symrec_status symrec_eastin_knill(double d_xl, double d_max, int n, double* bound, double* variant);

#ifdef __cplusplus
}
#endif

#endif  // SYMREC_SYMREC_H_
