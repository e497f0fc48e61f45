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

#include <stdio.h>

#include "symrec/symrec.h"

int main(void) {
  double bound = 0.0, variant = 0.0;
  if (symrec_eastin_knill(1.0, 1.0, 3, &bound, &variant) != SYMREC_OK) return 1;
  if (bound < 0.0769 || bound > 0.0770) return 1;
  const int ms[] = {1};
  symrec_result* r = NULL;
  if (symrec_run_example(ms, 1, 0, 0, &r) != SYMREC_OK) {
    fprintf(stderr, "%s\n", symrec_last_error());
    return 1;
  }
  const int bad = symrec_result_violations(r);
  printf("%s", symrec_result_csv(r));
  symrec_result_free(r);
  return bad == 0 ? 0 : 1;
}
