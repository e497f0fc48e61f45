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

#include "symrec/parallel.hpp"

#include <algorithm>

namespace symrec {
namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int jobs) { g_workers = std::max(1, jobs); }
int worker_count() { return g_workers; }

}  // namespace symrec
