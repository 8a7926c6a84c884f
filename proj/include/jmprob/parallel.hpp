// Copyright 2026 The jmprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JMPROB_PARALLEL_HPP_
#define JMPROB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace jmprob {

/// 0 means "use hardware concurrency" (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs fn(0) ... fn(n_tasks - 1) on up to `threads` workers with dynamic
/// scheduling. Task order across workers is unspecified, so callers must
/// make each task write only its own output slot. The first exception thrown
/// by any task is rethrown after all workers join.
void parallel_for(std::size_t n_tasks, unsigned threads,
                  const std::function<void(std::size_t)> &fn);

}  // namespace jmprob

#endif  // JMPROB_PARALLEL_HPP_
