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

#include "jmprob/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jmprob {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n_tasks, unsigned threads,
                  const std::function<void(std::size_t)> &fn) {
    if (n_tasks == 0) {
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n_tasks));
    if (workers == 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) {
                return;
            }
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_tasks) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace jmprob
