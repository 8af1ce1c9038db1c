// Copyright 2026 The revcirc Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace revcirc {

/// Worker count to use when the caller asks for 0.
inline size_t default_workers() {
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(task, worker) for every task in [0, tasks) on up to `workers`
/// threads. Tasks are claimed in order from a shared counter; the first
/// exception is rethrown after all threads join.
template <typename Body>
void parallel_for(size_t tasks, size_t workers, Body &&body) {
    if (workers == 0) {
        workers = default_workers();
    }
    workers = std::min(workers, std::max<size_t>(tasks, 1));
    if (workers <= 1) {
        for (size_t t = 0; t < tasks; t++) {
            body(t, size_t{0});
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        threads.emplace_back([&, w] {
            try {
                for (size_t t = next++; t < tasks; t = next++) {
                    body(t, w);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = tasks;
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace revcirc
