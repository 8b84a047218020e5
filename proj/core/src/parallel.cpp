// Copyright (c) 2026 Rawforge Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rawforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rawforge {

namespace {

std::atomic<int> g_thread_count{0};

int resolve_auto() {
    if (const char* env = std::getenv("RAWFORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

void set_thread_count(int n) { g_thread_count.store(n < 0 ? 0 : n); }

int thread_count() {
    const int n = g_thread_count.load();
    return n > 0 ? n : resolve_auto();
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<std::int64_t>(thread_count(), n));
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    // Static contiguous partition; block boundaries depend only on n and the
    // worker count, and fn is pure per index, so any partition gives the
    // same bits.
    const std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::atomic<bool> has_error{false};
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end]() {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!has_error.exchange(true)) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (has_error.load() && first_error) std::rethrow_exception(first_error);
}

} // namespace rawforge
