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

#pragma once

#include <cstdint>
#include <functional>

namespace rawforge {

/// Process-wide worker count. 0 means auto: the RAWFORGE_THREADS environment
/// variable if set, otherwise std::thread::hardware_concurrency().
void set_thread_count(int n);
int thread_count();

/// Runs fn(begin, end) over a static partition of [0, n) into contiguous
/// blocks, one per worker. fn must be a pure per-index computation writing
/// only to its own indices; under that contract results are bit-identical
/// for every thread count. Exceptions from workers are rethrown here.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace rawforge
