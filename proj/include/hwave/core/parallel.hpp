/*
 * Copyright 2026 The hwave authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace hwave {

// Worker count: `requested` if positive, else HWAVE_WORKERS, else the
// hardware concurrency; never more than `jobs`.
inline int worker_count(int requested, std::size_t jobs) {
    int w = requested;
    if (w <= 0)
        if (const char* env = std::getenv("HWAVE_WORKERS")) w = std::atoi(env);
    if (w <= 0) w = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min<int>(w, static_cast<int>(std::max<std::size_t>(jobs, 1))));
}

// Runs job(i) for i in [0, count) on up to `workers` threads. Each job's
// exception is captured; the first one in index order is rethrown once all
// jobs have finished.
template <class Job>
void parallel_for(std::size_t count, int workers, Job job) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hwave
