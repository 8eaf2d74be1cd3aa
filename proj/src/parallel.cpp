// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace grassq {

namespace {

int g_default_threads = 0;

int hardware_threads()
{
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

int default_thread_count()
{
    if (g_default_threads > 0)
        return g_default_threads;
    if (const char *env = std::getenv("GRASSQ_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return hardware_threads();
}

void set_default_thread_count(int n) { g_default_threads = n; }

void for_blocks(std::size_t nblocks, const std::function<void(std::size_t)> &fn, int threads)
{
    if (nblocks == 0)
        return;
    int nthreads = threads > 0 ? threads : default_thread_count();
    nthreads = static_cast<int>(std::min<std::size_t>(nthreads, nblocks));

    if (nthreads <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks || failed.load())
                return;
            try {
                fn(b);
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads) - 1);
    for (int t = 1; t < nthreads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    if (failed.load() && error)
        std::rethrow_exception(error);
}

void for_sample_blocks(std::int64_t total,
                       const std::function<void(std::size_t, std::int64_t, std::int64_t)> &fn,
                       int threads)
{
    if (total <= 0)
        return;
    const std::size_t nblocks = static_cast<std::size_t>((total + kMonteCarloBlock - 1) / kMonteCarloBlock);
    for_blocks(
        nblocks,
        [&](std::size_t b) {
            const std::int64_t begin = static_cast<std::int64_t>(b) * kMonteCarloBlock;
            const std::int64_t end = std::min<std::int64_t>(begin + kMonteCarloBlock, total);
            fn(b, begin, end);
        },
        threads);
}

} // namespace grassq
