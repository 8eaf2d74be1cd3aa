// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace grassq {

/// Fixed Monte Carlo block size. Each block owns a derived RNG stream and a
/// result slot, so estimates are identical for every thread count.
inline constexpr std::int64_t kMonteCarloBlock = 8192;

int default_thread_count();
void set_default_thread_count(int n);

/// Runs fn(block) for block in [0, nblocks). Blocks may execute on any thread
/// in any order; fn must only write to per-block state. threads <= 0 selects
/// the process default.
void for_blocks(std::size_t nblocks, const std::function<void(std::size_t)> &fn, int threads = 0);

/// Splits [0, total) into kMonteCarloBlock-sized chunks and calls
/// fn(block_index, begin, end).
void for_sample_blocks(std::int64_t total,
                       const std::function<void(std::size_t, std::int64_t, std::int64_t)> &fn,
                       int threads = 0);

} // namespace grassq
