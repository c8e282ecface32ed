// SPDX-License-Identifier: Apache-2.0
//
// twr: two-way amplify-and-forward relay beamforming toolkit
// Copyright (C) 2026 The twr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Deterministic block-parallel reduction. The trial range is cut into
// fixed-size blocks whose boundaries do not depend on the thread count; each
// block is reduced independently and the per-block results are folded in
// block order. Any associativity-sensitive accumulation (floating sums)
// therefore comes out bit-identical for every degree of parallelism.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace twr {

inline constexpr std::uint64_t kTrialBlock = 8192;

inline unsigned resolve_threads(unsigned requested) noexcept
{
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// `block_fn(begin, end)` returns a partial of type T for trials [begin, end);
// `fold(acc, partial)` merges partials in ascending block order.
template <class T, class BlockFn, class Fold>
T block_reduce(std::uint64_t total, unsigned threads, T init, BlockFn block_fn, Fold fold)
{
    const std::uint64_t blocks = (total + kTrialBlock - 1) / kTrialBlock;
    std::vector<T> partials(blocks, init);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::uint64_t b = next++; b < blocks; b = next++) {
                const std::uint64_t begin = b * kTrialBlock;
                const std::uint64_t end = std::min(total, begin + kTrialBlock);
                partials[b] = block_fn(begin, end);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = blocks;
        }
    };

    const auto workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(blocks, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    T acc = std::move(init);
    for (auto &p : partials) {
        fold(acc, p);
    }
    return acc;
}

} // namespace twr
