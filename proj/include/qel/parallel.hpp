#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qel {

/// Worker budget: hardware concurrency, capped by the QEL_THREADS environment variable.
unsigned thread_budget();

/// Runs body(i) for i in [0, n) over contiguous chunks on up to thread_budget() threads.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(thread_budget(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

}  // namespace qel
