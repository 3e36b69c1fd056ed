#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hypercrit {

/// Worker cap: HYPERCRIT_THREADS when set (minimum 1), otherwise the
/// machine parallelism.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HYPERCRIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n) across workers. Callers store results by
/// index, so the output never depends on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t stride = static_cast<std::size_t>(workers);
    for (unsigned w = 0; w < workers && w < n; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += stride) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hypercrit
