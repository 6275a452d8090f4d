#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace polymart {

// Worker cap: POLYMART_THREADS if set (clamped to >= 1), else hardware.
inline int thread_count() {
    if (const char* env = std::getenv("POLYMART_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static contiguous split of [0, count) across workers. Each worker owns a
// disjoint range, so writes to per-index slots never race and results do
// not depend on the worker count.
template <class Body>
void parallel_for(std::int64_t count, Body&& body) {
    if (count <= 0) return;
    const int workers =
        static_cast<int>(std::min<std::int64_t>(thread_count(), count));
    if (workers <= 1) {
        body(std::int64_t{0}, count);
        return;
    }
    const std::int64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) {
        const std::int64_t lo = std::min<std::int64_t>(count, w * chunk);
        const std::int64_t hi = std::min<std::int64_t>(count, lo + chunk);
        if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::int64_t{0}, std::min<std::int64_t>(count, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace polymart
