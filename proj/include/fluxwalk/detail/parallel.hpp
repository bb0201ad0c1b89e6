#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace fluxwalk::detail {

// Runs fn(chunk_index, begin, end) over contiguous chunks of [0, count).
// Chunk boundaries depend only on (count, workers); callers that key all
// work off the element index and reduce in element order get results that
// do not depend on the worker count.
template <typename Fn>
void parallel_chunks(std::int64_t count, int workers, Fn&& fn) {
    const int p = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
    if (p == 1) {
        fn(0, std::int64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(p);
    for (int i = 0; i < p; ++i) {
        const std::int64_t lo = count * i / p;
        const std::int64_t hi = count * (i + 1) / p;
        pool.emplace_back([&fn, i, lo, hi] { fn(i, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace fluxwalk::detail
