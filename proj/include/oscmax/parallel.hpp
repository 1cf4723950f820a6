#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace oscmax {

/// Runs fn(begin, end) over a contiguous partition of [0, n). Results must be
/// written to per-index or per-chunk slots; chunk boundaries depend only on
/// (n, threads), so any reduction done in chunk order is schedule-independent.
inline void parallel_chunks(std::int64_t n, int threads, const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (threads < 1) threads = 1;
    const int used = static_cast<int>(std::min<std::int64_t>(threads, n));
    if (used == 1) {
        fn(0, 0, n);
        return;
    }
    const std::int64_t chunk = (n + used - 1) / used;
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < used; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi] {
            try {
                fn(t, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace oscmax
