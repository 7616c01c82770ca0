#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "bicross/report.hpp"

namespace bicross {

// Runs body(begin, end) over fixed chunks of [0, n). Chunk boundaries do not
// depend on the worker count, so anything computed per chunk is reproducible.
inline void parallel_chunks(std::size_t n, unsigned workers,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                            std::size_t chunk = 256) {
    if (n == 0) return;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    if (workers <= 1 || nchunks == 1) {
        for (std::size_t c = 0; c < nchunks; ++c) body(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            try {
                body(c, c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned nt = std::min<std::size_t>(workers, nchunks);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Evaluates test(i) for i in [0, n) and returns the failure with the smallest
// index, whatever the worker count.
inline std::optional<std::pair<std::size_t, Counterexample>> first_failure(
    std::size_t n, unsigned workers, const std::function<std::optional<Counterexample>(std::size_t)>& test) {
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::mutex mu;
    std::optional<std::pair<std::size_t, Counterexample>> found;
    parallel_chunks(n, workers, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            if (i > best.load(std::memory_order_relaxed)) return;
            if (auto cx = test(i)) {
                std::lock_guard<std::mutex> lk(mu);
                if (!found || i < found->first) {
                    found = std::make_pair(i, std::move(*cx));
                    best.store(i);
                }
                return;
            }
        }
    });
    return found;
}

}  // namespace bicross
