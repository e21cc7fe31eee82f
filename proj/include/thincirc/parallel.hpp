// Blocked parallel-for over an index range. Callers write results into
// per-index slots, so the merge is deterministic whatever the schedule.
#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace thincirc {

inline unsigned default_jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (count == 0) return;
    if (jobs <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = jobs < count ? jobs : static_cast<unsigned>(count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace thincirc
