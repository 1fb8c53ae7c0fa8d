#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace slqc {

/// Worker count: SLQC_OPT_JOBS wins, then `requested`, then the hardware count.
inline unsigned resolve_jobs(unsigned requested = 0)
{
    if (const char* env = std::getenv("SLQC_OPT_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs fn(worker, begin, end) over contiguous chunks of [0, n). Results must
 * be keyed by index (or be order-independent sums) for determinism; the
 * first exception thrown by a worker is rethrown on the caller.
 */
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn)
{
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n < 2) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                if (begin < end) fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn)
{
    parallel_chunks(n, jobs, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

} // namespace slqc
