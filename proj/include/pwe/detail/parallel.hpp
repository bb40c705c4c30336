// Static block partitioning of an index range over std::thread workers.

#ifndef PWE_DETAIL_PARALLEL_HPP
#define PWE_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pwe::detail {

inline unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls fn(i) for every i in [0, count). Exceptions from workers are
/// rethrown (the first one wins).
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn&& fn)
{
    threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), count));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = count * t / threads;
        const std::uint64_t end = count * (t + 1) / threads;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace pwe::detail

#endif  // PWE_DETAIL_PARALLEL_HPP
