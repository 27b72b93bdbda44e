#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cutwalk {

/// Runs fn(i) once for every i in [0, n) across `workers` threads.
/// Work is claimed through an atomic counter, so scheduling is nondeterministic
/// but callers that write results into slot i get scheduling-independent
/// output. Exceptions are captured and rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(std::uint64_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int spawned = static_cast<int>(std::min<std::uint64_t>(workers, n));
    pool.reserve(spawned);
    for (int w = 0; w < spawned; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cutwalk
