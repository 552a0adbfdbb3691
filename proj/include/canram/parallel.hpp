#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace canram {

// Deterministic work distribution: results are keyed by item index, so the
// outcome is independent of scheduling and worker count.

inline int resolve_workers(int requested) { return requested < 1 ? 1 : requested; }

// fn(i) for every i in [0, count), executed by the given number of workers.
// fn must only write to locations owned by index i.
template <typename Fn>
void parallel_for(std::uint64_t count, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers == 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};
    auto body = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <typename R, typename Fn>
std::vector<R> parallel_map(std::uint64_t count, int workers, Fn&& fn) {
    std::vector<R> out(count);
    parallel_for(count, workers, [&](std::uint64_t i) { out[i] = fn(i); });
    return out;
}

} // namespace canram
