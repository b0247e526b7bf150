#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bbtv {

/// Runs fn(task, worker) for task in [0, tasks) on `workers` threads.
/// Tasks are handed out in chunks from a shared counter; callers that want
/// deterministic output must make each task's result depend only on its
/// index. The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t tasks, unsigned workers, Fn&& fn, std::size_t chunk = 64) {
    if (workers <= 1 || tasks <= chunk) {
        for (std::size_t i = 0; i < tasks; ++i) fn(i, 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&](unsigned worker) {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(chunk);
                if (begin >= tasks) break;
                const std::size_t end = begin + chunk < tasks ? begin + chunk : tasks;
                for (std::size_t i = begin; i < end; ++i) fn(i, worker);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(tasks);
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace bbtv
