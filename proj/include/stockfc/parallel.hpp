#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stockfc {

/// Runs body(0..count-1) on up to `workers` threads (0 = hardware concurrency).
/// Task order carries no meaning; results must be written by index. The first
/// exception thrown by any task is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t workers = 0)
{
    if (workers == 0)
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k)
            body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < count; k = next++) {
                    try {
                        body(k);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace stockfc
