#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wzbc {

/// Resolves a worker count: an explicit request wins, then the WZBC_THREADS
/// environment variable, then std::thread::hardware_concurrency().
std::size_t worker_count(std::size_t requested = 0);

/// Runs body(i) for i in [0, n). Indices are split into contiguous blocks, one
/// per worker, so callers that write into per-index slots get results that do
/// not depend on the worker count. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body)
{
    const std::size_t workers = std::min(worker_count(threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end, w] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace wzbc
