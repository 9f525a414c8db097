#pragma once

#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace epslab::detail {

// index-parallel loop; results must be written to pre-sized slots so the
// caller can merge in enumeration order regardless of worker count
inline void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    size_t workers = std::min<size_t>(static_cast<size_t>(threads), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mtx;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mtx);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace epslab::detail
