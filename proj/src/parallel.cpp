#include "parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mdclt {

namespace {

std::atomic<int> g_threads{0};

int resolve_threads() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_threads(int n) {
    g_threads.store(n < 0 ? 0 : n, std::memory_order_relaxed);
}

int threads() {
    return resolve_threads();
}

void parallel_chunks(std::int64_t count,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    const int nw = static_cast<int>(std::min<std::int64_t>(resolve_threads(), count));
    if (nw <= 1) {
        fn(0, count);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&](std::int64_t begin, std::int64_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw - 1));
    const std::int64_t base = count / nw;
    const std::int64_t extra = count % nw;
    std::int64_t begin = 0;
    for (int w = 0; w < nw; ++w) {
        const std::int64_t len = base + (w < extra ? 1 : 0);
        const std::int64_t end = begin + len;
        if (w + 1 == nw) {
            run(begin, end);
        } else {
            pool.emplace_back(run, begin, end);
        }
        begin = end;
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
    parallel_chunks(count, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace mdclt
