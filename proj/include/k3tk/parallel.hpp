#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace k3tk {

/// Worker count: K3TK_THREADS if set to a positive integer, else the hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("K3TK_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Sums f(i) over [begin, end) using thread_count() workers over contiguous
/// blocks. Partial sums are combined in block order.
template <class T, class F>
T parallel_sum(std::int64_t begin, std::int64_t end, F f) {
    if (end <= begin) return T{};
    const auto span = end - begin;
    const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(thread_count(), span));
    std::vector<T> partial(static_cast<std::size_t>(workers), T{});
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::int64_t lo = begin + span * w / workers;
            const std::int64_t hi = begin + span * (w + 1) / workers;
            T acc{};
            for (std::int64_t i = lo; i < hi; ++i) acc += f(i);
            partial[static_cast<std::size_t>(w)] = acc;
        });
    }
    for (auto& t : threads) t.join();
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace k3tk
