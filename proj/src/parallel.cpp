#include "s3geo/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace s3geo {

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& run_range) {
    if (n == 0) return;
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min({hw, n, static_cast<std::size_t>(8)});
    if (workers == 1 || n < 256) {
        run_range(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] { run_range(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace s3geo
