#include "hsurf/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hsurf {

int default_workers() {
    if (const char* env = std::getenv("HSURF_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return std::min(w, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::clamp<int>((int)hw, 1, 8);
}

void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || n < 64) {
        fn(0, n);
        return;
    }
    std::size_t w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::size_t chunk = (n + w - 1) / w;
    for (std::size_t i = 0; i < w; ++i) {
        std::size_t lo = i * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : threads) t.join();
}

} // namespace hsurf
