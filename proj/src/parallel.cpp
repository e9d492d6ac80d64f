#include "voxcurv/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace voxcurv {

int resolve_thread_count(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("VOXCURV_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < 1024)
            return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int chunk_count(std::int64_t n, int threads) {
    if (n <= 0)
        return 0;
    return static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), n));
}

void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    const int chunks = chunk_count(n, threads);
    if (chunks == 0)
        return;
    if (chunks == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t begin = n * c / chunks;
        const std::int64_t end = n * (c + 1) / chunks;
        workers.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    }
    for (auto& w : workers)
        w.join();
}

} // namespace voxcurv
