#include "fscan/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fscan {

int thread_budget() {
    const char* env = std::getenv("FSCAN_THREADS");
    if (!env || !*env) return 1;
    int v = 0;
    try {
        v = std::stoi(env);
    } catch (...) {
        return 1;
    }
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    return std::clamp(v, 1, hw);
}

void parallel_for(int begin, int end, int threads,
                  const std::function<void(int)>& fn) {
    const int count = end - begin;
    if (count <= 0) return;
    threads = std::clamp(threads, 1, count);
    if (threads == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace fscan
