#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace weakkam {

/// Worker cap: WEAKKAM_THREADS if set, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("WEAKKAM_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Partition [0, count) across workers.  Small ranges run inline.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    int workers = worker_count();
    if (workers <= 1 || count < 128) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    if (workers > count) workers = count;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &body] {
            for (int i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace weakkam
