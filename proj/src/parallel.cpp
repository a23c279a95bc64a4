#include "dwelltour/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dwelltour {

int thread_cap() {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    if (const char* env = std::getenv("DWELLTOUR_THREADS")) {
        int requested = std::atoi(env);
        if (requested > 0 && requested < cap) cap = requested;
    }
    return cap;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    int workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace dwelltour
