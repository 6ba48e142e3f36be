#include "gramops/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace gramops {

namespace {
std::atomic<int> g_num_threads{0};
constexpr std::size_t kChunk = std::size_t{1} << 16;
}  // namespace

void set_num_threads(int n) { g_num_threads.store(n < 0 ? 0 : n); }

int num_threads() {
    int n = g_num_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t size, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (size == 0) return;
    const int workers = std::min<std::size_t>(num_threads(), (size + kChunk - 1) / kChunk);
    if (workers <= 1) {
        fn(0, size);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t begin = next.fetch_add(kChunk);
            if (begin >= size) return;
            fn(begin, std::min(begin + kChunk, size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

}  // namespace gramops
