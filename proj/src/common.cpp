#include "paracalc/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace paracalc {

std::vector<MultiIndex> multi_indices_upto(int d, int n) {
    std::vector<MultiIndex> out;
    for (int total = 0; total <= n; ++total) {
        if (d == 1) {
            MultiIndex m;
            m.b[0] = total;
            out.push_back(m);
        } else {
            for (int b0 = total; b0 >= 0; --b0) {
                MultiIndex m;
                m.b[0] = b0;
                m.b[1] = total - b0;
                out.push_back(m);
            }
        }
    }
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_symmetric() { return 2.0 * next_uniform() - 1.0; }

int worker_thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("PARACALC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int workers = worker_thread_count();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<std::size_t>(workers, count) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

}  // namespace paracalc
