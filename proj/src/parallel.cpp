#include "qrdyn/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace qrdyn {

namespace {
int g_workers = 0;
}

void set_worker_count(int n) { g_workers = n < 0 ? 0 : n; }

int worker_count() {
    if (g_workers > 0) return g_workers;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nw = static_cast<std::size_t>(worker_count());
    if (nw <= 1 || n < 2 * nw) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errs(nw);
    std::vector<std::thread> threads;
    threads.reserve(nw);
    const std::size_t block = (n + nw - 1) / nw;
    for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t lo = w * block;
        const std::size_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        threads.emplace_back([&, w, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace qrdyn
