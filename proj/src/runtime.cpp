#include "siegelkit/runtime.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace siegelkit {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_hint(int n) { g_threads.store(n < 1 ? 1 : n); }
int thread_hint() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    int workers = g_threads.load();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = workers < static_cast<int>(n) ? workers : static_cast<int>(n);
    pool.reserve(static_cast<size_t>(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace siegelkit
