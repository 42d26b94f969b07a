#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace favard {

// Minimal parallel-map capability handed to modules by the CLI. Results are
// written into index slots, so reductions done afterwards in index order are
// deterministic regardless of scheduling.
class WorkerPool {
  public:
    explicit WorkerPool(int jobs = 0)
        : jobs_(jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency())) {
        if (jobs_ < 1) jobs_ = 1;
    }

    int jobs() const { return jobs_; }

    // f(i) is called once for each i in [0, n); work is striped dynamically.
    template <typename F>
    void for_each_index(std::size_t n, F&& f) const {
        if (n == 0) return;
        if (jobs_ == 1 || n == 1) {
            for (std::size_t i = 0; i < n; ++i) f(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::atomic<bool> failed{false};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> threads;
        int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs_), n));
        threads.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (error) std::rethrow_exception(error);
    }

    // Maps f over [0, n) and returns the results in index order.
    template <typename T, typename F>
    std::vector<T> map(std::size_t n, F&& f) const {
        std::vector<T> out(n);
        for_each_index(n, [&](std::size_t i) { out[i] = f(i); });
        return out;
    }

  private:
    int jobs_;
};

}  // namespace favard
