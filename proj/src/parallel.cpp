#include "mhd1d/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mhd1d {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("MHD1D_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) return cap;
        } catch (const std::exception&) {
            // unparseable value: fall through to the hardware default
        }
    }
    return hw;
}

void parallel_for_ordered(std::size_t n_tasks, const std::function<void(std::size_t)>& task) {
    if (n_tasks == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n_tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n_tasks);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace mhd1d
