#include "parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace aaudit {

unsigned worker_count(std::size_t work_items) {
    if (work_items <= 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = hw;
    if (const char* env = std::getenv("ANNEALER_AUDIT_THREADS")) {
        try {
            const long parsed = std::stol(env);
            if (parsed >= 1) cap = static_cast<unsigned>(parsed);
        } catch (...) {
            // Unparseable values fall back to hardware concurrency.
        }
    }
    const std::size_t limit = std::min<std::size_t>(cap, work_items);
    return static_cast<unsigned>(std::max<std::size_t>(limit, 1));
}

void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned workers = worker_count(n);
    if (workers == 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(static_cast<std::size_t>(w) * chunk, n);
        const std::size_t end = std::min(begin + chunk, n);
        threads.emplace_back([&, w, begin, end] {
            try {
                if (begin < end) fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace aaudit
