#pragma once

#include "report.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <optional>

namespace eqcs::cli {

struct RunOptions {
    bool parallel = false;
    /// Worker count for --parallel; read from CSCHAR_THREADS, else hardware concurrency.
    unsigned threads = 0;
    std::optional<int> grid;
    std::optional<double> tol;
};

unsigned thread_count_from_env();

/// f(0), ..., f(n-1), optionally on worker threads; the result order never depends on scheduling.
template <class T>
std::vector<T> ordered_map(std::size_t n, const std::function<T(std::size_t)>& f, bool parallel, unsigned threads)
{
    std::vector<std::optional<T>> slots(n);
    if (!parallel || threads < 2 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            slots[i] = f(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::mutex mu;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(threads, n); ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < n;) {
                    try {
                        slots[i] = f(i);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!err)
                            err = std::current_exception();
                    }
                }
            });
        for (auto& t : pool)
            t.join();
        if (err)
            std::rethrow_exception(err);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

Report run_scenario(Scenario s, const RunOptions& opt = {});

/// Sign conventions every report carries.
std::vector<std::string> sign_conventions();

}
