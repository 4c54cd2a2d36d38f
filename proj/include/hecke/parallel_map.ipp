#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>

namespace hecke {

template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& f) {
    std::vector<std::optional<T>> slots(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i; !failed && (i = next++) < n;) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };
    const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
    if (count <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < count; ++k) {
            pool.emplace_back(work);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace hecke
