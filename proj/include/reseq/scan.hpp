#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/executor.hpp"

namespace reseq {

namespace detail {

inline std::uint64_t phase_sum(std::span<const std::uint32_t> values,
                               const executor& exec) {
    std::atomic<std::uint64_t> total{0};
    exec.run_ranges(values.size(), [&](std::size_t begin, std::size_t end) {
        std::uint64_t s = 0;
        for (std::size_t i = begin; i < end; ++i) s += values[i];
        total.fetch_add(s, std::memory_order_relaxed);
    });
    return total.load();
}

}  // namespace detail

/// Exclusive prefix sum: out[0] = 0, out[i] = sum of values[0..i). Runs as
/// ceil(log2 n) + 1 doubling phases over double-buffered arrays, one
/// barrier per phase. A sum that does not fit in 32 bits is an error, not
/// a wrap.
inline std::vector<std::uint32_t> exclusive_scan(std::span<const std::uint32_t> values,
                                                 const executor& exec = executor()) {
    const std::size_t n = values.size();
    if (n == 0) return {};
    // Prefix sums are monotone, so checking the grand total up front covers
    // every intermediate value.
    if (detail::phase_sum(values, exec) > 0xFFFFFFFFull) throw scan_overflow_error();

    std::vector<std::uint32_t> cur(values.begin(), values.end());
    std::vector<std::uint32_t> next(n);
    for (std::size_t offset = 1; offset < n; offset <<= 1) {
        exec.run(n, [&](std::size_t i) {
            next[i] = i >= offset ? cur[i] + cur[i - offset] : cur[i];
        });
        cur.swap(next);
    }
    // Inclusive -> exclusive shift.
    exec.run(n, [&](std::size_t i) { next[i] = i ? cur[i - 1] : 0; });
    return next;
}

inline std::vector<std::uint32_t> exclusive_scan(const std::vector<std::uint32_t>& values,
                                                 const executor& exec = executor()) {
    return exclusive_scan(std::span<const std::uint32_t>(values), exec);
}

}  // namespace reseq
