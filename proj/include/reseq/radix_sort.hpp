#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "reseq/executor.hpp"
#include "reseq/scan.hpp"

namespace reseq {

/// 32-bit sort keys with an optional payload column carried through every
/// permutation (used for stability checks and for suffix positions).
struct key_array {
    std::vector<std::uint32_t> keys;
    std::vector<std::uint32_t> payload;

    bool has_payload() const { return !payload.empty(); }

    friend bool operator==(const key_array&, const key_array&) = default;
};

namespace detail {

struct split_plan {
    std::vector<std::uint32_t> destinations;
    std::uint32_t total_false = 0;
};

/// Destination index of every element for one split pass:
/// b = bit value, e = 1-b, f = exclusive scan of e, tof = e[n-1] + f[n-1],
/// t[i] = i - f[i] + tof, d[i] = b[i] ? t[i] : f[i].
inline split_plan split_destinations(std::span<const std::uint32_t> keys, unsigned bit,
                                     const executor& exec) {
    const std::size_t n = keys.size();
    split_plan plan;
    if (n == 0) return plan;
    std::vector<std::uint32_t> e(n);
    exec.run(n, [&](std::size_t i) { e[i] = ((keys[i] >> bit) & 1u) ^ 1u; });
    std::vector<std::uint32_t> f = exclusive_scan(e, exec);
    const std::uint32_t tof = e[n - 1] + f[n - 1];
    plan.destinations.resize(n);
    exec.run(n, [&](std::size_t i) {
        plan.destinations[i] = ((keys[i] >> bit) & 1u)
                                   ? static_cast<std::uint32_t>(i) - f[i] + tof
                                   : f[i];
    });
    plan.total_false = tof;
    return plan;
}

inline bool phase_is_sorted(std::span<const std::uint32_t> keys, const executor& exec) {
    std::atomic<bool> sorted{true};
    const std::size_t n = keys.size();
    if (n < 2) return true;
    exec.run_ranges(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin ? begin : 1; i < end; ++i)
            if (keys[i - 1] > keys[i]) {
                sorted.store(false, std::memory_order_relaxed);
                return;
            }
    });
    return sorted.load();
}

/// Serial form of the same split dataflow, used inside chunk-local sorts
/// where the chunk itself is the unit of parallelism.
inline void split_serial(std::span<const std::uint32_t> keys,
                         std::span<const std::uint32_t> payload, unsigned bit,
                         std::span<std::uint32_t> out_keys,
                         std::span<std::uint32_t> out_payload) {
    const std::size_t n = keys.size();
    std::uint32_t tof = 0;
    for (std::size_t i = 0; i < n; ++i) tof += ((keys[i] >> bit) & 1u) ^ 1u;
    std::uint32_t zeros_before = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t d;
        if ((keys[i] >> bit) & 1u)
            d = static_cast<std::uint32_t>(i) - zeros_before + tof;
        else
            d = zeros_before++;
        out_keys[d] = keys[i];
        if (!payload.empty()) out_payload[d] = payload[i];
    }
}

inline void sort_span_serial(std::span<std::uint32_t> keys,
                             std::span<std::uint32_t> payload,
                             std::vector<std::uint32_t>& key_scratch,
                             std::vector<std::uint32_t>& payload_scratch) {
    const std::size_t n = keys.size();
    if (n < 2) return;
    if (key_scratch.size() < n) key_scratch.resize(n);
    if (!payload.empty() && payload_scratch.size() < n) payload_scratch.resize(n);
    std::span<std::uint32_t> ks(key_scratch.data(), n);
    std::span<std::uint32_t> ps(payload_scratch.data(), payload.empty() ? 0 : n);

    auto is_sorted = [](std::span<const std::uint32_t> v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i - 1] > v[i]) return false;
        return true;
    };

    bool in_main = true;
    for (unsigned bit = 0; bit < 32; ++bit) {
        auto src_k = in_main ? keys : ks;
        auto src_p = in_main ? payload : ps;
        if (is_sorted(src_k)) break;
        auto dst_k = in_main ? ks : keys;
        auto dst_p = in_main ? ps : payload;
        split_serial(src_k, src_p, bit, dst_k, dst_p);
        in_main = !in_main;
    }
    if (!in_main) {
        std::copy(ks.begin(), ks.end(), keys.begin());
        if (!payload.empty()) std::copy(ps.begin(), ps.end(), payload.begin());
    }
}

}  // namespace detail

/// Stable partition: all keys whose bit is 0 precede all keys whose bit
/// is 1, input order preserved within each class.
inline key_array split_by_bit(const key_array& arr, unsigned bit,
                              const executor& exec = executor()) {
    const std::size_t n = arr.keys.size();
    key_array out;
    out.keys.resize(n);
    out.payload.resize(arr.payload.size());
    if (n == 0) return out;
    auto plan = detail::split_destinations(arr.keys, bit, exec);
    exec.run(n, [&](std::size_t i) {
        out.keys[plan.destinations[i]] = arr.keys[i];
        if (arr.has_payload()) out.payload[plan.destinations[i]] = arr.payload[i];
    });
    return out;
}

/// LSD radix sort, one split pass per bit starting at the least
/// significant. Stable; stops early once the keys are in order.
inline key_array radix_sort(const key_array& arr, const executor& exec = executor()) {
    key_array cur = arr;
    const std::size_t n = cur.keys.size();
    if (n < 2) return cur;
    key_array next;
    next.keys.resize(n);
    next.payload.resize(cur.payload.size());
    for (unsigned bit = 0; bit < 32; ++bit) {
        if (detail::phase_is_sorted(cur.keys, exec)) break;
        auto plan = detail::split_destinations(cur.keys, bit, exec);
        exec.run(n, [&](std::size_t i) {
            next.keys[plan.destinations[i]] = cur.keys[i];
            if (cur.has_payload()) next.payload[plan.destinations[i]] = cur.payload[i];
        });
        cur.keys.swap(next.keys);
        cur.payload.swap(next.payload);
    }
    return cur;
}

/// Chunked sort: each chunk is fully sorted on its own (split passes,
/// chunks spread across workers), a per-chunk bucket-count table over the
/// top `digit_bits` bits is laid out column-major and prefix-summed into
/// global offsets, elements are scattered to their bucket regions, and the
/// per-chunk sorted runs inside each bucket are combined by recursive
/// pairwise merging. Result and stability match radix_sort exactly.
inline key_array chunked_radix_sort(const key_array& arr, const executor& exec,
                                    unsigned digit_bits = 4) {
    if (digit_bits < 1 || digit_bits > 8)
        throw std::invalid_argument("digit_bits must be in 1..8");
    const std::size_t n = arr.keys.size();
    key_array work = arr;
    if (n < 2) return work;

    const std::size_t chunk = exec.chunk_size();
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    const std::uint32_t nbuckets = 1u << digit_bits;
    const unsigned shift = 32 - digit_bits;
    const bool with_payload = arr.has_payload();

    // Pass 1: independent chunk sorts.
    exec.run_tasks(nchunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        std::vector<std::uint32_t> ks, ps;
        detail::sort_span_serial(
            std::span<std::uint32_t>(work.keys.data() + begin, end - begin),
            std::span<std::uint32_t>(with_payload ? work.payload.data() + begin : nullptr,
                                     with_payload ? end - begin : 0),
            ks, ps);
    });

    // Pass 2: bucket counts, column-major (bucket-major, then chunk).
    std::vector<std::uint32_t> table(std::size_t{nbuckets} * nchunks, 0);
    exec.run_tasks(nchunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i)
            ++table[std::size_t{work.keys[i] >> shift} * nchunks + c];
    });

    // Pass 3: prefix sum over the flattened table gives global offsets.
    std::vector<std::uint32_t> offsets = exclusive_scan(table, exec);

    // Pass 4: scatter; each chunk's elements of one bucket stay contiguous.
    key_array out;
    out.keys.resize(n);
    out.payload.resize(arr.payload.size());
    exec.run_tasks(nchunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        std::vector<std::uint32_t> cursor(nbuckets);
        for (std::uint32_t b = 0; b < nbuckets; ++b)
            cursor[b] = offsets[std::size_t{b} * nchunks + c];
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t b = work.keys[i] >> shift;
            const std::uint32_t d = cursor[b]++;
            out.keys[d] = work.keys[i];
            if (with_payload) out.payload[d] = work.payload[i];
        }
    });

    // Combine the sorted runs inside each bucket by pairwise merging.
    std::vector<std::uint32_t> scratch_keys(n);
    std::vector<std::uint32_t> scratch_payload(arr.payload.size());
    exec.run_tasks(nbuckets, [&](std::size_t b) {
        std::vector<std::size_t> bounds;
        bounds.reserve(nchunks + 1);
        std::size_t pos = offsets[b * nchunks];
        bounds.push_back(pos);
        for (std::size_t c = 0; c < nchunks; ++c) {
            pos += table[b * nchunks + c];
            if (pos != bounds.back()) bounds.push_back(pos);
        }
        auto merge_into = [&](const std::uint32_t* sk, const std::uint32_t* sp,
                              std::uint32_t* dk, std::uint32_t* dp, std::size_t lo,
                              std::size_t mid, std::size_t hi) {
            std::size_t i = lo, j = mid, d = lo;
            while (i < mid && j < hi) {
                if (sk[j] < sk[i]) {
                    dk[d] = sk[j];
                    if (sp) dp[d] = sp[j];
                    ++j;
                } else {
                    dk[d] = sk[i];
                    if (sp) dp[d] = sp[i];
                    ++i;
                }
                ++d;
            }
            for (; i < mid; ++i, ++d) {
                dk[d] = sk[i];
                if (sp) dp[d] = sp[i];
            }
            for (; j < hi; ++j, ++d) {
                dk[d] = sk[j];
                if (sp) dp[d] = sp[j];
            }
        };
        bool in_main = true;
        while (bounds.size() > 2) {
            const std::uint32_t* sk = in_main ? out.keys.data() : scratch_keys.data();
            const std::uint32_t* sp =
                with_payload ? (in_main ? out.payload.data() : scratch_payload.data())
                             : nullptr;
            std::uint32_t* dk = in_main ? scratch_keys.data() : out.keys.data();
            std::uint32_t* dp =
                with_payload ? (in_main ? scratch_payload.data() : out.payload.data())
                             : nullptr;
            std::vector<std::size_t> next_bounds;
            next_bounds.push_back(bounds.front());
            for (std::size_t r = 0; r + 1 < bounds.size(); r += 2) {
                if (r + 2 < bounds.size()) {
                    merge_into(sk, sp, dk, dp, bounds[r], bounds[r + 1], bounds[r + 2]);
                    next_bounds.push_back(bounds[r + 2]);
                } else {
                    for (std::size_t i = bounds[r]; i < bounds[r + 1]; ++i) {
                        dk[i] = sk[i];
                        if (sp) dp[i] = sp[i];
                    }
                    next_bounds.push_back(bounds[r + 1]);
                }
            }
            bounds.swap(next_bounds);
            in_main = !in_main;
        }
        if (!in_main) {
            for (std::size_t i = bounds.front(); i < bounds.back(); ++i) {
                out.keys[i] = scratch_keys[i];
                if (with_payload) out.payload[i] = scratch_payload[i];
            }
        }
    });
    return out;
}

inline key_array chunked_radix_sort(const key_array& arr, executor_config cfg,
                                    unsigned digit_bits = 4) {
    executor exec(cfg);
    return chunked_radix_sort(arr, exec, digit_bits);
}

}  // namespace reseq
