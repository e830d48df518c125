#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/executor.hpp"
#include "reseq/radix_sort.hpp"
#include "reseq/scan.hpp"

namespace reseq {

/// Sorted array of all suffix positions plus its inverse. Suffix order:
/// plain byte order with the sentinel byte 0 lowest; when two suffixes
/// both sit on a sentinel at the same depth the tie breaks by ascending
/// text position (each sentinel acts as a distinct, position-ordered
/// symbol); a suffix that runs out of text sorts first.
struct suffix_array {
    std::vector<std::uint32_t> sa;
    std::vector<std::uint32_t> rank;

    std::size_t text_len() const { return sa.size(); }
};

inline bool suffix_less(std::string_view text, std::uint32_t i, std::uint32_t j) {
    const std::size_t n = text.size();
    std::size_t a = i, b = j;
    while (true) {
        if (a == n) return true;
        if (b == n) return false;
        const auto ca = static_cast<unsigned char>(text[a]);
        const auto cb = static_cast<unsigned char>(text[b]);
        if (ca == 0 && cb == 0) return i < j;
        if (ca != cb) return ca < cb;
        ++a;
        ++b;
    }
}

/// Direct comparison sort of all suffixes; the oracle the radix-based
/// construction is checked against.
inline suffix_array build_naive(std::string_view text) {
    suffix_array out;
    out.sa.resize(text.size());
    std::iota(out.sa.begin(), out.sa.end(), 0u);
    std::sort(out.sa.begin(), out.sa.end(),
              [text](std::uint32_t a, std::uint32_t b) { return suffix_less(text, a, b); });
    out.rank.resize(text.size());
    for (std::uint32_t idx = 0; idx < out.sa.size(); ++idx) out.rank[out.sa[idx]] = idx;
    return out;
}

/// Prefix doubling on top of the stable radix sort: initial ranks from a
/// single-byte pass, then rounds sorting (rank[i], rank[i+h]) composite
/// keys as two stable 32-bit passes, least-significant component first,
/// with ranks recomputed by a phase-parallel adjacent comparison and a
/// prefix sum. Stops as soon as all ranks are distinct.
inline suffix_array build_parallel(std::string_view text,
                                   const executor& exec = executor()) {
    const std::size_t n = text.size();
    if (n > (std::size_t{1} << 31) - 1) throw text_too_large_error(n);
    suffix_array out;
    if (n == 0) return out;

    key_array arr;
    arr.keys.resize(n);
    arr.payload.resize(n);
    exec.run(n, [&](std::size_t i) {
        arr.keys[i] = static_cast<unsigned char>(text[i]);
        arr.payload[i] = static_cast<std::uint32_t>(i);
    });
    arr = radix_sort(arr, exec);

    // Bucket ranks from the sorted byte keys; every sentinel gets its own
    // rank (stability already placed them in ascending position order).
    std::vector<std::uint32_t> rank(n), diff(n);
    exec.run(n, [&](std::size_t idx) {
        diff[idx] = idx > 0 && (arr.keys[idx] != arr.keys[idx - 1] || arr.keys[idx] == 0)
                        ? 1u
                        : 0u;
    });
    std::vector<std::uint32_t> pre = exclusive_scan(diff, exec);
    exec.run(n, [&](std::size_t idx) { rank[arr.payload[idx]] = pre[idx] + diff[idx]; });
    std::uint32_t max_rank = pre[n - 1] + diff[n - 1];

    std::vector<std::uint32_t> rank2(n);
    for (std::size_t h = 1; h < n && max_rank + 1 < n; h <<= 1) {
        // Least-significant component: rank of the suffix h positions on,
        // shifted so that "past the end" sorts lowest.
        exec.run(n, [&](std::size_t idx) {
            const std::uint32_t pos = arr.payload[idx];
            arr.keys[idx] = pos + h < n ? rank[pos + h] + 1 : 0;
        });
        arr = radix_sort(arr, exec);
        exec.run(n, [&](std::size_t idx) { arr.keys[idx] = rank[arr.payload[idx]]; });
        arr = radix_sort(arr, exec);

        exec.run(n, [&](std::size_t idx) {
            if (idx == 0) {
                diff[idx] = 0;
                return;
            }
            const std::uint32_t p = arr.payload[idx];
            const std::uint32_t q = arr.payload[idx - 1];
            const std::uint32_t p2 = p + h < n ? rank[p + h] + 1 : 0;
            const std::uint32_t q2 = q + h < n ? rank[q + h] + 1 : 0;
            diff[idx] = rank[p] != rank[q] || p2 != q2 ? 1u : 0u;
        });
        pre = exclusive_scan(diff, exec);
        exec.run(n, [&](std::size_t idx) { rank2[arr.payload[idx]] = pre[idx] + diff[idx]; });
        rank.swap(rank2);
        max_rank = pre[n - 1] + diff[n - 1];
    }

    out.sa = std::move(arr.payload);
    out.rank.resize(n);
    exec.run(n, [&](std::size_t idx) {
        out.rank[out.sa[idx]] = static_cast<std::uint32_t>(idx);
    });
    return out;
}

}  // namespace reseq
