#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/sequence.hpp"

namespace reseq {

namespace detail {

// Bounded draw by rejection so results do not depend on the standard
// library's distribution implementations. mt19937_64 itself is specified
// bit-exactly by the standard.
inline std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[bounded_u64(rng, i)]);
}

}  // namespace detail

/// Strictly increasing interior breakpoints of one cutting, all in (0, len).
struct cut_spec {
    std::vector<std::uint32_t> positions;

    bool valid_for(std::uint64_t len) const {
        std::uint32_t prev = 0;
        for (auto p : positions) {
            if (p <= prev || p >= len) return false;
            prev = p;
        }
        return true;
    }
};

/// One generated problem instance: an original sequence, the two cuttings,
/// and the merged, shuffled fragment multiset.
struct instance {
    sequence original;
    cut_spec cuts_a;
    cut_spec cuts_b;
    fragment_set fragments;
    std::uint64_t shuffle_seed = 0;
};

inline std::vector<std::string> slice(const sequence& seq, const cut_spec& cuts) {
    std::vector<std::string> pieces;
    std::size_t prev = 0;
    for (auto p : cuts.positions) {
        pieces.push_back(seq.bytes().substr(prev, p - prev));
        prev = p;
    }
    pieces.push_back(seq.bytes().substr(prev));
    return pieces;
}

/// Cut `seq` twice, merge the pieces into one multiset and shuffle it
/// deterministically. The two cuttings must not share a breakpoint.
inline instance double_cut(const sequence& seq, cut_spec cuts_a, cut_spec cuts_b,
                           std::uint64_t shuffle_seed) {
    const std::uint64_t len = seq.size();
    for (const auto* c : {&cuts_a, &cuts_b})
        for (auto p : c->positions)
            if (p == 0 || p >= len) throw position_out_of_range_error(p);
    if (!cuts_a.valid_for(len) || !cuts_b.valid_for(len))
        throw position_out_of_range_error(len);
    {
        std::vector<std::uint32_t> merged = cuts_a.positions;
        merged.insert(merged.end(), cuts_b.positions.begin(), cuts_b.positions.end());
        std::sort(merged.begin(), merged.end());
        auto dup = std::adjacent_find(merged.begin(), merged.end());
        if (dup != merged.end()) throw shared_breakpoint_error(*dup);
    }

    auto pieces = slice(seq, cuts_a);
    auto b = slice(seq, cuts_b);
    pieces.insert(pieces.end(), std::make_move_iterator(b.begin()),
                  std::make_move_iterator(b.end()));
    std::mt19937_64 rng(shuffle_seed);
    detail::fisher_yates(pieces, rng);

    instance inst;
    inst.original = seq;
    inst.cuts_a = std::move(cuts_a);
    inst.cuts_b = std::move(cuts_b);
    inst.fragments = make_fragment_set(pieces, seq.mode());
    inst.shuffle_seed = shuffle_seed;
    return inst;
}

/// Draw m + n distinct breakpoints uniformly from 1..len-1 and partition
/// them into two cut specs of sizes m and n. Deterministic in rng_seed.
inline std::pair<cut_spec, cut_spec> random_cut_pair(std::uint64_t len, std::size_t m,
                                                     std::size_t n,
                                                     std::uint64_t rng_seed) {
    const std::size_t want = m + n;
    if (len == 0 || want > len - 1) throw too_many_cuts_error(want, len);
    std::mt19937_64 rng(rng_seed);

    // Floyd's sampling: uniform `want`-subset of {1..len-1} without a
    // full permutation buffer.
    std::vector<std::uint32_t> sample;
    sample.reserve(want);
    for (std::uint64_t j = len - want; j < len; ++j) {
        std::uint64_t t = 1 + detail::bounded_u64(rng, j);
        if (std::find(sample.begin(), sample.end(), t) != sample.end())
            sample.push_back(static_cast<std::uint32_t>(j));
        else
            sample.push_back(static_cast<std::uint32_t>(t));
    }
    detail::fisher_yates(sample, rng);

    cut_spec a, b;
    a.positions.assign(sample.begin(), sample.begin() + m);
    b.positions.assign(sample.begin() + m, sample.end());
    std::sort(a.positions.begin(), a.positions.end());
    std::sort(b.positions.begin(), b.positions.end());
    return {std::move(a), std::move(b)};
}

}  // namespace reseq
