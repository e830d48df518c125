#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/sequence.hpp"

namespace reseq {

/// Longest l with a's length-l suffix equal to b's length-l prefix.
inline std::uint32_t overlap_weight(std::string_view a, std::string_view b) {
    const std::size_t limit = std::min(a.size(), b.size());
    std::uint32_t best = 0;
    for (std::size_t l = 1; l <= limit; ++l)
        if (a.substr(a.size() - l) == b.substr(0, l))
            best = static_cast<std::uint32_t>(l);
    return best;
}

/// Dense overlap matrix of the fragment set, diagonal zero by convention.
struct overlap_graph {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> weight;  // row-major k*k

    std::uint32_t at(std::uint32_t i, std::uint32_t j) const {
        return weight[std::size_t{i} * k + j];
    }
};

inline overlap_graph build_overlap_graph(const fragment_set& set) {
    overlap_graph g;
    g.k = static_cast<std::uint32_t>(set.size());
    g.weight.assign(std::size_t{g.k} * g.k, 0);
    for (std::uint32_t i = 0; i < g.k; ++i)
        for (std::uint32_t j = 0; j < g.k; ++j)
            if (i != j)
                g.weight[std::size_t{i} * g.k + j] =
                    overlap_weight(set.bytes(i), set.bytes(j));
    return g;
}

namespace detail {

// Drop fragments that occur inside another fragment; among equal
// duplicates the lowest id survives.
inline std::vector<std::uint32_t> absorb_contained(const fragment_set& set) {
    std::vector<std::uint32_t> keep;
    for (std::uint32_t i = 0; i < set.size(); ++i) {
        const auto fi = set.bytes(i);
        bool contained = false;
        for (std::uint32_t j = 0; j < set.size() && !contained; ++j) {
            if (i == j) continue;
            const auto fj = set.bytes(j);
            if (fj.size() > fi.size() && fj.find(fi) != std::string_view::npos)
                contained = true;
            else if (fj == fi && j < i)
                contained = true;
        }
        if (!contained) keep.push_back(i);
    }
    return keep;
}

}  // namespace detail

struct greedy_result {
    std::string superstring;
    std::vector<std::uint32_t> order;  // original ids in concatenation order
};

/// Greedy maximal-overlap merge: absorb contained fragments, then
/// repeatedly merge the pair with the largest overlap (ties broken by the
/// lowest (i, j) id pair, the merged string keeping the left id) until one
/// string remains.
inline greedy_result greedy_superstring_with_order(const fragment_set& set) {
    auto ids = detail::absorb_contained(set);
    std::vector<std::string> work;
    std::vector<std::vector<std::uint32_t>> order;
    for (auto id : ids) {
        work.emplace_back(set.bytes(id));
        order.push_back({id});
    }
    std::vector<std::uint32_t> alive(work.size());
    std::iota(alive.begin(), alive.end(), 0u);

    while (alive.size() > 1) {
        std::uint32_t best_i = 0, best_j = 0;
        std::int64_t best = -1;
        for (auto i : alive)
            for (auto j : alive) {
                if (i == j) continue;
                const auto w = overlap_weight(work[i], work[j]);
                if (static_cast<std::int64_t>(w) > best) {
                    best = w;
                    best_i = i;
                    best_j = j;
                }
            }
        work[best_i] += work[best_j].substr(best);
        order[best_i].insert(order[best_i].end(), order[best_j].begin(),
                             order[best_j].end());
        alive.erase(std::find(alive.begin(), alive.end(), best_j));
    }
    greedy_result res;
    res.superstring = std::move(work[alive.front()]);
    res.order = std::move(order[alive.front()]);
    return res;
}

inline sequence greedy_superstring(const fragment_set& set) {
    return sequence(greedy_superstring_with_order(set).superstring, set.mode());
}

/// Exhaustive shortest common superstring for desk-scale sets: try every
/// ordering of the absorbed fragments, overlap adjacent pairs maximally,
/// keep the shortest result (byte order breaks length ties).
inline sequence exact_superstring_small(const fragment_set& set) {
    auto ids = detail::absorb_contained(set);
    if (ids.size() > 10) throw too_large_error(ids.size());
    std::sort(ids.begin(), ids.end());
    std::string best;
    bool have = false;
    std::vector<std::uint32_t> perm = ids;
    do {
        std::string s(set.bytes(perm.front()));
        for (std::size_t i = 1; i < perm.size(); ++i) {
            const auto f = set.bytes(perm[i]);
            s += f.substr(overlap_weight(s, f));
        }
        if (!have || s.size() < best.size() || (s.size() == best.size() && s < best)) {
            best = std::move(s);
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sequence(best, set.mode());
}

}  // namespace reseq
