#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/fragment_index.hpp"
#include "reseq/sequence.hpp"

namespace reseq {

/// One assembler search step. Init lays down a fir pair (p a proper prefix
/// of q); ExtendBy consumes a fragment the residual is a proper prefix of;
/// Absorb removes a whole fragment from the front of the residual; Finish
/// consumes a fragment equal to the residual.
struct move {
    enum class kind : std::uint8_t { init, extend_by, absorb, finish };

    kind k = kind::init;
    std::uint32_t a = 0;  // p for init, f otherwise
    std::uint32_t b = 0;  // q for init

    friend bool operator==(const move&, const move&) = default;
};

struct search_state {
    std::vector<std::uint32_t> remaining;  // unused fragment ids, sorted
    std::optional<residual> overhang;
    std::uint64_t rs_len = 0;
    std::vector<move> trace;
};

struct search_stats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t backtracks = 0;
    std::uint32_t max_depth = 0;
};

struct search_limits {
    std::uint64_t max_nodes = 10'000'000;
    std::uint32_t max_depth = 0;  // 0: defaults to fragment count + 1
};

enum class solve_status { solved, unsolvable, limit_exceeded };

struct reconstruction_result {
    solve_status status = solve_status::unsolvable;
    sequence seq;
    std::vector<move> trace;
    search_stats stats;
};

inline search_state initial_state(const fragment_set& set) {
    search_state st;
    st.remaining.resize(set.size());
    std::iota(st.remaining.begin(), st.remaining.end(), 0u);
    return st;
}

/// All ordered pairs (p, q) among `remaining` with fragment p a proper
/// prefix of fragment q, sorted by (|p|, p bytes, q bytes, p id, q id).
/// Scans pairwise unless an index is supplied.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> find_fir_pairs(
    const fragment_set& set, const std::vector<std::uint32_t>& remaining,
    const fragment_index* ix = nullptr) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (ix) {
        std::vector<bool> in(set.size(), false);
        for (auto id : remaining) in[id] = true;
        for (auto p : remaining) {
            auto rel = ix->prefix_related(set.bytes(p));
            for (auto q : rel.extensions_of)
                if (in[q]) pairs.emplace_back(p, q);
        }
    } else {
        for (auto p : remaining)
            for (auto q : remaining) {
                if (p == q) continue;
                auto pb = set.bytes(p);
                auto qb = set.bytes(q);
                if (pb.size() < qb.size() && qb.substr(0, pb.size()) == pb)
                    pairs.emplace_back(p, q);
            }
    }
    std::sort(pairs.begin(), pairs.end(), [&set](const auto& x, const auto& y) {
        auto px = set.bytes(x.first), py = set.bytes(y.first);
        if (px.size() != py.size()) return px.size() < py.size();
        if (px != py) return px < py;
        auto qx = set.bytes(x.second), qy = set.bytes(y.second);
        if (qx != qy) return qx < qy;
        return x < y;
    });
    return pairs;
}

namespace detail {

// Candidate moves for a state with an overhang, shared by the public
// step_candidates and the search loop so both orders agree byte for byte.
// Finish first (only when the matching fragment is the last one), then
// Absorb by (length, id), then ExtendBy by (length, id); ExtendBy moves
// that would push rs_len past the target length are dead and dropped.
template <typename Contains>
inline std::vector<move> collect_candidates(const fragment_set& set,
                                            const fragment_index* ix,
                                            const Contains& contains,
                                            std::size_t remaining_count, residual r,
                                            std::uint64_t rs_len) {
    const std::string_view rb = residual_view(set, r);
    const std::uint64_t target = set.total_len() / 2;
    std::vector<std::uint32_t> absorbs, extends, exacts;
    if (ix) {
        auto rel = ix->prefix_related(rb);
        for (auto id : rel.prefixes_of)
            if (contains(id)) absorbs.push_back(id);
        for (auto id : rel.extensions_of)
            if (contains(id)) extends.push_back(id);
        for (auto id : rel.exact_matches)
            if (contains(id)) exacts.push_back(id);
    } else {
        for (std::uint32_t id = 0; id < set.size(); ++id) {
            if (!contains(id)) continue;
            auto f = set.bytes(id);
            if (f.size() < rb.size() && rb.substr(0, f.size()) == f)
                absorbs.push_back(id);
            else if (f.size() > rb.size() && f.substr(0, rb.size()) == rb)
                extends.push_back(id);
            else if (f == rb)
                exacts.push_back(id);
        }
    }
    auto by_len_id = [&set](std::uint32_t x, std::uint32_t y) {
        auto lx = set.length(x), ly = set.length(y);
        return lx != ly ? lx < ly : x < y;
    };
    std::sort(absorbs.begin(), absorbs.end(), by_len_id);
    std::sort(extends.begin(), extends.end(), by_len_id);

    std::vector<move> out;
    if (remaining_count == 1 && exacts.size() == 1)
        out.push_back({move::kind::finish, exacts.front(), 0});
    for (auto id : absorbs) out.push_back({move::kind::absorb, id, 0});
    for (auto id : extends)
        if (rs_len + set.length(id) - rb.size() <= target)
            out.push_back({move::kind::extend_by, id, 0});
    return out;
}

}  // namespace detail

/// Legal continuation moves of a mid-search state, in the deterministic
/// order the search uses. Empty means a dead end.
inline std::vector<move> step_candidates(const fragment_set& set,
                                         const search_state& state,
                                         const fragment_index* ix = nullptr) {
    if (!state.overhang) throw illegal_move_error("state has no residual");
    auto contains = [&state](std::uint32_t id) {
        return std::binary_search(state.remaining.begin(), state.remaining.end(), id);
    };
    return detail::collect_candidates(set, ix, contains, state.remaining.size(),
                                      *state.overhang, state.rs_len);
}

/// Apply one move to a state, returning the successor. Validates the
/// move-kind invariant; a Finish that strands fragments is legal here and
/// simply leaves a dead state behind.
inline search_state apply_move(const fragment_set& set, const search_state& state,
                               move mv) {
    search_state next = state;
    auto take = [&next](std::uint32_t id) {
        auto it = std::lower_bound(next.remaining.begin(), next.remaining.end(), id);
        if (it == next.remaining.end() || *it != id)
            throw illegal_move_error("fragment " + std::to_string(id) + " not remaining");
        next.remaining.erase(it);
    };
    switch (mv.k) {
        case move::kind::init: {
            if (state.overhang || state.rs_len != 0)
                throw illegal_move_error("init on a started state");
            auto p = set.bytes(mv.a);
            auto q = set.bytes(mv.b);
            if (mv.a == mv.b || p.size() >= q.size() || q.substr(0, p.size()) != p)
                throw illegal_move_error("init arguments are not a fir pair");
            take(mv.a);
            take(mv.b);
            next.overhang = residual{mv.b, static_cast<std::uint32_t>(p.size())};
            next.rs_len = q.size();
            break;
        }
        case move::kind::extend_by: {
            if (!state.overhang) throw illegal_move_error("no residual to extend");
            auto rb = residual_view(set, *state.overhang);
            auto f = set.bytes(mv.a);
            if (f.size() <= rb.size() || f.substr(0, rb.size()) != rb)
                throw illegal_move_error("residual is not a proper prefix of fragment");
            take(mv.a);
            next.overhang = residual{mv.a, static_cast<std::uint32_t>(rb.size())};
            next.rs_len += f.size() - rb.size();
            break;
        }
        case move::kind::absorb: {
            if (!state.overhang) throw illegal_move_error("no residual to absorb from");
            auto rb = residual_view(set, *state.overhang);
            auto f = set.bytes(mv.a);
            if (f.size() >= rb.size() || rb.substr(0, f.size()) != f)
                throw illegal_move_error("fragment is not a proper prefix of residual");
            take(mv.a);
            next.overhang->offset += static_cast<std::uint32_t>(f.size());
            break;
        }
        case move::kind::finish: {
            if (!state.overhang) throw illegal_move_error("no residual to finish");
            auto rb = residual_view(set, *state.overhang);
            if (set.bytes(mv.a) != rb)
                throw illegal_move_error("fragment does not equal the residual");
            take(mv.a);
            next.overhang.reset();
            break;
        }
    }
    next.trace.push_back(mv);
    return next;
}

/// Depth-first reconstruction with backtracking: lay down a fir pair,
/// advance the overhang until a Finish empties the set, undo on dead
/// ends. Returns the first solution in search order; its byte string is
/// always tiling-valid. Init pairs are tried shortest p first, then
/// shortest q, then by ids.
inline reconstruction_result reconstruct(const fragment_set& set,
                                         search_limits limits = {},
                                         const fragment_index* ix = nullptr) {
    if (set.empty()) throw error("reconstruct: empty fragment set");
    const std::size_t k = set.size();
    const std::uint32_t depth_limit =
        limits.max_depth ? limits.max_depth : static_cast<std::uint32_t>(k + 1);

    reconstruction_result res;
    if (set.total_len() % 2 != 0) return res;  // two equal tilings are impossible

    std::vector<bool> in_remaining(k, true);
    std::size_t remaining_count = k;
    auto contains = [&in_remaining](std::uint32_t id) { return in_remaining[id]; };

    std::vector<std::uint32_t> all_ids(k);
    std::iota(all_ids.begin(), all_ids.end(), 0u);
    auto fir = find_fir_pairs(set, all_ids, ix);
    std::sort(fir.begin(), fir.end(), [&set](const auto& x, const auto& y) {
        auto lpx = set.length(x.first), lpy = set.length(y.first);
        if (lpx != lpy) return lpx < lpy;
        auto lqx = set.length(x.second), lqy = set.length(y.second);
        if (lqx != lqy) return lqx < lqy;
        return x < y;
    });

    struct frame {
        std::vector<move> candidates;
        std::size_t cursor = 0;
        // snapshot for undoing the move that created the *next* frame
        residual saved_overhang{};
        bool had_overhang = false;
        std::uint64_t saved_rs_len = 0;
        std::size_t saved_rs_size = 0;
    };

    std::optional<residual> overhang;
    std::uint64_t rs_len = 0;
    std::string rs;
    std::vector<move> trace;
    std::vector<frame> stack;

    {
        frame root;
        root.candidates.reserve(fir.size());
        for (auto& [p, q] : fir) root.candidates.push_back({move::kind::init, p, q});
        stack.push_back(std::move(root));
    }

    auto apply = [&](move mv) {
        stack.back().had_overhang = overhang.has_value();
        if (overhang) stack.back().saved_overhang = *overhang;
        stack.back().saved_rs_len = rs_len;
        stack.back().saved_rs_size = rs.size();
        switch (mv.k) {
            case move::kind::init: {
                in_remaining[mv.a] = in_remaining[mv.b] = false;
                remaining_count -= 2;
                overhang = residual{mv.b, set.length(mv.a)};
                rs_len = set.length(mv.b);
                rs.assign(set.bytes(mv.b));
                break;
            }
            case move::kind::extend_by: {
                const std::uint32_t rlen = static_cast<std::uint32_t>(
                    residual_view(set, *overhang).size());
                in_remaining[mv.a] = false;
                --remaining_count;
                overhang = residual{mv.a, rlen};
                rs_len += set.length(mv.a) - rlen;
                rs.append(set.bytes(mv.a).substr(rlen));
                break;
            }
            case move::kind::absorb: {
                in_remaining[mv.a] = false;
                --remaining_count;
                overhang->offset += set.length(mv.a);
                break;
            }
            case move::kind::finish: {
                in_remaining[mv.a] = false;
                --remaining_count;
                overhang.reset();
                break;
            }
        }
        trace.push_back(mv);
    };

    auto undo = [&]() {
        const move mv = trace.back();
        trace.pop_back();
        const frame& f = stack.back();
        if (mv.k == move::kind::init) {
            in_remaining[mv.a] = in_remaining[mv.b] = true;
            remaining_count += 2;
        } else {
            in_remaining[mv.a] = true;
            ++remaining_count;
        }
        overhang = f.had_overhang ? std::optional<residual>(f.saved_overhang)
                                  : std::nullopt;
        rs_len = f.saved_rs_len;
        rs.resize(f.saved_rs_size);
    };

    while (!stack.empty()) {
        frame& top = stack.back();
        if (top.cursor == top.candidates.size()) {
            stack.pop_back();
            if (!stack.empty()) {
                undo();
                ++res.stats.backtracks;
            }
            continue;
        }
        const move mv = top.candidates[top.cursor++];
        apply(mv);
        ++res.stats.nodes_expanded;
        res.stats.max_depth =
            std::max(res.stats.max_depth, static_cast<std::uint32_t>(trace.size()));
        if (res.stats.nodes_expanded > limits.max_nodes ||
            trace.size() > depth_limit) {
            res.status = solve_status::limit_exceeded;
            return res;
        }
        if (!overhang && remaining_count == 0) {
            res.status = solve_status::solved;
            res.seq = sequence(rs, set.mode());
            res.trace = trace;
            return res;
        }
        frame child;
        if (overhang)
            child.candidates = detail::collect_candidates(set, ix, contains,
                                                          remaining_count, *overhang,
                                                          rs_len);
        stack.push_back(std::move(child));
    }
    res.status = solve_status::unsolvable;
    return res;
}

/// True iff the fragment multiset splits into two groups that each
/// concatenate, in some order, to exactly `candidate`, with the two
/// interior breakpoint sets disjoint. Searches by extending whichever
/// tiling currently ends earlier.
inline bool verify_tiling(std::string_view candidate, const fragment_set& set) {
    const std::size_t L = candidate.size();
    if (set.total_len() != 2 * L) return false;
    if (set.empty()) return L == 0;

    const std::size_t k = set.size();
    std::vector<std::vector<std::uint32_t>> by_first(257);
    for (std::uint32_t id = 0; id < k; ++id)
        by_first[static_cast<unsigned char>(set.bytes(id).front())].push_back(id);

    std::vector<bool> used(k, false);

    auto rec = [&](auto&& self, std::size_t fa, std::size_t fb) -> bool {
        if (fa == L && fb == L) return true;
        const bool extend_a = fa <= fb;
        const std::size_t x = extend_a ? fa : fb;
        const std::size_t other = extend_a ? fb : fa;
        std::vector<std::string_view> tried;
        for (std::uint32_t id : by_first[static_cast<unsigned char>(candidate[x])]) {
            if (used[id]) continue;
            auto f = set.bytes(id);
            if (x + f.size() > L) continue;
            if (candidate.substr(x, f.size()) != f) continue;
            const std::size_t nx = x + f.size();
            if (nx == other && nx != L) continue;  // shared interior breakpoint
            if (std::find(tried.begin(), tried.end(), f) != tried.end()) continue;
            tried.push_back(f);
            used[id] = true;
            if (extend_a ? self(self, nx, fb) : self(self, fa, nx)) return true;
            used[id] = false;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

/// Trace serialization: one move per line, INIT p q | EXT f | ABS f | FIN f.
inline std::string format_trace(const std::vector<move>& trace) {
    std::string out;
    for (const auto& mv : trace) {
        switch (mv.k) {
            case move::kind::init:
                out += "INIT " + std::to_string(mv.a) + " " + std::to_string(mv.b);
                break;
            case move::kind::extend_by:
                out += "EXT " + std::to_string(mv.a);
                break;
            case move::kind::absorb:
                out += "ABS " + std::to_string(mv.a);
                break;
            case move::kind::finish:
                out += "FIN " + std::to_string(mv.a);
                break;
        }
        out += '\n';
    }
    return out;
}

}  // namespace reseq
