#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "reseq/assembler.hpp"
#include "reseq/shotgun.hpp"

using namespace reseq;

namespace {

using id_pair = std::pair<std::uint32_t, std::uint32_t>;

// Exhaustive tiling enumerator: every partition of the fragments into two
// groups, every ordering of each group; collect the strings where both
// groups concatenate identically with disjoint interior breakpoints.
std::set<std::string> enumerate_tilings(const std::vector<std::string>& frags) {
    std::set<std::string> out;
    const std::size_t k = frags.size();
    std::size_t total = 0;
    for (const auto& f : frags) total += f.size();
    if (total % 2 || k < 2) return out;

    auto breakpoints = [&](const std::vector<std::uint32_t>& perm) {
        std::set<std::size_t> cuts;
        std::size_t pos = 0;
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
            pos += frags[perm[i]].size();
            cuts.insert(pos);
        }
        return cuts;
    };
    auto concat = [&](const std::vector<std::uint32_t>& perm) {
        std::string s;
        for (auto id : perm) s += frags[id];
        return s;
    };

    // fragment 0 goes to group A, which halves the symmetric partitions
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        if (!(mask & 1)) continue;
        std::vector<std::uint32_t> a, b;
        std::size_t alen = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                a.push_back(i);
                alen += frags[i].size();
            } else {
                b.push_back(i);
            }
        }
        if (b.empty() || alen * 2 != total) continue;
        std::sort(a.begin(), a.end());
        do {
            const auto sa = concat(a);
            const auto ca = breakpoints(a);
            std::sort(b.begin(), b.end());
            do {
                if (concat(b) != sa) continue;
                const auto cb = breakpoints(b);
                bool disjoint = true;
                for (auto c : ca)
                    if (cb.count(c)) {
                        disjoint = false;
                        break;
                    }
                if (disjoint) out.insert(sa);
            } while (std::next_permutation(b.begin(), b.end()));
        } while (std::next_permutation(a.begin(), a.end()));
    }
    return out;
}

fragment_set gatt_set() {
    return make_fragment_set({"GATT", "ACA", "GGT", "GA", "TTAC", "AGGT"},
                             alphabet::dna);
}

}  // namespace

TEST_CASE("find_fir_pairs orders by length then bytes") {
    auto set = make_fragment_set({"a", "ab", "aa", "b"}, alphabet::generic_byte);
    auto pairs = find_fir_pairs(set, {0, 1, 2, 3});
    REQUIRE(pairs == std::vector<id_pair>{{0, 2}, {0, 1}});  // (a,aa) then (a,ab)

    fragment_index ix(set);
    REQUIRE(find_fir_pairs(set, {0, 1, 2, 3}, &ix) == pairs);

    auto g = gatt_set();
    REQUIRE(find_fir_pairs(g, {0, 1, 2, 3, 4, 5}) == std::vector<id_pair>{{3, 0}});

    auto none = make_fragment_set({"XY", "ZW"}, alphabet::generic_byte);
    REQUIRE(find_fir_pairs(none, {0, 1}).empty());
}

TEST_CASE("find_fir_pairs respects the remaining set") {
    auto set = make_fragment_set({"a", "ab", "aa", "b"}, alphabet::generic_byte);
    REQUIRE(find_fir_pairs(set, {0, 1, 3}) == std::vector<id_pair>{{0, 1}});
    fragment_index ix(set);
    REQUIRE(find_fir_pairs(set, {0, 1, 3}, &ix) == std::vector<id_pair>{{0, 1}});
}

TEST_CASE("step_candidates on the worked instance") {
    auto set = gatt_set();
    auto st = apply_move(set, initial_state(set), {move::kind::init, 3, 0});
    REQUIRE(residual_view(set, *st.overhang) == "TT");
    auto cands = step_candidates(set, st);
    REQUIRE(cands == std::vector<move>{{move::kind::extend_by, 4, 0}});

    fragment_index ix(set);
    REQUIRE(step_candidates(set, st, &ix) == cands);
}

TEST_CASE("step_candidates finds absorbs and finishes") {
    auto set = make_fragment_set({"ab", "cd", "efgh", "abcdef", "gh"},
                                 alphabet::generic_byte);
    auto st = apply_move(set, initial_state(set), {move::kind::init, 0, 3});
    REQUIRE(residual_view(set, *st.overhang) == "cdef");
    REQUIRE(step_candidates(set, st) == std::vector<move>{{move::kind::absorb, 1, 0}});

    auto g = make_fragment_set({"GGT"}, alphabet::dna);
    search_state s;
    s.remaining = {0};
    s.overhang = residual{0, 0};
    REQUIRE(step_candidates(g, s) == std::vector<move>{{move::kind::finish, 0, 0}});
}

TEST_CASE("apply_move updates the state per move kind") {
    auto set = gatt_set();
    auto st = initial_state(set);

    auto after_init = apply_move(set, st, {move::kind::init, 3, 0});
    REQUIRE(after_init.rs_len == 4);
    REQUIRE(after_init.overhang == residual{0, 2});
    REQUIRE(after_init.remaining == std::vector<std::uint32_t>{1, 2, 4, 5});

    auto after_ext = apply_move(set, after_init, {move::kind::extend_by, 4, 0});
    REQUIRE(after_ext.rs_len == 6);
    REQUIRE(residual_view(set, *after_ext.overhang) == "AC");

    auto abcd = make_fragment_set({"ab", "cd", "efgh", "abcdef", "gh"},
                                  alphabet::generic_byte);
    auto s1 = apply_move(abcd, initial_state(abcd), {move::kind::init, 0, 3});
    auto s2 = apply_move(abcd, s1, {move::kind::absorb, 1, 0});
    REQUIRE(residual_view(abcd, *s2.overhang) == "ef");
    REQUIRE(s2.rs_len == s1.rs_len);
}

TEST_CASE("a finish that strands fragments leaves a dead state") {
    auto set = make_fragment_set({"a", "ab", "aa", "b"}, alphabet::generic_byte);
    auto st = apply_move(set, initial_state(set), {move::kind::init, 0, 1});
    REQUIRE(residual_view(set, *st.overhang) == "b");
    // not offered as a candidate...
    REQUIRE(step_candidates(set, st).empty());
    // ...but legal to apply, and the result is dead, not a success
    auto dead = apply_move(set, st, {move::kind::finish, 3, 0});
    REQUIRE_FALSE(dead.overhang.has_value());
    REQUIRE(dead.remaining == std::vector<std::uint32_t>{2});
}

TEST_CASE("apply_move rejects malformed moves") {
    auto set = gatt_set();
    auto st = initial_state(set);
    REQUIRE_THROWS_AS(apply_move(set, st, {move::kind::init, 1, 0}), illegal_move_error);
    REQUIRE_THROWS_AS(apply_move(set, st, {move::kind::extend_by, 0, 0}),
                      illegal_move_error);
    auto started = apply_move(set, st, {move::kind::init, 3, 0});
    REQUIRE_THROWS_AS(apply_move(set, started, {move::kind::init, 3, 0}),
                      illegal_move_error);
    REQUIRE_THROWS_AS(apply_move(set, started, {move::kind::absorb, 1, 0}),
                      illegal_move_error);
    REQUIRE_THROWS_AS(apply_move(set, started, {move::kind::finish, 3, 0}),
                      illegal_move_error);
}

TEST_CASE("reconstruct solves the worked instance without backtracking") {
    auto res = reconstruct(gatt_set());
    REQUIRE(res.status == solve_status::solved);
    REQUIRE(res.seq.bytes() == "GATTACAGGT");
    REQUIRE(res.stats.backtracks == 0);
    REQUIRE(format_trace(res.trace) == "INIT 3 0\nEXT 4\nEXT 1\nEXT 5\nFIN 2\n");
}

TEST_CASE("reconstruct backtracks exactly once on {a, ab, aa, b}") {
    auto set = make_fragment_set({"a", "ab", "aa", "b"}, alphabet::generic_byte);
    auto res = reconstruct(set);
    REQUIRE(res.status == solve_status::solved);
    REQUIRE(res.seq.bytes() == "aab");
    REQUIRE(res.stats.backtracks == 1);
}

TEST_CASE("unsolvable and degenerate inputs") {
    auto none = make_fragment_set({"XY", "ZW"}, alphabet::generic_byte);
    auto r = reconstruct(none);
    REQUIRE(r.status == solve_status::unsolvable);
    REQUIRE(r.stats.nodes_expanded == 0);

    auto odd = make_fragment_set({"abc", "ab"}, alphabet::generic_byte);
    auto r2 = reconstruct(odd);
    REQUIRE(r2.status == solve_status::unsolvable);
    REQUIRE(r2.stats.nodes_expanded == 0);

    REQUIRE_THROWS_AS(reconstruct(fragment_set{}), error);
}

TEST_CASE("node and depth limits stop the search") {
    auto set = gatt_set();
    REQUIRE(reconstruct(set, {2, 0}).status == solve_status::limit_exceeded);
    REQUIRE(reconstruct(set, {10'000'000, 2}).status == solve_status::limit_exceeded);
}

TEST_CASE("identical inputs give identical traces") {
    auto set = gatt_set();
    fragment_index ix(set);
    auto a = reconstruct(set);
    auto b = reconstruct(set);
    auto c = reconstruct(set, {}, &ix);
    REQUIRE(a.trace == b.trace);
    REQUIRE(a.trace == c.trace);
    REQUIRE(a.seq.bytes() == c.seq.bytes());
}

TEST_CASE("verify_tiling accepts generating instances and rejects mismatches") {
    REQUIRE(verify_tiling("GATTACAGGT", gatt_set()));
    REQUIRE(verify_tiling("aab", make_fragment_set({"a", "ab", "aa", "b"},
                                                   alphabet::generic_byte)));
    auto bad = make_fragment_set({"GATT", "ACA", "GGT", "GA", "TTAC", "AGGA"},
                                 alphabet::dna);
    REQUIRE_FALSE(verify_tiling("GATTACAGGT", bad));
    REQUIRE_FALSE(verify_tiling("GATTACAGG", gatt_set()));
    // two identical whole-string fragments tile trivially
    REQUIRE(verify_tiling("ab", make_fragment_set({"ab", "ab"},
                                                  alphabet::generic_byte)));
    // equal halves force a shared interior breakpoint
    REQUIRE_FALSE(verify_tiling("abab", make_fragment_set({"ab", "ab", "ab", "ab"},
                                                          alphabet::generic_byte)));
}

TEST_CASE("round-trip: instances from double_cut always reconstruct") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 120; ++it) {
        const std::size_t L = 6 + rng() % 80;
        std::string s;
        for (std::size_t i = 0; i < L; ++i) s.push_back("ACGT"[rng() % 4]);
        sequence seq(s, alphabet::dna);
        const std::size_t cap = std::max<std::size_t>(1, L / 10);
        std::size_t m = rng() % (cap + 1), n = rng() % (cap + 1);
        if (m + n == 0) m = 1;
        auto [ca, cb] = random_cut_pair(L, m, n, rng());
        auto inst = double_cut(seq, ca, cb, rng());

        auto naive = reconstruct(inst.fragments);
        fragment_index ix(inst.fragments);
        auto indexed = reconstruct(inst.fragments, {}, &ix);

        REQUIRE(naive.status == solve_status::solved);
        REQUIRE(naive.seq.size() == L);
        REQUIRE(verify_tiling(naive.seq.bytes(), inst.fragments));
        REQUIRE(indexed.status == solve_status::solved);
        REQUIRE(indexed.seq.bytes() == naive.seq.bytes());
        REQUIRE(indexed.trace == naive.trace);
        for (const auto& mv : naive.trace)
            if (mv.k == move::kind::extend_by || mv.k == move::kind::init)
                REQUIRE(naive.seq.bytes().find(inst.fragments.bytes(mv.a)) !=
                        std::string::npos);
    }
}

TEST_CASE("reconstruct output is always in the exhaustive tiling enumeration") {
    std::mt19937_64 rng(67);
    for (int it = 0; it < 40; ++it) {
        const std::size_t L = 4 + rng() % 18;
        std::string s;
        for (std::size_t i = 0; i < L; ++i) s.push_back("ab"[rng() % 2]);
        sequence seq(s, alphabet::generic_byte);
        const std::size_t total_cuts = std::min<std::size_t>(1 + rng() % 5, L - 1);
        const std::size_t m = rng() % (total_cuts + 1);
        auto [ca, cb] = random_cut_pair(L, m, total_cuts - m, rng());
        auto inst = double_cut(seq, ca, cb, rng());

        std::vector<std::string> frags;
        for (std::uint32_t i = 0; i < inst.fragments.size(); ++i)
            frags.emplace_back(inst.fragments.bytes(i));
        auto all = enumerate_tilings(frags);
        REQUIRE(all.count(s) == 1);

        auto res = reconstruct(inst.fragments);
        REQUIRE(res.status == solve_status::solved);
        REQUIRE(all.count(res.seq.bytes()) == 1);
    }
}
