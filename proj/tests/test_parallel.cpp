#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "reseq/radix_sort.hpp"
#include "reseq/scan.hpp"

using namespace reseq;

namespace {

// Filter-concatenate oracle for one split pass.
key_array stable_partition_oracle(const key_array& a, unsigned bit) {
    key_array out;
    for (int want = 0; want < 2; ++want)
        for (std::size_t i = 0; i < a.keys.size(); ++i)
            if (((a.keys[i] >> bit) & 1u) == unsigned(want)) {
                out.keys.push_back(a.keys[i]);
                if (a.has_payload()) out.payload.push_back(a.payload[i]);
            }
    return out;
}

key_array stable_sort_oracle(const key_array& a) {
    std::vector<std::size_t> idx(a.keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return a.keys[x] < a.keys[y]; });
    key_array out;
    for (auto i : idx) {
        out.keys.push_back(a.keys[i]);
        if (a.has_payload()) out.payload.push_back(a.payload[i]);
    }
    return out;
}

key_array random_array(std::mt19937_64& rng, std::size_t n, bool small_keys) {
    key_array a;
    a.keys.resize(n);
    a.payload.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.keys[i] = static_cast<std::uint32_t>(rng());
        if (small_keys) a.keys[i] &= 0x3F;
        a.payload[i] = static_cast<std::uint32_t>(i);
    }
    return a;
}

}  // namespace

TEST_CASE("exclusive_scan basics") {
    REQUIRE(exclusive_scan(std::vector<std::uint32_t>{3, 1, 7, 0}) ==
            std::vector<std::uint32_t>{0, 3, 4, 11});
    REQUIRE(exclusive_scan(std::vector<std::uint32_t>{}).empty());
    std::vector<std::uint32_t> ones(1024, 1);
    auto out = exclusive_scan(ones);
    for (std::uint32_t i = 0; i < 1024; ++i) REQUIRE(out[i] == i);
}

TEST_CASE("exclusive_scan detects 32-bit overflow instead of wrapping") {
    std::vector<std::uint32_t> v{0xFFFFFFFFu, 1u};
    REQUIRE_THROWS_AS(exclusive_scan(v), scan_overflow_error);
    std::vector<std::uint32_t> ok{0xFFFFFFFEu, 1u};
    REQUIRE(exclusive_scan(ok) == std::vector<std::uint32_t>{0, 0xFFFFFFFEu});
}

TEST_CASE("scan is linear") {
    std::mt19937_64 rng(17);
    executor ex(executor_config{2, 512});
    for (int it = 0; it < 20; ++it) {
        const std::size_t n = rng() % 3000;
        std::vector<std::uint32_t> a(n), b(n), ab(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng() % 1000;
            b[i] = rng() % 1000;
            ab[i] = a[i] + b[i];
        }
        auto sa = exclusive_scan(a, ex);
        auto sb = exclusive_scan(b, ex);
        auto sab = exclusive_scan(ab, ex);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(sab[i] == sa[i] + sb[i]);
    }
}

TEST_CASE("split examples") {
    key_array a{{5, 2, 7, 4}, {}};
    REQUIRE(split_by_bit(a, 0).keys == std::vector<std::uint32_t>{2, 4, 5, 7});

    key_array b{{1, 1, 0, 0}, {10, 11, 12, 13}};
    auto s = split_by_bit(b, 0);
    REQUIRE(s.keys == std::vector<std::uint32_t>{0, 0, 1, 1});
    REQUIRE(s.payload == std::vector<std::uint32_t>{12, 13, 10, 11});

    key_array c{{6, 3, 6, 2}, {0, 1, 2, 3}};
    REQUIRE(split_by_bit(c, 1) == stable_partition_oracle(c, 1));
}

TEST_CASE("split matches the stable partition oracle on random input") {
    std::mt19937_64 rng(23);
    executor ex(executor_config{3, 128});
    for (int it = 0; it < 60; ++it) {
        auto a = random_array(rng, rng() % 2500, it % 2);
        const unsigned bit = rng() % 32;
        REQUIRE(split_by_bit(a, bit, ex) == stable_partition_oracle(a, bit));
    }
}

TEST_CASE("split plan: tof counts the zero bits and destinations cover 0..n-1") {
    std::mt19937_64 rng(29);
    executor ex;
    for (int it = 0; it < 30; ++it) {
        auto a = random_array(rng, 1 + rng() % 800, false);
        const unsigned bit = rng() % 32;
        auto plan = detail::split_destinations(a.keys, bit, ex);
        std::uint32_t zeros = 0;
        for (auto k : a.keys) zeros += ((k >> bit) & 1u) ^ 1u;
        REQUIRE(plan.total_false == zeros);
        auto d = plan.destinations;
        std::sort(d.begin(), d.end());
        for (std::uint32_t i = 0; i < d.size(); ++i) REQUIRE(d[i] == i);
    }
}

TEST_CASE("radix_sort examples") {
    key_array a{{170, 45, 75, 90, 2, 24, 802, 66}, {}};
    REQUIRE(radix_sort(a).keys ==
            std::vector<std::uint32_t>{2, 24, 45, 66, 75, 90, 170, 802});
    REQUIRE(radix_sort(key_array{}).keys.empty());
    key_array one{{7}, {0}};
    REQUIRE(radix_sort(one) == one);
}

TEST_CASE("radix and chunked sorts match the comparison oracle") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        auto a = random_array(rng, rng() % 4000, it % 3 == 0);
        auto want = stable_sort_oracle(a);
        for (unsigned w : {1u, 4u}) {
            executor ex(executor_config{w, 1 + rng() % 700});
            REQUIRE(radix_sort(a, ex) == want);
            REQUIRE(chunked_radix_sort(a, ex, 1) == want);
            REQUIRE(chunked_radix_sort(a, ex, 4) == want);
            REQUIRE(chunked_radix_sort(a, ex, 8) == want);
        }
    }
}

TEST_CASE("sort outputs are identical for every executor configuration") {
    std::mt19937_64 rng(37);
    auto a = random_array(rng, 20000, false);
    executor base;
    auto want_r = radix_sort(a, base);
    auto want_c = chunked_radix_sort(a, base, 4);
    REQUIRE(want_r == want_c);
    for (unsigned w : {2u, 8u}) {
        for (std::size_t chunk : {64u, 1500u, 50000u}) {
            executor ex(executor_config{w, chunk});
            REQUIRE(radix_sort(a, ex) == want_r);
            REQUIRE(chunked_radix_sort(a, ex, 4) == want_c);
        }
    }
}

TEST_CASE("chunked sort digit width is validated") {
    key_array a{{1, 2}, {}};
    executor ex;
    REQUIRE_THROWS_AS(chunked_radix_sort(a, ex, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(chunked_radix_sort(a, ex, 9), std::invalid_argument);
}
