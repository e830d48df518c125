#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "reseq/assembler.hpp"
#include "reseq/executor.hpp"
#include "reseq/fragment_index.hpp"
#include "reseq/radix_sort.hpp"
#include "reseq/sequence.hpp"
#include "reseq/shotgun.hpp"
#include "reseq/suffix_array.hpp"

namespace reseq::bench {

struct bench_record {
    std::string op;
    std::uint64_t n = 0;
    unsigned workers = 1;
    std::size_t chunk_size = 0;
    unsigned rep = 0;
    std::uint64_t wall_time_ns = 0;
    std::uint64_t checksum = 0;
};

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t checksum_u32(const std::vector<std::uint32_t>& v,
                                  std::uint64_t h = 14695981039346656037ull) {
    for (std::uint32_t x : v) {
        char le[4] = {static_cast<char>(x), static_cast<char>(x >> 8),
                      static_cast<char>(x >> 16), static_cast<char>(x >> 24)};
        h = fnv1a64(std::string_view(le, 4), h);
    }
    return h;
}

inline std::uint64_t checksum_keys(const key_array& a) {
    return checksum_u32(a.payload, checksum_u32(a.keys));
}

inline key_array make_random_keys(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    key_array a;
    a.keys.resize(n);
    a.payload.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.keys[i] = static_cast<std::uint32_t>(rng());
        a.payload[i] = static_cast<std::uint32_t>(i);
    }
    return a;
}

inline std::string make_random_dna(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string s(n, 'A');
    static constexpr char bases[4] = {'A', 'C', 'G', 'T'};
    for (std::size_t i = 0; i < n; ++i) s[i] = bases[rng() & 3];
    return s;
}

/// Random double-cut instance with exactly k fragments over a random DNA
/// original of length 16*k (so fragments average 32 bases).
inline instance make_reconstruct_instance(std::size_t k, std::uint64_t seed) {
    const std::size_t L = 16 * k;
    sequence seq(make_random_dna(L, seed), alphabet::dna);
    const std::size_t m = (k - 2) / 2;
    const std::size_t n = (k - 2) - m;
    auto [ca, cb] = random_cut_pair(L, m, n, seed ^ 0x9e3779b97f4a7c15ull);
    return double_cut(seq, std::move(ca), std::move(cb), seed ^ 0xda942042e4dd58b5ull);
}

template <typename F>
std::uint64_t time_ns(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

struct options {
    std::vector<std::string> ops{"radix_sort", "chunked_radix_sort", "build_parallel",
                                 "reconstruct"};
    std::vector<std::size_t> sizes;
    std::vector<unsigned> workers{1};
    std::size_t chunk_size = std::size_t{1} << 15;
    unsigned digit_bits = 4;
    unsigned reps = 3;
    std::uint64_t seed = 1;
    bool naive_reconstruct = false;
    bool unit_bases = false;  // reconstruct size counts bases instead of fragments
};

inline std::vector<bench_record> run_benchmarks(const options& opt) {
    std::vector<bench_record> rows;
    for (const auto& op : opt.ops) {
        for (std::size_t size : opt.sizes) {
            // Inputs are a function of (op, size, seed) only, so checksums
            // must agree across worker counts.
            key_array keys;
            std::string text;
            instance inst;
            if (op == "radix_sort" || op == "chunked_radix_sort")
                keys = make_random_keys(size, opt.seed);
            else if (op == "build_parallel")
                text = make_random_dna(size, opt.seed);
            else if (op == "reconstruct")
                inst = make_reconstruct_instance(
                    opt.unit_bases ? std::max<std::size_t>(2, size / 32) : size,
                    opt.seed);
            else
                continue;

            for (unsigned w : opt.workers) {
                executor exec(executor_config{w, opt.chunk_size});
                for (unsigned rep = 0; rep < opt.reps; ++rep) {
                    bench_record row{op, size, w, opt.chunk_size, rep, 0, 0};
                    if (op == "radix_sort") {
                        key_array out;
                        row.wall_time_ns = time_ns([&] { out = radix_sort(keys, exec); });
                        row.checksum = checksum_keys(out);
                    } else if (op == "chunked_radix_sort") {
                        key_array out;
                        row.wall_time_ns = time_ns(
                            [&] { out = chunked_radix_sort(keys, exec, opt.digit_bits); });
                        row.checksum = checksum_keys(out);
                    } else if (op == "build_parallel") {
                        suffix_array sa;
                        row.wall_time_ns = time_ns([&] { sa = build_parallel(text, exec); });
                        row.checksum = checksum_u32(sa.sa);
                    } else {
                        reconstruction_result res;
                        if (opt.naive_reconstruct) {
                            row.wall_time_ns =
                                time_ns([&] { res = reconstruct(inst.fragments); });
                        } else {
                            row.wall_time_ns = time_ns([&] {
                                fragment_index ix(inst.fragments);
                                res = reconstruct(inst.fragments, {}, &ix);
                            });
                        }
                        row.checksum = res.status == solve_status::solved
                                           ? fnv1a64(res.seq.bytes())
                                           : 0;
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<bench_record>& rows) {
    out << "op,n,workers,chunk_size,rep,wall_time_ns,checksum\n";
    for (const auto& r : rows)
        out << r.op << ',' << r.n << ',' << r.workers << ',' << r.chunk_size << ','
            << r.rep << ',' << r.wall_time_ns << ',' << r.checksum << '\n';
}

}  // namespace reseq::bench
