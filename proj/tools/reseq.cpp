// reseq command line: instance generation, reconstruction, superstring
// baseline, suffix-array building and the benchmark harness.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reseq/reseq.hpp"

namespace {

constexpr int kExitUnsolvable = 2;
constexpr int kExitLimit = 3;

reseq::alphabet pick_alphabet(const std::string& name,
                              const std::vector<std::string>& samples) {
    if (name == "dna") return reseq::alphabet::dna;
    if (name == "byte") return reseq::alphabet::generic_byte;
    for (const auto& s : samples)
        if (reseq::detect_alphabet(s) == reseq::alphabet::generic_byte)
            return reseq::alphabet::generic_byte;
    return reseq::alphabet::dna;
}

void fold_dna(std::vector<std::string>& frags) {
    for (auto& f : frags)
        for (auto& c : f) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

std::vector<std::string> load_fragments(const std::string& path,
                                        const std::string& alphabet_name,
                                        reseq::alphabet& mode_out) {
    auto frags = reseq::read_fragment_file(path);
    mode_out = pick_alphabet(alphabet_name, frags);
    if (mode_out == reseq::alphabet::dna) fold_dna(frags);
    return frags;
}

reseq::sequence load_sequence(const std::string& path, const std::string& alphabet_name) {
    if (alphabet_name == "dna") return reseq::read_sequence_file(path, reseq::alphabet::dna);
    if (alphabet_name == "byte")
        return reseq::read_sequence_file(path, reseq::alphabet::generic_byte);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw reseq::io_error("cannot open " + path);
    auto raw = reseq::read_sequence_text(in, reseq::alphabet::generic_byte);
    if (raw.empty()) throw reseq::io_error(path + " holds no sequence data");
    auto mode = reseq::detect_alphabet(raw);
    if (mode == reseq::alphabet::dna)
        for (auto& c : raw) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return reseq::sequence(std::move(raw), mode);
}

std::vector<std::size_t> default_sizes() {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1 << 10; n <= 1 << 20; n <<= 1) sizes.push_back(n);
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reseq: reassemble a sequence from the merged fragments of two "
                 "complete shotgun cuttings"};
    app.require_subcommand(1);

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    std::size_t chunk_size = std::size_t{1} << 15;
    std::uint64_t seed = 1;
    std::string format = "txt";
    std::string alphabet_name = "auto";
    std::string config_path;
    auto* workers_opt =
        app.add_option("--workers", workers, "worker count (default: core count)");
    auto* chunk_opt = app.add_option("--chunk-size", chunk_size, "elements per chunk");
    app.add_option("--seed", seed, "seed for deterministic generators");
    app.add_option("--format", format, "output format where applicable (bin|txt)");
    app.add_option("--alphabet", alphabet_name, "auto|dna|byte")
        ->check(CLI::IsMember({"auto", "dna", "byte"}));
    app.add_option("--config", config_path, "JSON config with workers/chunk_size");

    // shotgun
    auto* cmd_shotgun = app.add_subcommand("shotgun", "cut a sequence twice and emit "
                                                      "the shuffled fragment file");
    std::string sg_input, sg_out, sg_meta;
    std::size_t sg_m = 4, sg_n = 4;
    cmd_shotgun->add_option("input", sg_input, "FASTA or raw sequence file")->required();
    cmd_shotgun->add_option("-m", sg_m, "interior breakpoints of the first cutting");
    cmd_shotgun->add_option("-n", sg_n, "interior breakpoints of the second cutting");
    cmd_shotgun->add_option("-o,--out", sg_out, "fragment file to write")->required();
    cmd_shotgun->add_option("--meta", sg_meta,
                            "instance dump sidecar (default: <out>.meta)");

    // reconstruct
    auto* cmd_rec = app.add_subcommand("reconstruct", "reconstruct the original "
                                                      "sequence from a fragment file");
    std::string rec_input;
    bool rec_naive = false, rec_indexed = false, rec_trace = false;
    std::uint64_t rec_max_nodes = 10'000'000;
    std::uint32_t rec_max_depth = 0;
    std::string rec_builder = "direct";
    cmd_rec->add_option("input", rec_input, "fragment file")->required();
    cmd_rec->add_flag("--naive", rec_naive, "scan fragments pairwise for every query");
    cmd_rec->add_flag("--indexed", rec_indexed, "query through the suffix-array index");
    cmd_rec->add_flag("--emit-trace", rec_trace, "print the move trace");
    cmd_rec->add_option("--max-nodes", rec_max_nodes, "search node limit");
    cmd_rec->add_option("--max-depth", rec_max_depth, "search depth limit (0: auto)");
    cmd_rec->add_option("--sa-builder", rec_builder,
                        "index construction: direct|scan-radix")
        ->check(CLI::IsMember({"direct", "scan-radix"}));

    // overlap
    auto* cmd_overlap = app.add_subcommand("overlap", "overlap graph and superstring "
                                                      "baseline");
    std::string ov_mode, ov_input, ov_out;
    cmd_overlap->add_option("mode", ov_mode, "dump|greedy|exact")
        ->required()
        ->check(CLI::IsMember({"dump", "greedy", "exact"}));
    cmd_overlap->add_option("input", ov_input, "fragment file")->required();
    cmd_overlap->add_option("-o,--out", ov_out, "output file (default: stdout)");

    // build-sa
    auto* cmd_sa = app.add_subcommand("build-sa", "build the suffix array of a text");
    std::string sa_input, sa_out;
    cmd_sa->add_option("input", sa_input, "FASTA or raw text file")->required();
    cmd_sa->add_option("-o,--out", sa_out, "output file")->required();

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "timing sweep, CSV output");
    std::vector<std::size_t> bn_sizes;
    std::vector<unsigned> bn_workers;
    std::vector<std::string> bn_ops;
    std::string bn_out, bn_unit = "frags", bn_mode = "indexed";
    unsigned bn_reps = 3, bn_digit_bits = 4;
    bool bn_strict = false;
    cmd_bench->add_option("--sizes", bn_sizes, "input sizes (default: 2^10..2^20)")
        ->delimiter(',');
    cmd_bench->add_option("--ops", bn_ops,
                          "radix_sort,chunked_radix_sort,build_parallel,reconstruct")
        ->delimiter(',');
    cmd_bench->add_option("--workers", bn_workers, "worker counts to sweep")
        ->delimiter(',');
    cmd_bench->add_option("--reps", bn_reps, "repetitions per point (>=3 advised)");
    cmd_bench->add_option("--digit-bits", bn_digit_bits, "chunked sort digit width 1..8");
    cmd_bench->add_option("--unit", bn_unit, "reconstruct size unit: frags|bases")
        ->check(CLI::IsMember({"frags", "bases"}));
    cmd_bench->add_option("--reconstruct-mode", bn_mode, "naive|indexed")
        ->check(CLI::IsMember({"naive", "indexed"}));
    cmd_bench->add_flag("--strict-sizes", bn_strict,
                        "reject sizes that are not powers of two in 2^10..2^20");
    cmd_bench->add_option("-o,--out", bn_out, "CSV file (default: stdout)");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "check a candidate sequence "
                                                    "against a fragment file");
    std::string vf_frags, vf_seq_file, vf_expect;
    cmd_verify->add_option("fragments", vf_frags, "fragment file")->required();
    cmd_verify->add_option("--sequence", vf_seq_file, "candidate sequence file");
    cmd_verify->add_option("--expect", vf_expect, "candidate given inline");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            std::ifstream cfg(config_path);
            if (!cfg) throw reseq::io_error("cannot open config " + config_path);
            nlohmann::json j;
            cfg >> j;
            if (j.contains("workers") && workers_opt->count() == 0)
                workers = j["workers"].get<unsigned>();
            if (j.contains("chunk_size") && chunk_opt->count() == 0)
                chunk_size = j["chunk_size"].get<std::size_t>();
        }
        reseq::executor_config exec_cfg{workers, chunk_size};

        if (cmd_shotgun->parsed()) {
            auto seq = load_sequence(sg_input, alphabet_name);
            auto [ca, cb] = reseq::random_cut_pair(seq.size(), sg_m, sg_n, seed);
            auto inst = reseq::double_cut(seq, std::move(ca), std::move(cb), seed);
            reseq::write_fragment_file(sg_out, inst.fragments);
            std::ofstream meta(sg_meta.empty() ? sg_out + ".meta" : sg_meta,
                               std::ios::binary);
            reseq::write_instance_dump(meta, inst);
            std::cerr << "wrote " << inst.fragments.size() << " fragments to " << sg_out
                      << "\n";
            return 0;
        }

        if (cmd_rec->parsed()) {
            if (rec_naive && rec_indexed)
                throw reseq::error("--naive and --indexed are mutually exclusive");
            reseq::alphabet mode;
            auto frags = load_fragments(rec_input, alphabet_name, mode);
            auto set = reseq::make_fragment_set(frags, mode);
            reseq::search_limits limits{rec_max_nodes, rec_max_depth};
            reseq::reconstruction_result res;
            if (rec_naive) {
                res = reseq::reconstruct(set, limits);
            } else {
                reseq::executor exec(exec_cfg);
                reseq::fragment_index ix(set,
                                         rec_builder == "scan-radix"
                                             ? reseq::fragment_index::builder::scan_radix
                                             : reseq::fragment_index::builder::direct,
                                         exec);
                res = reseq::reconstruct(set, limits, &ix);
            }
            if (res.status == reseq::solve_status::unsolvable) {
                std::cerr << "unsolvable: no pair of disjoint tilings covers the "
                             "fragment set\n";
                return kExitUnsolvable;
            }
            if (res.status == reseq::solve_status::limit_exceeded) {
                std::cerr << "limit exceeded: nodes=" << res.stats.nodes_expanded
                          << " backtracks=" << res.stats.backtracks << "\n";
                return kExitLimit;
            }
            std::cout << res.seq.bytes() << "\n";
            std::cout << "# length=" << res.seq.size()
                      << " nodes=" << res.stats.nodes_expanded
                      << " backtracks=" << res.stats.backtracks
                      << " max_depth=" << res.stats.max_depth << "\n";
            if (rec_trace) std::cout << reseq::format_trace(res.trace);
            return 0;
        }

        if (cmd_overlap->parsed()) {
            reseq::alphabet mode;
            auto frags = load_fragments(ov_input, alphabet_name, mode);
            auto set = reseq::make_fragment_set(frags, mode);
            std::ofstream file;
            if (!ov_out.empty()) {
                file.open(ov_out, std::ios::binary);
                if (!file) throw reseq::io_error("cannot open " + ov_out);
            }
            std::ostream& out = ov_out.empty() ? std::cout : file;
            if (ov_mode == "dump") {
                auto g = reseq::build_overlap_graph(set);
                for (std::uint32_t i = 0; i < g.k; ++i) {
                    for (std::uint32_t j = 0; j < g.k; ++j)
                        out << (j ? "," : "") << g.at(i, j);
                    out << "\n";
                }
            } else if (ov_mode == "greedy") {
                auto res = reseq::greedy_superstring_with_order(set);
                out << res.superstring << "\n";
                out << "# length=" << res.superstring.size() << " order=";
                for (std::size_t i = 0; i < res.order.size(); ++i)
                    out << (i ? " " : "") << res.order[i];
                out << "\n";
            } else {
                auto s = reseq::exact_superstring_small(set);
                out << s.bytes() << "\n";
                out << "# length=" << s.size() << "\n";
            }
            return 0;
        }

        if (cmd_sa->parsed()) {
            auto seq = load_sequence(sa_input, alphabet_name);
            reseq::executor exec(exec_cfg);
            auto sa = reseq::build_parallel(seq.view(), exec);
            std::ofstream out(sa_out, std::ios::binary);
            if (!out) throw reseq::io_error("cannot open " + sa_out);
            if (format == "bin") {
                for (std::uint32_t v : sa.sa) {
                    char le[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                                  static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
                    out.write(le, 4);
                }
            } else {
                for (std::uint32_t v : sa.sa) out << v << "\n";
            }
            std::cerr << "wrote " << sa.sa.size() << " entries to " << sa_out << "\n";
            return 0;
        }

        if (cmd_bench->parsed()) {
            reseq::bench::options opt;
            opt.sizes = bn_sizes.empty() ? default_sizes() : bn_sizes;
            if (bn_strict)
                for (auto s : opt.sizes)
                    if (s < (1 << 10) || s > (1 << 20) || (s & (s - 1)))
                        throw CLI::ValidationError(
                            "--sizes", std::to_string(s) + " is not a power of two "
                                                           "in 2^10..2^20");
            if (!bn_ops.empty()) opt.ops = bn_ops;
            opt.workers = bn_workers.empty() ? std::vector<unsigned>{1, workers}
                                             : bn_workers;
            opt.chunk_size = chunk_size;
            opt.digit_bits = bn_digit_bits;
            opt.reps = bn_reps;
            opt.seed = seed;
            opt.naive_reconstruct = bn_mode == "naive";
            opt.unit_bases = bn_unit == "bases";
            auto rows = reseq::bench::run_benchmarks(opt);
            if (bn_out.empty()) {
                reseq::bench::write_csv(std::cout, rows);
            } else {
                std::ofstream out(bn_out, std::ios::binary);
                if (!out) throw reseq::io_error("cannot open " + bn_out);
                reseq::bench::write_csv(out, rows);
                std::cerr << "wrote " << rows.size() << " rows to " << bn_out << "\n";
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            reseq::alphabet mode;
            auto frags = load_fragments(vf_frags, alphabet_name, mode);
            auto set = reseq::make_fragment_set(frags, mode);
            std::string candidate;
            if (!vf_seq_file.empty())
                candidate = load_sequence(vf_seq_file, alphabet_name).bytes();
            else if (!vf_expect.empty())
                candidate = vf_expect;
            else
                throw reseq::error("verify needs --sequence or --expect");
            if (mode == reseq::alphabet::dna)
                for (auto& c : candidate)
                    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            const bool ok = reseq::verify_tiling(candidate, set);
            std::cout << (ok ? "valid tiling" : "invalid") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
