#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "reseq/errors.hpp"
#include "reseq/sequence.hpp"
#include "reseq/shotgun.hpp"

namespace reseq {

/// Fragment file: one fragment per line, LF-terminated, no blank lines.
inline std::vector<std::string> read_fragment_lines(std::istream& in) {
    std::vector<std::string> frags;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) throw io_error("blank line in fragment file");
        frags.push_back(line);
    }
    return frags;
}

inline std::vector<std::string> read_fragment_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    return read_fragment_lines(in);
}

inline void write_fragment_file(const std::string& path,
                                const fragment_set& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (std::uint32_t i = 0; i < set.size(); ++i) {
        out << set.bytes(i) << '\n';
    }
}

/// FASTA or raw text: '>' header lines are dropped, whitespace and control
/// bytes are stripped, and DNA mode folds to uppercase.
inline std::string read_sequence_text(std::istream& in, alphabet mode) {
    std::string text;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '>') continue;
        for (char c : line) {
            auto u = static_cast<unsigned char>(c);
            if (u <= 32 || u == 127) continue;
            text.push_back(mode == alphabet::dna
                               ? static_cast<char>(std::toupper(u))
                               : c);
        }
    }
    return text;
}

inline sequence read_sequence_file(const std::string& path, alphabet mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    auto text = read_sequence_text(in, mode);
    if (text.empty()) throw io_error(path + " holds no sequence data");
    return sequence(std::move(text), mode);
}

/// Instance dump: line 1 original length, lines 2 and 3 the two cut
/// position lists (space separated, possibly empty), then the shuffled
/// fragment lines.
inline void write_instance_dump(std::ostream& out, const instance& inst) {
    out << inst.original.size() << '\n';
    for (const auto* cuts : {&inst.cuts_a, &inst.cuts_b}) {
        for (std::size_t i = 0; i < cuts->positions.size(); ++i)
            out << (i ? " " : "") << cuts->positions[i];
        out << '\n';
    }
    for (std::uint32_t i = 0; i < inst.fragments.size(); ++i)
        out << inst.fragments.bytes(i) << '\n';
}

struct instance_dump {
    std::uint64_t original_len = 0;
    cut_spec cuts_a;
    cut_spec cuts_b;
    std::vector<std::string> fragments;
};

inline instance_dump read_instance_dump(std::istream& in) {
    instance_dump dump;
    std::string line;
    if (!std::getline(in, line)) throw io_error("instance dump: missing length line");
    dump.original_len = std::stoull(line);
    for (auto* cuts : {&dump.cuts_a, &dump.cuts_b}) {
        if (!std::getline(in, line)) throw io_error("instance dump: missing cut line");
        std::istringstream ss(line);
        std::uint32_t p;
        while (ss >> p) cuts->positions.push_back(p);
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) throw io_error("instance dump: blank fragment line");
        dump.fragments.push_back(line);
    }
    return dump;
}

/// Pick DNA when every byte could be a base, otherwise generic bytes.
inline alphabet detect_alphabet(std::string_view text) {
    for (char c : text) {
        switch (std::toupper(static_cast<unsigned char>(c))) {
            case 'A':
            case 'C':
            case 'G':
            case 'T':
                continue;
            default:
                return alphabet::generic_byte;
        }
    }
    return alphabet::dna;
}

}  // namespace reseq
