#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reseq/errors.hpp"

namespace reseq {

/// Alphabet the byte strings are validated against. DNA restricts bytes to
/// {A,C,G,T}; generic_byte permits the printable range 33..126, leaving
/// 0..32 reserved for sentinels.
enum class alphabet : std::uint8_t { dna, generic_byte };

constexpr char kSeparator = '\0';

inline bool byte_valid(unsigned char c, alphabet mode) {
    if (mode == alphabet::dna)
        return c == 'A' || c == 'C' || c == 'G' || c == 'T';
    return c >= 33 && c <= 126;
}

inline void validate_bytes(std::string_view bytes, alphabet mode,
                           std::size_t fragment_index = 0) {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        auto c = static_cast<unsigned char>(bytes[i]);
        if (!byte_valid(c, mode))
            throw invalid_byte_error(fragment_index, i, c);
    }
}

/// Immutable validated byte string.
class sequence {
public:
    sequence() : mode_(alphabet::generic_byte) {}
    sequence(std::string bytes, alphabet mode) : bytes_(std::move(bytes)), mode_(mode) {
        validate_bytes(bytes_, mode_);
    }

    const std::string& bytes() const { return bytes_; }
    std::string_view view() const { return bytes_; }
    std::size_t size() const { return bytes_.size(); }
    alphabet mode() const { return mode_; }

    friend bool operator==(const sequence& a, const sequence& b) {
        return a.bytes_ == b.bytes_;
    }

private:
    std::string bytes_;
    alphabet mode_;
};

/// Indexed multiset of fragments. Fragment bytes live in a single
/// concatenation `concat` = f0 SEP f1 SEP ... f(k-1) SEP where SEP is the
/// byte 0; `starts[i]` is the offset of fragment i's first byte.
class fragment_set {
public:
    fragment_set() : mode_(alphabet::generic_byte), total_len_(0) {}

    std::size_t size() const { return starts_.size(); }
    bool empty() const { return starts_.empty(); }
    alphabet mode() const { return mode_; }

    const std::string& concat() const { return concat_; }
    const std::vector<std::uint32_t>& starts() const { return starts_; }
    std::uint64_t total_len() const { return total_len_; }

    std::uint32_t start(std::uint32_t id) const { return starts_[id]; }

    std::uint32_t length(std::uint32_t id) const {
        std::uint32_t end = id + 1 < starts_.size()
                                ? starts_[id + 1] - 1
                                : static_cast<std::uint32_t>(concat_.size()) - 1;
        return end - starts_[id];
    }

    std::string_view bytes(std::uint32_t id) const {
        return std::string_view(concat_).substr(starts_[id], length(id));
    }

    friend fragment_set make_fragment_set(const std::vector<std::string>&, alphabet);

private:
    std::string concat_;
    std::vector<std::uint32_t> starts_;
    alphabet mode_;
    std::uint64_t total_len_;
};

/// A (fragment, offset) view denoting a non-empty suffix of one fragment;
/// the assembler's running overhang.
struct residual {
    std::uint32_t frag = 0;
    std::uint32_t offset = 0;

    friend bool operator==(const residual&, const residual&) = default;
};

inline fragment_set make_fragment_set(const std::vector<std::string>& fragments,
                                      alphabet mode) {
    fragment_set set;
    set.mode_ = mode;
    std::size_t total = 0;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        if (fragments[i].empty()) throw empty_fragment_error(i);
        validate_bytes(fragments[i], mode, i);
        total += fragments[i].size();
    }
    if (total + fragments.size() > (1ull << 31) - 1)
        throw text_too_large_error(total + fragments.size());
    set.concat_.reserve(total + fragments.size());
    set.starts_.reserve(fragments.size());
    for (const auto& f : fragments) {
        set.starts_.push_back(static_cast<std::uint32_t>(set.concat_.size()));
        set.concat_.append(f);
        set.concat_.push_back(kSeparator);
    }
    set.total_len_ = total;
    return set;
}

/// Zero-copy view of fragment(r.frag)[r.offset..]. The view must be non-empty.
inline std::string_view residual_view(const fragment_set& set, residual r) {
    if (r.frag >= set.size() || r.offset >= set.length(r.frag))
        throw offset_out_of_range_error(r.frag, r.offset);
    return set.bytes(r.frag).substr(r.offset);
}

}  // namespace reseq
