#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reseq/executor.hpp"
#include "reseq/sequence.hpp"
#include "reseq/suffix_array.hpp"

namespace reseq {

/// Answer to one mutual-prefix query against the whole fragment set:
/// fragments that are proper prefixes of the pattern, fragments the
/// pattern is a proper prefix of, and byte-for-byte equal fragments.
/// Each list is sorted by fragment id.
struct prefix_relation {
    std::vector<std::uint32_t> prefixes_of;
    std::vector<std::uint32_t> extensions_of;
    std::vector<std::uint32_t> exact_matches;
};

/// Immutable prefix-query engine over a fragment set's concatenation.
/// Because every assembler residual is a suffix of an original fragment,
/// one index built per instance answers every query of the search.
class fragment_index {
public:
    enum class builder { direct, scan_radix };

    explicit fragment_index(const fragment_set& set, builder b = builder::direct,
                            const executor& exec = executor())
        : set_(&set) {
        sa_ = b == builder::scan_radix ? build_parallel(set.concat(), exec)
                                       : build_naive(set.concat());
        const std::size_t n = set.concat().size();
        start_marks_.assign(n, false);
        frag_at_start_.assign(n, 0);
        for (std::uint32_t id = 0; id < set.size(); ++id) {
            start_marks_[set.start(id)] = true;
            frag_at_start_[set.start(id)] = id;
        }
        start_rank_list_.reserve(set.size());
        for (std::uint32_t r = 0; r < sa_.sa.size(); ++r)
            if (start_marks_[sa_.sa[r]]) start_rank_list_.push_back(r);
        for (std::uint32_t r : start_rank_list_) {
            const std::uint32_t len = set.length(frag_at_start_[sa_.sa[r]]);
            ranks_by_length_[len].push_back(r);
            if (lengths_.empty() || lengths_.back() != len) lengths_.push_back(len);
        }
        std::sort(lengths_.begin(), lengths_.end());
        lengths_.erase(std::unique(lengths_.begin(), lengths_.end()), lengths_.end());
    }

    const fragment_set& set() const { return *set_; }
    const suffix_array& sa() const { return sa_; }
    bool is_start(std::uint32_t pos) const { return start_marks_[pos]; }
    const std::vector<std::uint32_t>& start_rank_list() const { return start_rank_list_; }

    /// Half-open interval [lo, hi) of sa indices whose suffixes begin with
    /// `pattern`. The pattern must be non-empty and sentinel-free.
    std::pair<std::uint32_t, std::uint32_t> locate_prefix_range(
        std::string_view pattern) const {
        std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(sa_.sa.size());
        narrow(lo, hi, pattern, 0);
        return {lo, hi};
    }

    prefix_relation prefix_related(residual r) const {
        return prefix_related(residual_view(*set_, r));
    }

    /// Mutual-prefix classification of `bytes` against every fragment.
    /// One narrowing sweep over prefix lengths: at each fragment length
    /// l < |bytes| present in the set the current interval equals
    /// locate_prefix_range(bytes[0..l)), and fragment starts of length l
    /// inside it are exactly the proper prefixes; the final interval
    /// yields extensions (longer fragments) and exact matches.
    prefix_relation prefix_related(std::string_view bytes) const {
        prefix_relation rel;
        const std::size_t m = bytes.size();
        std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(sa_.sa.size());
        std::size_t depth = 0;
        for (std::uint32_t len : lengths_) {
            if (len >= m) break;
            narrow(lo, hi, bytes.substr(0, len), depth);
            depth = len;
            if (lo == hi) return rel;
            collect_starts_of_length(len, lo, hi, rel.prefixes_of);
        }
        narrow(lo, hi, bytes, depth);
        auto first = std::lower_bound(start_rank_list_.begin(), start_rank_list_.end(), lo);
        auto last = std::lower_bound(start_rank_list_.begin(), start_rank_list_.end(), hi);
        for (auto it = first; it != last; ++it) {
            const std::uint32_t id = frag_at_start_[sa_.sa[*it]];
            const std::uint32_t len = set_->length(id);
            if (len > m)
                rel.extensions_of.push_back(id);
            else if (len == m)
                rel.exact_matches.push_back(id);
        }
        std::sort(rel.prefixes_of.begin(), rel.prefixes_of.end());
        std::sort(rel.extensions_of.begin(), rel.extensions_of.end());
        std::sort(rel.exact_matches.begin(), rel.exact_matches.end());
        return rel;
    }

private:
    // Shrink [lo, hi), whose suffixes already share pattern[0..depth), to
    // the suffixes sharing all of `pattern`. Only bytes depth.. are read.
    void narrow(std::uint32_t& lo, std::uint32_t& hi, std::string_view pattern,
                std::size_t depth) const {
        const std::string_view text = set_ ? std::string_view(set_->concat())
                                           : std::string_view();
        auto cmp = [&](std::uint32_t rank_idx) {
            // <0: suffix < pattern, 0: suffix starts with pattern, >0: greater
            const std::size_t pos = sa_.sa[rank_idx];
            for (std::size_t t = depth; t < pattern.size(); ++t) {
                if (pos + t >= text.size()) return -1;
                const auto sc = static_cast<unsigned char>(text[pos + t]);
                const auto pc = static_cast<unsigned char>(pattern[t]);
                if (sc != pc) return sc < pc ? -1 : 1;
            }
            return 0;
        };
        std::uint32_t l = lo, r = hi;
        while (l < r) {
            std::uint32_t mid = l + (r - l) / 2;
            if (cmp(mid) < 0)
                l = mid + 1;
            else
                r = mid;
        }
        const std::uint32_t new_lo = l;
        r = hi;
        while (l < r) {
            std::uint32_t mid = l + (r - l) / 2;
            if (cmp(mid) <= 0)
                l = mid + 1;
            else
                r = mid;
        }
        lo = new_lo;
        hi = l;
    }

    void collect_starts_of_length(std::uint32_t len, std::uint32_t lo, std::uint32_t hi,
                                  std::vector<std::uint32_t>& out) const {
        auto it = ranks_by_length_.find(len);
        if (it == ranks_by_length_.end()) return;
        const auto& ranks = it->second;
        auto first = std::lower_bound(ranks.begin(), ranks.end(), lo);
        auto last = std::lower_bound(ranks.begin(), ranks.end(), hi);
        for (; first != last; ++first) out.push_back(frag_at_start_[sa_.sa[*first]]);
    }

    const fragment_set* set_;
    suffix_array sa_;
    std::vector<bool> start_marks_;
    std::vector<std::uint32_t> frag_at_start_;
    std::vector<std::uint32_t> start_rank_list_;
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> ranks_by_length_;
    std::vector<std::uint32_t> lengths_;
};

}  // namespace reseq
