#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reseq {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct empty_fragment_error : error {
    std::size_t fragment_index;
    explicit empty_fragment_error(std::size_t index)
        : error("empty fragment at index " + std::to_string(index)),
          fragment_index(index) {}
};

struct invalid_byte_error : error {
    std::size_t fragment_index;
    std::size_t position;
    unsigned char value;
    invalid_byte_error(std::size_t frag, std::size_t pos, unsigned char v)
        : error("invalid byte " + std::to_string(int(v)) + " at position " +
                std::to_string(pos) + " of fragment " + std::to_string(frag)),
          fragment_index(frag), position(pos), value(v) {}
};

struct offset_out_of_range_error : error {
    offset_out_of_range_error(std::uint32_t frag, std::uint32_t offset)
        : error("offset " + std::to_string(offset) +
                " out of range for fragment " + std::to_string(frag)) {}
};

struct shared_breakpoint_error : error {
    std::uint32_t position;
    explicit shared_breakpoint_error(std::uint32_t pos)
        : error("breakpoint " + std::to_string(pos) + " appears in both cuttings"),
          position(pos) {}
};

struct position_out_of_range_error : error {
    explicit position_out_of_range_error(std::uint64_t pos)
        : error("cut position " + std::to_string(pos) + " outside (0, len)") {}
};

struct too_many_cuts_error : error {
    too_many_cuts_error(std::uint64_t cuts, std::uint64_t len)
        : error(std::to_string(cuts) + " cuts do not fit in a sequence of length " +
                std::to_string(len)) {}
};

struct scan_overflow_error : error {
    scan_overflow_error() : error("prefix sum exceeds 32-bit range") {}
};

struct text_too_large_error : error {
    explicit text_too_large_error(std::uint64_t n)
        : error("text of length " + std::to_string(n) + " exceeds 2^31-1") {}
};

struct illegal_move_error : error {
    using error::error;
};

struct too_large_error : error {
    std::size_t count;
    explicit too_large_error(std::size_t k)
        : error("exact superstring limited to 10 fragments, got " + std::to_string(k)),
          count(k) {}
};

struct io_error : error {
    using error::error;
};

}  // namespace reseq
