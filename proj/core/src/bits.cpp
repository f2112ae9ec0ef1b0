#include "derand/bits.hpp"

#include "derand/error.hpp"

#include <bit>

namespace derand {

BitString BitString::from_string(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw Error("bits", "invalid bit character '" + std::string(1, c) + "'");
        out.bits_.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t length) {
    BitString out;
    out.append_uint(value, length);
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitString::append_uint(std::uint64_t value, std::size_t length) {
    if (length > 64)
        throw Error("bits", "integer field wider than 64 bits");
    if (length < 64 && (value >> length) != 0)
        throw Error("bits", "value does not fit in " + std::to_string(length) + " bits");
    for (std::size_t i = length; i-- > 0;)
        bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

BitString BitString::slice(std::size_t pos, std::size_t length) const {
    if (pos + length > bits_.size())
        throw Error("bits", "slice out of range");
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + length));
    return out;
}

std::uint64_t BitString::to_uint(std::size_t pos, std::size_t length) const {
    if (length > 64)
        throw Error("bits", "integer field wider than 64 bits");
    if (pos + length > bits_.size())
        throw Error("bits", "field out of range");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < length; ++i)
        v = (v << 1) | bits_[pos + i];
    return v;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_)
        s.push_back(b ? '1' : '0');
    return s;
}

unsigned ceil_log2(std::uint64_t count) {
    if (count <= 1)
        return 0;
    return static_cast<unsigned>(std::bit_width(count - 1));
}

} // namespace derand
