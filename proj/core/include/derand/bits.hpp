#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace derand {

/// A finite bit string. Bit 0 is the leftmost bit; conversions to and from
/// integers are most-significant-bit first, so "110" has value 6.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t length) : bits_(length, 0) {}

    static BitString from_string(std::string_view text);
    static BitString from_uint(std::uint64_t value, std::size_t length);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool b) { bits_[i] = b ? 1 : 0; }
    void push_back(bool b) { bits_.push_back(b ? 1 : 0); }
    void append(const BitString& other);
    void append_uint(std::uint64_t value, std::size_t length);

    BitString slice(std::size_t pos, std::size_t length) const;
    /// Integer value of bits [pos, pos+length), MSB first. length <= 64.
    std::uint64_t to_uint(std::size_t pos, std::size_t length) const;
    std::uint64_t to_uint() const { return to_uint(0, size()); }

    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Number of bits needed to index `count` values (ceil(log2(count))); 0 for count <= 1.
unsigned ceil_log2(std::uint64_t count);

} // namespace derand
