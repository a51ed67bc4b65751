#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tentcode {

/// A finite bit sequence b_1 ... b_n, serialized as ASCII '0'/'1' with b_1
/// first. The empty code exists only as a recursion seed.
class Code {
public:
    Code() = default;
    explicit Code(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    static Code parse(std::string_view s) {
        Code c;
        c.bits_.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw std::domain_error("Code: expected only '0'/'1'");
            c.bits_.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return c;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    int back() const { return bits_.back(); }
    void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit)); }

    Code complement() const {
        Code c;
        c.bits_.reserve(bits_.size());
        for (auto b : bits_) c.bits_.push_back(static_cast<std::uint8_t>(1 - b));
        return c;
    }

    /// Drops the first bit (the shift b_1 b_2 ... b_n -> b_2 ... b_n).
    Code tail() const {
        Code c;
        c.bits_.assign(bits_.begin() + (bits_.empty() ? 0 : 1), bits_.end());
        return c;
    }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    /// Lexicographic order; on equal-length codes this is the section order.
    friend auto operator<=>(const Code& a, const Code& b) = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace tentcode
