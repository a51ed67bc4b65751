#pragma once

#include "tentcode/rational.hpp"

#include <cstdint>

namespace tentcode {

/// Deterministic bit source over a 64-bit-state splitmix generator. The same
/// seed always yields the same infinite bit stream; split() derives an
/// independent stream. Not cryptographic.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed) : state_(seed) {}

    std::uint64_t seed() const { return seed_copy_; }

    std::uint64_t next_word() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Next bit of the stream, most significant bit of each word first.
    int next_bit() {
        if (bits_left_ == 0) {
            buffer_ = next_word();
            bits_left_ = 64;
        }
        --bits_left_;
        return static_cast<int>((buffer_ >> bits_left_) & 1u);
    }

    /// Derives an independent source (splittable contract).
    BitSource split() { return BitSource(next_word()); }

private:
    std::uint64_t state_;
    std::uint64_t seed_copy_ = state_;
    std::uint64_t buffer_ = 0;
    int bits_left_ = 0;
};

/// A random rational in [0,1) with denominator in [1, max_den]; the workhorse
/// for randomized invariant checks (not distribution-critical).
inline Rational random_unit_rational(BitSource& src, std::uint64_t max_den) {
    std::uint64_t den = src.next_word() % max_den + 1;
    std::uint64_t num = src.next_word() % den;
    return Rational(BigInt(num), BigInt(den));
}

/// Returns 1 with probability exactly p, by lazily comparing the source's bit
/// stream (a uniform U in [0,1)) against the binary expansion of p: the draw
/// is [U < p]. Consumes 2 bits in expectation and never buffers more than it
/// consumes. No floating point is involved.
inline int bernoulli_exact(const Rational& p, BitSource& src) {
    if (p.sign() < 0 || p > Rational(1)) {
        throw std::domain_error("bernoulli_exact: p outside [0,1]");
    }
    if (p.is_zero()) return 0;
    if (p == Rational(1)) return 1;
    // Digits of p = a/b come from repeated doubling of the remainder; the
    // denominator stays fixed so no normalization is needed in the loop.
    BigInt a = p.num();
    const BigInt& b = p.den();
    for (;;) {
        a <<= 1;
        int digit = (a >= b) ? 1 : 0;
        if (digit) a -= b;
        int r = src.next_bit();
        if (r != digit) return r < digit ? 1 : 0;
    }
}

}  // namespace tentcode
