#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tentcode {

using BigInt = boost::multiprecision::cpp_int;

/// Number of bits in the binary representation of |x|, with bit_length(0) = 0.
inline std::int64_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. All arithmetic and comparisons are exact; there is no
/// floating-point anywhere in the carrier.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // Denominators are positive, so cross-multiplication preserves order.
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// -1, 0, +1 as *this compares to 1/2. Cheaper than building Rational(1,2).
    int cmp_half() const {
        BigInt twice = num_ * 2;
        if (twice < den_) return -1;
        if (twice > den_) return 1;
        return 0;
    }

    /// bit_length(|num|) + bit_length(den); the space accounting unit.
    std::int64_t bit_size() const { return bit_length(num_) + bit_length(den_); }

    /// Serializes as "num/den" in lowest terms, e.g. "3/8", "0/1", "-1/2".
    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    /// Parses "a/b" or a plain integer "a".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos) {
                return Rational(BigInt(std::string(s)));
            }
            BigInt num(std::string(s.substr(0, slash)));
            BigInt den(std::string(s.substr(slash + 1)));
            return Rational(std::move(num), std::move(den));
        } catch (const std::runtime_error&) {
            throw std::domain_error("Rational: cannot parse '" + std::string(s) + "'");
        }
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

/// Space accounting for one stored rational (bit_length(0) := 0).
inline std::int64_t rational_bit_size(const Rational& r) { return r.bit_size(); }

}  // namespace tentcode
