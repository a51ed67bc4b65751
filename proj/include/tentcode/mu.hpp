#pragma once

#include "tentcode/rational.hpp"

#include <string_view>
#include <utility>

namespace tentcode {

/// The slope parameter mu = c/d of the tent map, an irreducible fraction with
/// 1 < mu < 2 (equivalently d < c < 2d, d >= 2). Construction reduces first,
/// then range-checks, so "4/2" is rejected as 2/1 being out of range.
class Mu {
public:
    Mu(BigInt c, BigInt d) {
        if (c <= 0 || d <= 0) throw std::domain_error("Mu: c and d must be positive");
        BigInt g = boost::multiprecision::gcd(c, d);
        c /= g;
        d /= g;
        if (!(d < c && c < 2 * d)) {
            throw std::domain_error("Mu: " + c.str() + "/" + d.str() + " not in (1,2)");
        }
        c_ = std::move(c);
        d_ = std::move(d);
    }

    static Mu parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            throw std::domain_error("Mu: expected fraction 'c/d', got '" + std::string(s) + "'");
        }
        Rational r = Rational::parse(s);
        return Mu(r.num(), r.den());
    }

    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }

    Rational value() const { return Rational(c_, d_); }
    /// f(1/2) = mu/2, the peak of the tent.
    Rational peak() const { return Rational(c_, 2 * d_); }

    /// mu * x, exact.
    Rational times(const Rational& x) const {
        return Rational(c_ * x.num(), d_ * x.den());
    }
    /// x / mu, exact.
    Rational divide(const Rational& x) const {
        return Rational(d_ * x.num(), c_ * x.den());
    }
    /// mu^k as an exact rational (k >= 0).
    Rational pow(unsigned k) const {
        return Rational(boost::multiprecision::pow(c_, k), boost::multiprecision::pow(d_, k));
    }

    std::string str() const { return c_.str() + "/" + d_.str(); }

    friend bool operator==(const Mu& a, const Mu& b) { return a.c_ == b.c_ && a.d_ == b.d_; }

private:
    BigInt c_;
    BigInt d_;
};

}  // namespace tentcode
