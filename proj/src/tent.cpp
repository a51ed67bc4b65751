#include "tentcode/tent.hpp"

namespace tentcode {

namespace {

void check_domain(const Rational& x, bool closed_right) {
    if (x.sign() < 0 || x > Rational(1) || (!closed_right && x == Rational(1))) {
        throw std::domain_error("tent: x outside domain");
    }
}

}  // namespace

Rational tent_apply(const Mu& mu, const Rational& x) {
    check_domain(x, /*closed_right=*/true);
    if (x.cmp_half() <= 0) return mu.times(x);
    return mu.times(Rational(1) - x);
}

Rational tent_tilde(const Mu& mu, const Rational& x) {
    check_domain(x, /*closed_right=*/true);
    if (x.cmp_half() <= 0) return mu.times(x);
    return Rational(1) - mu.times(Rational(1) - x);
}

Rational tent_iterate(const Mu& mu, Rational x, std::uint64_t n) {
    check_domain(x, /*closed_right=*/true);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (x.is_zero()) break;  // fixed point
        x = x.cmp_half() <= 0 ? mu.times(x) : mu.times(Rational(1) - x);
    }
    return x;
}

Code encode(const Mu& mu, const Rational& x, std::size_t n) {
    check_domain(x, /*closed_right=*/false);
    Code code;
    int bit = x.cmp_half() >= 0 ? 1 : 0;
    code.push_back(bit);
    Rational xi = x;
    for (std::size_t i = 1; i < n; ++i) {
        xi = xi.cmp_half() <= 0 ? mu.times(xi) : mu.times(Rational(1) - xi);
        int cmp = xi.cmp_half();
        bit = (bit == 0) ? (cmp >= 0 ? 1 : 0) : (cmp <= 0 ? 1 : 0);
        code.push_back(bit);
    }
    return code;
}

Rational decode_partial(const Mu& mu, const Code& code) {
    if (code.empty()) throw std::domain_error("decode_partial: empty code");
    // Horner from the tail: s = (s + b_i) / mu accumulates sum b_i mu^{-i}.
    Rational s;
    for (std::size_t i = code.size(); i-- > 0;) {
        s = mu.divide(s + Rational(code[i]));
    }
    return (mu.value() - Rational(1)) * s;
}

}  // namespace tentcode
