#pragma once

#include "tentcode/code.hpp"
#include "tentcode/mu.hpp"
#include "tentcode/rational.hpp"

#include <cstdint>

namespace tentcode {

/// One application of the tent map: mu*x for x <= 1/2, mu*(1-x) otherwise.
/// Both branches agree at x = 1/2 (value mu/2). Requires x in [0,1].
Rational tent_apply(const Mu& mu, const Rational& x);

/// The folded variant: f(x) for x <= 1/2, 1 - f(x) otherwise. Satisfies
/// f^{n+1}(x) = f^n(tent_tilde(x)).
Rational tent_tilde(const Mu& mu, const Rational& x);

/// f^n(x) by n exact applications; f^0(x) = x. Iterative, safe for large n.
Rational tent_iterate(const Mu& mu, Rational x, std::uint64_t n);

/// The n-bit tent code of x in [0,1): b_1 = [x >= 1/2], then
///   b_{i+1} = 0  if b_i = 0 and x_i <  1/2,
///             1  if b_i = 0 and x_i >= 1/2,
///             1  if b_i = 1 and x_i <= 1/2,
///             0  if b_i = 1 and x_i >  1/2,
/// with x_i = f^i(x). Exact comparisons; ties at 1/2 fold into the >=/<=
/// branches, which always yield b_{i+1} = 1.
Code encode(const Mu& mu, const Rational& x, std::size_t n);

/// The truncated expansion (mu-1) * sum_{i=1..n} b_i mu^{-i}. The caller
/// contract is |x - decode_partial(encode(x,n))| <= mu^{-n}.
Rational decode_partial(const Mu& mu, const Code& code);

}  // namespace tentcode
