#pragma once

#include "tentcode/code.hpp"
#include "tentcode/mu.hpp"
#include "tentcode/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace tentcode {

/// Brute-force ground truth for the tent language: sections of [0,1) are
/// refined level by level through exact interval subdivision, tracking each
/// section's image interval directly. Shares no machinery with the automaton
/// module on purpose.

inline constexpr std::size_t kDefaultEnumCap = 16;

/// Raised when an enumeration request exceeds the configured cap.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The set of initial conditions sharing one code: the interval [lo, hi),
/// together with its image under f^n. image_orientation is 0 when f^n is
/// increasing on the section and 1 when decreasing; it always equals the last
/// bit of the code. The image interval is [image_lo, image_hi) when
/// increasing and (image_lo, image_hi] when decreasing.
struct Section {
    Code code;
    Rational lo;
    Rational hi;
    Rational image_lo;
    Rational image_hi;
    int image_orientation = 0;

    Rational width() const { return hi - lo; }
};

/// All sections of prefix length n, sorted by lo (equivalently by code in
/// lexicographic order). Exponential in n; refuses n beyond the cap.
std::vector<Section> enumerate_sections(const Mu& mu, std::size_t n,
                                        std::size_t cap = kDefaultEnumCap);

/// D_n as an exact map: each code's probability is its section length.
std::map<Code, Rational> exact_distribution(const Mu& mu, std::size_t n,
                                            std::size_t cap = kDefaultEnumCap);

/// The unique section containing x, found by descending the subdivision
/// along x only (no full enumeration). Its code equals encode(mu, x, n).
Section section_of(const Mu& mu, const Rational& x, std::size_t n);

}  // namespace tentcode
