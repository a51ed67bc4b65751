#include "tentcode/oracle.hpp"

#include "tentcode/tent.hpp"

#include <utility>

namespace tentcode {

namespace {

Section first_section(const Mu& mu, int bit) {
    Section s;
    s.code.push_back(bit);
    if (bit == 0) {
        s.lo = Rational(0);
        s.hi = Rational(1, 2);
        s.image_lo = Rational(0);
        s.image_hi = mu.peak();
        s.image_orientation = 0;
    } else {
        s.lo = Rational(1, 2);
        s.hi = Rational(1);
        s.image_lo = Rational(0);
        s.image_hi = mu.peak();
        s.image_orientation = 1;
    }
    return s;
}

/// Children of a section after one more iteration. When the image interval
/// straddles 1/2 the section splits at the exact preimage of 1/2 under the
/// affine image map; otherwise it refines in place. Children come back in
/// x-order, which is code order.
std::vector<Section> refine(const Mu& mu, const Section& s) {
    const Rational half(1, 2);
    const int lo_cmp = s.image_lo.cmp_half();
    const int hi_cmp = s.image_hi.cmp_half();
    std::vector<Section> out;

    if (lo_cmp < 0 && hi_cmp > 0) {
        // Interior split. The preimage of 1/2 interpolates linearly in the
        // image; f^n(lo) is image_lo when increasing and image_hi when
        // decreasing.
        Rational span = s.image_hi - s.image_lo;
        Rational offset = s.image_orientation == 0 ? (half - s.image_lo) : (s.image_hi - half);
        Rational x_star = s.lo + offset * (s.hi - s.lo) / span;

        Section left;
        left.code = s.code;
        left.code.push_back(0);
        left.lo = s.lo;
        left.hi = x_star;
        Section right;
        right.code = s.code;
        right.code.push_back(1);
        right.lo = x_star;
        right.hi = s.hi;
        if (s.image_orientation == 0) {
            // Left part maps into [image_lo, 1/2), right into [1/2, image_hi).
            left.image_lo = tent_apply(mu, s.image_lo);
            left.image_hi = mu.peak();
            left.image_orientation = 0;
            right.image_lo = tent_apply(mu, s.image_hi);
            right.image_hi = mu.peak();
            right.image_orientation = 1;
        } else {
            // Decreasing: the left part carries the upper image half.
            left.image_lo = tent_apply(mu, s.image_hi);
            left.image_hi = mu.peak();
            left.image_orientation = 0;
            right.image_lo = tent_apply(mu, s.image_lo);
            right.image_hi = mu.peak();
            right.image_orientation = 1;
        }
        out.push_back(std::move(left));
        out.push_back(std::move(right));
        return out;
    }

    Section child;
    child.code = s.code;
    child.lo = s.lo;
    child.hi = s.hi;
    if (hi_cmp <= 0) {
        // Image entirely in [0,1/2]: next bit repeats the last one, sense
        // preserved.
        child.code.push_back(s.image_orientation);
        child.image_lo = tent_apply(mu, s.image_lo);
        child.image_hi = tent_apply(mu, s.image_hi);
        child.image_orientation = s.image_orientation;
    } else {
        // Image entirely in [1/2,1): next bit flips, sense reversed.
        child.code.push_back(1 - s.image_orientation);
        child.image_lo = tent_apply(mu, s.image_hi);
        child.image_hi = tent_apply(mu, s.image_lo);
        child.image_orientation = 1 - s.image_orientation;
    }
    out.push_back(std::move(child));
    return out;
}

}  // namespace

std::vector<Section> enumerate_sections(const Mu& mu, std::size_t n, std::size_t cap) {
    if (n < 1) throw std::domain_error("enumerate_sections: n must be >= 1");
    if (n > cap) {
        throw EnumerationLimitError("enumerate_sections: n exceeds cap of " + std::to_string(cap));
    }
    std::vector<Section> sections{first_section(mu, 0), first_section(mu, 1)};
    for (std::size_t depth = 1; depth < n; ++depth) {
        std::vector<Section> next;
        next.reserve(sections.size() * 2);
        for (const Section& s : sections) {
            for (Section& child : refine(mu, s)) next.push_back(std::move(child));
        }
        sections = std::move(next);
    }
    return sections;
}

std::map<Code, Rational> exact_distribution(const Mu& mu, std::size_t n, std::size_t cap) {
    std::map<Code, Rational> dist;
    for (const Section& s : enumerate_sections(mu, n, cap)) {
        dist[s.code] = s.width();
    }
    return dist;
}

Section section_of(const Mu& mu, const Rational& x, std::size_t n) {
    if (x.sign() < 0 || x >= Rational(1)) throw std::domain_error("section_of: x outside [0,1)");
    if (n < 1) throw std::domain_error("section_of: n must be >= 1");
    Section s = first_section(mu, x.cmp_half() >= 0 ? 1 : 0);
    for (std::size_t depth = 1; depth < n; ++depth) {
        std::vector<Section> children = refine(mu, s);
        if (children.size() == 1) {
            s = std::move(children.front());
        } else {
            // Sections are left-closed right-open, so x belongs to the right
            // child exactly when x >= the split point.
            s = x < children[1].lo ? std::move(children[0]) : std::move(children[1]);
        }
    }
    return s;
}

}  // namespace tentcode
