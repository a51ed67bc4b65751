#pragma once

#include "tentcode/code.hpp"
#include "tentcode/mu.hpp"
#include "tentcode/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tentcode {

/// Sentinel level of the reject state.
inline constexpr int kReject = -1;
/// Sentinel for a transition entry that has not been resolved yet.
inline constexpr int kUnset = -2;

/// One level of the segment-type table. The interval endpoints satisfy
/// 0 <= v < u <= 1; endpoint openness is derived, never stored: the level's
/// straight type I_k is [v,u) when c = 0 and (v,u] when c = 1, and the
/// mirrored type is the opposite. delta0/delta1 are the successor levels of
/// the straight type's 0/1 arcs; theta counts the steps since the last
/// branching level (unset, 0, for levels 0 and 1).
struct LevelRecord {
    Rational v;
    Rational u;
    int c = 0;
    int delta0 = kUnset;
    int delta1 = kUnset;
    int theta = 0;
};

/// A walker position on the transition diagram: level plus orientation.
/// Straight means the state is I_level (last emitted bit equals c[level]),
/// mirrored means the complement type. The start state q0 is level 0 and
/// behaves as mirrored (the walk begins with b = 1 against c[0] = 0).
struct AutomatonState {
    int level = 0;
    bool mirrored = true;

    static AutomatonState initial() { return {0, true}; }
    bool rejected() const { return level == kReject; }
    static AutomatonState reject() { return {kReject, false}; }
};

/// The lazily grown table of segment-types. Levels 0 (q0, the whole [0,1))
/// and 1 (the peak type, endpoints 0 and mu/2) are materialized on
/// construction; grow() materializes one level at a time. Growth is
/// append-only; concurrent readers are safe between grow() calls, growth
/// itself is single-writer.
class SegmentTable {
public:
    explicit SegmentTable(Mu mu);

    const Mu& mu() const { return mu_; }
    int frontier() const { return frontier_; }
    const LevelRecord& row(int level) const { return rows_.at(static_cast<std::size_t>(level)); }
    std::vector<LevelRecord>& rows() { return rows_; }
    const std::vector<LevelRecord>& rows() const { return rows_; }

    /// Interval length u - v of a level; 0 for the reject sentinel.
    Rational length(int level) const;

    /// Resolves the frontier level's transitions and materializes the next
    /// level, returning its index. When the computed record for the next
    /// level already exists in the table, the type set has stabilized: the
    /// arcs are aliased to the existing level, which is returned, and the
    /// table stops growing (subsequent calls return the same alias).
    int grow();

    /// Grows until frontier >= k (or until stabilized, whichever is first).
    void ensure_frontier(int k);

    /// True when level's outgoing transitions may be read without growing.
    bool resolved(int level) const {
        return level < frontier_ || (level == frontier_ && stabilized_at_.has_value());
    }

    std::optional<int> stabilized_at() const { return stabilized_at_; }
    /// First i >= 1 with f^i(1/2) = 1/2, if growth ever observed one.
    std::optional<int> orbit_half_hit() const { return orbit_half_hit_; }

    /// Linear endpoint-equality scan over materialized levels 1..frontier;
    /// kReject when absent. Debug cross-check for the theta-based branch
    /// resolution and the fallback when f^i(1/2) = 1/2 occurs.
    int find_level_with_endpoints(const Rational& v, const Rational& u) const;

    /// Stored size: per level, the two endpoint rationals plus bookkeeping
    /// (1 bit for c, bit-length of each level index for delta0/delta1/theta).
    std::int64_t bit_count() const;

    /// One line per level, tab-separated: k, v, u, c, delta0, delta1, theta.
    /// Prints levels 0..up_to (default: everything materialized). A frontier
    /// row that has not been resolved yet shows its transitions as unset.
    std::string dump(int up_to = -1) const;

private:
    int resolve_branch_target(int k, const Rational& station_image);
    int alias_or_append(int k, Rational v, Rational u, int c, int theta);

    Mu mu_;
    std::vector<LevelRecord> rows_;
    int frontier_ = 0;
    std::optional<int> stabilized_at_;
    int stabilized_alias_ = kReject;
    std::optional<int> orbit_half_hit_;
};

/// One transition of the diagram on the emitted bit. Mirrored states follow
/// the straight table through the complemented bit; the successor is straight
/// exactly when the emitted bit equals c[successor]. Grows the table when the
/// state sits on the frontier. Stepping from reject stays reject.
AutomatonState delta_step(SegmentTable& table, AutomatonState state, int bit);

/// Membership of the code in the tent language: true iff the traced path
/// never rejects.
bool recognize(SegmentTable& table, const Code& code);
bool recognize(const Mu& mu, const Code& code);

/// |L_n| by dynamic programming over (level, orientation) pairs.
BigInt count_codes(SegmentTable& table, std::size_t n);
BigInt count_codes(const Mu& mu, std::size_t n);

/// Exact probability of the code under the chain: product of per-step
/// |J'| / (mu |J|) with the first step from q0 contributing 1/2; zero if the
/// path rejects. Equals the code's section length.
Rational code_probability(SegmentTable& table, const Code& code);
Rational code_probability(const Mu& mu, const Code& code);

}  // namespace tentcode
