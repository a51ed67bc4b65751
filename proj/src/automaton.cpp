#include "tentcode/automaton.hpp"

#include "tentcode/tent.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace tentcode {

SegmentTable::SegmentTable(Mu mu) : mu_(std::move(mu)) {
    LevelRecord q0;
    q0.v = Rational(0);
    q0.u = Rational(1);
    q0.c = 0;
    q0.delta0 = 1;
    q0.delta1 = 1;
    rows_.push_back(std::move(q0));

    // Level 1: endpoints 0 and f(1/2) = mu/2, c_1 = 1, so I_1 = (0, mu/2].
    // Its transitions are fixed by the diagram: 0-arc to level 2, 1-arc the
    // self-loop. grow() recomputes the same values on the first deferred
    // update.
    LevelRecord l1;
    l1.v = Rational(0);
    l1.u = mu_.peak();
    l1.c = 1;
    l1.delta0 = 2;
    l1.delta1 = 1;
    rows_.push_back(std::move(l1));

    frontier_ = 1;
}

Rational SegmentTable::length(int level) const {
    if (level == kReject) return Rational(0);
    const LevelRecord& r = row(level);
    return r.u - r.v;
}

int SegmentTable::find_level_with_endpoints(const Rational& v, const Rational& u) const {
    for (int j = 1; j <= frontier_; ++j) {
        if (rows_[static_cast<std::size_t>(j)].v == v && rows_[static_cast<std::size_t>(j)].u == u) {
            return j;
        }
    }
    return kReject;
}

int SegmentTable::resolve_branch_target(int k, const Rational& station_image) {
    // delta(I_k, 1) at a branching level. For k = 1 the target is the level-1
    // self-loop; theta(1) is undefined so the transition comes straight from
    // the case analysis. For k >= 2 the target level is theta(k)+1, provided
    // the kneading orbit never hit 1/2 strictly before level k; otherwise
    // fall back to the endpoint scan.
    if (k == 1) return 1;
    int target;
    bool theta_sound = !(orbit_half_hit_ && *orbit_half_hit_ < k);
    if (theta_sound) {
        target = rows_[static_cast<std::size_t>(k)].theta + 1;
        int scanned = find_level_with_endpoints(station_image, mu_.peak());
        if (scanned != target) {
            throw std::logic_error("SegmentTable: theta branch target disagrees with endpoint scan");
        }
    } else {
        target = find_level_with_endpoints(station_image, mu_.peak());
        if (target == kReject) {
            throw std::logic_error("SegmentTable: branch target missing from table");
        }
    }
    return target;
}

int SegmentTable::alias_or_append(int k, Rational v, Rational u, int c, int theta) {
    int existing = find_level_with_endpoints(v, u);
    if (existing != kReject) {
        stabilized_at_ = k;
        stabilized_alias_ = existing;
        return existing;
    }
    LevelRecord next;
    next.v = std::move(v);
    next.u = std::move(u);
    next.c = c;
    next.theta = theta;
    rows_.push_back(std::move(next));
    frontier_ = k + 1;
    const LevelRecord& added = rows_.back();
    // The image of 1/2 walks along the c-selected endpoint; hitting 1/2
    // exactly switches the branch resolution to the scan fallback.
    const Rational& moving = added.c == 0 ? added.v : added.u;
    if (!orbit_half_hit_ && moving.cmp_half() == 0) orbit_half_hit_ = k + 1;
    return k + 1;
}

int SegmentTable::grow() {
    if (stabilized_at_) return stabilized_alias_;
    const int k = frontier_;
    const Rational vk = rows_[static_cast<std::size_t>(k)].v;
    const Rational uk = rows_[static_cast<std::size_t>(k)].u;
    const int ck = rows_[static_cast<std::size_t>(k)].c;
    const int cmp_v = vk.cmp_half();
    const int cmp_u = uk.cmp_half();

    if (cmp_v < 0 && cmp_u > 0) {
        // Branching level. The straight 0-arc continues to the next level
        // [f(moving), f(1/2)) where moving is the f^k(1/2) endpoint; the
        // 1-arc re-enters the table at the type (f(station), f(1/2)].
        const Rational& moving = ck == 0 ? vk : uk;
        const Rational& station = ck == 0 ? uk : vk;
        int branch = resolve_branch_target(k, tent_apply(mu_, station));
        int target = alias_or_append(k, tent_apply(mu_, moving), mu_.peak(), 0, 1);
        rows_[static_cast<std::size_t>(k)].delta0 = target;
        rows_[static_cast<std::size_t>(k)].delta1 = branch;
        return target;
    }
    if (cmp_u <= 0) {
        // Entirely left of 1/2: single sense-preserving successor on the arc
        // labeled c[k].
        int target = alias_or_append(k, tent_apply(mu_, vk), tent_apply(mu_, uk), ck,
                                     rows_[static_cast<std::size_t>(k)].theta + 1);
        LevelRecord& rk = rows_[static_cast<std::size_t>(k)];
        (ck == 0 ? rk.delta0 : rk.delta1) = target;
        (ck == 0 ? rk.delta1 : rk.delta0) = kReject;
        return target;
    }
    // Entirely right of 1/2: single sense-reversing successor (endpoints
    // swapped through f) on the arc labeled NOT c[k].
    int target = alias_or_append(k, tent_apply(mu_, uk), tent_apply(mu_, vk), 1 - ck,
                                 rows_[static_cast<std::size_t>(k)].theta + 1);
    LevelRecord& rk = rows_[static_cast<std::size_t>(k)];
    (ck == 0 ? rk.delta1 : rk.delta0) = target;
    (ck == 0 ? rk.delta0 : rk.delta1) = kReject;
    return target;
}

void SegmentTable::ensure_frontier(int k) {
    while (frontier_ < k && !stabilized_at_) grow();
}

std::int64_t SegmentTable::bit_count() const {
    auto index_bits = [](int i) -> std::int64_t {
        if (i == kUnset) return 0;
        if (i == kReject) return 1;
        return bit_length(BigInt(i));
    };
    std::int64_t total = 0;
    for (const LevelRecord& r : rows_) {
        total += r.v.bit_size() + r.u.bit_size() + 1;
        total += index_bits(r.delta0) + index_bits(r.delta1) + index_bits(r.theta);
    }
    return total;
}

std::string SegmentTable::dump(int up_to) const {
    std::ostringstream out;
    if (up_to < 0 || up_to > frontier_) up_to = frontier_;
    for (int k = 0; k <= up_to; ++k) {
        const LevelRecord& r = rows_[static_cast<std::size_t>(k)];
        out << k << '\t' << r.v.str() << '\t' << r.u.str() << '\t' << r.c << '\t' << r.delta0
            << '\t' << r.delta1 << '\t' << r.theta << '\n';
    }
    return out.str();
}

namespace {

void ensure_resolved(SegmentTable& table, int level) {
    if (level > table.frontier()) {
        throw std::logic_error("automaton: walker ahead of the table frontier");
    }
    if (!table.resolved(level)) table.grow();
}

}  // namespace

AutomatonState delta_step(SegmentTable& table, AutomatonState state, int bit) {
    if (state.rejected()) return state;
    ensure_resolved(table, state.level);
    const LevelRecord& r = table.row(state.level);
    const int arc = state.mirrored ? 1 - bit : bit;
    const int next = arc == 0 ? r.delta0 : r.delta1;
    if (next == kReject) return AutomatonState::reject();
    return {next, bit != table.row(next).c};
}

bool recognize(SegmentTable& table, const Code& code) {
    AutomatonState s = AutomatonState::initial();
    for (std::size_t i = 0; i < code.size(); ++i) {
        s = delta_step(table, s, code[i]);
        if (s.rejected()) return false;
    }
    return true;
}

bool recognize(const Mu& mu, const Code& code) {
    SegmentTable table(mu);
    return recognize(table, code);
}

BigInt count_codes(SegmentTable& table, std::size_t n) {
    std::map<std::pair<int, bool>, BigInt> counts;
    counts[{0, true}] = 1;
    for (std::size_t step = 0; step < n; ++step) {
        std::map<std::pair<int, bool>, BigInt> next;
        for (const auto& [state, count] : counts) {
            ensure_resolved(table, state.first);
            const LevelRecord& r = table.row(state.first);
            for (int bit = 0; bit < 2; ++bit) {
                const int arc = state.second ? 1 - bit : bit;
                const int target = arc == 0 ? r.delta0 : r.delta1;
                if (target == kReject) continue;
                next[{target, bit != table.row(target).c}] += count;
            }
        }
        counts = std::move(next);
    }
    BigInt total = 0;
    for (const auto& [state, count] : counts) total += count;
    return total;
}

BigInt count_codes(const Mu& mu, std::size_t n) {
    SegmentTable table(mu);
    return count_codes(table, n);
}

Rational code_probability(SegmentTable& table, const Code& code) {
    AutomatonState s = AutomatonState::initial();
    Rational p(1);
    for (std::size_t i = 0; i < code.size(); ++i) {
        const int cur = s.level;
        s = delta_step(table, s, code[i]);
        if (s.rejected()) return Rational(0);
        p *= table.length(s.level) / table.mu().times(table.length(cur));
    }
    return p;
}

Rational code_probability(const Mu& mu, const Code& code) {
    SegmentTable table(mu);
    return code_probability(table, code);
}

}  // namespace tentcode
