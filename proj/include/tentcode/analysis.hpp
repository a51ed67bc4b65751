#pragma once

#include "tentcode/automaton.hpp"
#include "tentcode/mu.hpp"
#include "tentcode/sampler.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tentcode {

/// Exact ceil(log_mu(x)) for integer x >= 1: the smallest m >= 0 with
/// mu^m >= x, decided by big-integer comparison of c^m against x * d^m.
/// No floating point, so boundary cases cannot flip.
int ceil_log_mu(const Mu& mu, const BigInt& x);

/// Exact ceil(log2(x)) for x >= 1.
std::int64_t ceil_log2(const BigInt& x);

/// l_* = 8 * ceil(log_mu d) * ceil(log_mu n), the tail-bound pivot: the
/// chain exceeds level 2*l_* with probability at most n^-2.
int l_star(const Mu& mu, std::uint64_t n);

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    RunStats stats;
};

/// Runs `trials` independent chains of length n with seeds seed0, seed0+1,
/// ... Each trial owns its table, so trials parallelize freely; results are
/// keyed by trial index and independent of scheduling. threads = 0 picks a
/// hardware-based default.
std::vector<TrialRecord> run_trials(const Mu& mu, std::size_t n, int trials, std::uint64_t seed0,
                                    unsigned threads = 0);

struct KHistogram {
    std::uint64_t n = 0;
    int trials = 0;
    std::uint64_t seed0 = 0;
    std::map<int, int> counts;
    int l_star = 0;

    int max_k() const;
    /// Number of trials with K >= 2 * l_star.
    int exceedances() const;
    double mean_k_squared() const;
};

KHistogram k_distribution(const Mu& mu, std::size_t n, int trials, std::uint64_t seed0,
                          unsigned threads = 0);

struct LevelJumpAudit {
    bool hypothesis_holds = false;
    /// When the hypothesis fails, the first i with f^i(1/2) = 1/2.
    std::uint64_t violation_index = 0;
    /// Every audited step obeyed the jump law. Meaningful only when the
    /// hypothesis holds; vacuously true for n <= 1.
    bool passed = false;

    bool skipped() const { return !hypothesis_holds; }
};

/// Replays one chain and checks each transition against the jump law: from
/// level l >= 2 the walk moves to l+1 or back to some k+1 with 2(k+1) <= l+2
/// (levels 0 and 1 have the fixed diagram arcs, including the level-1
/// self-loop). Requires f^i(1/2) != 1/2 for i < n; otherwise the audit is
/// skipped with the violating index reported.
LevelJumpAudit level_jump_audit(const Mu& mu, std::size_t n, std::uint64_t seed);

struct SpaceReport {
    int frontier = 0;
    std::int64_t table_bits = 0;
    /// Reference envelope in the shape of the per-level bound
    /// 4k(k log2 d + 1) plus bookkeeping overhead; printed for comparison.
    std::int64_t reference_bound = 0;
    /// Generous shape guard 16 k^2 log2 d + 64 k (log2 k + 1); the report
    /// asserts table_bits stays within it. A shape check only; the constants
    /// carry slack, not meaning.
    std::int64_t guard = 0;
    bool within_guard = false;
    std::string text;
};

SpaceReport space_report(const SegmentTable& table);

/// True when every materialized endpoint denominator divides 2 * d^level.
bool endpoint_denominators_divide(const SegmentTable& table);

/// Product of the straight-path step probabilities from level `from` to
/// level `to` (growing the table as needed). Equals
/// |I_to| / (mu^(to-from) |I_from|) exactly.
Rational straight_path_probability(SegmentTable& table, int from, int to);

/// Exact |I_{2l}| / (mu^l |I_l|).
Rational go_back_probability(SegmentTable& table, int l);

/// Searches l = 2^i ceil(log_mu n), i = 1,2,..., for one with
/// |I_{2l}| / (mu^l |I_l|) <= n^-3; returns it, or -1 if none of the
/// candidates up to l_* qualifies.
int find_short_l(const Mu& mu, std::uint64_t n);

}  // namespace tentcode
