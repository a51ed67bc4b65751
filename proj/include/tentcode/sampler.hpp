#pragma once

#include "tentcode/automaton.hpp"
#include "tentcode/code.hpp"
#include "tentcode/mu.hpp"
#include "tentcode/random_bits.hpp"

#include <cstdint>

namespace tentcode {

/// Instrumentation of one chain run. max_level is K, the deepest level the
/// walk visited; table_bits is the stored size of the lazily grown table at
/// the time of measurement.
struct RunStats {
    int max_level = 0;
    std::int64_t table_bits = 0;
    std::int64_t steps = 0;
    int grow_events = 0;
};

/// The streaming generator: a Markov walk over the segment-type table that
/// emits one exactly-distributed bit per next_bit() call and grows the table
/// only when the walk first needs a level (the deferred update). No bit
/// buffer is kept; the consumer pulls bits one at a time. One sampler per
/// thread; samplers never share a table.
class TentSampler {
public:
    TentSampler(const Mu& mu, std::uint64_t seed) : table_(mu), rng_(seed) {}

    /// Emits B_i. Each call draws against the exact arc probability
    /// |delta(Z,0)| / (mu |Z|) and advances the walk.
    int next_bit();

    /// Level of the walk after the last emitted bit (0 before the first).
    int level() const { return level_; }
    /// Whether the walk currently sits on a mirrored type.
    bool mirrored() const { return last_bit_ != table_.row(level_).c; }

    const SegmentTable& table() const { return table_; }

    RunStats stats() const {
        RunStats s;
        s.max_level = max_level_;
        s.table_bits = table_.bit_count();
        s.steps = steps_;
        s.grow_events = grow_events_;
        return s;
    }

private:
    SegmentTable table_;
    BitSource rng_;
    int level_ = 0;
    int last_bit_ = 1;
    int max_level_ = 0;
    std::int64_t steps_ = 0;
    int grow_events_ = 0;
};

/// Collects n bits from a fresh sampler (testing convenience; the CLI
/// streams instead).
Code sample_code(const Mu& mu, std::size_t n, std::uint64_t seed);

/// Runs the walk for n steps discarding the bits, returning instrumentation
/// only.
RunStats run_stats_only(const Mu& mu, std::size_t n, std::uint64_t seed);

}  // namespace tentcode
