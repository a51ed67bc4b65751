#include "tentcode/sampler.hpp"

namespace tentcode {

int TentSampler::next_bit() {
    const LevelRecord& r = table_.row(level_);
    // p is the probability of the straight 0-arc, |delta(l,0)| / (mu |I_l|);
    // a rejecting arc has length zero, so out-degree-1 levels force the draw.
    const int l0 = r.delta0;
    Rational p = l0 == kReject
                     ? Rational(0)
                     : table_.length(l0) / table_.mu().times(table_.length(level_));
    int emitted;
    int arc;
    if (last_bit_ == r.c) {
        // Straight state I_l: emit 0 with probability p.
        emitted = bernoulli_exact(p, rng_) ? 0 : 1;
        arc = emitted;
    } else {
        // Mirrored state: emit 1 with probability p, follow the complement.
        emitted = bernoulli_exact(p, rng_) ? 1 : 0;
        arc = 1 - emitted;
    }
    level_ = arc == 0 ? r.delta0 : r.delta1;
    if (level_ == kReject) {
        throw std::logic_error("TentSampler: walked into reject state");
    }
    last_bit_ = emitted;
    ++steps_;
    if (level_ > max_level_) max_level_ = level_;
    // Deferred update: materialize the next level the first time the walk
    // reaches the frontier.
    if (level_ == table_.frontier() && !table_.stabilized_at()) {
        table_.grow();
        ++grow_events_;
    }
    return emitted;
}

Code sample_code(const Mu& mu, std::size_t n, std::uint64_t seed) {
    TentSampler sampler(mu, seed);
    Code code;
    for (std::size_t i = 0; i < n; ++i) code.push_back(sampler.next_bit());
    return code;
}

RunStats run_stats_only(const Mu& mu, std::size_t n, std::uint64_t seed) {
    TentSampler sampler(mu, seed);
    for (std::size_t i = 0; i < n; ++i) sampler.next_bit();
    return sampler.stats();
}

}  // namespace tentcode
