#include "tentcode/analysis.hpp"

#include "tentcode/tent.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace tentcode {

int ceil_log_mu(const Mu& mu, const BigInt& x) {
    if (x <= 0) throw std::domain_error("ceil_log_mu: x must be positive");
    BigInt c_pow = 1;
    BigInt scaled = x;  // x * d^m
    int m = 0;
    while (c_pow < scaled) {
        c_pow *= mu.c();
        scaled *= mu.d();
        ++m;
    }
    return m;
}

std::int64_t ceil_log2(const BigInt& x) {
    if (x <= 0) throw std::domain_error("ceil_log2: x must be positive");
    if (x == 1) return 0;
    return bit_length(x - 1);
}

int l_star(const Mu& mu, std::uint64_t n) {
    return 8 * ceil_log_mu(mu, mu.d()) * ceil_log_mu(mu, BigInt(n));
}

std::vector<TrialRecord> run_trials(const Mu& mu, std::size_t n, int trials, std::uint64_t seed0,
                                    unsigned threads) {
    if (trials < 1) throw std::domain_error("run_trials: trials must be >= 1");
    if (threads == 0) {
        threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));

    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    auto work = [&](unsigned worker) {
        for (int t = static_cast<int>(worker); t < trials; t += static_cast<int>(threads)) {
            TrialRecord rec;
            rec.trial = t;
            rec.seed = seed0 + static_cast<std::uint64_t>(t);
            rec.stats = run_stats_only(mu, n, rec.seed);
            records[static_cast<std::size_t>(t)] = std::move(rec);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    return records;
}

int KHistogram::max_k() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
}

int KHistogram::exceedances() const {
    int count = 0;
    for (const auto& [k, c] : counts) {
        if (k >= 2 * l_star) count += c;
    }
    return count;
}

double KHistogram::mean_k_squared() const {
    double sum = 0;
    int total = 0;
    for (const auto& [k, c] : counts) {
        sum += static_cast<double>(k) * static_cast<double>(k) * c;
        total += c;
    }
    return total == 0 ? 0.0 : sum / total;
}

KHistogram k_distribution(const Mu& mu, std::size_t n, int trials, std::uint64_t seed0,
                          unsigned threads) {
    KHistogram hist;
    hist.n = n;
    hist.trials = trials;
    hist.seed0 = seed0;
    hist.l_star = tentcode::l_star(mu, n);
    for (const TrialRecord& rec : run_trials(mu, n, trials, seed0, threads)) {
        ++hist.counts[rec.stats.max_level];
    }
    return hist;
}

namespace {

bool jump_allowed(int from, int to) {
    if (to == from + 1) return true;
    if (from == 1 && to == 1) return true;  // level-1 self-loop
    return from >= 2 && to >= 2 && 2 * (to - 1) <= from;
}

}  // namespace

LevelJumpAudit level_jump_audit(const Mu& mu, std::size_t n, std::uint64_t seed) {
    LevelJumpAudit audit;
    // Hypothesis first: the kneading orbit must avoid 1/2 strictly before n.
    Rational x(1, 2);
    for (std::size_t i = 1; i < n; ++i) {
        x = tent_apply(mu, x);
        if (x.cmp_half() == 0) {
            audit.hypothesis_holds = false;
            audit.violation_index = i;
            return audit;
        }
    }
    audit.hypothesis_holds = true;

    TentSampler sampler(mu, seed);
    int level = 0;
    audit.passed = true;
    for (std::size_t i = 0; i < n; ++i) {
        sampler.next_bit();
        int next = sampler.level();
        if (!jump_allowed(level, next)) {
            audit.passed = false;
            return audit;
        }
        level = next;
    }
    return audit;
}

SpaceReport space_report(const SegmentTable& table) {
    SpaceReport report;
    const int k = table.frontier();
    report.frontier = k;
    report.table_bits = table.bit_count();

    const std::int64_t log2d = ceil_log2(table.mu().d());
    const std::int64_t kk = k;
    report.reference_bound = 4 * kk * (kk * log2d + 1) + kk * (1 + 3 * bit_length(BigInt(k)));
    report.guard = 16 * kk * kk * log2d + 64 * kk * (ceil_log2(BigInt(std::max(1, k))) + 1);
    report.within_guard = report.table_bits <= report.guard;

    std::ostringstream out;
    out << "frontier=" << report.frontier << " table_bits=" << report.table_bits
        << " reference_bound=" << report.reference_bound << " guard=" << report.guard
        << " within_guard=" << (report.within_guard ? 1 : 0);
    report.text = out.str();
    return report;
}

bool endpoint_denominators_divide(const SegmentTable& table) {
    BigInt modulus = 2;  // 2 * d^level, tracked incrementally
    for (int level = 0; level <= table.frontier(); ++level) {
        if (level > 0) modulus *= table.mu().d();
        const LevelRecord& r = table.row(level);
        if (modulus % r.v.den() != 0 || modulus % r.u.den() != 0) return false;
    }
    return true;
}

Rational straight_path_probability(SegmentTable& table, int from, int to) {
    if (from < 1 || to < from) throw std::domain_error("straight_path_probability: bad range");
    table.ensure_frontier(to + 1);
    Rational p(1);
    for (int i = from; i < to; ++i) {
        const LevelRecord& r = table.row(i);
        if (r.delta0 != i + 1 && r.delta1 != i + 1) {
            throw std::logic_error("straight_path_probability: no arc to the next level");
        }
        p *= table.length(i + 1) / table.mu().times(table.length(i));
    }
    return p;
}

Rational go_back_probability(SegmentTable& table, int l) {
    table.ensure_frontier(2 * l);
    return table.length(2 * l) / (table.mu().pow(static_cast<unsigned>(l)) * table.length(l));
}

int find_short_l(const Mu& mu, std::uint64_t n) {
    const int log_mu_n = ceil_log_mu(mu, BigInt(n));
    const int log_mu_d = ceil_log_mu(mu, mu.d());
    const int i_max =
        std::max<std::int64_t>(4, ceil_log2(BigInt(std::max(2, log_mu_d))) + 2);
    const int bound = l_star(mu, n);
    const Rational n_cubed(BigInt(n) * n * n);

    SegmentTable table(mu);
    for (int i = 1; i <= i_max && i < 30; ++i) {
        const int l = (1 << i) * log_mu_n;
        if (l > bound) break;
        table.ensure_frontier(2 * l);
        if (table.stabilized_at()) break;
        // |I_{2l}| * n^3 <= mu^l * |I_l|, all exact.
        if (table.length(2 * l) * n_cubed <= mu.pow(static_cast<unsigned>(l)) * table.length(l)) {
            return l;
        }
    }
    return -1;
}

}  // namespace tentcode
