#include "verify_suites.hpp"

#include "tentcode/analysis.hpp"
#include "tentcode/automaton.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/random_bits.hpp"
#include "tentcode/sampler.hpp"
#include "tentcode/stat_tests.hpp"
#include "tentcode/tent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace tentcode::verify {

namespace {

struct SuiteRunner {
    const Options& options;
    int failures = 0;

    void run(const std::string& name, const std::function<void(std::ostringstream&)>& body) {
        std::ostringstream detail;
        bool ok = true;
        try {
            body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail << " exception: " << e.what();
        }
        if (ok && detail.str().empty()) {
            std::cout << "ok   " << name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << name << ":" << detail.str() << "\n";
        }
    }
};

void expect(std::ostringstream& detail, bool cond, const std::string& what) {
    if (!cond) detail << " " << what << ";";
}

SegmentTable make_table(const Mu& mu, const Options& options) {
    SegmentTable table(mu);
    if (options.inject_fault) {
        // Negative control: corrupt one transition after the first growths so
        // later growth cannot heal it.
        table.ensure_frontier(3);
        table.rows()[1].delta1 = 2;
    }
    return table;
}

void suite_numeric(const Options& options, std::ostringstream& detail) {
    BitSource src(options.seed ^ 0x9d2c5680u);
    for (int i = 0; i < 500; ++i) {
        Rational a = random_unit_rational(src, 1u << 20);
        Rational b = random_unit_rational(src, 1u << 20);
        expect(detail, (a + b) - b == a, "(a+b)-b != a");
        Rational prod = a * b;
        expect(detail, (a.den() * b.den()) % prod.den() == 0, "product denominator");
        if (!detail.str().empty()) return;
    }
    expect(detail, Rational(0).bit_size() == 1, "bit_size(0/1)");
    expect(detail, Rational(3, 4).bit_size() == 5, "bit_size(3/4)");
    expect(detail, Rational(9, 16).bit_size() == 9, "bit_size(9/16)");

    BitSource s1(options.seed + 1), s2(options.seed + 1);
    for (int i = 0; i < 1000; ++i) {
        expect(detail, bernoulli_exact(Rational(1, 3), s1) == bernoulli_exact(Rational(1, 3), s2),
               "bernoulli determinism");
    }
    BitSource s3(options.seed + 2);
    for (int i = 0; i < 100; ++i) {
        expect(detail, bernoulli_exact(Rational(0), s3) == 0, "p=0");
        expect(detail, bernoulli_exact(Rational(1), s3) == 1, "p=1");
    }

    const int draws = 100000;
    BitSource s4(options.seed + 3);
    std::int64_t ones = 0;
    for (int i = 0; i < draws; ++i) ones += bernoulli_exact(Rational(1, 2), s4);
    const double diff = static_cast<double>(ones) - draws / 2.0;
    const double stat = diff * diff / (draws / 4.0);
    expect(detail, stat <= kChi2OneDofSig1e6, "bernoulli(1/2) chi-square");

    BitSource s5(options.seed + 4);
    std::int64_t hits = 0;
    for (int i = 0; i < draws; ++i) hits += bernoulli_exact(Rational(1, 3), s5);
    const double p = 1.0 / 3.0;
    const double tol = 4.0 * std::sqrt(p * (1 - p) / draws);
    expect(detail, std::abs(static_cast<double>(hits) / draws - p) <= tol, "bernoulli(1/3) mean");
}

void suite_tent(const Mu& mu, const Options& options, std::ostringstream& detail) {
    BitSource src(options.seed ^ 0x85ebca6bu);
    const Rational one(1);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_unit_rational(src, 1u << 16);
        unsigned n = static_cast<unsigned>(src.next_word() % 50 + 1);
        if (!x.is_zero()) {
            expect(detail, tent_iterate(mu, x, n) == tent_iterate(mu, one - x, n), "symmetry");
        }
        expect(detail, tent_iterate(mu, x, n + 1) == tent_iterate(mu, tent_tilde(mu, x), n),
               "compressing");
        Code c = encode(mu, x, 12);
        expect(detail, c.tail() == encode(mu, tent_tilde(mu, x), 11), "shift");
        unsigned m = static_cast<unsigned>(src.next_word() % 20 + 5);
        Rational err = x - decode_partial(mu, encode(mu, x, m));
        if (err.sign() < 0) err = -err;
        expect(detail, err <= Rational(boost::multiprecision::pow(mu.d(), m),
                                       boost::multiprecision::pow(mu.c(), m)),
               "reconstruction");
        Section s = section_of(mu, x, m);
        if (x != s.lo) {
            expect(detail, encode(mu, x, m).complement() == encode(mu, one - x, m), "complement");
        }
        if (!detail.str().empty()) return;
    }
    for (int i = 0; i < 200; ++i) {
        Rational x = random_unit_rational(src, 1u << 16);
        Rational y = random_unit_rational(src, 1u << 16);
        if (y < x) std::swap(x, y);
        expect(detail, encode(mu, x, 20) <= encode(mu, y, 20), "monotonicity");
        if (!detail.str().empty()) return;
    }
}

void suite_oracle(const Mu& mu, const Options& options, std::ostringstream& detail) {
    const std::size_t n = std::min<std::size_t>(options.max_n, 10);
    auto sections = enumerate_sections(mu, n);
    expect(detail, sections.front().lo == Rational(0), "partition start");
    expect(detail, sections.back().hi == Rational(1), "partition end");
    Rational total(0);
    for (std::size_t i = 0; i < sections.size(); ++i) {
        total += sections[i].width();
        if (i + 1 < sections.size()) {
            expect(detail, sections[i].hi == sections[i + 1].lo, "partition gap/overlap");
            expect(detail, sections[i].code < sections[i + 1].code, "code order");
        }
        expect(detail, encode(mu, sections[i].lo, n) == sections[i].code, "right continuity");
        expect(detail, sections[i].image_orientation == sections[i].code.back(),
               "image orientation");
        if (!detail.str().empty()) return;
    }
    expect(detail, total == Rational(1), "lengths sum to 1");

    BitSource src(options.seed ^ 0xc2b2ae35u);
    for (int i = 0; i < 300; ++i) {
        Rational x = random_unit_rational(src, 1u << 16);
        Section s = section_of(mu, x, n);
        expect(detail, s.code == encode(mu, x, n), "section_of vs encode");
        expect(detail, s.lo <= x && x < s.hi, "section containment");
        if (!detail.str().empty()) return;
    }
}

void suite_language(const Mu& mu, const Options& options, std::ostringstream& detail) {
    SegmentTable table = make_table(mu, options);
    const std::size_t n_max = std::min<std::size_t>(options.max_n, 12);
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::set<Code> oracle_codes;
        for (const Section& s : enumerate_sections(mu, n)) oracle_codes.insert(s.code);
        std::size_t accepted = 0;
        for (std::uint64_t w = 0; w < (1ull << n); ++w) {
            Code code;
            for (std::size_t i = 0; i < n; ++i) code.push_back((w >> (n - 1 - i)) & 1);
            bool rec = recognize(table, code);
            if (rec) ++accepted;
            expect(detail, rec == (oracle_codes.count(code) > 0), "recognize vs oracle");
            if (!detail.str().empty()) return;
        }
        expect(detail, accepted == oracle_codes.size(), "accepted count");
        expect(detail, count_codes(table, n) == BigInt(oracle_codes.size()), "count_codes");
        if (!detail.str().empty()) return;
    }
}

void suite_distribution(const Mu& mu, const Options& options, std::ostringstream& detail) {
    SegmentTable table = make_table(mu, options);
    const std::size_t n_max = std::min<std::size_t>(options.max_n, 12);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational total(0);
        for (const Section& s : enumerate_sections(mu, n)) {
            Rational p = code_probability(table, s.code);
            expect(detail, p == s.width(), "probability vs section length at n=" + std::to_string(n));
            total += p;
            if (!detail.str().empty()) return;
        }
        expect(detail, total == Rational(1), "probabilities sum to 1");
    }
}

void suite_structure(const Mu& mu, const Options& options, std::ostringstream& detail) {
    SegmentTable table = make_table(mu, options);
    const int target = std::max<int>(50, static_cast<int>(2 * options.max_n));
    table.ensure_frontier(target);
    const int frontier = table.frontier();
    expect(detail, frontier <= target, "frontier ran past target");

    std::set<std::pair<std::string, std::string>> endpoint_pairs;
    std::vector<Rational> orbit;  // f^i(1/2), i = 0..frontier
    orbit.push_back(Rational(1, 2));
    for (int i = 1; i <= frontier; ++i) orbit.push_back(tent_apply(mu, orbit.back()));

    BigInt d_pow_k = 1;
    for (int k = 1; k <= frontier; ++k) {
        const LevelRecord& r = table.row(k);
        d_pow_k *= mu.d();
        expect(detail, Rational(0) <= r.v && r.v < r.u && r.u <= Rational(1), "endpoint order");
        endpoint_pairs.insert({r.v.str(), r.u.str()});

        if (k >= 2) {
            expect(detail, r.u - r.v >= Rational(BigInt(1), 2 * d_pow_k),
                   "minimum length at k=" + std::to_string(k));
        }
        if (!detail.str().empty()) return;
    }
    // Both orientations of each level share the endpoint pair, so 2n types
    // means n distinct pairs across levels 1..n.
    expect(detail, endpoint_pairs.size() == static_cast<std::size_t>(frontier), "distinct types");

    const bool theta_sound = !table.orbit_half_hit();
    for (int k = 1; k < frontier; ++k) {
        const LevelRecord& r = table.row(k);
        const bool branching = r.delta0 != kReject && r.delta1 != kReject;
        if (branching) {
            expect(detail,
                   table.length(r.delta0) + table.length(r.delta1) == mu.times(table.length(k)),
                   "sum rule at k=" + std::to_string(k));
        }
        for (int target_level : {r.delta0, r.delta1}) {
            if (target_level == kReject) continue;
            bool jump_ok = target_level == k + 1 || (k == 1 && target_level == 1) ||
                           (k >= 2 && target_level >= 2 && 2 * (target_level - 1) <= k);
            if (theta_sound) expect(detail, jump_ok, "jump law at k=" + std::to_string(k));
        }
        if (k >= 2 && theta_sound) {
            expect(detail, r.theta >= 1, "theta set");
            expect(detail, r.c == 1 - table.row(r.theta).c, "c[n] = !c[theta(n)]");
            if (branching) {
                expect(detail, 2 * r.theta <= k, "theta(n) <= n/2");
                expect(detail, table.row(r.theta + 1).c == 0, "c[theta(n)+1] = 0");
                expect(detail, r.delta1 == r.theta + 1, "branch target theta(n)+1");
            }
            const Rational& moving = r.c == 0 ? r.v : r.u;
            const Rational& station = r.c == 0 ? r.u : r.v;
            expect(detail, moving == orbit[static_cast<std::size_t>(k)], "moving endpoint");
            expect(detail, station == orbit[static_cast<std::size_t>(r.theta)],
                   "stationary endpoint");
        }
        if (!detail.str().empty()) return;
    }
    expect(detail, endpoint_denominators_divide(table), "denominators divide 2 d^k");
}

void suite_sampler(const Mu& mu, const Options& options, std::ostringstream& detail) {
    const std::size_t n = std::min<std::size_t>(options.max_n, 8);
    expect(detail, sample_code(mu, 40, options.seed) == sample_code(mu, 40, options.seed),
           "determinism");
    RunStats a = run_stats_only(mu, 40, options.seed);
    RunStats b = run_stats_only(mu, 40, options.seed);
    expect(detail,
           a.max_level == b.max_level && a.table_bits == b.table_bits &&
               a.grow_events == b.grow_events,
           "stats determinism");
    expect(detail, run_stats_only(mu, 1, options.seed).max_level == 1, "K=1 at n=1");

    SegmentTable shared = make_table(mu, options);
    for (int t = 0; t < 100; ++t) {
        Code c = sample_code(mu, 2 * options.max_n, options.seed + 100 + t);
        expect(detail, recognize(shared, c), "emitted code recognized");
        if (!detail.str().empty()) return;
    }

    auto dist = exact_distribution(mu, n);
    std::map<Code, std::int64_t> observed;
    for (int t = 0; t < options.trials; ++t) {
        ++observed[sample_code(mu, n, options.seed + 1000 + t)];
    }
    std::vector<std::pair<std::int64_t, double>> cells;
    for (const auto& [code, p] : dist) {
        cells.emplace_back(observed[code], p.to_double());
        observed.erase(code);
    }
    expect(detail, observed.empty(), "sampled code outside the language");
    ChiSquareResult chi = chi_square_test(cells, options.trials, kZUpper1e4);
    if (!chi.pass) {
        detail << " chi-square " << chi.statistic << " > " << chi.threshold << " (dof " << chi.dof
               << ");";
    }
}

void suite_audit(const Mu& mu, const Options& options, std::ostringstream& detail) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        LevelJumpAudit audit = level_jump_audit(mu, 1000, options.seed + s);
        if (audit.skipped()) {
            std::cout << "     (audit skipped: f^i(1/2) = 1/2 at i=" << audit.violation_index
                      << ")\n";
            return;
        }
        expect(detail, audit.passed, "jump law trace seed=" + std::to_string(options.seed + s));
        if (!detail.str().empty()) return;
    }
}

}  // namespace

int run_all(const Options& options) {
    SuiteRunner runner{options};
    runner.run("numeric", [&](std::ostringstream& d) { suite_numeric(options, d); });
    for (const Mu& mu : options.mus) {
        const std::string tag = " mu=" + mu.str();
        runner.run("tent" + tag, [&](std::ostringstream& d) { suite_tent(mu, options, d); });
        runner.run("oracle" + tag, [&](std::ostringstream& d) { suite_oracle(mu, options, d); });
        runner.run("language" + tag,
                   [&](std::ostringstream& d) { suite_language(mu, options, d); });
        runner.run("distribution" + tag,
                   [&](std::ostringstream& d) { suite_distribution(mu, options, d); });
        runner.run("structure" + tag,
                   [&](std::ostringstream& d) { suite_structure(mu, options, d); });
        runner.run("sampler" + tag, [&](std::ostringstream& d) { suite_sampler(mu, options, d); });
        runner.run("audit" + tag, [&](std::ostringstream& d) { suite_audit(mu, options, d); });
    }
    if (runner.failures == 0) {
        std::cout << "all suites passed\n";
    } else {
        std::cout << runner.failures << " suite(s) failed\n";
    }
    return runner.failures;
}

}  // namespace tentcode::verify
