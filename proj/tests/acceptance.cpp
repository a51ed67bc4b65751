// Acceptance gate: one binary, one pass/fail line per criterion, nonzero exit
// when anything fails. Tolerances are pinned inline; everything labeled exact
// is compared with rational equality, never floating point.

#include "tentcode/analysis.hpp"
#include "tentcode/automaton.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/random_bits.hpp"
#include "tentcode/sampler.hpp"
#include "tentcode/stat_tests.hpp"
#include "tentcode/tent.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tentcode;

namespace {

std::vector<Mu> test_mus() {
    return {Mu::parse("3/2"), Mu::parse("4/3"), Mu::parse("7/4"), Mu::parse("9/5")};
}

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << " exception: " << e.what();
    }
    auto seconds =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count() /
        1000.0;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << " (" << name << ") ["
              << seconds << "s]" << detail.str() << std::endl;
    if (!ok) ++g_failures;
}

Code word_to_code(std::uint64_t w, std::size_t n) {
    Code code;
    for (std::size_t i = 0; i < n; ++i) code.push_back((w >> (n - 1 - i)) & 1);
    return code;
}

// 1. Oracle and automaton define the same language, with matching counts.
bool language_equivalence(std::ostringstream& detail) {
    for (const Mu& mu : test_mus()) {
        SegmentTable table(mu);
        for (std::size_t n = 1; n <= 12; ++n) {
            std::set<Code> lang;
            for (const Section& s : enumerate_sections(mu, n)) lang.insert(s.code);
            std::size_t accepted = 0;
            for (std::uint64_t w = 0; w < (1ull << n); ++w) {
                Code code = word_to_code(w, n);
                bool rec = recognize(table, code);
                if (rec) ++accepted;
                if (rec != (lang.count(code) > 0)) {
                    detail << " mismatch mu=" << mu.str() << " code=" << code.str();
                    return false;
                }
            }
            if (accepted != lang.size() || count_codes(table, n) != BigInt(lang.size())) {
                detail << " cardinality mismatch mu=" << mu.str() << " n=" << n;
                return false;
            }
        }
    }
    return true;
}

// 2. Chain probabilities equal oracle section lengths exactly and sum to 1.
bool distribution_exactness(std::ostringstream& detail) {
    for (const Mu& mu : test_mus()) {
        SegmentTable table(mu);
        for (std::size_t n = 1; n <= 10; ++n) {
            Rational chain_total(0);
            Rational oracle_total(0);
            for (const Section& s : enumerate_sections(mu, n)) {
                Rational p = code_probability(table, s.code);
                if (p != s.width()) {
                    detail << " probability mismatch mu=" << mu.str() << " code=" << s.code.str();
                    return false;
                }
                chain_total += p;
                oracle_total += s.width();
            }
            if (chain_total != Rational(1) || oracle_total != Rational(1)) {
                detail << " totals not 1 at mu=" << mu.str() << " n=" << n;
                return false;
            }
        }
    }
    return true;
}

// 3. Sampled 8-bit codes follow D_8: per-code 4-sigma for p >= 1/100, plus a
// chi-square over all codes at significance 1e-4.
bool sampler_statistics(std::ostringstream& detail) {
    const Mu mu = Mu::parse("3/2");
    const std::size_t n = 8;
    const int samples = 100000;
    auto dist = exact_distribution(mu, n);
    std::map<Code, std::int64_t> observed;
    for (int t = 0; t < samples; ++t) {
        ++observed[sample_code(mu, n, static_cast<std::uint64_t>(t))];
    }
    std::vector<std::pair<std::int64_t, double>> cells;
    for (const auto& [code, p] : dist) {
        auto it = observed.find(code);
        std::int64_t count = it == observed.end() ? 0 : it->second;
        if (it != observed.end()) observed.erase(it);
        cells.emplace_back(count, p.to_double());
        const double pd = p.to_double();
        if (pd >= 0.01) {
            const double freq = static_cast<double>(count) / samples;
            const double tol = 4.0 * std::sqrt(pd * (1.0 - pd) / samples);
            if (std::abs(freq - pd) > tol) {
                detail << " code " << code.str() << " freq " << freq << " vs p " << pd;
                return false;
            }
        }
    }
    if (!observed.empty()) {
        detail << " sampled code outside L_8";
        return false;
    }
    ChiSquareResult chi = chi_square_test(cells, samples, kZUpper1e4);
    detail << " chi2=" << chi.statistic << " thr=" << chi.threshold << " dof=" << chi.dof;
    return chi.pass;
}

// 4. Table structure to frontier 200: type bound, exact sum rule, minimum
// lengths, and the theta laws.
bool structure_bound(std::ostringstream& detail) {
    for (const Mu& mu : test_mus()) {
        SegmentTable table(mu);
        table.ensure_frontier(200);
        const int frontier = table.frontier();
        if (frontier > 200) {
            detail << " frontier overshoot mu=" << mu.str();
            return false;
        }
        std::set<std::pair<std::string, std::string>> pairs;
        BigInt d_pow = 1;
        for (int k = 1; k <= frontier; ++k) {
            const LevelRecord& r = table.row(k);
            d_pow *= mu.d();
            pairs.insert({r.v.str(), r.u.str()});
            if (k >= 2 && r.u - r.v < Rational(BigInt(1), 2 * d_pow)) {
                detail << " minimum length violated mu=" << mu.str() << " k=" << k;
                return false;
            }
            if (k >= 2 && r.c != 1 - table.row(r.theta).c) {
                detail << " c law violated mu=" << mu.str() << " k=" << k;
                return false;
            }
        }
        if (pairs.size() > 2 * 200) {
            detail << " type bound violated mu=" << mu.str();
            return false;
        }
        for (int k = 1; k < frontier; ++k) {
            const LevelRecord& r = table.row(k);
            if (r.delta0 == kReject || r.delta1 == kReject) continue;
            if (table.length(r.delta0) + table.length(r.delta1) != mu.times(table.length(k))) {
                detail << " sum rule violated mu=" << mu.str() << " k=" << k;
                return false;
            }
            if (k >= 2 && 2 * r.theta > k) {
                detail << " theta bound violated mu=" << mu.str() << " k=" << k;
                return false;
            }
        }
    }
    return true;
}

// 5. 100 traces of n=1000 per mu obey the level-jump law (or report the
// hypothesis violation).
bool level_jump_law(std::ostringstream& detail) {
    for (const Mu& mu : test_mus()) {
        int audited = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            LevelJumpAudit audit = level_jump_audit(mu, 1000, seed);
            if (audit.skipped()) {
                detail << " mu=" << mu.str() << " skipped: f^i(1/2)=1/2 at i="
                       << audit.violation_index;
                break;
            }
            if (!audit.passed) {
                detail << " trace violation mu=" << mu.str() << " seed=" << seed;
                return false;
            }
            ++audited;
        }
        detail << " mu=" << mu.str() << " audited=" << audited;
    }
    return true;
}

// 6. Space growth at desk scale: tail exceedances, the K^2 shape ratio, and
// the table_bits guard.
bool space_growth(std::ostringstream& detail) {
    const Mu mu = Mu::parse("3/2");
    const int trials = 1000;
    const std::int64_t log2d = ceil_log2(mu.d());
    std::map<std::size_t, double> mean_k_sq;
    for (std::size_t n : {std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
        auto records = run_trials(mu, n, trials, 1);
        const int twice_l_star = 2 * l_star(mu, n);
        int exceed = 0;
        double ksq = 0;
        std::int64_t max_bits = 0;
        int k_at_max = 0;
        for (const TrialRecord& rec : records) {
            if (rec.stats.max_level >= twice_l_star) ++exceed;
            ksq += static_cast<double>(rec.stats.max_level) *
                   static_cast<double>(rec.stats.max_level);
            if (rec.stats.table_bits > max_bits) {
                max_bits = rec.stats.table_bits;
                k_at_max = rec.stats.max_level;
            }
        }
        mean_k_sq[n] = ksq / trials;
        const double bound = std::max(
            3.0, 10.0 * trials / (static_cast<double>(n) * static_cast<double>(n)));
        detail << " n=" << n << " exceed=" << exceed << " meanK2=" << mean_k_sq[n];
        if (exceed > bound) {
            detail << " tail bound violated at n=" << n;
            return false;
        }
        // The table holds one level beyond the deepest visit; guard at that
        // frontier, same shape as space_report.
        const std::int64_t k = k_at_max + 1;
        const std::int64_t guard = 16 * k * k * log2d + 64 * k * (ceil_log2(BigInt(k)) + 1);
        if (max_bits > guard) {
            detail << " bits guard violated at n=" << n << " (" << max_bits << ">" << guard << ")";
            return false;
        }
    }
    if (mean_k_sq[10000] > 8.0 * mean_k_sq[100]) {
        detail << " K^2 ratio " << mean_k_sq[10000] / mean_k_sq[100] << " exceeds 8";
        return false;
    }
    return true;
}

std::string run_cli_stdout(const std::string& args, int* exit_code) {
    std::string cmd = std::string(TENTCODE_BIN_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    *exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

// 7. Byte-identical stdout when a command is repeated with identical flags.
bool determinism(std::ostringstream& detail) {
    const std::vector<std::string> commands = {
        "gen --mu 3/2 -n 100000 --seed 42",
        "gen --mu 7/4 -n 4096 --seed 7 --emit hex",
        "enumerate --mu 9/5 -n 10 --probs",
        "table --mu 4/3 -k 60",
        "stats --mu 3/2 -n 500 --trials 64 --seed 11",
    };
    for (const std::string& cmd : commands) {
        int code_a = 0, code_b = 0;
        std::string a = run_cli_stdout(cmd, &code_a);
        std::string b = run_cli_stdout(cmd, &code_b);
        if (code_a != 0 || code_b != 0 || a.empty() || a != b) {
            detail << " nondeterministic or failing: " << cmd;
            return false;
        }
    }
    return true;
}

// 8. Reconstruction error stays within mu^-n, compared as exact rationals.
bool reconstruction(std::ostringstream& detail) {
    const std::size_t n = 30;
    for (const Mu& mu : test_mus()) {
        BitSource src(2718281828ull);
        Rational bound(boost::multiprecision::pow(mu.d(), static_cast<unsigned>(n)),
                       boost::multiprecision::pow(mu.c(), static_cast<unsigned>(n)));
        for (int i = 0; i < 1000; ++i) {
            Rational x = random_unit_rational(src, 1u << 24);
            Rational err = x - decode_partial(mu, encode(mu, x, n));
            if (err.sign() < 0) err = -err;
            if (err > bound) {
                detail << " reconstruction error too large mu=" << mu.str() << " x=" << x.str();
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    std::cout << "acceptance suite (mu in {3/2, 4/3, 7/4, 9/5})\n";
    criterion(1, "language equivalence, n <= 12, exact", language_equivalence);
    criterion(2, "distribution exactness, n <= 10, exact", distribution_exactness);
    criterion(3, "sampler statistics, n=8, 1e5 samples", sampler_statistics);
    criterion(4, "structure bound to frontier 200, exact", structure_bound);
    criterion(5, "level-jump law, 100 traces x n=1000", level_jump_law);
    criterion(6, "space growth sweep n in {1e2,1e3,1e4}", space_growth);
    criterion(7, "CLI determinism, byte-identical stdout", determinism);
    criterion(8, "reconstruction within mu^-30, exact", reconstruction);
    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
    return 1;
}
