#include "tentcode/analysis.hpp"
#include "tentcode/automaton.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/sampler.hpp"
#include "verify_suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace tentcode;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapExceeded = 3;

int cmd_gen(const std::string& mu_str, std::uint64_t n, std::uint64_t seed,
            const std::string& emit, bool want_stats) {
    Mu mu = Mu::parse(mu_str);
    TentSampler sampler(mu, seed);
    if (emit == "bits") {
        for (std::uint64_t i = 0; i < n; ++i) {
            std::cout.put(static_cast<char>('0' + sampler.next_bit()));
        }
    } else {
        static const char* hex = "0123456789abcdef";
        unsigned byte = 0;
        int filled = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            byte = (byte << 1) | static_cast<unsigned>(sampler.next_bit());
            if (++filled == 8) {
                std::cout.put(hex[byte >> 4]).put(hex[byte & 0xf]);
                byte = 0;
                filled = 0;
            }
        }
        if (filled > 0) {
            byte <<= (8 - filled);  // zero-padded tail
            std::cout.put(hex[byte >> 4]).put(hex[byte & 0xf]);
        }
    }
    std::cout.put('\n');
    if (want_stats) {
        RunStats stats = sampler.stats();
        std::cerr << "K=" << stats.max_level << "\n"
                  << "table_bits=" << stats.table_bits << "\n"
                  << "steps=" << stats.steps << "\n"
                  << "grow_events=" << stats.grow_events << "\n";
    }
    return kExitOk;
}

int cmd_enumerate(const std::string& mu_str, std::size_t n, bool probs, std::size_t cap,
                  bool force) {
    Mu mu = Mu::parse(mu_str);
    if (n > cap && !force) {
        std::cerr << "enumerate: n=" << n << " exceeds cap " << cap
                  << " (pass --force to override)\n";
        return kExitCapExceeded;
    }
    auto sections = enumerate_sections(mu, n, force ? n : cap);
    SegmentTable table(mu);
    for (const Section& s : sections) {
        std::cout << s.code.str() << '\t' << s.lo.str() << '\t' << s.hi.str() << '\t'
                  << s.width().str();
        if (probs) {
            std::string p = code_probability(table, s.code).str();
            if (p != s.width().str()) {
                throw std::logic_error("enumerate: chain probability " + p +
                                       " differs from section length for " + s.code.str());
            }
            std::cout << '\t' << p;
        }
        std::cout << '\n';
    }
    return kExitOk;
}

int cmd_table(const std::string& mu_str, int k) {
    Mu mu = Mu::parse(mu_str);
    if (k < 0) throw std::domain_error("table: -k must be >= 0");
    SegmentTable table(mu);
    // One level past the request so every printed row has resolved arcs.
    table.ensure_frontier(k + 1);
    std::cout << table.dump(k);
    if (table.stabilized_at()) {
        std::cerr << "stabilized_at=" << *table.stabilized_at() << "\n";
    }
    return kExitOk;
}

int cmd_stats(const std::string& mu_str, std::size_t n, int trials, std::uint64_t seed0,
              const std::string& csv_path, unsigned threads, bool per_trial) {
    Mu mu = Mu::parse(mu_str);
    auto records = run_trials(mu, n, trials, seed0, threads);

    if (per_trial) {
        for (const TrialRecord& rec : records) {
            std::cout << "trial=" << rec.trial << " seed=" << rec.seed
                      << " K=" << rec.stats.max_level << " table_bits=" << rec.stats.table_bits
                      << " grow_events=" << rec.stats.grow_events << "\n";
        }
    }

    KHistogram hist;
    hist.n = n;
    hist.trials = trials;
    hist.seed0 = seed0;
    hist.l_star = l_star(mu, n);
    for (const TrialRecord& rec : records) ++hist.counts[rec.stats.max_level];

    const double bound =
        std::max(3.0, 10.0 * trials / (static_cast<double>(n) * static_cast<double>(n)));
    const int exceed = hist.exceedances();
    std::cout << "mu=" << mu.str() << " n=" << n << " trials=" << trials << " seed0=" << seed0
              << " l_star=" << hist.l_star << " max_k=" << hist.max_k()
              << " mean_k_sq=" << hist.mean_k_squared() << " exceedances=" << exceed
              << " bound=" << bound << " tail=" << (exceed <= bound ? "pass" : "fail") << "\n";
    for (const auto& [k, count] : hist.counts) {
        std::cout << "k=" << k << " count=" << count << "\n";
    }

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::domain_error("stats: cannot open " + csv_path);
        csv << "trial,seed,K,table_bits,grow_events\n";
        for (const TrialRecord& rec : records) {
            csv << rec.trial << ',' << rec.seed << ',' << rec.stats.max_level << ','
                << rec.stats.table_bits << ',' << rec.stats.grow_events << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const std::vector<std::string>& mu_strs, std::size_t max_n, std::uint64_t seed,
               int trials, bool inject_fault) {
    verify::Options options;
    if (mu_strs.empty()) {
        for (const char* m : {"3/2", "4/3", "7/4", "9/5"}) options.mus.push_back(Mu::parse(m));
    } else {
        for (const std::string& m : mu_strs) options.mus.push_back(Mu::parse(m));
    }
    options.max_n = max_n;
    options.seed = seed;
    options.trials = trials;
    options.inject_fault = inject_fault;
    return verify::run_all(options) == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tentcode: exact tent-code generation, recognition and space analysis"};
    app.require_subcommand(1);

    std::string mu_str;
    std::vector<std::string> mu_list;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    int trials = 1000;
    std::string emit = "bits";
    bool want_stats = false;
    bool probs = false;
    bool force = false;
    bool inject_fault = false;
    bool per_trial = false;
    std::size_t max_n = 16;
    int frontier_k = 0;
    std::string csv_path;
    unsigned threads = 0;

    CLI::App* gen = app.add_subcommand("gen", "stream n exactly-distributed tent-code bits");
    gen->add_option("--mu", mu_str, "slope as an exact fraction c/d in (1,2)")->required();
    gen->add_option("-n", n, "number of bits")->required();
    gen->add_option("--seed", seed, "PRNG seed (default 0; never time-based)");
    gen->add_option("--emit", emit, "bits|hex")->check(CLI::IsMember({"bits", "hex"}));
    gen->add_flag("--stats", want_stats, "print K/table_bits/steps/grow_events to stderr");

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "list every section with its exact length");
    enumerate->add_option("--mu", mu_str, "slope as an exact fraction c/d in (1,2)")->required();
    enumerate->add_option("-n", n, "prefix length")->required();
    enumerate->add_flag("--probs", probs, "append the chain-computed probability column");
    enumerate->add_option("--max-n", max_n, "enumeration cap (default 16)");
    enumerate->add_flag("--force", force, "enumerate past the cap");

    CLI::App* table = app.add_subcommand("table", "materialize and dump the segment-type table");
    table->add_option("--mu", mu_str, "slope as an exact fraction c/d in (1,2)")->required();
    table->add_option("-k", frontier_k, "target frontier level")->required();

    CLI::App* stats = app.add_subcommand("stats", "K histogram and tail-bound verdict over seeds");
    stats->add_option("--mu", mu_str, "slope as an exact fraction c/d in (1,2)")->required();
    stats->add_option("-n", n, "bits per trial")->required();
    stats->add_option("--trials", trials, "number of independent chains (default 1000)");
    stats->add_option("--seed", seed, "first seed; trial t uses seed+t");
    stats->add_option("--csv", csv_path, "write per-trial records to this file");
    stats->add_flag("--records", per_trial, "print one key=value line per trial");
    stats->add_option("--threads", threads, "worker threads (default: hardware)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full invariant suite");
    verify_cmd->add_option("--mu", mu_list, "slopes to verify (default: 3/2 4/3 7/4 9/5)");
    verify_cmd->add_option("--max-n", max_n, "largest prefix length for the suites")
        ->default_val(std::size_t{10});
    verify_cmd->add_option("--seed", seed, "seed for the randomized checks");
    verify_cmd->add_option("--trials", trials, "sample count for the statistical suite")
        ->default_val(20000);
    verify_cmd->add_flag("--inject-fault", inject_fault,
                         "negative control: corrupt one transition, suites must fail")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (gen->parsed()) return cmd_gen(mu_str, n, seed, emit, want_stats);
        if (enumerate->parsed()) {
            return cmd_enumerate(mu_str, static_cast<std::size_t>(n), probs, max_n, force);
        }
        if (table->parsed()) return cmd_table(mu_str, frontier_k);
        if (stats->parsed()) {
            return cmd_stats(mu_str, static_cast<std::size_t>(n), trials, seed, csv_path, threads,
                             per_trial);
        }
        if (verify_cmd->parsed()) return cmd_verify(mu_list, max_n, seed, trials, inject_fault);
    } catch (const EnumerationLimitError& e) {
        std::cerr << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal fault: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitBadInput;
}
