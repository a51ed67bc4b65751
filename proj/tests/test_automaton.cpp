#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tentcode/automaton.hpp"
#include "tentcode/oracle.hpp"
#include "tentcode/tent.hpp"

#include <set>
#include <string>
#include <vector>

using namespace tentcode;

namespace {
const Mu kMu32 = Mu::parse("3/2");
const Mu kMu43 = Mu::parse("4/3");
const Mu kMu74 = Mu::parse("7/4");
const Mu kMu95 = Mu::parse("9/5");
const std::vector<Mu> kAllMus = {kMu32, kMu43, kMu74, kMu95};

Code word_to_code(std::uint64_t w, std::size_t n) {
    Code code;
    for (std::size_t i = 0; i < n; ++i) code.push_back((w >> (n - 1 - i)) & 1);
    return code;
}
}  // namespace

TEST_CASE("table init matches the algorithm's first rows") {
    SegmentTable t(kMu32);
    CHECK(t.frontier() == 1);
    CHECK(t.row(0).v == Rational(0));
    CHECK(t.row(0).u == Rational(1));
    CHECK(t.row(0).c == 0);
    CHECK(t.row(0).delta0 == 1);
    CHECK(t.row(0).delta1 == 1);
    CHECK(t.row(1).v == Rational(0));
    CHECK(t.row(1).u == Rational(3, 4));
    CHECK(t.row(1).c == 1);

    SegmentTable t43(kMu43);
    CHECK(t43.row(1).u == Rational(2, 3));
}

TEST_CASE("growth materializes the known mu=3/2 levels") {
    SegmentTable t(kMu32);
    t.grow();
    CHECK(t.frontier() == 2);
    CHECK(t.row(1).delta0 == 2);
    CHECK(t.row(1).delta1 == 1);  // self-loop
    CHECK(t.row(2).v == Rational(3, 8));
    CHECK(t.row(2).u == Rational(3, 4));
    CHECK(t.row(2).c == 0);
    CHECK(t.row(2).theta == 1);
    CHECK(t.length(2) == Rational(3, 8));  // mu(mu-1)/2

    t.grow();
    CHECK(t.row(2).delta0 == 3);
    CHECK(t.row(2).delta1 == 2);  // branch re-enters level theta(2)+1 = 2
    CHECK(t.row(3).v == Rational(9, 16));
    CHECK(t.row(3).u == Rational(3, 4));
    CHECK(t.row(3).c == 0);

    t.grow();
    // Level 3 lies right of 1/2: sense-reversing single successor.
    CHECK(t.row(3).delta0 == kReject);
    CHECK(t.row(3).delta1 == 4);
    CHECK(t.row(4).v == Rational(3, 8));
    CHECK(t.row(4).u == Rational(21, 32));
    CHECK(t.row(4).c == 1);
    CHECK(t.row(4).theta == 2);
}

TEST_CASE("theta(2) = 1 for every mu") {
    for (const Mu& mu : kAllMus) {
        SegmentTable t(mu);
        t.grow();
        CHECK(t.row(2).theta == 1);
    }
}

TEST_CASE("delta_step from the start state") {
    SegmentTable t(kMu32);
    AutomatonState s1 = delta_step(t, AutomatonState::initial(), 1);
    CHECK(s1.level == 1);
    CHECK_FALSE(s1.mirrored);  // I_1
    AutomatonState s0 = delta_step(t, AutomatonState::initial(), 0);
    CHECK(s0.level == 1);
    CHECK(s0.mirrored);  // complement of I_1
}

TEST_CASE("level-1 self-loop on bit 1 for any mu") {
    for (const Mu& mu : kAllMus) {
        SegmentTable t(mu);
        AutomatonState s = delta_step(t, AutomatonState::initial(), 1);
        s = delta_step(t, s, 1);
        CHECK(s.level == 1);
        CHECK_FALSE(s.mirrored);
    }
}

TEST_CASE("branch arc lands mirrored") {
    SegmentTable t(kMu32);
    AutomatonState s = AutomatonState::initial();
    for (int bit : {1, 0, 1}) s = delta_step(t, s, bit);  // q0 -> I1 -> I2 -> ?
    CHECK(s.level == 2);
    CHECK(s.mirrored);
}

TEST_CASE("stepping from reject stays rejected") {
    SegmentTable t(kMu32);
    AutomatonState s = AutomatonState::reject();
    CHECK(delta_step(t, s, 0).rejected());
    CHECK(delta_step(t, s, 1).rejected());
}

TEST_CASE("recognize examples") {
    CHECK(recognize(kMu32, Code::parse("11")));
    CHECK(recognize(kMu32, Code::parse("0000000000")));
    // Some 4-bit word the oracle rules out.
    std::set<Code> lang;
    for (const Section& s : enumerate_sections(kMu32, 4)) lang.insert(s.code);
    bool found_rejected = false;
    for (std::uint64_t w = 0; w < 16; ++w) {
        Code code = word_to_code(w, 4);
        if (!lang.count(code)) {
            CHECK_FALSE(recognize(kMu32, code));
            found_rejected = true;
        }
    }
    CHECK(found_rejected);
}

TEST_CASE("recognize agrees with the oracle for n <= 12") {
    for (const Mu& mu : {kMu32, kMu95}) {
        SegmentTable t(mu);
        for (std::size_t n = 1; n <= 12; ++n) {
            std::set<Code> lang;
            for (const Section& s : enumerate_sections(mu, n)) lang.insert(s.code);
            for (std::uint64_t w = 0; w < (1ull << n); ++w) {
                Code code = word_to_code(w, n);
                CHECK(recognize(t, code) == (lang.count(code) > 0));
            }
        }
    }
}

TEST_CASE("count_codes") {
    CHECK(count_codes(kMu32, 1) == 2);
    CHECK(count_codes(kMu32, 2) == 4);
    for (const Mu& mu : {kMu32, kMu74}) {
        SegmentTable t(mu);
        for (std::size_t n : {3, 7, 10}) {
            CHECK(count_codes(t, n) == BigInt(enumerate_sections(mu, n).size()));
        }
    }
}

TEST_CASE("code_probability examples") {
    CHECK(code_probability(kMu32, Code::parse("1")) == Rational(1, 2));
    CHECK(code_probability(kMu32, Code::parse("11")) == Rational(1, 3));
    CHECK(code_probability(kMu32, Code::parse("10")) == Rational(1, 6));
    CHECK(code_probability(kMu32, Code::parse("0")) == Rational(1, 2));
}

TEST_CASE("code_probability equals section length, rejected is zero") {
    for (const Mu& mu : {kMu43, kMu74}) {
        SegmentTable t(mu);
        for (std::size_t n = 1; n <= 12; ++n) {
            Rational total(0);
            std::set<Code> lang;
            for (const Section& s : enumerate_sections(mu, n)) {
                lang.insert(s.code);
                Rational p = code_probability(t, s.code);
                CHECK(p == s.width());
                total += p;
            }
            CHECK(total == Rational(1));
            for (std::uint64_t w = 0; w < (1ull << n); ++w) {
                Code code = word_to_code(w, n);
                if (!lang.count(code)) CHECK(code_probability(t, code) == Rational(0));
            }
        }
    }
}

TEST_CASE("structure invariants through level 60") {
    for (const Mu& mu : kAllMus) {
        SegmentTable t(mu);
        t.ensure_frontier(60);
        const int frontier = t.frontier();
        CHECK(frontier == 60);
        CHECK_FALSE(t.orbit_half_hit().has_value());
        CHECK_FALSE(t.stabilized_at().has_value());

        std::vector<Rational> orbit{Rational(1, 2)};
        for (int i = 1; i <= frontier; ++i) orbit.push_back(tent_apply(mu, orbit.back()));

        std::set<std::pair<std::string, std::string>> pairs;
        BigInt d_pow = 1;
        for (int k = 1; k <= frontier; ++k) {
            const LevelRecord& r = t.row(k);
            d_pow *= mu.d();
            pairs.insert({r.v.str(), r.u.str()});
            CHECK(Rational(0) <= r.v);
            CHECK(r.v < r.u);
            CHECK(r.u <= Rational(1));
            if (k >= 2) {
                CHECK(r.u - r.v >= Rational(BigInt(1), 2 * d_pow));
                CHECK(r.c == 1 - t.row(r.theta).c);
                // Endpoint provenance: both ends live on the kneading orbit.
                const Rational& moving = r.c == 0 ? r.v : r.u;
                const Rational& station = r.c == 0 ? r.u : r.v;
                CHECK(moving == orbit[static_cast<std::size_t>(k)]);
                CHECK(station == orbit[static_cast<std::size_t>(r.theta)]);
            }
        }
        // Each level's two orientations share the endpoint pair: the 2n bound
        // is n distinct pairs.
        CHECK(pairs.size() == static_cast<std::size_t>(frontier));

        for (int k = 1; k < frontier; ++k) {
            const LevelRecord& r = t.row(k);
            const bool branching = r.delta0 != kReject && r.delta1 != kReject;
            if (branching) {
                CHECK(t.length(r.delta0) + t.length(r.delta1) == mu.times(t.length(k)));
                if (k >= 2) {
                    CHECK(2 * r.theta <= k);
                    CHECK(r.delta1 == r.theta + 1);
                    CHECK(t.row(r.theta + 1).c == 0);
                }
            }
            for (int target : {r.delta0, r.delta1}) {
                if (target == kReject) continue;
                bool ok = target == k + 1 || (k == 1 && target == 1) ||
                          (k >= 2 && target >= 2 && 2 * (target - 1) <= k);
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("dump format") {
    SegmentTable t(kMu32);
    t.ensure_frontier(3);
    std::string dump = t.dump(2);
    CHECK(dump.find("0\t0/1\t1/1\t0\t1\t1\t0\n") != std::string::npos);
    CHECK(dump.find("1\t0/1\t3/4\t1\t2\t1\t0\n") != std::string::npos);
    CHECK(dump.find("2\t3/8\t3/4\t0\t3\t2\t1\n") != std::string::npos);
    CHECK(dump.find("\n3\t") == std::string::npos);  // bounded at the request
}

TEST_CASE("endpoint scan finds levels by interval") {
    SegmentTable t(kMu32);
    t.ensure_frontier(5);
    CHECK(t.find_level_with_endpoints(Rational(3, 8), Rational(3, 4)) == 2);
    CHECK(t.find_level_with_endpoints(Rational(9, 16), Rational(3, 4)) == 3);
    CHECK(t.find_level_with_endpoints(Rational(1, 5), Rational(2, 5)) == kReject);
}

TEST_CASE("stabilization aliases instead of growing (synthetic state)") {
    // No rational mu is known to reach a repeated record, so fabricate one:
    // replace the frontier row with [1/4, 1/2], whose successor [3/8, 3/4)
    // duplicates level 2.
    SegmentTable t(kMu32);
    t.ensure_frontier(3);
    REQUIRE(t.frontier() == 3);
    t.rows()[3].v = Rational(1, 4);
    t.rows()[3].u = Rational(1, 2);
    t.rows()[3].c = 0;
    t.rows()[3].theta = 2;

    int alias = t.grow();
    CHECK(alias == 2);
    REQUIRE(t.stabilized_at().has_value());
    CHECK(*t.stabilized_at() == 3);
    CHECK(t.frontier() == 3);
    CHECK(t.row(3).delta0 == 2);
    CHECK(t.row(3).delta1 == kReject);
    CHECK(t.resolved(3));

    // Further growth requests keep returning the alias, and walking across
    // the aliased arc works.
    CHECK(t.grow() == 2);
    t.ensure_frontier(10);
    CHECK(t.frontier() == 3);
    AutomatonState s{3, false};
    AutomatonState next = delta_step(t, s, 0);
    CHECK(next.level == 2);
}

TEST_CASE("kneading orbit hitting 1/2 is detected (synthetic state)") {
    SegmentTable t(kMu32);
    t.ensure_frontier(3);
    t.rows()[3].v = Rational(1, 3);  // f(1/3) = 1/2 at mu = 3/2
    t.rows()[3].u = Rational(5, 12);
    t.rows()[3].c = 0;
    t.rows()[3].theta = 2;

    t.grow();
    REQUIRE(t.orbit_half_hit().has_value());
    CHECK(*t.orbit_half_hit() == 4);
    CHECK(t.row(4).v == Rational(1, 2));
}
