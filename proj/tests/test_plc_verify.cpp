#include "infloop/format.hpp"
#include "infloop/scans.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace infloop;

namespace {

long isqrt_long(long n) {
    long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(long n) { return isqrt_long(n) * isqrt_long(n) == n; }

// sqrt(N) = [a0; (a1, ..., 2 a0)] with every a_i <= 2 a0 in the period.
long height_of_sqrt(long N) { return 2 * isqrt_long(N); }

}  // namespace

TEST(PlcVerify, Thresholds) {
    EXPECT_EQ(noloop_threshold(4), 3);
    EXPECT_EQ(noloop_threshold(5), 3);
    EXPECT_EQ(noloop_threshold(16), 7);
    EXPECT_EQ(noloop_threshold(25), 9);
    for (long n = 1; n <= 5000; ++n) EXPECT_EQ(noloop_threshold(static_cast<std::uint64_t>(n)), isqrt_long(4 * n) - 1) << n;
    EXPECT_EQ(ipow(3, 4), 81u);
    EXPECT_THROW(ipow(2, 64), std::overflow_error);
    EXPECT_TRUE(is_prime(97));
    EXPECT_FALSE(is_prime(91));
    EXPECT_FALSE(is_prime(1));
}

TEST(PlcVerify, SpectrumExamples) {
    auto s = height_spectrum(parse_expansion("sqrt(2)"), 2, 1);
    ASSERT_EQ(s.entries.size(), 2u);
    EXPECT_EQ(s.entries[0].second.str(), "2");
    EXPECT_EQ(s.entries[1].second.str(), "4");
    auto g = height_spectrum(parse_cf("[0; (1)]"), 2, 1);
    EXPECT_EQ(g.entries[0].second.str(), "1");
    EXPECT_EQ(g.entries[1].second.str(), "4");
    EXPECT_THROW(height_spectrum(parse_cf("[0; (1)]"), 4, 1), std::invalid_argument);
}

TEST(PlcVerify, SpectrumOfSquareRootsMatchesClosedForm) {
    for (long D = 2; D <= 60; ++D) {
        if (is_square(D)) continue;
        for (std::uint64_t p : {2, 3, 5}) {
            auto s = height_spectrum(cf_of_surd(QuadSurd(0, D, 1)), p, 3);
            long scale = 1;
            for (const auto& [l, h] : s.entries) {
                EXPECT_EQ(h.value(), height_of_sqrt(scale * scale * D)) << "D=" << D << " p=" << p << " l=" << l;
                scale *= static_cast<long>(p);
            }
        }
    }
}

TEST(PlcVerify, MpBounds) {
    auto g = parse_cf("[0; (1)]");
    auto b = mp_upper_bound(g, 2, 1);
    EXPECT_EQ(b.value, Rational(Integer(1), Integer(4)));
    EXPECT_EQ(b.argmin, 1u);
    EXPECT_FALSE(b.rational_input);
    auto r = mp_upper_bound(parse_expansion("3/7"), 2, 5);
    EXPECT_TRUE(r.rational_input);
    EXPECT_EQ(r.value, Rational(0));
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        auto e = random_periodic(rng);
        for (std::uint64_t p : {2, 3}) {
            Rational prev = Rational::infinity();
            for (std::uint64_t L = 0; L <= 6; ++L) {
                auto u = mp_upper_bound(e, p, L);
                EXPECT_LE(u.value, prev);
                EXPECT_LT(mp_partial_lower(e, p, L), u.value);
                prev = u.value;
            }
        }
    }
}

TEST(PlcVerify, NoloopAndInflExamples) {
    auto g = parse_cf("[0; (1)]");
    auto s = check_noloop_bound(g, 4);
    EXPECT_TRUE(s.precondition);
    EXPECT_TRUE(s.pass);
    EXPECT_EQ(s.record().substr(0, 27), "check=noloop n=4 pass=1 wit");
    auto i = check_infl(g, 2, 2);
    EXPECT_TRUE(i.pass);
    EXPECT_EQ(i.witness, "min=1/8 bound=1/3");
    // Loops and rationals are outside both statements.
    EXPECT_FALSE(check_noloop_bound(loop_example(6), 6).precondition);
    EXPECT_EQ(check_infl(parse_expansion("1/2"), 2, 2).record(), "check=infl n=4 pass=- witness=rational");
}

TEST(PlcVerify, NoloopIsShiftInvariant) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        auto e = random_periodic(rng);
        std::uint64_t n = 4 + rng() % 10;
        auto base = check_noloop_bound(e, n);
        for (int k = 1; k <= 3; ++k) {
            auto moved = check_noloop_bound(shift_cf(e, k), n);
            EXPECT_EQ(moved.precondition, base.precondition);
            if (base.precondition) {
                EXPECT_TRUE(moved.pass);
            }
        }
    }
}

TEST(PlcVerify, Pro2Example) {
    auto s = check_pro2(parse_cf("[0; 1, 3, 2]"), 2, 2);
    EXPECT_TRUE(s.precondition);
    EXPECT_TRUE(s.pass) << s.witness;
    EXPECT_EQ(s.witness, "k=2 Bn=4 need=4 target=3/2");
    EXPECT_FALSE(check_pro2(parse_cf("[0; 1, 3, 2]"), 2, 1).precondition);
    EXPECT_FALSE(check_pro2(parse_cf("[0; 1, 3, 2]"), 2, 3).precondition);
    EXPECT_THROW(check_pro2(parse_cf("[0; (1)]"), 2, 1), std::invalid_argument);
}

TEST(PlcVerify, PlantedPro2AlwaysMeetsPrecondition) {
    for (std::uint64_t n = 2; n <= 7; ++n)
        for (std::uint64_t i = 0; i < 50; ++i) {
            auto rng = item_rng(3, n, i);
            auto pl = planted_pro2(rng, n);
            auto s = check_pro2(pl.e, n, pl.k);
            EXPECT_TRUE(s.precondition) << to_string(pl.e);
            EXPECT_TRUE(s.pass) << s.record();
        }
}

TEST(PlcVerify, PersistenceOfGoldenRatio) {
    for (std::uint64_t p : {2, 3, 5}) {
        auto ps = persistence_scan(parse_cf("[0; (1)]"), p, 3, 4);
        ASSERT_EQ(ps.size(), 3u);
        for (const auto& [m, l] : ps) EXPECT_EQ(l, std::optional<std::uint64_t>(0)) << p << "^" << m;
    }
}

TEST(PlcVerify, CountHeightBreaksAreRealBreaks) {
    std::mt19937_64 rng(14);
    Shape s;
    s.big_a = 0;
    s.max_a = 8;
    int loops = 0;
    for (int t = 0; t < 4000; ++t) {
        auto e = random_periodic(rng, s);
        auto r = count_height(e, 2, 3, 0, 12);
        if (!r.loops_through_L) continue;
        ++loops;
        EXPECT_TRUE(is_infinite_loop(e, 8).is_loop());
        if (r.bound_holds) {
            EXPECT_LE(height(e).value(), 4);
            continue;
        }
        EXPECT_NE(r.first_break.has_value(), r.unresolved);
        if (r.first_break) {
            CFExpansion y = e;
            for (std::uint64_t l = 0; l < *r.first_break; ++l) {
                EXPECT_TRUE(is_infinite_loop(y, 8).is_loop());
                y = multiply_cf(y, 2);
            }
            EXPECT_TRUE(is_infinite_loop(y, 8).not_loop());
        }
    }
    EXPECT_GT(loops, 0);
}

TEST(PlcVerify, SandwichChecks) {
    auto d = check_determinant_sandwich(parse_cf("[0; 3]"));
    EXPECT_TRUE(d.pass);
    EXPECT_FALSE(check_sandwich_cN(parse_cf("[0; 3]")).precondition);
    // The trailing 1 form gives the same verdicts.
    EXPECT_TRUE(check_determinant_sandwich(parse_cf("[0; 2, 1]")).pass);
    std::mt19937_64 rng(15);
    Shape s;
    s.max_body = 9;
    for (int t = 0; t < 500; ++t) {
        auto e = random_finite(rng, s);
        EXPECT_TRUE(check_determinant_sandwich(e).pass) << to_string(e);
        auto c = check_sandwich_cN(e);
        if (c.precondition) {
            EXPECT_TRUE(c.pass) << to_string(e) << " " << c.witness;
        }
    }
    EXPECT_EQ(distance_to_integer(Rational(Integer(7), Integer(4))), Rational(Integer(1), Integer(4)));
}

TEST(PlcVerify, SemiconvergentMembership) {
    auto g = parse_cf("[0; (1)]");
    EXPECT_TRUE(is_semiconvergent_of(g, Rational(Integer(5), Integer(8))));
    EXPECT_FALSE(is_semiconvergent_of(g, Rational(Integer(3), Integer(4))));
    EXPECT_TRUE(is_convergent_of(g, Rational(Integer(3), Integer(5))));
    auto r = parse_cf("[0; 2, 3]");
    EXPECT_TRUE(is_semiconvergent_of(r, Rational(Integer(2), Integer(5))));
    // Farey neighbours of 3/7 come from the infinity tails.
    EXPECT_TRUE(is_semiconvergent_of(r, Rational(Integer(5), Integer(12))));
    EXPECT_FALSE(is_semiconvergent_of(r, Rational(Integer(1), Integer(4))));
    // sqrt(2): semi-convergents are the convergents and the mediants p_{k-1}+p_k.
    auto s2 = parse_expansion("sqrt(2)");
    for (const auto& x : semiconvergents(s2, 6)) EXPECT_TRUE(is_semiconvergent_of(s2, x));
    EXPECT_TRUE(is_semiconvergent_of(s2, Rational(Integer(4), Integer(3))));
    EXPECT_FALSE(is_convergent_of(s2, Rational(Integer(4), Integer(3))));
}

TEST(PlcVerify, DualPushforward) {
    for (std::uint64_t n = 2; n <= 8; ++n) {
        auto r = scan_dual_pushforward(n, 150, {21, 2, {}});
        EXPECT_TRUE(r.ok()) << r.summary();
        EXPECT_GT(r.tested, 0u);
    }
}

TEST(Scans, DeterministicAcrossThreadCounts) {
    auto a = scan_noloop(6, 200, {7, 1, {}});
    auto b = scan_noloop(6, 200, {7, 4, {}});
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_EQ(a.entries[i].record(), b.entries[i].record());
    auto c = scan_noloop(6, 200, {8, 4, {}});
    bool differs = false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) differs = differs || a.entries[i].record() != c.entries[i].record();
    EXPECT_TRUE(differs);
}

TEST(Scans, SummaryFormat) {
    ScanReport r{"noloop", "n=4"};
    ScanEntry bad{"noloop", "4"};
    bad.pass = false;
    bad.witness = "x";
    r.add(bad);
    r.add(detail::unmet("noloop", "4", "rational"));
    EXPECT_EQ(r.summary(), "scan=noloop n=4 tested=1 skipped=1 violations=1\nfirst violation: check=noloop n=4 pass=0 witness=x");
}
