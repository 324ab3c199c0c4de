#include "infloop/cutting_seq.hpp"
#include "infloop/format.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace infloop;

namespace {

CFExpansion random_periodic(std::mt19937_64& rng) {
    std::vector<Integer> body, period;
    for (int i = 0, b = static_cast<int>(rng() % 3); i < b; ++i) body.push_back(1 + rng() % 6);
    for (int i = 0, b = 1 + static_cast<int>(rng() % 3); i < b; ++i) period.push_back(1 + rng() % 6);
    return CFExpansion::periodic(rng() % 3, body, period);
}

}  // namespace

TEST(CuttingWord, ParseAndPrint) {
    auto w = CuttingWord::parse("L^2 R^3 L");
    EXPECT_EQ(w.str(), "L^2 R^3 L^1");
    EXPECT_EQ(CuttingWord::parse(w.str()), w);
    for (const char* bad : {"L^0", "L L", "X^2", "L^", "R^x"}) EXPECT_THROW(CuttingWord::parse(bad), std::exception) << bad;
    EXPECT_EQ(CuttingWord::from_letters({Letter::R, Letter::R, Letter::L}).str(), "R^2 L^1");
}

TEST(CuttingWord, EtaRoundTrip) {
    EXPECT_EQ(to_string(eta(CuttingWord::parse("R^2 L^3"))), "[0; 2, 3]");
    EXPECT_EQ(to_string(eta(CuttingWord::parse("L R^4"), true)), "[1; 4, oo]");
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        std::vector<Integer> body;
        for (int i = 0, L = static_cast<int>(rng() % 8); i < L; ++i) body.push_back(1 + rng() % 9);
        auto e = CFExpansion::finite(rng() % 3, body);
        if (e.a0() == 0 && body.empty()) continue;
        EXPECT_EQ(eta(eta_inverse(e, 100)), e) << to_string(e);
    }
}

TEST(CrossesEdge, BoundaryCases) {
    Value x = Rational(Integer(7), Integer(2));
    EXPECT_FALSE(crosses_edge(x, FareyEdge(Rational(0), Rational::infinity())));
    EXPECT_TRUE(crosses_edge(x, FareyEdge(Rational(3), Rational::infinity())));
    EXPECT_FALSE(crosses_edge(x, FareyEdge(Rational(4), Rational::infinity())));
    EXPECT_TRUE(crosses_edge(x, FareyEdge(Rational(3), Rational(4))));
    // An edge ending at x is met, not crossed.
    EXPECT_FALSE(crosses_edge(x, FareyEdge(Rational(3), std::get<Rational>(x))));
    EXPECT_THROW(crosses_edge(x, FareyEdge(Rational(-1), Rational(0))), std::invalid_argument);
    EXPECT_THROW(crosses_edge(Value(Rational(0)), FareyEdge(Rational(1), Rational(2))), std::invalid_argument);
}

TEST(CrossingTrace, HalfStopsAtItsVertex) {
    auto tr = crossed_edges(parse_expansion("1/2"), 50);
    EXPECT_EQ(tr.word().str(), "R^1 L^1");
    ASSERT_TRUE(tr.terminal);
    EXPECT_EQ(*tr.terminal, Rational(Integer(1), Integer(2)));
    ASSERT_EQ(tr.edges.size(), 2u);
    EXPECT_EQ(tr.edges[1], FareyEdge(Rational(0), Rational(1)));
    auto fs = fans(tr);
    ASSERT_EQ(fs.size(), 3u);
    EXPECT_EQ(fs[0].size, 0u);
    EXPECT_TRUE(fs[0].pivot.is_infinite());
    EXPECT_EQ(fs[1].pivot, Rational(0));
    EXPECT_EQ(fs[2].pivot, Rational(1));
    EXPECT_EQ(to_string(expansion_from_trace(tr)), "[0; 1, 1, oo]");
}

TEST(CrossingTrace, GoldenPivotsAreFibonacciRatios) {
    auto fs = fans(crossed_edges(parse_cf("[0; (1)]"), 20));
    Integer a = 0, b = 1;  // pivots 1/0, 0/1, 1/1, 1/2, 2/3, ...
    ASSERT_GE(fs.size(), 10u);
    EXPECT_TRUE(fs[0].pivot.is_infinite());
    for (std::size_t i = 1; i < 10; ++i) {
        EXPECT_EQ(fs[i].pivot, Rational(a, b)) << i;
        EXPECT_EQ(fs[i].size, 1u);
        Integer c = a + b;
        a = b;
        b = c;
    }
}

TEST(CrossingTrace, FanSizesArePartialQuotients) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        auto e = random_periodic(rng);
        auto got = expansion_from_trace(crossed_edges(e, 80));
        auto pq = got.prefix(1000);
        EXPECT_EQ(pq, e.prefix(pq.size() - 1)) << to_string(e);
    }
    for (long q = 1; q <= 30; ++q)
        for (long p = 1; p < 3 * q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Rational x{Integer(p), Integer(q)};
            auto got = expansion_from_trace(crossed_edges(expansion_of(Value(x)), 1000));
            EXPECT_EQ(std::get<Rational>(value_of(got)), x);
            EXPECT_TRUE(got.has_infinity_tail());
        }
}

TEST(CrossingTrace, ScaledTraceIsTraceOfMultiple) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        auto e = random_periodic(rng);
        for (long n = 2; n <= 5; ++n)
            EXPECT_EQ(crossed_edges_scaled(e, n, 60).letters, crossed_edges(multiply_cf(e, n), 60).letters);
    }
    EXPECT_THROW(crossed_edges_scaled(parse_cf("[0; (1)]"), 0, 5), std::invalid_argument);
}

TEST(GeometricVerdict, AgreesWithAlgebraicVerdict) {
    auto check = [](const CFExpansion& e, std::uint64_t n) {
        LoopVerdict a = is_infinite_loop(e, n);
        LoopVerdict g = loop_verdict_geometric(e, n, 2500);
        EXPECT_EQ(a.kind, g.kind) << to_string(e) << " n=" << n;
        if (g.not_loop()) {
            ASSERT_TRUE(g.edge);
            EXPECT_TRUE(is_gamma0_neighbor(g.edge->a, g.edge->b, n));
            EXPECT_FALSE(is_base_translate(*g.edge));
            const Rational& w = g.witness->value;
            EXPECT_TRUE(mod_u64(w.den(), n) == 0 || g.edge->a == w || g.edge->b == w);
        }
    };
    for (long q = 1; q <= 25; ++q)
        for (long p = 1; p < 2 * q; ++p)
            if (std::gcd(p, q) == 1)
                for (std::uint64_t n = 2; n <= 8; ++n) check(expansion_of(Value(Rational(Integer(p), Integer(q)))), n);
    std::mt19937_64 rng(9);
    // Quotients <= 6, period <= 3, n <= 10: any witness lies within 2 + 3 n^2 quotients.
    for (int t = 0; t < 200; ++t) check(random_periodic(rng), 2 + rng() % 9);
    for (std::uint64_t n = 4; n <= 12; ++n) check(loop_example(n), n);
}

TEST(GeometricVerdict, HalfModFive) {
    auto g = loop_verdict_geometric(parse_expansion("1/2"), 5, 100);
    ASSERT_TRUE(g.not_loop());
    EXPECT_EQ(g.witness->value.den() % 5, 0);
    EXPECT_TRUE(loop_verdict_geometric(parse_expansion("1/2"), 4, 100).is_loop());
}
