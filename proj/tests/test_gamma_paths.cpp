#include "infloop/gamma_paths.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace infloop;

namespace {

using Frac = std::pair<long, long>;

// Insertion process on machine integers; returns the sequences V_0..V_steps.
std::vector<std::vector<Frac>> naive_v(long n, int steps) {
    std::vector<std::vector<Frac>> out{{{0, 1}, {1, 1}}};
    for (int i = 0; i < steps; ++i) {
        const auto& cur = out.back();
        std::vector<Frac> next{cur.front()};
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            auto [a, b] = cur[j];
            auto [c, d] = cur[j + 1];
            if (b % n != 0 && d % n != 0) next.push_back({a + c, b + d});
            next.push_back(cur[j + 1]);
        }
        out.push_back(next);
    }
    return out;
}

bool all_resolved(const std::vector<Frac>& v, long n) {
    for (std::size_t j = 0; j + 1 < v.size(); ++j)
        if (v[j].second % n != 0 && v[j + 1].second % n != 0) return false;
    return true;
}

}  // namespace

TEST(GammaPaths, SmallTables) {
    auto r2 = v_algorithm(2, 50);
    EXPECT_TRUE(r2.terminated);
    EXPECT_EQ(r2.iterations, 1u);
    EXPECT_EQ(render_vertices(1, r2.steps[1]), "V_1 = {0/1, 1/2, 1/1}");
    auto r3 = v_algorithm(3, 50);
    EXPECT_TRUE(r3.terminated);
    EXPECT_EQ(r3.iterations, 2u);
    EXPECT_EQ(render_vertices(2, r3.steps[2]), "V_2 = {0/1, 1/3, 1/2, 2/3, 1/1}");
    auto r5 = v_algorithm(5, 3);
    EXPECT_EQ(render_vertices(3, r5.steps[3]), "V_3 = {0/1, 1/4, 1/3, 2/5, 1/2, 3/5, 2/3, 3/4, 1/1}");
    EXPECT_EQ(render_denominators(3, d_algorithm(5, 3).steps[3]), "D_3 = {1, 4, 3, 0, 2, 0, 3, 4, 1}");
}

TEST(GammaPaths, MatchesNaiveInsertion) {
    for (std::uint64_t n = 2; n <= 12; ++n) {
        auto want = naive_v(static_cast<long>(n), 10);
        auto run = v_algorithm(n, 10);
        ASSERT_EQ(run.steps.size(), run.iterations + 1);
        for (std::size_t i = 0; i < run.steps.size(); ++i) {
            ASSERT_EQ(run.steps[i].size(), want[i].size()) << "n=" << n << " i=" << i;
            for (std::size_t j = 0; j < want[i].size(); ++j)
                EXPECT_EQ(run.steps[i][j], Rational(Integer(want[i][j].first), Integer(want[i][j].second)));
        }
        // Termination is the first step at which nothing is left to insert.
        std::size_t T = 0;
        while (T <= 10 && !all_resolved(want[T], static_cast<long>(n))) ++T;
        if (T <= 10) {
            EXPECT_TRUE(run.terminated) << n;
            EXPECT_EQ(run.iterations, T) << n;
        } else {
            EXPECT_FALSE(run.terminated) << n;
        }
    }
}

TEST(GammaPaths, VerticesStaySortedNeighbours) {
    auto run = v_algorithm(7, 9);
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const auto& v = run.steps[i];
        for (std::size_t j = 0; j + 1 < v.size(); ++j) {
            EXPECT_LT(v[j], v[j + 1]);
            EXPECT_TRUE(is_farey_neighbor(v[j], v[j + 1]));
        }
        if (i > 0) {
            EXPECT_TRUE(std::includes(v.begin(), v.end(), run.steps[i - 1].begin(), run.steps[i - 1].end()));
        }
    }
}

TEST(GammaPaths, DenominatorsAreVertexDenominatorsModN) {
    for (std::uint64_t n = 2; n <= 15; ++n) {
        auto v = v_algorithm(n, 9);
        auto d = d_algorithm(n, 9);
        ASSERT_EQ(v.steps.size(), d.steps.size());
        EXPECT_EQ(v.terminated, d.terminated);
        for (std::size_t i = 0; i < v.steps.size(); ++i) {
            ASSERT_EQ(v.steps[i].size(), d.steps[i].size());
            for (std::size_t j = 0; j < v.steps[i].size(); ++j) EXPECT_EQ(mod_u64(v.steps[i][j].den(), n), d.steps[i][j]);
        }
    }
}

TEST(GammaPaths, TerminationDichotomy) {
    EXPECT_EQ(resolution_depth(2, ModGraph::start()), 1u);
    EXPECT_EQ(resolution_depth(3, ModGraph::start()), 2u);
    for (std::uint64_t n = 4; n <= 30; ++n) {
        EXPECT_EQ(resolution_depth(n, ModGraph::start()), never) << n;
        auto run = d_algorithm(n, 50);
        EXPECT_FALSE(run.terminated);
        EXPECT_EQ(run.iterations, 50u);
        EXPECT_TRUE(run.truncated || run.steps.size() == 51);
        EXPECT_LE(run.steps.back().size(), snapshot_limit);
    }
    for (std::uint64_t n = 2; n <= 100; ++n) EXPECT_EQ(nonterminating(n), loop_exists(n)) << n;
}

TEST(GammaPaths, ResolutionDepthOfResolvedPairIsOne) {
    EXPECT_EQ(resolution_depth(5, {2, 3}), 1u);
    // (1, 3) mod 4 inserts 0 and is done after the next round.
    EXPECT_EQ(resolution_depth(4, {1, 3}), 1u);
    EXPECT_EQ(resolution_depth(4, {1, 2}), never);
}

TEST(GammaPaths, RejectsBadArguments) {
    EXPECT_THROW(v_algorithm(1, 5), std::invalid_argument);
    EXPECT_THROW(d_algorithm(5, 0), std::invalid_argument);
}
