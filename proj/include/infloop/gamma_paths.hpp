#pragma once

/**
 * @file gamma_paths.hpp
 * @brief Mediant insertion between 0/1 and 1/1 until every consecutive pair
 * is a Gamma_0(n) edge (V-sequences), and the same iteration carried out on
 * denominators mod n (D-sequences).
 *
 * Whether the iteration stops, and after how many rounds, is read off the
 * graph of unresolved residue pairs, so that runs which never stop can be
 * reported without materializing sequences of length 2^i. Snapshots are
 * materialized while they stay below snapshot_limit entries.
 */

#include "farey.hpp"
#include "loops.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infloop {

inline constexpr std::size_t snapshot_limit = std::size_t{1} << 16;

template <class T>
struct GammaRun {
    bool terminated = false;
    std::size_t iterations = 0;         // T when terminated, max_iter otherwise
    std::vector<std::vector<T>> steps;  // snapshots 0..iterations, unless truncated
    bool truncated = false;             // snapshots stopped at snapshot_limit
};

using VertexRun = GammaRun<Rational>;
using DenomRun = GammaRun<std::uint64_t>;

inline constexpr std::uint64_t never = std::numeric_limits<std::uint64_t>::max();

// Rounds needed before the pair (u, v) of nonzero residues and everything
// inserted between them is resolved; `never` when an unresolved pair recurs.
inline std::uint64_t resolution_depth(std::uint64_t n, ModState s) {
    ModGraph g(n);
    std::size_t N = static_cast<std::size_t>(n * n);
    enum : char { white, grey, black };
    std::vector<char> colour(N, white);
    std::vector<std::uint64_t> depth(N, 0);
    std::vector<std::pair<std::size_t, bool>> stack{{g.index(s), false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        auto succ = g.successors(g.state(x));
        if (expanded) {
            std::uint64_t d = 1;
            for (const auto& [mv, t] : succ) d = std::max(d, depth[g.index(t)] + 1);
            depth[x] = d;
            colour[x] = black;
            continue;
        }
        if (colour[x] != white) continue;
        colour[x] = grey;
        stack.push_back({x, true});
        for (const auto& [mv, t] : succ) {
            std::size_t y = g.index(t);
            if (colour[y] == grey) return never;
            if (colour[y] == white) stack.push_back({y, false});
        }
    }
    return depth[g.index(s)];
}

namespace detail {

inline bool resolved(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) throw std::logic_error("adjacent zero residues");
    return a == 0 || b == 0;
}

template <class T, class Resolved, class Insert>
GammaRun<T> run_gamma(std::uint64_t n, std::size_t max_iter, std::vector<T> start, Resolved is_resolved, Insert insert) {
    require_modulus(n);
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    std::uint64_t T_stop = resolution_depth(n, ModGraph::start());
    GammaRun<T> run;
    run.terminated = T_stop != never && T_stop <= max_iter;
    run.iterations = run.terminated ? static_cast<std::size_t>(T_stop) : max_iter;
    run.steps.push_back(std::move(start));
    while (run.steps.size() <= run.iterations) {
        const auto& cur = run.steps.back();
        if (2 * cur.size() > snapshot_limit) {
            run.truncated = true;
            break;
        }
        std::vector<T> next{cur.front()};
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            if (!is_resolved(cur[i], cur[i + 1])) next.push_back(insert(cur[i], cur[i + 1]));
            next.push_back(cur[i + 1]);
        }
        run.steps.push_back(std::move(next));
    }
    if (run.terminated && !run.truncated) {
        const auto& last = run.steps.back();
        for (std::size_t i = 0; i + 1 < last.size(); ++i)
            if (!is_resolved(last[i], last[i + 1])) throw std::logic_error("terminated with an unresolved pair");
    }
    return run;
}

}  // namespace detail

inline VertexRun v_algorithm(std::uint64_t n, std::size_t max_iter) {
    return detail::run_gamma<Rational>(
        n, max_iter, {Rational(0, 1), Rational(1, 1)},
        [n](const Rational& a, const Rational& b) { return is_gamma0_neighbor(a, b, n); },
        [](const Rational& a, const Rational& b) { return farey_mediant(a, b); });
}

inline DenomRun d_algorithm(std::uint64_t n, std::size_t max_iter) {
    return detail::run_gamma<std::uint64_t>(
        n, max_iter, {1 % n, 1 % n},
        [](std::uint64_t a, std::uint64_t b) { return detail::resolved(a, b); },
        [n](std::uint64_t a, std::uint64_t b) { return (a + b) % n; });
}

// The pair {1, 2} of adjacent residues appears from {1, 1} and is regenerated
// by its own mediant insertions.
inline bool nonterminating(std::uint64_t n) {
    detail::require_modulus(n);
    if (n <= 2) return false;
    ModGraph g(n);
    ModState pair{1, 2};
    auto from_start = g.reachable();
    if (!from_start[g.index(pair)]) return false;
    for (const auto& [mv, t] : g.successors(pair)) {
        if (detail::path_within(g, t, pair, [](std::size_t) { return true; })) return true;
    }
    return false;
}

inline std::string render_vertices(std::size_t i, const std::vector<Rational>& v) {
    std::string s = "V_" + std::to_string(i) + " = {";
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + v[j].str();
    return s + "}";
}

inline std::string render_denominators(std::size_t i, const std::vector<std::uint64_t>& d) {
    std::string s = "D_" + std::to_string(i) + " = {";
    for (std::size_t j = 0; j < d.size(); ++j) s += (j ? ", " : "") + std::to_string(d[j]);
    return s + "}";
}

}  // namespace infloop
