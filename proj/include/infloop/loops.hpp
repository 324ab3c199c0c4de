#pragma once

/**
 * @file loops.hpp
 * @brief Infinite loops mod n: a positive real none of whose semi-convergent
 * denominators (other than q_{-1} = 0) is divisible by n.
 *
 * Rationals are read with an infinite final partial quotient, and are loops
 * only if neither of their two expansions exhibits a divisible denominator.
 * Periodic expansions are decided exactly by cycle detection on
 * (period position, q_{k-1} mod n, q_k mod n).
 */

#include "contfrac.hpp"
#include "farey.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace infloop {

enum class LoopKind { IsLoop, NotLoop, UnknownAtDepth };

struct LoopWitness {
    std::int64_t k;
    Integer m;
    Rational value;
};

struct LoopVerdict {
    LoopKind kind = LoopKind::IsLoop;
    std::optional<LoopWitness> witness;
    std::optional<std::uint64_t> depth;
    std::optional<FareyEdge> edge;

    bool is_loop() const { return kind == LoopKind::IsLoop; }
    bool not_loop() const { return kind == LoopKind::NotLoop; }

    std::string record() const {
        switch (kind) {
            case LoopKind::IsLoop: return "LOOP";
            case LoopKind::NotLoop:
                return "NOTLOOP k=" + std::to_string(witness->k) + " m=" + witness->m.str() +
                       " q=" + witness->value.den().str();
            case LoopKind::UnknownAtDepth: return "UNKNOWN depth=" + std::to_string(*depth);
        }
        return "";
    }
};

// Partial quotient a_k for k >= 0, or nothing once the stream ends.
using DigitStream = std::function<std::optional<Integer>(std::size_t)>;

inline constexpr std::uint64_t default_depth_limit = 10000;

namespace detail {

inline void require_modulus(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("modulus must be at least 2");
    if (n >= (std::uint64_t{1} << 31)) throw std::invalid_argument("modulus too large");
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
    std::int64_t t = 0, new_t = 1, r = n, new_r = a % n;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return t < 0 ? t + n : t;
}

// Least m >= lo with m v + u = 0 (mod n), if any. The result is below lo + n.
inline std::optional<std::uint64_t> least_solution(std::uint64_t u, std::uint64_t v, std::uint64_t n, std::uint64_t lo) {
    std::uint64_t g = std::gcd(v, n);
    std::uint64_t target = (n - u % n) % n;
    if (target % g != 0) return std::nullopt;
    std::uint64_t step = n / g;
    std::uint64_t m0 = 0;
    if (step > 1) {
        auto inv = static_cast<std::uint64_t>(
            inverse_mod(static_cast<std::int64_t>((v / g) % step), static_cast<std::int64_t>(step)));
        m0 = ((target / g) % step) * inv % step;
    }
    if (m0 < lo) m0 += ((lo - m0 + step - 1) / step) * step;
    return m0;
}

struct Quotient {
    std::uint64_t mod;  // a mod n
    std::uint64_t cap;  // min(a, n)
};

inline Quotient reduce_quotient(const Integer& a, std::uint64_t n) {
    return {mod_u64(a, n), a >= n ? n : a.convert_to<std::uint64_t>()};
}

// Scan of one finite expansion read with an infinity tail.
inline std::optional<std::pair<std::int64_t, std::uint64_t>> finite_witness(const CFExpansion& e, std::uint64_t n) {
    std::size_t M = e.last_index();
    std::uint64_t u = 0, v = 1;  // q_{-1}, q_0
    for (std::size_t k = 0; k < M; ++k) {
        Quotient a = reduce_quotient(e.partial_quotient(k + 1), n);
        auto m = least_solution(u, v, n, k == 0 ? 1 : 0);
        if (m && *m <= a.cap) return std::make_pair(static_cast<std::int64_t>(k), *m);
        std::uint64_t next = (a.mod * v + u) % n;
        u = v;
        v = next;
    }
    auto m = least_solution(u, v, n, M == 0 ? 1 : 0);
    if (m) return std::make_pair(static_cast<std::int64_t>(M), *m);
    return std::nullopt;
}

inline LoopVerdict not_loop(const CFExpansion& e, std::int64_t k, const Integer& m, std::uint64_t n) {
    LoopVerdict v;
    v.kind = LoopKind::NotLoop;
    v.witness = LoopWitness{k, m, semiconvergent(e, k, m)};
    if (v.witness->value.den() % n != 0) throw std::logic_error("witness denominator not divisible by n");
    return v;
}

inline void require_positive(const CFExpansion& e) {
    if (e.a0() == 0 && e.body().empty() && e.period().empty()) throw std::invalid_argument("value must be positive");
}

}  // namespace detail

// Stream regime: a_0, a_1, ... examined up to depth_limit partial quotients past a0.
inline LoopVerdict is_infinite_loop(const DigitStream& digits, std::uint64_t n,
                                    std::uint64_t depth_limit = default_depth_limit) {
    detail::require_modulus(n);
    if (!digits(0)) throw std::invalid_argument("empty digit stream");
    std::uint64_t u = 0, v = 1;
    std::vector<Integer> seen{*digits(0)};
    std::uint64_t k = 0;
    for (; k < depth_limit; ++k) {
        auto next = digits(static_cast<std::size_t>(k + 1));
        if (!next) break;
        seen.push_back(*next);
        detail::Quotient a = detail::reduce_quotient(*next, n);
        auto m = detail::least_solution(u, v, n, k == 0 ? 1 : 0);
        if (m && *m <= a.cap) {
            auto prefix = CFExpansion::finite(seen[0], std::vector<Integer>(seen.begin() + 1, seen.end()));
            return detail::not_loop(prefix, static_cast<std::int64_t>(k), *m, n);
        }
        std::uint64_t w = (a.mod * v + u) % n;
        u = v;
        v = w;
    }
    LoopVerdict out;
    out.kind = LoopKind::UnknownAtDepth;
    out.depth = k;
    return out;
}

inline LoopVerdict is_infinite_loop(const CFExpansion& e, std::uint64_t n,
                                    std::optional<std::uint64_t> depth_limit = std::nullopt) {
    detail::require_modulus(n);
    detail::require_positive(e);

    if (e.tail() == Tail::None) {
        DigitStream s = [&e](std::size_t k) -> std::optional<Integer> {
            if (!e.has_partial_quotient(k)) return std::nullopt;
            return e.partial_quotient(k);
        };
        return is_infinite_loop(s, n, depth_limit.value_or(default_depth_limit));
    }

    if (e.has_infinity_tail()) {
        CFExpansion canonical = canonical_finite(e);
        if (auto w = detail::finite_witness(canonical, n)) return detail::not_loop(canonical, w->first, w->second, n);
        if (canonical.a0() != 0 || !canonical.body().empty()) {
            CFExpansion other = twin(canonical);
            if (auto w = detail::finite_witness(other, n)) return detail::not_loop(other, w->first, w->second, n);
        }
        return LoopVerdict{};
    }

    // Periodic: (position in period, q_{k-1}, q_k) mod n eventually cycles.
    std::size_t s = e.body().size();
    std::size_t T = e.period().size();
    std::vector<detail::Quotient> body, period;
    for (const auto& a : e.body()) body.push_back(detail::reduce_quotient(a, n));
    for (const auto& a : e.period()) period.push_back(detail::reduce_quotient(a, n));
    std::unordered_set<std::uint64_t> visited;
    std::uint64_t u = 0, v = 1;
    for (std::uint64_t k = 0;; ++k) {
        std::size_t idx = static_cast<std::size_t>(k + 1);
        detail::Quotient a;
        if (idx <= s) {
            a = body[idx - 1];
        } else {
            std::size_t pos = (idx - s - 1) % T;
            a = period[pos];
            std::uint64_t key = (static_cast<std::uint64_t>(pos) * n + u) * n + v;
            if (!visited.insert(key).second) return LoopVerdict{};
        }
        auto m = detail::least_solution(u, v, n, k == 0 ? 1 : 0);
        if (m && *m <= a.cap) return detail::not_loop(e, static_cast<std::int64_t>(k), *m, n);
        std::uint64_t w = (a.mod * v + u) % n;
        u = v;
        v = w;
    }
}

// Requires a loop mod n; reports whether it is also a loop mod k n (always, by the divisor lemma).
inline bool loop_scaling_check(const CFExpansion& e, std::uint64_t n, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("scaling factor must be positive");
    if (!is_infinite_loop(e, n).is_loop()) throw std::invalid_argument("expansion is not a loop mod n");
    return is_infinite_loop(e, k * n).is_loop();
}

// ---------------------------------------------------------------------------
// Pruned Stern-Brocot graph on denominator residues

enum class Move : char { L = 'L', R = 'R' };

struct ModState {
    std::uint64_t u;
    std::uint64_t v;
    friend bool operator==(const ModState&, const ModState&) = default;
};

class ModGraph {
    std::uint64_t n_;

public:
    explicit ModGraph(std::uint64_t n) : n_(n) { detail::require_modulus(n); }

    std::uint64_t modulus() const { return n_; }
    std::size_t index(const ModState& s) const { return static_cast<std::size_t>(s.u * n_ + s.v); }
    ModState state(std::size_t i) const { return {i / n_, i % n_}; }
    static ModState start() { return {1, 1}; }

    // L keeps the left endpoint, R keeps the right one; moves creating a
    // denominator divisible by n are pruned.
    std::vector<std::pair<Move, ModState>> successors(const ModState& s) const {
        std::uint64_t w = (s.u + s.v) % n_;
        if (w == 0) return {};
        return {{Move::L, {s.u, w}}, {Move::R, {w, s.v}}};
    }

    std::vector<bool> reachable() const {
        std::vector<bool> seen(n_ * n_, false);
        std::vector<ModState> stack{start()};
        seen[index(start())] = true;
        while (!stack.empty()) {
            ModState s = stack.back();
            stack.pop_back();
            for (const auto& [mv, t] : successors(s)) {
                if (!seen[index(t)]) {
                    seen[index(t)] = true;
                    stack.push_back(t);
                }
            }
        }
        return seen;
    }

    // Strongly connected component id of every reachable state (Tarjan, iterative).
    std::vector<int> components(const std::vector<bool>& live) const {
        std::size_t N = n_ * n_;
        std::vector<int> comp(N, -1), low(N, 0), order(N, -1);
        std::vector<bool> on_stack(N, false);
        std::vector<std::size_t> stack;
        int counter = 0, ncomp = 0;
        for (std::size_t root = 0; root < N; ++root) {
            if (!live[root] || order[root] != -1) continue;
            std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
            order[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;
            while (!work.empty()) {
                auto& [x, i] = work.back();
                auto succ = successors(state(x));
                if (i < succ.size()) {
                    std::size_t y = index(succ[i].second);
                    ++i;
                    if (order[y] == -1) {
                        order[y] = low[y] = counter++;
                        stack.push_back(y);
                        on_stack[y] = true;
                        work.push_back({y, 0});
                    } else if (on_stack[y]) {
                        low[x] = std::min(low[x], order[y]);
                    }
                    continue;
                }
                std::size_t done = x;
                work.pop_back();
                if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
                if (low[done] == order[done]) {
                    for (;;) {
                        std::size_t y = stack.back();
                        stack.pop_back();
                        on_stack[y] = false;
                        comp[y] = ncomp;
                        if (y == done) break;
                    }
                    ++ncomp;
                }
            }
        }
        return comp;
    }
};

namespace detail {

// Shortest move word from a to b inside the states allowed by keep.
template <class Keep>
std::optional<std::vector<Move>> path_within(const ModGraph& g, ModState a, ModState b, Keep keep) {
    std::size_t N = g.modulus() * g.modulus();
    std::vector<long long> parent(N, -2);
    std::vector<Move> via(N, Move::L);
    std::vector<std::size_t> queue{g.index(a)};
    parent[g.index(a)] = -1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        std::size_t x = queue[h];
        if (x == g.index(b)) break;
        for (const auto& [mv, t] : g.successors(g.state(x))) {
            std::size_t y = g.index(t);
            if (parent[y] != -2 || !keep(y)) continue;
            parent[y] = static_cast<long long>(x);
            via[y] = mv;
            queue.push_back(y);
        }
    }
    if (parent[g.index(b)] == -2) return std::nullopt;
    std::vector<Move> word;
    for (std::size_t y = g.index(b); parent[y] != -1; y = static_cast<std::size_t>(parent[y])) word.push_back(via[y]);
    std::reverse(word.begin(), word.end());
    return word;
}

struct CycleWord {
    std::vector<Move> prefix;  // from the start state
    std::vector<Move> cycle;   // closed walk
};

// A reachable closed walk, preferring one that mixes both moves.
inline std::optional<CycleWord> find_cycle(const ModGraph& g) {
    auto live = g.reachable();
    auto comp = g.components(live);
    std::size_t N = g.modulus() * g.modulus();
    struct Edge {
        std::size_t from, to;
        Move move;
    };
    std::vector<std::optional<Edge>> l_edge(N), r_edge(N);
    for (std::size_t x = 0; x < N; ++x) {
        if (!live[x]) continue;
        for (const auto& [mv, t] : g.successors(g.state(x))) {
            std::size_t y = g.index(t);
            if (comp[y] != comp[x]) continue;
            auto& slot = mv == Move::L ? l_edge[static_cast<std::size_t>(comp[x])] : r_edge[static_cast<std::size_t>(comp[x])];
            if (!slot) slot = Edge{x, y, mv};
        }
    }
    auto everywhere = [](std::size_t) { return true; };
    auto closed_walk = [&](const std::vector<Edge>& edges) {
        int c = comp[edges.front().from];
        auto keep = [&](std::size_t s) { return comp[s] == c; };
        CycleWord cw;
        cw.prefix = *path_within(g, ModGraph::start(), g.state(edges.front().from), everywhere);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            cw.cycle.push_back(edges[i].move);
            std::size_t next = edges[(i + 1) % edges.size()].from;
            auto hop = path_within(g, g.state(edges[i].to), g.state(next), keep);
            cw.cycle.insert(cw.cycle.end(), hop->begin(), hop->end());
        }
        return cw;
    };
    for (std::size_t c = 0; c < N; ++c)
        if (l_edge[c] && r_edge[c]) return closed_walk({*l_edge[c], *r_edge[c]});
    for (std::size_t c = 0; c < N; ++c) {
        if (l_edge[c]) return closed_walk({*l_edge[c]});
        if (r_edge[c]) return closed_walk({*r_edge[c]});
    }
    return std::nullopt;
}

}  // namespace detail

inline bool loop_exists(std::uint64_t n) {
    ModGraph g(n);
    auto cw = detail::find_cycle(g);
    if (!cw) return false;
    bool mixed = std::find(cw->cycle.begin(), cw->cycle.end(), Move::L) != cw->cycle.end() &&
                 std::find(cw->cycle.begin(), cw->cycle.end(), Move::R) != cw->cycle.end();
    if (mixed) return true;
    // Constant cycle word: the limit is a rational endpoint whose neighbour
    // denominators v + m u form the progression the cycle runs through.
    ModState s = ModGraph::start();
    for (Move mv : cw->prefix) {
        std::uint64_t w = (s.u + s.v) % n;
        s = mv == Move::L ? ModState{s.u, w} : ModState{w, s.v};
    }
    std::uint64_t fixed = cw->cycle.front() == Move::L ? s.u : s.v;
    std::uint64_t moving = cw->cycle.front() == Move::L ? s.v : s.u;
    return !detail::least_solution(moving, fixed, n, 0).has_value();
}

// Value reached by the move word L . prefix . cycle^oo from the interval (0/1, 1/0).
inline CFExpansion expansion_of_cycle_word(const std::vector<Move>& prefix, const std::vector<Move>& cycle) {
    Integer pl = 0, ql = 1, pr = 1, qr = 0;
    auto apply = [&](Move mv) {
        if (mv == Move::L) {
            pr += pl;
            qr += ql;
        } else {
            pl += pr;
            ql += qr;
        }
    };
    apply(Move::L);
    for (Move mv : prefix) apply(mv);
    bool has_l = std::find(cycle.begin(), cycle.end(), Move::L) != cycle.end();
    bool has_r = std::find(cycle.begin(), cycle.end(), Move::R) != cycle.end();
    if (!has_r) return cf_from_rational(Rational(pl, ql)).first;
    if (!has_l) return cf_from_rational(Rational(pr, qr)).first;
    // A point l + t r of the current interval: L sends t to t/(1+t), R to t+1.
    Integer a = 1, b = 0, c = 0, d = 1;
    for (Move mv : cycle) {
        Integer na, nb, nc, nd;
        if (mv == Move::L) {
            na = a + b; nb = b; nc = c + d; nd = d;
        } else {
            na = a; nb = a + b; nc = c; nd = c + d;
        }
        a = na; b = nb; c = nc; d = nd;
    }
    Integer diff = a - d;
    QuadSurd t(diff, diff * diff + 4 * b * c, 2 * c);
    return cf_of_surd(t.mobius(pr, pl, qr, ql));
}

inline CFExpansion loop_example(std::uint64_t n) {
    ModGraph g(n);
    auto cw = detail::find_cycle(g);
    if (!cw || !loop_exists(n)) throw std::invalid_argument("no infinite loop exists mod " + std::to_string(n));
    CFExpansion e = expansion_of_cycle_word(cw->prefix, cw->cycle);
    if (!is_infinite_loop(e, n).is_loop()) throw std::logic_error("constructed expansion is not a loop");
    return e;
}

// ---------------------------------------------------------------------------
// Stern-Brocot walk

struct SbStep {
    Move move;
    std::uint64_t residue;  // new vertex denominator mod n
    bool tail = false;      // neighbour of a rational endpoint reached by the walk
};

// Walk for a value in (0,1), starting from (0/1, 1/0) so that the first
// created vertex is 1/1 and the first run of L has length a_1. A rational
// value is reached by a final L step; with an infinity tail the walk then
// lists the neighbours A + j x and B + j x of x = A + B alternately.
inline std::vector<SbStep> sb_walk(const CFExpansion& e, std::uint64_t n, std::size_t depth) {
    detail::require_modulus(n);
    if (depth < 1) throw std::invalid_argument("depth must be positive");
    Value x = value_of(e);
    if (compare_value(x, Rational(0)) <= 0 || compare_value(x, Rational(1)) >= 0)
        throw std::invalid_argument("value must lie in (0,1)");
    std::vector<SbStep> out;
    Rational l(0, 1), r(1, 0);
    while (out.size() < depth) {
        Rational c = farey_mediant(l, r);
        int cmp = compare_value(x, c);
        if (cmp < 0) {
            out.push_back({Move::L, mod_u64(c.den(), n)});
            r = c;
        } else if (cmp > 0) {
            out.push_back({Move::R, mod_u64(c.den(), n)});
            l = c;
        } else {
            out.push_back({Move::L, mod_u64(c.den(), n)});
            if (!e.has_infinity_tail()) break;
            for (Integer j = 1; out.size() < depth; ++j) {
                out.push_back({Move::L, mod_u64(l.den() + j * c.den(), n), true});
                if (out.size() < depth) out.push_back({Move::R, mod_u64(r.den() + j * c.den(), n), true});
            }
        }
    }
    return out;
}

}  // namespace infloop
