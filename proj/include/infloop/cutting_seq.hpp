#pragma once

/**
 * @file cutting_seq.hpp
 * @brief Cutting sequences of rays from the base edge I = (0, oo) of the
 * Farey tessellation, decided by exact interval separation.
 *
 * A ray towards x > 0 enters the triangle on its current edge (A, B) and
 * leaves through (A, A+B) or (A+B, B). The vertex kept is the pivot; keeping
 * the smaller endpoint is an R cut, keeping the larger one an L cut. A
 * rational x ends the walk at the opposite vertex, recorded as a final L.
 */

#include "contfrac.hpp"
#include "farey.hpp"
#include "loops.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infloop {

enum class Letter : char { L = 'L', R = 'R' };

struct Run {
    Letter letter;
    Integer count;
    friend bool operator==(const Run&, const Run&) = default;
};

class CuttingWord {
    std::vector<Run> runs_;

public:
    CuttingWord() = default;
    explicit CuttingWord(std::vector<Run> runs) : runs_(std::move(runs)) {
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (runs_[i].count < 1) throw std::invalid_argument("run lengths must be positive");
            if (i > 0 && runs_[i].letter == runs_[i - 1].letter) throw std::invalid_argument("runs must alternate");
        }
    }

    static CuttingWord from_letters(const std::vector<Letter>& letters) {
        std::vector<Run> runs;
        for (Letter c : letters) {
            if (!runs.empty() && runs.back().letter == c) runs.back().count += 1;
            else runs.push_back({c, 1});
        }
        return CuttingWord(std::move(runs));
    }

    const std::vector<Run>& runs() const { return runs_; }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (i) s += ' ';
            s += static_cast<char>(runs_[i].letter);
            s += '^' + runs_[i].count.str();
        }
        return s;
    }

    static CuttingWord parse(const std::string& text) {
        std::istringstream is(text);
        std::string tok;
        std::vector<Run> runs;
        while (is >> tok) {
            if (tok.empty() || (tok[0] != 'L' && tok[0] != 'R')) throw std::invalid_argument("bad run '" + tok + "'");
            Integer count = 1;
            if (tok.size() > 1) {
                if (tok[1] != '^' || tok.size() < 3) throw std::invalid_argument("bad run '" + tok + "'");
                count = Integer(tok.substr(2));
            }
            runs.push_back({static_cast<Letter>(tok[0]), count});
        }
        return CuttingWord(std::move(runs));
    }

    friend bool operator==(const CuttingWord&, const CuttingWord&) = default;
};

// Run lengths to partial quotients; a leading R-run means a0 = 0.
inline CFExpansion eta(const CuttingWord& w, bool infinity_tail = false) {
    const auto& runs = w.runs();
    Integer a0 = 0;
    std::size_t i = 0;
    if (!runs.empty() && runs[0].letter == Letter::L) {
        a0 = runs[0].count;
        i = 1;
    }
    std::vector<Integer> body;
    for (; i < runs.size(); ++i) body.push_back(runs[i].count);
    return CFExpansion::finite(a0, body, infinity_tail);
}

// Word of the partial quotients a_0..a_depth (all of them for finite input).
inline CuttingWord eta_inverse(const CFExpansion& e, std::size_t depth) {
    std::vector<Run> runs;
    auto pq = e.prefix(depth);
    if (pq[0] > 0) runs.push_back({Letter::L, pq[0]});
    for (std::size_t k = 1; k < pq.size(); ++k) runs.push_back({k % 2 == 1 ? Letter::R : Letter::L, pq[k]});
    return CuttingWord(std::move(runs));
}

inline bool crosses_edge(const Value& x, const FareyEdge& edge) {
    const Rational& u = edge.lower();
    const Rational& v = edge.upper();
    if (u < Rational(0)) throw std::invalid_argument("edge endpoints must be nonnegative");
    if (compare_value(x, Rational(0)) <= 0) throw std::invalid_argument("value must be positive");
    if (v.is_infinite()) return u != Rational(0) && compare_value(x, u) > 0;
    return compare_value(x, u) > 0 && compare_value(x, v) < 0;
}

struct CrossingTrace {
    std::vector<FareyEdge> edges;    // edges[0] = I; edges[t+1] is where triangle t is left
    std::vector<Letter> letters;     // one per triangle
    std::vector<Rational> pivots;    // vertex shared by the entry and exit edges of each triangle
    std::vector<Rational> apexes;    // vertex opposite the entry edge of each triangle
    std::optional<Rational> terminal;
    Integer scale = 1;               // edges live in (1/scale) F, listed here in F coordinates

    CuttingWord word() const { return CuttingWord::from_letters(letters); }
};

namespace detail {

inline CrossingTrace descend(const Value& x, const Integer& scale, std::size_t depth) {
    if (compare_value(x, Rational(0)) <= 0) throw std::invalid_argument("value must be positive");
    CrossingTrace tr;
    tr.scale = scale;
    Value y = x;
    if (scale != 1) {
        if (const auto* r = std::get_if<Rational>(&x)) y = r->scaled(scale);
        else y = std::get<QuadSurd>(x) * scale;
    }
    Rational A(0, 1), B(1, 0);
    tr.edges.emplace_back(A, B);
    while (tr.letters.size() < depth) {
        Rational C = farey_mediant(A, B);
        tr.apexes.push_back(C);
        if (crosses_edge(y, FareyEdge(A, C))) {
            tr.letters.push_back(Letter::R);
            tr.pivots.push_back(A);
            B = C;
        } else if (crosses_edge(y, FareyEdge(C, B))) {
            tr.letters.push_back(Letter::L);
            tr.pivots.push_back(B);
            A = C;
        } else {
            tr.letters.push_back(Letter::L);
            tr.pivots.push_back(B);
            tr.terminal = C;
            break;
        }
        tr.edges.emplace_back(A, B);
    }
    return tr;
}

}  // namespace detail

// Triangles crossed by the ray to the value of e, at most depth of them.
inline CrossingTrace crossed_edges(const CFExpansion& e, std::size_t depth) {
    return detail::descend(value_of(e), 1, depth);
}

// The same ray against (1/n)F: combinatorially the ray to n x against F.
inline CrossingTrace crossed_edges_scaled(const CFExpansion& e, const Integer& n, std::size_t depth) {
    if (n < 1) throw std::invalid_argument("scale must be positive");
    return detail::descend(value_of(e), n, depth);
}

struct Fan {
    Letter letter;
    std::size_t size;
    Rational pivot;
};

// Maximal runs of triangles sharing a pivot; fan 0 is the leading L fan
// around oo, possibly empty.
inline std::vector<Fan> fans(const CrossingTrace& tr) {
    std::vector<Fan> out;
    if (tr.letters.empty() || tr.letters[0] == Letter::R) out.push_back({Letter::L, 0, Rational::infinity()});
    for (std::size_t t = 0; t < tr.letters.size(); ++t) {
        if (!out.empty() && out.back().size > 0 && out.back().letter == tr.letters[t]) {
            ++out.back().size;
        } else {
            out.push_back({tr.letters[t], 1, tr.pivots[t]});
        }
    }
    return out;
}

// Expansion read from the fan sizes. A finished trace gives the rational
// value with its infinity tail; otherwise the last, possibly partial, fan is
// dropped and a finite prefix is returned.
inline CFExpansion expansion_from_trace(const CrossingTrace& tr) {
    auto fs = fans(tr);
    if (!tr.terminal && fs.size() > 1) fs.pop_back();
    std::vector<Integer> body;
    for (std::size_t i = 1; i < fs.size(); ++i) body.push_back(fs[i].size);
    return CFExpansion::finite(fs[0].size, body, tr.terminal.has_value());
}

namespace detail {

inline LoopVerdict geometric_witness(std::int64_t k, const Integer& m, const Rational& vertex, const FareyEdge& edge) {
    LoopVerdict v;
    v.kind = LoopKind::NotLoop;
    v.witness = LoopWitness{k, m, vertex};
    v.edge = edge;
    return v;
}

// First edge of Gamma_0(n) I met by the ray (edges I + k excluded). For a
// rational the ray ends at x and meets every edge at x as well.
inline LoopVerdict geometric_verdict_on(const CFExpansion& e, std::uint64_t n, const CrossingTrace& tr, std::size_t depth) {
    auto fs = fans(tr);

    // Fan index and position of every triangle.
    std::vector<std::pair<std::size_t, std::size_t>> where;
    {
        std::size_t f = fs[0].size == 0 ? 1 : 0, pos = 0;
        for (std::size_t t = 0; t < tr.letters.size(); ++t) {
            if (t > 0 && tr.letters[t] != tr.letters[t - 1]) {
                ++f;
                pos = 0;
            }
            where.push_back({f, ++pos});
        }
    }
    auto is_witness_edge = [n](const FareyEdge& edge) {
        return is_gamma0_neighbor(edge.a, edge.b, n) && !is_base_translate(edge);
    };

    std::size_t exits = tr.terminal ? tr.letters.size() - 1 : tr.letters.size();
    for (std::size_t t = 0; t < exits; ++t) {
        const FareyEdge& edge = tr.edges[t + 1];
        if (!is_witness_edge(edge)) continue;
        auto [f, i] = where[t];
        const Rational& C = tr.apexes[t];
        // The apex is the semi-convergent {f-1, i}; the pivot is p_{f-1}/q_{f-1} = {f-2, a_{f-1}}.
        if (C.den() % n == 0) return detail::geometric_witness(static_cast<std::int64_t>(f) - 1, i, C, edge);
        return detail::geometric_witness(static_cast<std::int64_t>(f) - 2, fs[f - 1].size, tr.pivots[t], edge);
    }

    if (!tr.terminal) {
        if (e.is_periodic() && is_infinite_loop(e, n).is_loop()) return LoopVerdict{};
        LoopVerdict v;
        v.kind = LoopKind::UnknownAtDepth;
        v.depth = depth;
        return v;
    }

    // Edges at the endpoint x = A + B: x itself, then the neighbours B + j x
    // and A + j x, which are the tail semi-convergents of the two expansions.
    const Rational& x = *tr.terminal;
    const FareyEdge& entry = tr.edges.back();
    const Rational& A = entry.lower();
    const Rational& B = entry.upper();
    std::size_t M_word = fs.size() - 1;
    std::size_t last = fs.back().size;
    std::size_t M_other = (last == 1 && M_word >= 1) ? M_word - 1 : M_word + 1;
    if (x.den() % n == 0) {
        FareyEdge edge(A, x);
        return detail::geometric_witness(static_cast<std::int64_t>(M_word) - 1, last, x, edge);
    }
    auto neighbour = [&x](const Rational& base, std::uint64_t j) {
        return Rational(base.num() + j * x.num(), base.den() + j * x.den());
    };
    for (std::uint64_t j = 0; j < n; ++j) {
        Rational nb = neighbour(B, j);
        FareyEdge edge(x, nb);
        if (is_witness_edge(edge)) return detail::geometric_witness(static_cast<std::int64_t>(M_word), j, nb, edge);
    }
    for (std::uint64_t j = 0; j < n; ++j) {
        Rational nb = neighbour(A, j);
        FareyEdge edge(x, nb);
        if (is_witness_edge(edge)) return detail::geometric_witness(static_cast<std::int64_t>(M_other), j, nb, edge);
    }
    return LoopVerdict{};
}

}  // namespace detail

// The trace is grown by doubling so that an early witness stays cheap.
inline LoopVerdict loop_verdict_geometric(const CFExpansion& e, std::uint64_t n, std::size_t depth) {
    detail::require_modulus(n);
    detail::require_positive(e);
    for (std::size_t d = std::min<std::size_t>(64, depth);; d = std::min(2 * d, depth)) {
        CrossingTrace tr = crossed_edges(e, d);
        if (tr.terminal || d == depth) return detail::geometric_verdict_on(e, n, tr, depth);
        LoopVerdict v = detail::geometric_verdict_on(e, n, tr, d);
        if (v.not_loop()) return v;
    }
}

}  // namespace infloop
