#pragma once

/**
 * @file plc_verify.hpp
 * @brief Heights of p^l x, upper bounds for m_p, and single-instance checks of
 * the inequalities linking heights to infinite loops.
 *
 * Each check returns a ScanEntry: whether its precondition held, whether the
 * inequality passed, and a short witness string.
 */

#include "contfrac.hpp"
#include "farey.hpp"
#include "loops.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infloop {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::uint64_t ipow(std::uint64_t p, std::uint64_t m) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / p) throw std::overflow_error("p^m overflows");
        r *= p;
    }
    return r;
}

// floor(2 sqrt(n)) - 1, computed as isqrt(4n) - 1.
inline Integer noloop_threshold(std::uint64_t n) { return isqrt(Integer(4) * n) - 1; }

namespace detail {

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

// Rationals are always read with their infinity tail here.
inline CFExpansion plc_input(const CFExpansion& e) {
    return e.is_finite() ? e.with_infinity_tail(true) : e;
}

}  // namespace detail

struct HeightSpectrum {
    CFExpansion alpha;
    std::uint64_t p;
    std::vector<std::pair<std::uint64_t, Height>> entries;
};

inline HeightSpectrum height_spectrum(const CFExpansion& e, std::uint64_t p, std::uint64_t L) {
    detail::require_prime(p);
    HeightSpectrum hs{e, p, {}};
    CFExpansion cur = detail::plc_input(e);
    for (std::uint64_t l = 0; l <= L; ++l) {
        hs.entries.push_back({l, height(cur)});
        if (l < L) cur = multiply_cf(cur, p);
    }
    return hs;
}

struct MpBound {
    Rational value;
    bool rational_input = false;
    std::uint64_t argmin = 0;
};

// min over l <= L of 1/B(p^l x); an upper bound for m_p(x) for every L.
inline MpBound mp_upper_bound(const CFExpansion& e, std::uint64_t p, std::uint64_t L) {
    detail::require_prime(p);
    if (e.is_finite()) return {Rational(0), true, 0};
    auto hs = height_spectrum(e, p, L);
    MpBound best{Rational::infinity(), false, 0};
    for (const auto& [l, h] : hs.entries) {
        Rational v(1, h.value());
        if (v < best.value) best = {v, false, l};
    }
    return best;
}

// min over l <= L of 1/(B(p^l x) + 2). Not a lower bound for m_p, which
// would need every l.
inline Rational mp_partial_lower(const CFExpansion& e, std::uint64_t p, std::uint64_t L) {
    if (e.is_finite()) return Rational(0);
    auto hs = height_spectrum(e, p, L);
    Rational best = Rational::infinity();
    for (const auto& [l, h] : hs.entries) best = std::min(best, Rational(1, h.value() + 2));
    return best;
}

struct ScanEntry {
    std::string check;
    std::string n;
    bool precondition = true;
    bool pass = true;
    std::string witness;

    ScanEntry() = default;
    ScanEntry(std::string check_name, std::string modulus) : check(std::move(check_name)), n(std::move(modulus)) {}

    // check=<name> n=<..> pass=<0|1> witness=<...>; unmet preconditions print pass=- .
    std::string record() const {
        return "check=" + check + " n=" + n + " pass=" + (precondition ? (pass ? "1" : "0") : "-") +
               " witness=" + witness;
    }
};

inline ScanEntry check_noloop_bound(const CFExpansion& e, std::uint64_t n) {
    ScanEntry s{"noloop", std::to_string(n)};
    CFExpansion x = detail::plc_input(e);
    LoopVerdict v = is_infinite_loop(x, n);
    if (!v.not_loop() || x.is_finite()) {
        s.precondition = false;
        s.witness = x.is_finite() ? "rational" : v.record();
        return s;
    }
    Height b0 = height(x);
    Height b1 = height(multiply_cf(x, n));
    Integer t = noloop_threshold(n);
    s.pass = std::max(b0.value(), b1.value()) >= t;
    s.witness = "B=" + b0.str() + " Bn=" + b1.str() + " threshold=" + t.str() + " " + v.record();
    return s;
}

inline ScanEntry check_infl(const CFExpansion& e, std::uint64_t p, std::uint64_t m) {
    detail::require_prime(p);
    std::uint64_t pm = ipow(p, m);
    ScanEntry s{"infl", std::to_string(pm)};
    if (e.is_finite()) {
        s.precondition = false;
        s.witness = "rational";
        return s;
    }
    LoopVerdict v = is_infinite_loop(e, pm);
    if (!v.not_loop()) {
        s.precondition = false;
        s.witness = v.record();
        return s;
    }
    Rational lhs = std::min(Rational(1, height(e).value()), Rational(1, height(multiply_cf(e, pm)).value()));
    Rational rhs(1, noloop_threshold(pm));
    s.pass = lhs <= rhs;
    s.witness = "min=" + lhs.str() + " bound=" + rhs.str();
    return s;
}

// Finite e with q_k = n q', q' > 1: B(n x) >= n a_{k+1} and p_k/q' is a
// convergent of n x. Heights are read without the infinity tail.
inline ScanEntry check_pro2(const CFExpansion& e, std::uint64_t n, std::int64_t k) {
    ScanEntry s{"pro2", std::to_string(n)};
    if (!e.is_finite()) throw std::invalid_argument("expansion must be finite");
    CFExpansion x = e.with_infinity_tail(false);
    if (k < 0 || static_cast<std::size_t>(k) >= x.last_index()) {
        s.precondition = false;
        s.witness = "k out of range";
        return s;
    }
    auto [prev, cur] = convergent_pair(x, k);
    if (cur.q % n != 0 || cur.q / n <= 1) {
        s.precondition = false;
        s.witness = "q_k=" + cur.q.str();
        return s;
    }
    Rational target(cur.p, cur.q / n);
    CFExpansion y = multiply_cf(x, n);
    Integer need = Integer(n) * x.partial_quotient(static_cast<std::size_t>(k + 1));
    bool height_ok = height(y).value() >= need;
    bool found = false;
    for (const auto& c : convergents(y, static_cast<std::int64_t>(y.last_index())))
        if (c.k >= 0 && c.value() == target) found = true;
    s.pass = height_ok && found;
    s.witness = "k=" + std::to_string(k) + " Bn=" + height(y).str() + " need=" + need.str() + " target=" +
                target.str() + (found ? "" : " missing");
    return s;
}

struct CountHeightReport {
    bool loops_through_L = false;      // p^l x is a loop mod p^m for every l <= L
    bool bound_holds = true;           // B(x) <= p^m - 4
    std::optional<std::uint64_t> first_break;  // first l in (L, cap] where the loop property fails
    bool unresolved = false;           // bound fails and no break up to cap
};

inline CountHeightReport count_height(const CFExpansion& e, std::uint64_t p, std::uint64_t m, std::uint64_t L,
                                      std::optional<std::uint64_t> cap = std::nullopt) {
    detail::require_prime(p);
    if (!e.is_periodic()) throw std::invalid_argument("expansion must be periodic");
    std::uint64_t pm = ipow(p, m);
    std::uint64_t limit = cap.value_or(3 * L);
    CountHeightReport r;
    CFExpansion cur = e;
    for (std::uint64_t l = 0; l <= L; ++l) {
        if (!is_infinite_loop(cur, pm).is_loop()) return r;
        cur = multiply_cf(cur, p);
    }
    r.loops_through_L = true;
    Integer bound = Integer(pm) - 4;
    r.bound_holds = height(e).value() <= bound;
    if (r.bound_holds) return r;
    for (std::uint64_t l = L + 1; l <= limit; ++l) {
        if (!is_infinite_loop(cur, pm).is_loop()) {
            r.first_break = l;
            return r;
        }
        cur = multiply_cf(cur, p);
    }
    r.unresolved = true;
    return r;
}

inline ScanEntry check_count_height(const CFExpansion& e, std::uint64_t p, std::uint64_t m, std::uint64_t L,
                                    std::optional<std::uint64_t> cap = std::nullopt) {
    ScanEntry s{"count-height", std::to_string(ipow(p, m))};
    auto r = count_height(e, p, m, L, cap);
    s.precondition = r.loops_through_L;
    s.pass = r.bound_holds || r.first_break.has_value();
    s.witness = "B=" + height(e).str() + " bound=" + std::to_string(ipow(p, m) - 4);
    if (r.first_break) s.witness += " break_l=" + std::to_string(*r.first_break);
    if (r.unresolved) s.witness += " unresolved";
    return s;
}

// For each m <= m_max, the least l <= L with p^l x not a loop mod p^m.
inline std::vector<std::pair<std::uint64_t, std::optional<std::uint64_t>>>
persistence_scan(const CFExpansion& e, std::uint64_t p, std::uint64_t m_max, std::uint64_t L) {
    detail::require_prime(p);
    CFExpansion x = detail::plc_input(e);
    std::vector<CFExpansion> multiples{x};
    for (std::uint64_t l = 1; l <= L; ++l) multiples.push_back(multiply_cf(multiples.back(), p));
    std::vector<std::pair<std::uint64_t, std::optional<std::uint64_t>>> out;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        std::uint64_t pm = ipow(p, m);
        std::optional<std::uint64_t> hit;
        for (std::uint64_t l = 0; l <= L && !hit; ++l)
            if (is_infinite_loop(multiples[l], pm).not_loop()) hit = l;
        out.push_back({m, hit});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-expansion invariants

inline Rational distance_to_integer(const Rational& x) {
    Rational frac = x - Rational(x.floor());
    Rational other = Rational(1) - frac;
    return std::min(frac, other);
}

// |p_k q_{k-1} - p_{k-1} q_k| = 1 for k = 0..M and the two-sided bound
// 1/((a_{k+1}+2) q_k^2) < |x - p_k/q_k| < 1/(a_{k+1} q_k^2) for k = 0..M-1.
// The upper bound is an equality when M = 1 (k = 0, q_{-1} = 0), so that
// case is checked as <=. The bounds are read on the canonical expansion: a
// trailing 1 can make the lower bound an equality.
inline ScanEntry check_determinant_sandwich(const CFExpansion& e) {
    ScanEntry s{"uplow", "-"};
    CFExpansion x = canonical_finite(e.with_infinity_tail(false));
    std::size_t M = x.last_index();
    auto cs = convergents(x, static_cast<std::int64_t>(M));
    Rational value = cs.back().value();
    for (std::size_t i = 1; i < cs.size(); ++i) {
        Integer det = cs[i].p * cs[i - 1].q - cs[i - 1].p * cs[i].q;
        if (abs_int(det) != 1) {
            s.pass = false;
            s.witness = "determinant k=" + std::to_string(cs[i].k);
            return s;
        }
    }
    for (std::size_t k = 0; k < M; ++k) {
        const auto& c = cs[k + 1];
        Integer a = x.partial_quotient(k + 1);
        Rational gap = value - c.value();
        if (gap < Rational(0)) gap = -gap;
        Rational lo(1, (a + 2) * c.q * c.q);
        Rational hi(1, a * c.q * c.q);
        bool upper = (M == 1) ? gap <= hi : gap < hi;
        if (!(lo < gap) || !upper) {
            s.pass = false;
            s.witness = "sandwich k=" + std::to_string(k);
            return s;
        }
    }
    s.witness = "M=" + std::to_string(M);
    return s;
}

// c_N = min over convergent denominators q_k (k < M) of q ||q x||, against
// 1/(B+2) < c_N < 1/B once N covers the convergent before the largest
// partial quotient. Requires M >= 2.
inline ScanEntry check_sandwich_cN(const CFExpansion& e) {
    ScanEntry s{"sandwich", "-"};
    CFExpansion x = canonical_finite(e.with_infinity_tail(false));
    std::size_t M = x.last_index();
    if (M < 2) {
        s.precondition = false;
        s.witness = "M<2";
        return s;
    }
    auto cs = convergents(x, static_cast<std::int64_t>(M));
    Rational value = cs.back().value();
    Integer B = height(x).value();
    Rational cN = Rational::infinity();
    for (std::size_t k = 0; k < M; ++k) {
        const Integer& q = cs[k + 1].q;
        cN = std::min(cN, Rational(q) * distance_to_integer(value.scaled(q)));
    }
    s.pass = Rational(1, B + 2) < cN && cN < Rational(1, B);
    s.witness = "cN=" + cN.str() + " B=" + B.str();
    return s;
}

// ---------------------------------------------------------------------------
// Semi-convergent sets

// All semi-convergents {k, m} with k = -1..K and 0 <= m <= a_{k+1}, in walk order.
inline std::vector<Rational> semiconvergents(const CFExpansion& e, std::size_t K) {
    std::vector<Rational> out;
    auto cs = convergents(e, static_cast<std::int64_t>(K + 1));
    // cs[i] holds index i - 1.
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        const auto& prev = i == 0 ? Convergent{-2, 0, 1} : cs[i - 1];
        const auto& cur = cs[i];
        const Integer& a = e.partial_quotient(i);
        for (Integer m = 0; m <= a; ++m) {
            if (i == 0 && m == 0) continue;
            out.emplace_back(m * cur.p + prev.p, m * cur.q + prev.q);
        }
    }
    return out;
}

// Whether r is a semi-convergent of x. Rationals take both expansions and
// their infinity tails, i.e. also every Farey neighbour of x.
inline bool is_semiconvergent_of(const CFExpansion& x, const Rational& r) {
    if (x.is_finite()) {
        Rational v = std::get<Rational>(value_of(x));
        if (r == v || is_farey_neighbor(r, v)) return true;
        CFExpansion c = canonical_finite(x);
        for (const auto& form : {c, twin(c)}) {
            if (form.last_index() == 0) continue;
            for (const auto& s : semiconvergents(form, form.last_index() - 1))
                if (s == r) return true;
        }
        return false;
    }
    // Denominators increase along the walk, so stop once they pass r's.
    for (std::size_t K = 0;; K += 8) {
        auto list = semiconvergents(x, K + 8);
        for (const auto& s : list)
            if (s == r) return true;
        if (!list.empty() && list.back().den() > r.den() && convergent(x, static_cast<std::int64_t>(K)).den() > r.den())
            return false;
    }
}

inline bool is_convergent_of(const CFExpansion& x, const Rational& r) {
    if (x.is_finite()) {
        CFExpansion c = canonical_finite(x);
        for (const auto& form : {c, twin(c)})
            for (const auto& cv : convergents(form, static_cast<std::int64_t>(form.last_index())))
                if (cv.k >= 0 && cv.value() == r) return true;
        return false;
    }
    for (std::int64_t k = 0;; ++k) {
        Rational c = convergent(x, k);
        if (c == r) return true;
        if (c.den() > r.den()) return false;
    }
}

// Pairs (p_k/q_k, {k, m}) of e that are dual edges for n, pushed forward to n x.
inline ScanEntry check_dual_pushforward(const CFExpansion& e, std::uint64_t n) {
    ScanEntry s{"dual-pushforward", std::to_string(n)};
    CFExpansion x = e.is_finite() ? e.with_infinity_tail(true) : e;
    CFExpansion y = multiply_cf(x, n);
    std::size_t K = x.is_finite() ? x.last_index() : 12;
    auto cs = convergents(x, static_cast<std::int64_t>(K));
    std::size_t tested = 0;
    for (std::size_t k = 0; k < K; ++k) {
        Rational A = cs[k + 1].value();
        const Integer& a = x.partial_quotient(k + 1);
        for (Integer m = 0; m <= a; ++m) {
            Rational B(m * cs[k + 1].p + cs[k].p, m * cs[k + 1].q + cs[k].q);
            if (B == A || B.is_infinite() || !is_dual_neighbor(A, B, n)) continue;
            ++tested;
            Rational nA = A.scaled(n), nB = B.scaled(n);
            bool both = is_semiconvergent_of(y, nA) && is_semiconvergent_of(y, nB);
            bool one = is_convergent_of(y, nA) || is_convergent_of(y, nB);
            if (!both || !one) {
                s.pass = false;
                s.witness = "edge " + A.str() + " -- " + B.str() + (both ? " no convergent" : " not semi-convergents");
                return s;
            }
        }
    }
    s.precondition = tested > 0;
    s.witness = "edges=" + std::to_string(tested);
    return s;
}

}  // namespace infloop
