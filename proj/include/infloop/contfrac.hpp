#pragma once

/**
 * @file contfrac.hpp
 * @brief Simple continued fractions [a0; a1, a2, ...] over exact values.
 *
 * An expansion is finite, finite with an infinite final partial quotient
 * (the convention used for rationals in the loop definitions), or
 * eventually periodic. Indexing follows the usual recurrences with seeds
 * p_{-1}/q_{-1} = 1/0 and p_0/q_0 = a0/1.
 */

#include "rational.hpp"
#include "surd.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace infloop {

enum class Tail { None, Infinity, Periodic };

using Value = std::variant<Rational, QuadSurd>;

class CFExpansion {
    Integer a0_;
    std::vector<Integer> body_;
    Tail tail_ = Tail::None;
    std::vector<Integer> period_;

    void validate() const {
        if (a0_ < 0) throw std::invalid_argument("a0 must be nonnegative");
        for (const auto& a : body_)
            if (a < 1) throw std::invalid_argument("partial quotients must be positive");
        for (const auto& a : period_)
            if (a < 1) throw std::invalid_argument("partial quotients must be positive");
        if (tail_ == Tail::Periodic && period_.empty())
            throw std::invalid_argument("empty period");
        if (tail_ != Tail::Periodic && !period_.empty())
            throw std::invalid_argument("period given for a non-periodic expansion");
    }

    // Minimal period, then minimal preperiod.
    void canonicalize_period() {
        std::size_t T = period_.size();
        for (std::size_t d = 1; d < T; ++d) {
            if (T % d != 0) continue;
            bool ok = true;
            for (std::size_t i = d; i < T && ok; ++i) ok = period_[i] == period_[i - d];
            if (ok) {
                period_.resize(d);
                break;
            }
        }
        while (!body_.empty() && body_.back() == period_.back()) {
            std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
            body_.pop_back();
        }
    }

public:
    CFExpansion() = default;

    static CFExpansion finite(Integer a0, std::vector<Integer> body = {}, bool infinity_tail = false) {
        CFExpansion e;
        e.a0_ = std::move(a0);
        e.body_ = std::move(body);
        e.tail_ = infinity_tail ? Tail::Infinity : Tail::None;
        e.validate();
        return e;
    }

    static CFExpansion periodic(Integer a0, std::vector<Integer> body, std::vector<Integer> period) {
        CFExpansion e;
        e.a0_ = std::move(a0);
        e.body_ = std::move(body);
        e.tail_ = Tail::Periodic;
        e.period_ = std::move(period);
        e.validate();
        e.canonicalize_period();
        return e;
    }

    const Integer& a0() const { return a0_; }
    const std::vector<Integer>& body() const { return body_; }
    const std::vector<Integer>& period() const { return period_; }
    Tail tail() const { return tail_; }

    bool is_periodic() const { return tail_ == Tail::Periodic; }
    bool is_finite() const { return tail_ != Tail::Periodic; }
    bool has_infinity_tail() const { return tail_ == Tail::Infinity; }

    // Index M of the last partial quotient of a finite expansion.
    std::size_t last_index() const {
        if (is_periodic()) throw std::logic_error("periodic expansion has no last index");
        return body_.size();
    }

    bool has_partial_quotient(std::size_t k) const { return is_periodic() || k <= body_.size(); }

    const Integer& partial_quotient(std::size_t k) const {
        if (k == 0) return a0_;
        if (k <= body_.size()) return body_[k - 1];
        if (!is_periodic()) throw std::out_of_range("partial quotient index beyond a finite expansion");
        return period_[(k - body_.size() - 1) % period_.size()];
    }

    // All partial quotients a_0..a_K (K clipped to the last index for finite expansions).
    std::vector<Integer> prefix(std::size_t K) const {
        std::vector<Integer> out;
        for (std::size_t k = 0; k <= K && has_partial_quotient(k); ++k) out.push_back(partial_quotient(k));
        return out;
    }

    CFExpansion with_infinity_tail(bool on) const {
        if (is_periodic()) throw std::logic_error("periodic expansions have no infinity tail");
        return finite(a0_, body_, on);
    }

    friend bool operator==(const CFExpansion& x, const CFExpansion& y) {
        return x.a0_ == y.a0_ && x.body_ == y.body_ && x.tail_ == y.tail_ && x.period_ == y.period_;
    }
};

// ---------------------------------------------------------------------------
// Convergents

struct Convergent {
    std::int64_t k;
    Integer p;
    Integer q;
    Rational value() const { return Rational(p, q); }
};

// p_k/q_k for k = -1..K, clipped to the expansion for finite input.
inline std::vector<Convergent> convergents(const CFExpansion& e, std::int64_t K) {
    std::vector<Convergent> out;
    if (K < -1) throw std::invalid_argument("convergent index below -1");
    Integer pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    out.push_back({-1, pm1, qm1});
    for (std::int64_t k = 0; k <= K && e.has_partial_quotient(static_cast<std::size_t>(k)); ++k) {
        const Integer& a = e.partial_quotient(static_cast<std::size_t>(k));
        Integer p = a * pm1 + pm2;
        Integer q = a * qm1 + qm2;
        out.push_back({k, p, q});
        pm2 = std::move(pm1);
        qm2 = std::move(qm1);
        pm1 = std::move(p);
        qm1 = std::move(q);
    }
    return out;
}

// (p_{k-1}, q_{k-1}, p_k, q_k); k >= -1, with p_{-2}/q_{-2} = 0/1.
inline std::pair<Convergent, Convergent> convergent_pair(const CFExpansion& e, std::int64_t k) {
    if (k < -1) throw std::invalid_argument("convergent index below -1");
    if (k >= 0 && !e.has_partial_quotient(static_cast<std::size_t>(k)))
        throw std::out_of_range("convergent index beyond a finite expansion");
    if (k == -1) return {Convergent{-2, 0, 1}, Convergent{-1, 1, 0}};
    auto cs = convergents(e, k);
    return {cs[cs.size() - 2], cs.back()};
}

inline Rational convergent(const CFExpansion& e, std::int64_t k) {
    return convergent_pair(e, k).second.value();
}

// Value of [a0; ..., a_d]; depth -1 gives 1/0.
inline Rational cf_eval(const CFExpansion& e, std::int64_t d) {
    if (d < -1) throw std::invalid_argument("depth below -1");
    return convergent(e, d);
}

// (m p_k + p_{k-1}) / (m q_k + q_{k-1}) with 0 <= m <= a_{k+1}; on the fan
// of an infinity tail (k = M) any m >= 0 is allowed.
inline Rational semiconvergent(const CFExpansion& e, std::int64_t k, const Integer& m) {
    if (k < -1) throw std::invalid_argument("semi-convergent index below -1");
    if (m < 0) throw std::out_of_range("semi-convergent parameter must be nonnegative");
    auto next = static_cast<std::size_t>(k + 1);
    if (e.has_partial_quotient(next)) {
        if (m > e.partial_quotient(next)) throw std::out_of_range("semi-convergent parameter exceeds a_{k+1}");
    } else if (!(e.has_infinity_tail() && next == e.last_index() + 1)) {
        throw std::out_of_range("semi-convergent index beyond the expansion");
    }
    auto [prev, cur] = convergent_pair(e, k);
    return Rational(m * cur.p + prev.p, m * cur.q + prev.q);
}

// p_{k,m} q_k - p_k q_{k,m} = p_{k-1} q_k - p_k q_{k-1} = (-1)^k.
inline int semiconvergent_determinant_sign(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

// ---------------------------------------------------------------------------
// Height

class Height {
    bool infinite_ = false;
    Integer value_ = 0;

public:
    Height() = default;
    explicit Height(Integer v) : value_(std::move(v)) {}
    static Height infinity() {
        Height h;
        h.infinite_ = true;
        return h;
    }
    bool is_infinite() const { return infinite_; }
    const Integer& value() const {
        if (infinite_) throw std::logic_error("infinite height has no value");
        return value_;
    }
    std::string str() const { return infinite_ ? "oo" : value_.str(); }

    friend bool operator==(const Height& x, const Height& y) {
        return x.infinite_ == y.infinite_ && x.value_ == y.value_;
    }
    friend std::strong_ordering operator<=>(const Height& x, const Height& y) {
        if (x.infinite_ || y.infinite_) {
            if (x.infinite_ && y.infinite_) return std::strong_ordering::equal;
            return x.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (x.value_ < y.value_) return std::strong_ordering::less;
        if (x.value_ > y.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

inline Height height(const CFExpansion& e) {
    if (e.has_infinity_tail()) return Height::infinity();
    Integer best = 0;
    for (const auto& a : e.body()) best = std::max(best, a);
    for (const auto& a : e.period()) best = std::max(best, a);
    return Height(best);
}

// ---------------------------------------------------------------------------
// Rationals

// Returns (canonical, twin); the canonical form does not end in 1 unless it
// is the single entry [1]. Value 0 has no twin and both entries are [0].
inline std::pair<CFExpansion, CFExpansion> cf_from_rational(const Rational& x) {
    if (x.is_infinite()) throw std::invalid_argument("infinity has no continued fraction");
    if (x < Rational(0)) throw std::invalid_argument("negative values are not supported");
    Integer p = x.num(), q = x.den();
    std::vector<Integer> quotients;
    while (q != 0) {
        Integer a = p / q;
        Integer r = p - a * q;
        quotients.push_back(a);
        p = q;
        q = r;
    }
    Integer a0 = quotients.front();
    std::vector<Integer> body(quotients.begin() + 1, quotients.end());
    CFExpansion canonical = CFExpansion::finite(a0, body, true);
    if (x == Rational(0)) return {canonical, canonical};
    if (body.empty()) {
        a0 -= 1;
        body.push_back(1);
    } else {
        body.back() -= 1;
        body.push_back(1);
    }
    return {canonical, CFExpansion::finite(a0, body, true)};
}

// The other expansion of the same rational, keeping the tail flag.
inline CFExpansion twin(const CFExpansion& e) {
    if (e.is_periodic()) throw std::invalid_argument("irrational expansions have no twin");
    Integer a0 = e.a0();
    std::vector<Integer> body = e.body();
    bool tail = e.has_infinity_tail();
    if (!body.empty() && body.back() == 1) {
        body.pop_back();
        if (body.empty()) a0 += 1;
        else body.back() += 1;
    } else if (body.empty()) {
        if (a0 == 0) throw std::invalid_argument("zero has no twin expansion");
        a0 -= 1;
        body.push_back(1);
    } else {
        body.back() -= 1;
        body.push_back(1);
    }
    return CFExpansion::finite(a0, body, tail);
}

// Canonical form of a finite expansion (not ending in 1 past a0).
inline CFExpansion canonical_finite(const CFExpansion& e) {
    if (e.is_periodic()) return e;
    if (!e.body().empty() && e.body().back() == 1) return twin(e);
    return e;
}

// ---------------------------------------------------------------------------
// Surds

inline CFExpansion cf_of_surd(const QuadSurd& s) {
    if (!s.is_positive()) throw std::invalid_argument("surd value must be positive");
    // Canonical surds satisfy Q | D - P^2, so the classical recurrence stays integral.
    Integer P = s.P(), Q = s.Q();
    const Integer& D = s.D();
    Integer root = isqrt(D);
    std::vector<Integer> quotients;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    for (;;) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::size_t i = it->second;
            std::size_t j = quotients.size();
            Integer a0 = quotients[0];
            if (i == 0) {
                std::vector<Integer> period(quotients.begin() + 1, quotients.end());
                period.push_back(quotients[0]);
                return CFExpansion::periodic(a0, {}, period);
            }
            std::vector<Integer> body(quotients.begin() + 1, quotients.begin() + static_cast<std::ptrdiff_t>(i));
            std::vector<Integer> period(quotients.begin() + static_cast<std::ptrdiff_t>(i),
                                        quotients.begin() + static_cast<std::ptrdiff_t>(j));
            return CFExpansion::periodic(a0, body, period);
        }
        seen.emplace(std::move(key), quotients.size());
        Integer a = Q > 0 ? floor_div(P + root, Q) : floor_div(-P - root - 1, -Q);
        quotients.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

// Exact value of a periodic expansion.
inline QuadSurd surd_of_periodic(const CFExpansion& e) {
    if (!e.is_periodic()) throw std::invalid_argument("expansion is not periodic");
    // y = [(c1, ..., cT)] is the fixed point of the period's matrix.
    Integer A = 1, B = 0, C = 0, Dd = 1;
    for (const auto& c : e.period()) {
        Integer nA = A * c + B, nC = C * c + Dd;
        B = A;
        Dd = C;
        A = nA;
        C = nC;
    }
    Integer diff = A - Dd;
    QuadSurd y(diff, diff * diff + 4 * B * C, 2 * C);
    // x = [a0; b1, ..., bs, y]
    Integer N11 = e.a0(), N12 = 1, N21 = 1, N22 = 0;
    for (const auto& b : e.body()) {
        Integer n11 = N11 * b + N12, n21 = N21 * b + N22;
        N12 = N11;
        N22 = N21;
        N11 = n11;
        N21 = n21;
    }
    return y.mobius(N11, N12, N21, N22);
}

inline Value value_of(const CFExpansion& e) {
    if (e.is_periodic()) return surd_of_periodic(e);
    return cf_eval(e, static_cast<std::int64_t>(e.last_index()));
}

inline bool is_rational_value(const Value& v) { return std::holds_alternative<Rational>(v); }

// Sign of (v - r).
inline int compare_value(const Value& v, const Rational& r) {
    if (const auto* x = std::get_if<Rational>(&v)) {
        auto c = *x <=> r;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return std::get<QuadSurd>(v).compare(r);
}

inline std::string value_str(const Value& v) {
    if (const auto* x = std::get_if<Rational>(&v)) return x->str();
    return std::get<QuadSurd>(v).str();
}

// Expansion of a positive value; rationals get the canonical form with an infinity tail.
inline CFExpansion expansion_of(const Value& v) {
    if (const auto* x = std::get_if<Rational>(&v)) return cf_from_rational(*x).first;
    return cf_of_surd(std::get<QuadSurd>(v));
}

// ---------------------------------------------------------------------------
// Arithmetic

inline CFExpansion multiply_cf(const CFExpansion& e, const Integer& n) {
    if (n < 1) throw std::invalid_argument("multiplier must be at least 1");
    if (e.is_periodic()) return cf_of_surd(surd_of_periodic(e) * n);
    Rational x = std::get<Rational>(value_of(e)).scaled(n);
    return cf_from_rational(x).first.with_infinity_tail(e.has_infinity_tail());
}

inline CFExpansion shift_cf(const CFExpansion& e, const Integer& k) {
    Integer a0 = e.a0() + k;
    if (a0 < 0) throw std::invalid_argument("shift makes the value negative");
    if (e.is_periodic()) return CFExpansion::periodic(a0, e.body(), e.period());
    return CFExpansion::finite(a0, e.body(), e.has_infinity_tail());
}

}  // namespace infloop
