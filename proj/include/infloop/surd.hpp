#pragma once

/**
 * @file surd.hpp
 * @brief Exact quadratic irrationals (P + sqrt(D)) / Q.
 *
 * Every surd is stored in a canonical form read off its primitive minimal
 * polynomial a x^2 + b x + c (a > 0). That form always satisfies
 * Q | D - P^2, and two surds are equal iff their fields are equal.
 */

#include "rational.hpp"

#include <stdexcept>
#include <string>

namespace infloop {

class QuadSurd {
    Integer P_;
    Integer D_;
    Integer Q_;

    QuadSurd() = default;

public:
    // (P + sqrt(D)) / Q; D must be a positive non-square and Q nonzero.
    QuadSurd(const Integer& P, const Integer& D, const Integer& Q) {
        if (Q == 0) throw std::invalid_argument("surd denominator is zero");
        if (D <= 0 || is_square(D)) throw std::invalid_argument("surd radicand must be a positive non-square");
        // (Q x - P)^2 = D
        Integer a = Q * Q;
        Integer b = -2 * P * Q;
        Integer c = P * P - D;
        Integer g = gcd_int(gcd_int(a, b), c);
        a /= g;
        b /= g;
        c /= g;
        Integer disc = b * b - 4 * a * c;
        // Root with +sqrt when Q > 0, the other one when Q < 0.
        int s = Q > 0 ? 1 : -1;
        if (b % 2 == 0) {
            P_ = -s * (b / 2);
            D_ = disc / 4;
            Q_ = s * a;
        } else {
            P_ = -s * b;
            D_ = disc;
            Q_ = s * 2 * a;
        }
    }

    // (X + Y sqrt(D)) / Z with Y != 0.
    static QuadSurd from_parts(Integer X, Integer Y, const Integer& D, Integer Z) {
        if (Y == 0) throw std::invalid_argument("surd has no irrational part");
        if (Y < 0) {
            X = -X;
            Y = -Y;
            Z = -Z;
        }
        return QuadSurd(X, Y * Y * D, Z);
    }

    const Integer& P() const { return P_; }
    const Integer& D() const { return D_; }
    const Integer& Q() const { return Q_; }

    Integer floor() const {
        Integer s = isqrt(D_);
        if (Q_ > 0) return floor_div(P_ + s, Q_);
        return floor_div(-P_ - s - 1, -Q_);
    }

    // Sign of (value - r); never zero for a finite r since the surd is irrational.
    int compare(const Rational& r) const {
        if (r.is_infinite()) return -1;
        const Integer& a = r.num();
        const Integer& b = r.den();
        Integer t = P_ * b - a * Q_;
        int num_sign;
        if (t >= 0) {
            num_sign = 1;
        } else {
            num_sign = (b * b * D_ > t * t) ? 1 : -1;
        }
        return Q_ > 0 ? num_sign : -num_sign;
    }

    // (a x + b) / (c x + d) with ad - bc != 0.
    QuadSurd mobius(const Integer& a, const Integer& b, const Integer& c, const Integer& d) const {
        if (a * d - b * c == 0) throw std::invalid_argument("degenerate Mobius map");
        Integer u = a * P_ + b * Q_;
        Integer v = c * P_ + d * Q_;
        Integer X = u * v - a * c * D_;
        Integer Y = a * v - u * c;
        Integer Z = v * v - c * c * D_;
        return from_parts(X, Y, D_, Z);
    }

    QuadSurd operator+(const Integer& k) const { return QuadSurd(P_ + k * Q_, D_, Q_); }
    QuadSurd operator-(const Integer& k) const { return QuadSurd(P_ - k * Q_, D_, Q_); }

    QuadSurd operator*(const Integer& n) const {
        if (n == 0) throw std::invalid_argument("product with zero is rational");
        return mobius(n, 0, 0, 1);
    }

    QuadSurd reciprocal() const { return mobius(0, 1, 1, 0); }

    bool is_positive() const { return compare(Rational(0)) > 0; }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.P_ == y.P_ && x.D_ == y.D_ && x.Q_ == y.Q_;
    }

    std::string str() const {
        if (P_ == 0 && Q_ == 1) return "sqrt(" + D_.str() + ")";
        // Printed with a positive denominator; parse_value reads both signs.
        if (Q_ < 0) return "(" + Integer(-P_).str() + "-sqrt(" + D_.str() + "))/" + Integer(-Q_).str();
        return "(" + P_.str() + "+sqrt(" + D_.str() + "))/" + Q_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadSurd& s) { return os << s.str(); }
};

}  // namespace infloop
