#pragma once

/**
 * @file rational.hpp
 * @brief Exact rationals over arbitrary-precision integers, with 1/0 as the
 * single point at infinity.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace infloop {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}

// Floor division for any signs; b must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Integer isqrt(const Integer& x) {
    if (x < 0) throw std::domain_error("isqrt of a negative integer");
    return boost::multiprecision::sqrt(x);
}

inline bool is_square(const Integer& x) {
    if (x < 0) return false;
    Integer s = isqrt(x);
    return s * s == x;
}

inline std::uint64_t mod_u64(const Integer& x, std::uint64_t n) {
    Integer r = x % n;
    if (r < 0) r += n;
    return r.convert_to<std::uint64_t>();
}

class Rational {
    Integer num_;
    Integer den_;

    void normalize() {
        if (den_ == 0) {
            if (num_ == 0) throw std::domain_error("0/0 is not a rational");
            num_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd_int(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational infinity() { return Rational(1, 0); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_infinite() const { return den_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Integer floor() const {
        if (is_infinite()) throw std::domain_error("floor of infinity");
        return floor_div(num_, den_);
    }

    std::string str() const { return num_.str() + "/" + den_.str(); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
            return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        Integer lhs = a.num_ * b.den_;
        Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational operator-() const {
        if (is_infinite()) return *this;
        return Rational(-num_, den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        a.require_finite(b);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        a.require_finite(b);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        a.require_finite(b);
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        a.require_finite(b);
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    // n * x for n > 0; keeps infinity fixed.
    Rational scaled(const Integer& n) const {
        if (n <= 0) throw std::domain_error("scale factor must be positive");
        if (is_infinite()) return *this;
        return Rational(num_ * n, den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void require_finite(const Rational& other) const {
        if (is_infinite() || other.is_infinite())
            throw std::domain_error("arithmetic on infinity");
    }
};

}  // namespace infloop
