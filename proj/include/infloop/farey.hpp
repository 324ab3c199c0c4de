#pragma once

/**
 * @file farey.hpp
 * @brief Farey addition and subtraction, and the three neighbour relations on
 * the Farey tessellation: plain, Gamma_0(n) and the dual relation F and (1/n)F.
 */

#include "rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infloop {

struct FareyEdge {
    Rational a;
    Rational b;

    FareyEdge(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {
        if (a == b) throw std::invalid_argument("edge endpoints must differ");
    }

    const Rational& lower() const { return a < b ? a : b; }
    const Rational& upper() const { return a < b ? b : a; }

    bool has_endpoint(const Rational& x) const { return a == x || b == x; }

    // Same unordered pair.
    friend bool operator==(const FareyEdge& e, const FareyEdge& f) {
        return (e.a == f.a && e.b == f.b) || (e.a == f.b && e.b == f.a);
    }

    // "p/q -- r/s" with the smaller endpoint first.
    std::string str() const { return lower().str() + " -- " + upper().str(); }
};

inline Rational farey_mediant(const Rational& a, const Rational& b) {
    if (a == b) throw std::invalid_argument("mediant of a point with itself");
    return Rational(a.num() + b.num(), a.den() + b.den());
}

inline Rational farey_difference(const Rational& a, const Rational& b) {
    if (a == b) throw std::invalid_argument("Farey difference of a point with itself");
    return Rational(a.num() - b.num(), a.den() - b.den());
}

inline bool is_farey_neighbor(const Rational& a, const Rational& b) {
    return abs_int(a.num() * b.den() - a.den() * b.num()) == 1;
}

// Farey neighbours with a denominator divisible by n. For n >= 2 at most one
// denominator can be, since neighbour denominators are coprime.
inline bool is_gamma0_neighbor(const Rational& a, const Rational& b, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("modulus must be positive");
    if (!is_farey_neighbor(a, b)) return false;
    return a.den() % n == 0 || b.den() % n == 0;
}

// Edge of F whose image under multiplication by n is again an edge of F.
inline bool is_dual_neighbor(const Rational& a, const Rational& b, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("modulus must be positive");
    if (!is_farey_neighbor(a, b)) return false;
    return is_farey_neighbor(a.scaled(n), b.scaled(n));
}

// Edges I + k = (k, oo) for integers k >= 0.
inline bool is_base_translate(const FareyEdge& e) {
    return e.upper().is_infinite() && e.lower().is_integer() && e.lower() >= Rational(0);
}

}  // namespace infloop
