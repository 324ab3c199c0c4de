#pragma once

/**
 * @file format.hpp
 * @brief Text forms of expansions and values.
 *
 * Expansions: "[a0; a1, a2]", "[a0; a1, oo]" for an infinity tail and
 * "[a0; a1, (c1, c2)]" for a periodic part. Values: "p/q", "p",
 * "(P+sqrt(D))/Q", "(P-sqrt(D))/Q", "sqrt(D)", or an expansion literal.
 */

#include "contfrac.hpp"

#include <cctype>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace infloop {

inline std::string to_string(const CFExpansion& e) {
    std::ostringstream os;
    os << '[' << e.a0();
    std::vector<std::string> items;
    for (const auto& a : e.body()) items.push_back(a.str());
    if (e.is_periodic()) {
        std::string p = "(";
        for (std::size_t i = 0; i < e.period().size(); ++i) {
            if (i) p += ", ";
            p += e.period()[i].str();
        }
        items.push_back(p + ")");
    } else if (e.has_infinity_tail()) {
        items.push_back("oo");
    }
    for (std::size_t i = 0; i < items.size(); ++i) os << (i == 0 ? "; " : ", ") << items[i];
    os << ']';
    return os.str();
}

namespace detail {

inline std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline Integer parse_integer(std::string_view s) {
    std::string t = strip(s);
    static const std::regex re(R"([+-]?[0-9]+)");
    if (!std::regex_match(t, re)) throw std::invalid_argument("not an integer: '" + t + "'");
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

}  // namespace detail

inline CFExpansion parse_cf(std::string_view text) {
    std::string s = detail::strip(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("expansion must be enclosed in [ ]");
    std::string inner = s.substr(1, s.size() - 2);
    auto semi = inner.find(';');
    Integer a0 = detail::parse_integer(semi == std::string::npos ? inner : inner.substr(0, semi));
    if (semi == std::string::npos) return CFExpansion::finite(a0);

    std::string rest = detail::strip(inner.substr(semi + 1));
    if (rest.empty()) throw std::invalid_argument("nothing after ';'");
    std::vector<Integer> body, period;
    bool tail_inf = false, periodic = false;
    auto open = rest.find('(');
    std::string head = rest;
    if (open != std::string::npos) {
        auto close = rest.find(')', open);
        if (close == std::string::npos || detail::strip(rest.substr(close + 1)) != "")
            throw std::invalid_argument("periodic part must close the expansion");
        head = rest.substr(0, open);
        for (const auto& item : detail::split(rest.substr(open + 1, close - open - 1), ','))
            period.push_back(detail::parse_integer(item));
        periodic = true;
        std::string h = detail::strip(head);
        if (!h.empty()) {
            if (h.back() != ',') throw std::invalid_argument("missing ',' before the periodic part");
            h.pop_back();
        }
        head = h;
    }
    if (!detail::strip(head).empty()) {
        auto items = detail::split(head, ',');
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i] == "oo") {
                if (i + 1 != items.size() || periodic) throw std::invalid_argument("'oo' must be the last entry");
                tail_inf = true;
            } else {
                body.push_back(detail::parse_integer(items[i]));
            }
        }
    }
    if (periodic) return CFExpansion::periodic(a0, body, period);
    return CFExpansion::finite(a0, body, tail_inf);
}

inline Value parse_value(std::string_view text) {
    std::string s = detail::strip(text);
    static const std::regex surd(R"(\(\s*(?:([+-]?[0-9]+)\s*)?([+-])?\s*sqrt\(\s*([0-9]+)\s*\)\s*\)\s*/\s*([+-]?[0-9]+))");
    static const std::regex bare(R"(sqrt\(\s*([0-9]+)\s*\))");
    static const std::regex frac(R"(([+-]?[0-9]+)\s*(?:/\s*([0-9]+))?)");
    std::smatch m;
    if (std::regex_match(s, m, surd)) {
        Integer P = m[1].matched ? detail::parse_integer(m[1].str()) : Integer(0);
        int sign = (m[2].matched && m[2].str() == "-") ? -1 : 1;
        return QuadSurd::from_parts(P, sign, detail::parse_integer(m[3].str()), detail::parse_integer(m[4].str()));
    }
    if (std::regex_match(s, m, bare)) return QuadSurd(0, detail::parse_integer(m[1].str()), 1);
    if (std::regex_match(s, m, frac)) {
        Integer d = m[2].matched ? detail::parse_integer(m[2].str()) : Integer(1);
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(detail::parse_integer(m[1].str()), d);
    }
    if (!s.empty() && s.front() == '[') return value_of(parse_cf(s));
    throw std::invalid_argument("cannot parse value: '" + s + "'");
}

// Expansion literal as given, or the expansion of a parsed value.
inline CFExpansion parse_expansion(std::string_view text) {
    std::string s = detail::strip(text);
    if (!s.empty() && s.front() == '[') return parse_cf(s);
    return expansion_of(parse_value(s));
}

}  // namespace infloop
