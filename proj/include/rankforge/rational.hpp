#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "rankforge/error.hpp"

namespace rankforge {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& x) {
    auto n = x.numerator();
    auto d = x.denominator(); // always positive
    auto q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline std::int64_t ceil_of(const Rational& x) {
    auto n = x.numerator();
    auto d = x.denominator();
    auto q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

/// Always `num/den`, including integers (`3/1`).
inline std::string to_string(const Rational& x) {
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

inline long double to_long_double(const Rational& x) {
    return static_cast<long double>(x.numerator()) / static_cast<long double>(x.denominator());
}

namespace detail {

inline std::int64_t parse_int64(std::string_view s, std::string_view what) {
    if (s.empty()) throw ParseError(std::string(what) + ": empty integer");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ParseError(std::string(what) + ": malformed integer '" + std::string(s) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9')
            throw ParseError(std::string(what) + ": malformed integer '" + std::string(s) + "'");
        if (v > (INT64_MAX - (c - '0')) / 10) throw ParseError(std::string(what) + ": integer overflow");
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

} // namespace detail

/// Parses `a/b` or `a`. Decimal notation is rejected so that parameters stay exact.
inline Rational parse_rational(std::string_view s, std::string_view what = "rational") {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_int64(s, what));
    auto num = detail::parse_int64(s.substr(0, slash), what);
    auto den = detail::parse_int64(s.substr(slash + 1), what);
    if (den == 0) throw ParseError(std::string(what) + ": zero denominator");
    return Rational(num, den);
}

} // namespace rankforge
