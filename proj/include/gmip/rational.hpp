#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

// Boost 1.74's mixed comparison recurses under C++20's reversed operator== candidates; exact
// non-template overloads win overload resolution and end the loop.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a.denominator() == 1 && a.numerator() == b; }
} // namespace boost

namespace gmip {

/// Exact weight type used for every cost, coefficient and objective value.
using Rational = boost::rational<std::int64_t>;

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// True when the decimal expansion of r terminates (denominator is 2^a 5^b).
inline bool is_decimal(const Rational& r)
{
    std::int64_t d = r.denominator();
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

/// Parses "12", "-3", "2.75", "1/3".
inline Rational parse_rational(std::string_view text)
{
    if (text.empty()) throw std::invalid_argument("empty number");
    std::string s(text);
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::size_t used = 0;
        auto num = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("bad number '" + s + "'");
        auto den_str = s.substr(slash + 1);
        auto den = std::stoll(den_str, &used);
        if (used != den_str.size() || den == 0) throw std::invalid_argument("bad number '" + s + "'");
        return Rational(num, den);
    }
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    std::int64_t num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '.') {
            if (seen_dot) throw std::invalid_argument("bad number '" + s + "'");
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad number '" + s + "'");
        if (num > (INT64_MAX - 9) / 10 || (seen_dot && den > INT64_MAX / 10))
            throw std::out_of_range("number too large '" + s + "'");
        num = num * 10 + (ch - '0');
        if (seen_dot) den *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw std::invalid_argument("bad number '" + s + "'");
    return Rational(negative ? -num : num, den);
}

/// Exact text: integers as "7", terminating fractions as "2.75", others as "1/3".
inline std::string to_string(const Rational& r)
{
    if (is_integer(r)) return std::to_string(r.numerator());
    if (!is_decimal(r)) return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    std::int64_t num = r.numerator();
    std::int64_t den = r.denominator();
    std::string sign = num < 0 ? "-" : "";
    std::uint64_t n = num < 0 ? static_cast<std::uint64_t>(-num) : static_cast<std::uint64_t>(num);
    std::uint64_t d = static_cast<std::uint64_t>(den);
    std::string out = sign + std::to_string(n / d) + ".";
    std::uint64_t rem = n % d;
    while (rem != 0) {
        rem *= 10;
        out.push_back(static_cast<char>('0' + rem / d));
        rem %= d;
    }
    return out;
}

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b)
{
    std::int64_t g = std::gcd(a, b);
    __int128 v = static_cast<__int128>(a / g) * b;
    if (v > INT64_MAX) throw std::overflow_error("denominator lcm overflows int64");
    return static_cast<std::int64_t>(v);
}

} // namespace gmip
