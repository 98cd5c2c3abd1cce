#ifndef NORMALITY_RATIONAL_HPP
#define NORMALITY_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "error.hpp"

namespace normality {

/// Exact arbitrary-precision fraction, always stored reduced with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// `num/den`, or just `num` when the denominator is 1 unless always_fraction is set.
inline std::string format_rational(const Rational& r, bool always_fraction = false) {
    std::string out = numerator_of(r).str();
    const Integer den = denominator_of(r);
    if (always_fraction || den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

namespace detail {

inline bool is_integer_literal(std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

} // namespace detail

/// Parses `num`, `num/den`, or `-num/den`. Throws parse_error on malformed text.
inline Rational parse_rational(std::string_view text, std::size_t line = 0) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                 : text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den[0] == '-' ||
        den[0] == '+')
        throw parse_error(line, "malformed rational '" + std::string(text) + "'");
    const Integer n{std::string(num[0] == '+' ? num.substr(1) : num)};
    const Integer d{std::string(den)};
    if (d == 0)
        throw parse_error(line, "zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace normality

#endif // NORMALITY_RATIONAL_HPP
