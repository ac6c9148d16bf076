#ifndef TORIC_ARITH_HPP
#define TORIC_ARITH_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "toric/error.hpp"

namespace toric {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// base^exp for a signed exponent; negative exponents invert the base.
/// The caller guarantees base != 0 when exp < 0.
template <typename T>
T ipow(const T& base, std::int64_t exp) {
    std::uint64_t e = exp < 0 ? static_cast<std::uint64_t>(-(exp + 1)) + 1u : static_cast<std::uint64_t>(exp);
    T result(1);
    T b = base;
    while (e != 0) {
        if (e & 1u) result *= b;
        e >>= 1u;
        if (e != 0) b *= b;
    }
    if (exp < 0) result = T(1) / result;
    return result;
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Checked narrowing of an arbitrary-precision integer to int64.
inline std::int64_t to_int64(const Integer& z) {
    if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::InvalidInput, "integer " + z.str() + " does not fit in 64 bits");
    return z.convert_to<std::int64_t>();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw Error(ErrorKind::InvalidInput, "empty integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::InvalidInput, "malformed integer '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
}

/// Accepts "p", "p/q" and plain decimals such as "-0.25".
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string whole(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty()) throw Error(ErrorKind::InvalidInput, "malformed decimal '" + std::string(text) + "'");
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Integer digits = parse_integer(frac);
        Integer w = parse_integer(whole);
        Integer num = boost::multiprecision::abs(w) * scale + digits;
        return Rational(negative ? Integer(-num) : num, scale);
    }
    return Rational(parse_integer(text));
}

inline Integer gcd_of(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return boost::multiprecision::abs(g);
}

/// Divide out the content; sign untouched. Zero vectors are returned as-is.
inline IntVector make_primitive(IntVector v) {
    Integer g = gcd_of(v);
    if (g > 1) {
        for (auto& x : v) x /= g;
    }
    return v;
}

/// Scale a rational vector to the primitive integer vector on the same ray.
inline IntVector clear_denominators(const RatVector& v) {
    Integer lcm = 1;
    for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator_of(q));
    IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(numerator_of(q) * (lcm / denominator_of(q)));
    return make_primitive(std::move(out));
}

} // namespace toric

#endif // TORIC_ARITH_HPP
