#pragma once

// Exact rational scalars, backed by GMP. Nothing in this library ever
// rounds: every operation either returns an exact value or refuses.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace crnf {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p", "-p" or "p/q" with nonzero q; lowest terms on return.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    Integer num, den = 1;
    try {
        num = Integer(slash == std::string::npos ? text : text.substr(0, slash));
        if (slash != std::string::npos) den = Integer(text.substr(slash + 1));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal '" + text + "'");
    }
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact k-th root of a nonnegative integer, if it is a perfect power.
inline std::optional<Integer> exact_integer_root(const Integer& n, unsigned long k) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (sgn(n) < 0) return std::nullopt;
    Integer r;
    const int is_exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!is_exact) return std::nullopt;
    return r;
}

/// Exact k-th root within the rationals. Even k demands q >= 0; odd k
/// carries the sign through. Returns nothing when the root is irrational.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
    if (k == 1) return q;
    const bool negative = sgn(q) < 0;
    if (negative && k % 2 == 0) return std::nullopt;
    const Integer num = negative ? Integer(-q.get_num()) : q.get_num();
    auto rn = exact_integer_root(num, k);
    auto rd = exact_integer_root(q.get_den(), k);
    if (!rn || !rd) return std::nullopt;
    Rational r(negative ? Integer(-*rn) : *rn, *rd);
    r.canonicalize();
    return r;
}

inline std::optional<Rational> exact_sqrt(const Rational& q) { return exact_root(q, 2); }

}  // namespace crnf
