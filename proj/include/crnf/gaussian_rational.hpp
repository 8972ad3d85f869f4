#pragma once

// Gaussian rationals Q(i): the coefficient field for every series in the
// library. Arithmetic is exact; inversion refuses at zero.

#include <crnf/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace crnf {

struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(rat(r)) {}  // NOLINT

    static GaussianRational i() { return {rat(0), rat(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    /// re^2 + im^2, the square of the modulus.
    Rational norm2() const { return re * re + im * im; }

    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        const Rational n = norm2();
        return {re / n, -im / n};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }
};

inline GaussianRational conj(const GaussianRational& a) { return {a.re, -a.im}; }

inline GaussianRational pow(const GaussianRational& a, long e) {
    if (e < 0) return pow(a.inverse(), -e);
    GaussianRational r{rat(1)};
    GaussianRational base = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        if (e > 1) base *= base;
    }
    return r;
}

/// Exact square root in Q(i), when it exists there.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& c) {
    if (c.is_real()) {
        if (auto r = exact_sqrt(c.re)) return GaussianRational(*r);
        if (auto r = exact_sqrt(-c.re)) return GaussianRational(rat(0), *r);
        return std::nullopt;
    }
    // (x+iy)^2 = p+iq needs |c| rational, then x^2 = (p+|c|)/2, y = q/(2x).
    const auto modulus = exact_sqrt(c.norm2());
    if (!modulus) return std::nullopt;
    const auto x = exact_sqrt((c.re + *modulus) / 2);
    if (!x || sgn(*x) == 0) return std::nullopt;
    return GaussianRational(*x, c.im / (2 * *x));
}

/// Exact k-th root in Q(i) for the orders the matcher needs: powers of two
/// via repeated square roots, any order for real operands, and nothing else.
inline std::optional<GaussianRational> exact_root(const GaussianRational& c, unsigned long k) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (k == 1) return c;
    if (c.is_real()) {
        if (auto r = exact_root(c.re, k)) return GaussianRational(*r);
        if (k % 2) return std::nullopt;
    }
    if (k % 2 == 0) {
        if (auto s = exact_sqrt(c)) {
            if (auto r = exact_root(*s, k / 2)) return r;
            // the other square-root branch
            if (auto r = exact_root(GaussianRational() - *s, k / 2)) return r;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

inline std::string to_string(const GaussianRational& a) {
    if (a.is_real()) return to_string(a.re);
    std::string s;
    if (sgn(a.re) != 0) s += to_string(a.re);
    if (sgn(a.im) > 0 && !s.empty()) s += "+";
    if (a.im == -1)
        s += "-";
    else if (a.im != 1)
        s += to_string(a.im) + "*";
    s += "i";
    return s;
}

}  // namespace crnf
