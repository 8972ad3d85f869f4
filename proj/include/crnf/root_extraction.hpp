#pragma once

// Exact k-th roots in Q(i) for arbitrary k: a high-precision complex
// Newton iteration guesses the root, continued fractions reconstruct a
// rational candidate, and an exact power check accepts or rejects it.
// Only exactly verified values ever leave this header.

#include <crnf/gaussian_rational.hpp>

#include <complex>
#include <optional>

namespace crnf {

namespace detail_roots {

struct ComplexFloat {
    mpf_class re, im;

    ComplexFloat(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexFloat inverse() const {
        mpf_class n = re * re + im * im;
        return {re / n, -im / n};
    }
};

/// Nearest rational to x with denominator below the bound, by continued
/// fractions.
inline Rational reconstruct(const mpf_class& x, const Integer& max_den) {
    const long prec = 512;
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpf_class rest(x, prec);
    for (int step = 0; step < 128; ++step) {
        mpf_class fl(floor(rest), prec);
        Integer a;
        mpz_set_f(a.get_mpz_t(), fl.get_mpf_t());
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        mpf_class frac(rest - fl, prec);
        if (frac < mpf_class(1e-60)) break;
        rest = 1 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    r.canonicalize();
    return r;
}

}  // namespace detail_roots

/// Exact k-th root of v in Q(i), when one exists there. Any k.
inline std::optional<GaussianRational> gaussian_root(const GaussianRational& v, unsigned long k) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (k == 1) return v;
    if (v.is_zero()) return GaussianRational();
    if (auto fast = exact_root(v, k)) return fast;

    // scale v by 2^(-k t) so the modulus is around one, seed a double
    // Newton start, refine at 512 bits
    using detail_roots::ComplexFloat;
    const long prec = 512;
    mpf_class re(v.re, prec), im(v.im, prec);
    long t = 0;
    {
        mpf_class n = re * re + im * im;
        while (n > 4) {
            re /= mpf_class(1) << k;
            im /= mpf_class(1) << k;
            n = re * re + im * im;
            ++t;
        }
        while (n < mpf_class(1, prec) / 4) {
            re *= mpf_class(1) << k;
            im *= mpf_class(1) << k;
            n = re * re + im * im;
            --t;
        }
    }
    // Newton from every branch seed: the rational root, if any, is one of
    // the k branches, and only an exact power-back check accepts it.
    const std::complex<double> principal =
        std::pow(std::complex<double>(re.get_d(), im.get_d()), 1.0 / static_cast<double>(k));
    const ComplexFloat target(re, im);
    const Integer max_den = Integer(1) << 96;
    for (unsigned long branch = 0; branch < k; ++branch) {
        const std::complex<double> seed =
            principal * std::polar(1.0, 2.0 * 3.14159265358979323846 *
                                            static_cast<double>(branch) /
                                            static_cast<double>(k));
        ComplexFloat x(mpf_class(seed.real(), prec), mpf_class(seed.imag(), prec));
        for (int it = 0; it < 64; ++it) {
            ComplexFloat p = x;
            for (unsigned long e = 1; e + 1 < k; ++e) p = p * x;  // x^(k-1)
            const ComplexFloat corr = target * p.inverse();
            x = ComplexFloat{(x.re * static_cast<long>(k - 1) + corr.re) / static_cast<long>(k),
                             (x.im * static_cast<long>(k - 1) + corr.im) / static_cast<long>(k)};
        }
        mpf_class root_re(x.re, prec), root_im(x.im, prec);
        if (t >= 0) {
            root_re <<= static_cast<unsigned long>(t);
            root_im <<= static_cast<unsigned long>(t);
        } else {
            root_re >>= static_cast<unsigned long>(-t);
            root_im >>= static_cast<unsigned long>(-t);
        }
        const GaussianRational guess{detail_roots::reconstruct(root_re, max_den),
                                     detail_roots::reconstruct(root_im, max_den)};
        if (pow(guess, static_cast<long>(k)) == v) return guess;
    }
    return std::nullopt;
}

}  // namespace crnf
