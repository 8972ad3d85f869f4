#pragma once

// Sparse polynomials over Q(i) in a handful of real parameters. These are
// the coefficients used when a series transform is carried out with the
// symmetry-group parameters left symbolic; the orbit matcher then solves
// for the parameters from the resulting coefficient equations.

#include <crnf/gaussian_rational.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace crnf {

inline constexpr int kMaxParams = 4;

struct ParamMono {
    std::array<std::uint8_t, kMaxParams> e{};

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    friend auto operator<=>(const ParamMono&, const ParamMono&) = default;
};

class ParamPoly {
  public:
    using Map = std::map<ParamMono, GaussianRational>;

    ParamPoly() = default;
    ParamPoly(GaussianRational c) {  // NOLINT: implicit by design
        if (!c.is_zero()) t_[ParamMono{}] = std::move(c);
    }

    static ParamPoly variable(int idx) {
        ParamPoly p;
        ParamMono m;
        m.e[static_cast<size_t>(idx)] = 1;
        p.t_[m] = GaussianRational(rat(1));
        return p;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first == ParamMono{});
    }
    GaussianRational constant_value() const {
        auto it = t_.find(ParamMono{});
        return it == t_.end() ? GaussianRational() : it->second;
    }
    int degree() const {
        int d = 0;
        for (const auto& [k, v] : t_) d = std::max(d, k.degree());
        return d;
    }

    void add_to(const ParamMono& k, const GaussianRational& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = t_.emplace(k, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r = a;
        for (const auto& [k, v] : b.t_) r.add_to(k, v);
        return r;
    }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }
    ParamPoly operator-() const {
        ParamPoly r;
        for (const auto& [k, v] : t_) r.t_[k] = -v;
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r;
        for (const auto& [ka, va] : a.t_)
            for (const auto& [kb, vb] : b.t_) {
                ParamMono k = ka;
                for (size_t t = 0; t < kMaxParams; ++t)
                    k.e[t] = static_cast<std::uint8_t>(k.e[t] + kb.e[t]);
                r.add_to(k, va * vb);
            }
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& a, const GaussianRational& c) {
        ParamPoly r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : a.t_) r.t_[k] = v * c;
        return r;
    }
    ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.t_ == b.t_; }

    /// Multiplicative inverse, defined for nonzero constants only (the
    /// series code divides by graded-linear coefficients, never by a
    /// genuine polynomial).
    ParamPoly inverse() const {
        if (!is_constant() || is_zero()) throw std::domain_error("inverse of non-unit polynomial");
        return ParamPoly(constant_value().inverse());
    }

    ParamPoly substituted(int var, const Rational& value) const {
        ParamPoly r;
        for (const auto& [k, v] : t_) {
            GaussianRational c = v;
            ParamMono nk = k;
            for (int t = 0; t < k.e[static_cast<size_t>(var)]; ++t) c *= GaussianRational(value);
            nk.e[static_cast<size_t>(var)] = 0;
            r.add_to(nk, c);
        }
        return r;
    }

    /// If total degree <= 1: the constant and the linear coefficients.
    struct Affine {
        GaussianRational constant;
        std::array<GaussianRational, kMaxParams> linear;
    };
    std::optional<Affine> affine() const {
        Affine a;
        for (const auto& [k, v] : t_) {
            const int d = k.degree();
            if (d > 1) return std::nullopt;
            if (d == 0) {
                a.constant = v;
                continue;
            }
            for (size_t t = 0; t < kMaxParams; ++t)
                if (k.e[t] == 1) a.linear[t] = v;
        }
        return a;
    }

  private:
    Map t_;
};

/// Conjugation treats every parameter as real: only coefficients flip.
inline ParamPoly conj(const ParamPoly& a) {
    ParamPoly r;
    for (const auto& [k, v] : a.terms()) r.add_to(k, conj(v));
    return r;
}

/// Coefficient-wise real and imaginary parts (parameters are real).
inline ParamPoly real_coeff_part(const ParamPoly& a) {
    ParamPoly r;
    for (const auto& [k, v] : a.terms()) r.add_to(k, GaussianRational(v.re));
    return r;
}

inline ParamPoly imag_coeff_part(const ParamPoly& a) {
    ParamPoly r;
    for (const auto& [k, v] : a.terms()) r.add_to(k, GaussianRational(v.im));
    return r;
}

inline ParamPoly substitute_all(const ParamPoly& a, const std::vector<Rational>& values) {
    ParamPoly r = a;
    for (size_t v = 0; v < values.size(); ++v) r = r.substituted(static_cast<int>(v), values[v]);
    return r;
}

}  // namespace crnf
