#pragma once

// Truncated formal power series in z, zbar, u with exact coefficients.
//
// A series carries a weighting and a trusted weighted order `trunc`:
// every monomial of weighted degree <= trunc is stored exactly (absent
// key means exactly zero), and nothing beyond trunc is ever kept. A
// series is hermitian-real when coeff(i,j,m) == conj(coeff(j,i,m));
// intermediates may violate that, hypersurface-facing code revalidates.

#include <crnf/errors.hpp>
#include <crnf/gaussian_rational.hpp>
#include <crnf/weighting.hpp>

#include <map>
#include <utility>
#include <vector>

namespace crnf {

template <class C>
class Series3 {
  public:
    using Map = std::map<Mono3, C>;

    Series3() = default;
    Series3(Weighting w, int trunc) : wt_(w), trunc_(trunc) {
        require(trunc >= 0, Errc::BadArgument, "negative truncation order");
    }

    static Series3 monomial(Weighting w, int trunc, Mono3 key, C value) {
        Series3 s(w, trunc);
        s.set(key, std::move(value));
        return s;
    }

    const Weighting& weighting() const { return wt_; }
    int trunc() const { return trunc_; }
    const Map& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    C coeff(Mono3 key) const {
        auto it = c_.find(key);
        return it == c_.end() ? C() : it->second;
    }
    C coeff(int i, int j, int m) const { return coeff({i, j, m}); }

    void set(Mono3 key, C value) {
        require(key.i >= 0 && key.j >= 0 && key.m >= 0, Errc::BadArgument, "negative exponent");
        if (key.weighted_degree(wt_) > trunc_ || value.is_zero())
            c_.erase(key);
        else
            c_[key] = std::move(value);
    }

    void add_to(Mono3 key, const C& value) {
        if (key.weighted_degree(wt_) > trunc_ || value.is_zero()) return;
        auto [it, fresh] = c_.emplace(key, value);
        if (!fresh) {
            it->second += value;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    /// Lowest weighted degree present, or trunc+1 when zero.
    int min_degree() const {
        int best = trunc_ + 1;
        for (const auto& [k, v] : c_) best = std::min(best, k.weighted_degree(wt_));
        return best;
    }

    Series3 truncated(int order) const {
        Series3 r(wt_, std::min(order, trunc_));
        for (const auto& [k, v] : c_)
            if (k.weighted_degree(wt_) <= r.trunc_) r.c_[k] = v;
        return r;
    }

    /// The weighted-homogeneous part of the given degree.
    Series3 slice(int degree) const {
        Series3 r(wt_, trunc_);
        for (const auto& [k, v] : c_)
            if (k.weighted_degree(wt_) == degree) r.c_[k] = v;
        return r;
    }

    friend Series3 operator+(const Series3& a, const Series3& b) {
        require_same(a.wt_, b.wt_);
        Series3 r = a.truncated(std::min(a.trunc_, b.trunc_));
        for (const auto& [k, v] : b.c_) r.add_to(k, v);
        return r;
    }
    friend Series3 operator-(const Series3& a, const Series3& b) { return a + (-b); }
    Series3 operator-() const {
        Series3 r(wt_, trunc_);
        for (const auto& [k, v] : c_) r.c_[k] = -v;
        return r;
    }

    friend Series3 operator*(const Series3& a, const Series3& b) {
        require_same(a.wt_, b.wt_);
        Series3 r(a.wt_, std::min(a.trunc_, b.trunc_));
        for (const auto& [ka, va] : a.c_) {
            const int da = ka.weighted_degree(a.wt_);
            if (da > r.trunc_) continue;
            for (const auto& [kb, vb] : b.c_) {
                if (da + kb.weighted_degree(b.wt_) > r.trunc_) continue;
                r.add_to({ka.i + kb.i, ka.j + kb.j, ka.m + kb.m}, va * vb);
            }
        }
        return r;
    }

    Series3& operator+=(const Series3& o) { return *this = *this + o; }
    Series3& operator-=(const Series3& o) { return *this = *this - o; }
    Series3& operator*=(const Series3& o) { return *this = *this * o; }

    friend bool operator==(const Series3& a, const Series3& b) {
        return a.wt_ == b.wt_ && a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

  private:
    Weighting wt_{};
    int trunc_ = 0;
    Map c_;
};

template <class C, class S>
Series3<C> scaled(const Series3<C>& a, const S& factor) {
    Series3<C> r(a.weighting(), a.trunc());
    for (const auto& [k, v] : a.terms()) r.set(k, v * factor);
    return r;
}

/// Coefficientwise complex conjugate of the series value: swaps z and zbar
/// and conjugates coefficients (u is a real variable).
template <class C>
Series3<C> conj_series(const Series3<C>& a) {
    Series3<C> r(a.weighting(), a.trunc());
    for (const auto& [k, v] : a.terms()) r.set(k.mirrored(), conj(v));
    return r;
}

template <class C>
Series3<C> real_part(const Series3<C>& a) {
    return scaled(a + conj_series(a), GaussianRational(rat(1, 2)));
}

template <class C>
Series3<C> imag_part(const Series3<C>& a) {
    return scaled(a - conj_series(a), GaussianRational(rat(0), rat(-1, 2)));
}

template <class C>
bool is_hermitian(const Series3<C>& a) {
    for (const auto& [k, v] : a.terms())
        if (!(v == conj(a.coeff(k.mirrored())))) return false;
    return true;
}

/// d/dz; the result is trusted one weighted order lower.
template <class C>
Series3<C> derivative_z(const Series3<C>& a) {
    Series3<C> r(a.weighting(), std::max(a.trunc() - 1, 0));
    for (const auto& [k, v] : a.terms())
        if (k.i > 0) r.add_to({k.i - 1, k.j, k.m}, v * GaussianRational(rat(k.i)));
    return r;
}

template <class C>
Series3<C> derivative_zbar(const Series3<C>& a) {
    Series3<C> r(a.weighting(), std::max(a.trunc() - 1, 0));
    for (const auto& [k, v] : a.terms())
        if (k.j > 0) r.add_to({k.i, k.j - 1, k.m}, v * GaussianRational(rat(k.j)));
    return r;
}

template <class C>
Series3<C> derivative_u(const Series3<C>& a) {
    Series3<C> r(a.weighting(), std::max(a.trunc() - a.weighting().u_weight, 0));
    for (const auto& [k, v] : a.terms())
        if (k.m > 0) r.add_to({k.i, k.j, k.m - 1}, v * GaussianRational(rat(k.m)));
    return r;
}

/// Largest trusted order after changing the u weight: every monomial the
/// new truncation admits must have been trusted under the old one.
inline int reweighted_trunc(const Weighting& from, int trunc, const Weighting& to) {
    for (int order = trunc; order >= 0; --order) {
        bool ok = true;
        for (int m = 0; m * to.u_weight <= order && ok; ++m)
            ok = (order - m * to.u_weight) + m * from.u_weight <= trunc;
        if (ok) return order;
    }
    return 0;
}

template <class C>
Series3<C> reweight(const Series3<C>& a, const Weighting& to) {
    if (a.weighting() == to) return a;
    Series3<C> r(to, reweighted_trunc(a.weighting(), a.trunc(), to));
    for (const auto& [k, v] : a.terms()) r.set(k, v);
    return r;
}

/// Univariate slice F_ij(u) = sum_m coeff(i,j,m) u^m, reported as the list
/// of u-coefficients; trusted for m*u_weight <= trunc - i - j.
template <class C>
std::vector<C> slice_in_u(const Series3<C>& a, int i, int j) {
    const int uw = a.weighting().u_weight;
    const int span = a.trunc() - i - j;
    std::vector<C> out;
    if (span < 0) return out;
    out.resize(static_cast<size_t>(span / uw) + 1);
    for (const auto& [k, v] : a.terms())
        if (k.i == i && k.j == j) out[static_cast<size_t>(k.m)] = v;
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

}  // namespace crnf
