#pragma once

// Truncated holomorphic formal series in (z, w). Under the weighted
// grading w carries the u weight, so truncation means i + j*u_weight <=
// trunc for every stored key.

#include <crnf/errors.hpp>
#include <crnf/gaussian_rational.hpp>
#include <crnf/weighting.hpp>

#include <map>
#include <utility>
#include <vector>

namespace crnf {

template <class C>
class HoloSeries {
  public:
    using Map = std::map<Mono2, C>;

    HoloSeries() = default;
    HoloSeries(Weighting w, int trunc) : wt_(w), trunc_(trunc) {
        require(trunc >= 0, Errc::BadArgument, "negative truncation order");
    }

    static HoloSeries monomial(Weighting w, int trunc, Mono2 key, C value) {
        HoloSeries s(w, trunc);
        s.set(key, std::move(value));
        return s;
    }

    const Weighting& weighting() const { return wt_; }
    int trunc() const { return trunc_; }
    const Map& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    C coeff(Mono2 key) const {
        auto it = c_.find(key);
        return it == c_.end() ? C() : it->second;
    }
    C coeff(int i, int j) const { return coeff({i, j}); }

    void set(Mono2 key, C value) {
        require(key.i >= 0 && key.j >= 0, Errc::BadArgument, "negative exponent");
        if (key.weighted_degree(wt_) > trunc_ || value.is_zero())
            c_.erase(key);
        else
            c_[key] = std::move(value);
    }

    void add_to(Mono2 key, const C& value) {
        if (key.weighted_degree(wt_) > trunc_ || value.is_zero()) return;
        auto [it, fresh] = c_.emplace(key, value);
        if (!fresh) {
            it->second += value;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    HoloSeries truncated(int order) const {
        HoloSeries r(wt_, std::min(order, trunc_));
        for (const auto& [k, v] : c_)
            if (k.weighted_degree(wt_) <= r.trunc_) r.c_[k] = v;
        return r;
    }

    friend HoloSeries operator+(const HoloSeries& a, const HoloSeries& b) {
        require_same(a.wt_, b.wt_);
        HoloSeries r = a.truncated(std::min(a.trunc_, b.trunc_));
        for (const auto& [k, v] : b.c_) r.add_to(k, v);
        return r;
    }
    friend HoloSeries operator-(const HoloSeries& a, const HoloSeries& b) { return a + (-b); }
    HoloSeries operator-() const {
        HoloSeries r(wt_, trunc_);
        for (const auto& [k, v] : c_) r.c_[k] = -v;
        return r;
    }

    friend HoloSeries operator*(const HoloSeries& a, const HoloSeries& b) {
        require_same(a.wt_, b.wt_);
        HoloSeries r(a.wt_, std::min(a.trunc_, b.trunc_));
        for (const auto& [ka, va] : a.c_) {
            const int da = ka.weighted_degree(a.wt_);
            if (da > r.trunc_) continue;
            for (const auto& [kb, vb] : b.c_) {
                if (da + kb.weighted_degree(b.wt_) > r.trunc_) continue;
                r.add_to({ka.i + kb.i, ka.j + kb.j}, va * vb);
            }
        }
        return r;
    }

    HoloSeries& operator+=(const HoloSeries& o) { return *this = *this + o; }
    HoloSeries& operator-=(const HoloSeries& o) { return *this = *this - o; }

    friend bool operator==(const HoloSeries& a, const HoloSeries& b) {
        return a.wt_ == b.wt_ && a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

  private:
    Weighting wt_{};
    int trunc_ = 0;
    Map c_;
};

template <class C, class S>
HoloSeries<C> scaled(const HoloSeries<C>& a, const S& factor) {
    HoloSeries<C> r(a.weighting(), a.trunc());
    for (const auto& [k, v] : a.terms()) r.set(k, v * factor);
    return r;
}

inline int reweighted_holo_trunc(const Weighting& from, int trunc, const Weighting& to) {
    for (int order = trunc; order >= 0; --order) {
        bool ok = true;
        for (int j = 0; j * to.u_weight <= order && ok; ++j)
            ok = (order - j * to.u_weight) + j * from.u_weight <= trunc;
        if (ok) return order;
    }
    return 0;
}

template <class C>
HoloSeries<C> reweight(const HoloSeries<C>& a, const Weighting& to) {
    if (a.weighting() == to) return a;
    HoloSeries<C> r(to, reweighted_holo_trunc(a.weighting(), a.trunc(), to));
    for (const auto& [k, v] : a.terms()) r.set(k, v);
    return r;
}

/// h(Z, W) for holomorphic series Z, W (in the same ring); the caller is
/// responsible for Z, W having no constant term beyond what it intends.
template <class C>
HoloSeries<C> compose_holo(const HoloSeries<C>& h, const HoloSeries<C>& Z, const HoloSeries<C>& W) {
    require_same(h.weighting(), Z.weighting());
    require_same(h.weighting(), W.weighting());
    const int trunc = std::min({h.trunc(), Z.trunc(), W.trunc()});
    HoloSeries<C> r(h.weighting(), trunc);
    std::vector<HoloSeries<C>> powz, poww;
    HoloSeries<C> one(h.weighting(), trunc);
    one.set({0, 0}, C(GaussianRational(rat(1))));
    powz.push_back(one);
    poww.push_back(one);
    auto power = [&](std::vector<HoloSeries<C>>& cache, const HoloSeries<C>& base, int e) {
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
        return cache[static_cast<size_t>(e)];
    };
    const HoloSeries<C> zt = Z.truncated(trunc);
    const HoloSeries<C> wt = W.truncated(trunc);
    for (const auto& [k, v] : h.terms()) {
        if (k.weighted_degree(h.weighting()) > trunc) continue;
        HoloSeries<C> term = scaled(power(powz, zt, k.i) * power(poww, wt, k.j), v);
        r += term;
    }
    return r;
}

}  // namespace crnf
