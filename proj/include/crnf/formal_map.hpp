#pragma once

// Formal biholomorphic transformations z* = z + f(z,w), w* = w + g(z,w)
// with invertible linear part, plus composition and exact inversion at a
// fixed truncation order.

#include <crnf/holo_series.hpp>
#include <crnf/surface_ops.hpp>

#include <utility>

namespace crnf {

template <class C>
class BasicFormalMap {
  public:
    BasicFormalMap(HoloSeries<C> f, HoloSeries<C> g) : f_(std::move(f)), g_(std::move(g)) {
        require_same(f_.weighting(), g_.weighting());
        require(f_.coeff(0, 0).is_zero() && g_.coeff(0, 0).is_zero(), Errc::BadArgument,
                "map components must vanish at the origin");
        require(!linear_determinant().is_zero(), Errc::NonInvertibleLinearPart,
                "map has singular linear part");
    }

    static BasicFormalMap identity(Weighting wt, int trunc) {
        return BasicFormalMap(HoloSeries<C>(wt, trunc), HoloSeries<C>(wt, trunc));
    }

    const HoloSeries<C>& f() const { return f_; }
    const HoloSeries<C>& g() const { return g_; }
    const Weighting& weighting() const { return f_.weighting(); }
    int trunc() const { return std::min(f_.trunc(), g_.trunc()); }

    bool is_identity() const { return f_.is_zero() && g_.is_zero(); }

    // coefficients of the linear part: z* = (1+f10) z + f01 w, w* = g10 z + (1+g01) w
    C f10() const { return f_.coeff(1, 0); }
    C f01() const { return f_.coeff(0, 1); }
    C g10() const { return g_.coeff(1, 0); }
    C g01() const { return g_.coeff(0, 1); }

    C linear_determinant() const {
        const C one(GaussianRational(rat(1)));
        return (one + f10()) * (one + g01()) - f01() * g10();
    }

    /// The induced map preserves graphs v = Phi(z, zbar, u) over the same
    /// tangent plane exactly when g has no z-linear term and its w-linear
    /// coefficient is real.
    bool preserves_graph_form() const {
        return g10().is_zero() && conj(g01()) == g01();
    }

  private:
    HoloSeries<C> f_, g_;
};

using FormalMap = BasicFormalMap<GaussianRational>;

template <class C>
BasicFormalMap<C> reweight(const BasicFormalMap<C>& map, const Weighting& to) {
    return BasicFormalMap<C>(reweight(map.f(), to), reweight(map.g(), to));
}

/// after ∘ first: apply `first`, then `after`.
template <class C>
BasicFormalMap<C> compose(const BasicFormalMap<C>& after, const BasicFormalMap<C>& first) {
    require_same(after.weighting(), first.weighting());
    const int trunc = std::min(after.trunc(), first.trunc());
    const Weighting wt = after.weighting();
    HoloSeries<C> znew(wt, trunc), wnew(wt, trunc);
    znew.set({1, 0}, C(GaussianRational(rat(1))));
    wnew.set({0, 1}, C(GaussianRational(rat(1))));
    znew += first.f().truncated(trunc);
    wnew += first.g().truncated(trunc);
    HoloSeries<C> f = first.f().truncated(trunc) + compose_holo(after.f().truncated(trunc), znew, wnew);
    HoloSeries<C> g = first.g().truncated(trunc) + compose_holo(after.g().truncated(trunc), znew, wnew);
    return BasicFormalMap<C>(std::move(f), std::move(g));
}

/// Exact inverse at the map's truncation order.
template <class C>
BasicFormalMap<C> invert(const BasicFormalMap<C>& map) {
    const Weighting wt = map.weighting();
    const int trunc = map.trunc();
    const C one(GaussianRational(rat(1)));

    // linear part L and its inverse
    const C a = one + map.f10(), b = map.f01(), c = map.g10(), d = one + map.g01();
    const C det_inv = map.linear_determinant().inverse();
    const C ia = d * det_inv, ib = -(b * det_inv), ic = -(c * det_inv), id = a * det_inv;

    auto linear_map = [&](C m00, C m01, C m10, C m11) {
        HoloSeries<C> fz(wt, trunc), fw(wt, trunc);
        fz.set({1, 0}, m00 - one);
        fz.set({0, 1}, m01);
        fw.set({1, 0}, m10);
        fw.set({0, 1}, m11 - one);
        return BasicFormalMap<C>(std::move(fz), std::move(fw));
    };
    const BasicFormalMap<C> linv = linear_map(ia, ib, ic, id);

    // map = L ∘ (id + n) with n free of linear terms: n = L^{-1} ∘ map - id
    const BasicFormalMap<C> n = compose(linv, map);
    // (id + n)^{-1} = id + ñ with ñ = -n ∘ (id + ñ): one degree per pass
    HoloSeries<C> tf(wt, trunc), tg(wt, trunc);
    for (int pass = 0; pass <= trunc; ++pass) {
        HoloSeries<C> znew(wt, trunc), wnew(wt, trunc);
        znew.set({1, 0}, one);
        wnew.set({0, 1}, one);
        znew += tf;
        wnew += tg;
        HoloSeries<C> nf = -compose_holo(n.f(), znew, wnew);
        HoloSeries<C> ng = -compose_holo(n.g(), znew, wnew);
        if (nf == tf && ng == tg) break;
        tf = std::move(nf);
        tg = std::move(ng);
    }
    return compose(BasicFormalMap<C>(std::move(tf), std::move(tg)), linv);
}

}  // namespace crnf
