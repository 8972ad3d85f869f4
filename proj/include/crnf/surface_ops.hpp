#pragma once

// Substitution machinery tying the holomorphic and surface rings together:
// evaluation of holomorphic series on a hypersurface (w -> u + i*Phi),
// general three-variable substitution, and the order-by-order implicit
// solve that powers the change-of-variables transform.

#include <crnf/holo_series.hpp>
#include <crnf/series3.hpp>

#include <algorithm>
#include <vector>

namespace crnf {

template <class C>
C pow_coeff(const C& base, int e) {
    C r(GaussianRational(rat(1)));
    for (int t = 0; t < e; ++t) r *= base;
    return r;
}

/// Power cache for repeated substitution with the same inner series.
template <class C>
class PowerCache {
  public:
    explicit PowerCache(Series3<C> base) : base_(std::move(base)) {
        Series3<C> one(base_.weighting(), base_.trunc());
        one.set({0, 0, 0}, C(GaussianRational(rat(1))));
        pow_.push_back(std::move(one));
    }
    const Series3<C>& operator[](int e) {
        while (static_cast<int>(pow_.size()) <= e) pow_.push_back(pow_.back() * base_);
        return pow_[static_cast<size_t>(e)];
    }

  private:
    Series3<C> base_;
    std::vector<Series3<C>> pow_;
};

/// p(Z, Zbar, U) with explicit inner series for each variable.
template <class C>
Series3<C> compose3(const Series3<C>& p, PowerCache<C>& Z, PowerCache<C>& Zbar, PowerCache<C>& U,
                    const Weighting& wt, int trunc) {
    Series3<C> r(wt, trunc);
    for (const auto& [k, v] : p.terms()) {
        if (k.weighted_degree(wt) > trunc) continue;
        r += scaled(Z[k.i] * Zbar[k.j] * U[k.m], v);
    }
    return r;
}

/// h(z, u + i*Phi) expanded as a series in (z, zbar, u). Phi must have no
/// constant or weight-one terms, so each substituted factor raises (or at
/// least preserves) weighted degree and the expansion terminates.
template <class C>
Series3<C> compose_on_surface(const HoloSeries<C>& h, const Series3<C>& phi) {
    require_same(h.weighting(), phi.weighting());
    for (const auto& [k, v] : phi.terms())
        require(k.weighted_degree(phi.weighting()) >= 2, Errc::IllFormedSurface,
                "surface series has constant or weight-one terms");
    const int trunc = std::min(h.trunc(), phi.trunc());
    const Weighting wt = phi.weighting();

    Series3<C> w_inner(wt, trunc);
    w_inner.set({0, 0, 1}, C(GaussianRational(rat(1))));
    w_inner += scaled(phi.truncated(trunc), GaussianRational(rat(0), rat(1)));

    PowerCache<C> W(w_inner);
    Series3<C> r(wt, trunc);
    for (const auto& [k, v] : h.terms()) {
        if (k.i + k.j * wt.u_weight > trunc) continue;
        const Series3<C>& term = W[k.j];
        Series3<C> shifted(wt, trunc);
        for (const auto& [tk, tv] : term.terms()) shifted.add_to({tk.i + k.i, tk.j, tk.m}, tv);
        r += scaled(shifted, v);
    }
    return r;
}

/// Solves Phi*(Z, conj Z, U) = rhs for Phi*, order by order in the weighted
/// grading. The inner map must fix the grading structure: Z has weight-one
/// part lambda*z, U has weight-u_weight part c*u + q(z, zbar), everything
/// else strictly higher, lambda and c invertible.
template <class C>
Series3<C> implicit_solve(const Series3<C>& Z, const Series3<C>& U, const Series3<C>& rhs) {
    require_same(Z.weighting(), U.weighting());
    require_same(Z.weighting(), rhs.weighting());
    const Weighting wt = Z.weighting();
    const int uw = wt.u_weight;
    const int trunc = std::min({Z.trunc(), U.trunc(), rhs.trunc()});

    require(Z.min_degree() >= 1, Errc::NonInvertibleLinearPart, "inner z map has a constant term");
    require(Z.coeff(0, 1, 0).is_zero(), Errc::NonInvertibleLinearPart,
            "inner z map has a zbar term at weight one");
    require(U.min_degree() >= uw, Errc::NonInvertibleLinearPart,
            "inner u map has terms below the u weight");
    const C lambda = Z.coeff(1, 0, 0);
    const C cu = U.coeff(0, 0, 1);
    C lambda_inv, cu_inv;
    try {
        lambda_inv = lambda.inverse();
        cu_inv = cu.inverse();
    } catch (const std::exception&) {
        raise(Errc::NonInvertibleLinearPart, "inner map linear part is not invertible");
    }
    const C lambda_bar_inv = conj(lambda_inv);

    // Inverse of the weight-preserving part: z -> z/lambda, u -> (u - q(z/lambda, ..))/c.
    Series3<C> u_inv(wt, trunc);
    u_inv.set({0, 0, 1}, cu_inv);
    for (const auto& [k, v] : U.terms()) {
        if (k.m != 0 || k.weighted_degree(wt) != uw) continue;
        u_inv.add_to(k, -(v * pow_coeff(lambda_inv, k.i) * pow_coeff(lambda_bar_inv, k.j) * cu_inv));
    }
    PowerCache<C> u_inv_pow(u_inv);

    PowerCache<C> Zp(Z.truncated(trunc));
    PowerCache<C> Zbarp(conj_series(Z.truncated(trunc)));
    PowerCache<C> Up(U.truncated(trunc));

    Series3<C> solution(wt, trunc);
    Series3<C> evaluated(wt, trunc);  // solution composed with the inner map
    for (int mu = 0; mu <= trunc; ++mu) {
        const Series3<C> defect = (rhs - evaluated).slice(mu);
        if (defect.is_zero()) continue;
        Series3<C> piece(wt, trunc);
        for (const auto& [k, v] : defect.terms()) {
            Series3<C> t = scaled(u_inv_pow[k.m],
                                  v * pow_coeff(lambda_inv, k.i) * pow_coeff(lambda_bar_inv, k.j));
            Series3<C> shifted(wt, trunc);
            for (const auto& [tk, tv] : t.terms()) shifted.add_to({tk.i + k.i, tk.j + k.j, tk.m}, tv);
            piece += shifted;
        }
        solution += piece;
        evaluated += compose3(piece, Zp, Zbarp, Up, wt, trunc);
    }
    require((rhs - evaluated).is_zero(), Errc::SingularStage,
            "implicit solve left a nonzero residual");
    return solution;
}

}  // namespace crnf
