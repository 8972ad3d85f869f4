#pragma once

// The model symmetry groups as concrete formal maps: the five-parameter
// sphere group, the three-parameter circular group (with its formal
// binomial branch), linear model symmetries, and their action on normal
// form reports.

#include <crnf/formal_map.hpp>
#include <crnf/germ.hpp>
#include <crnf/normal_form.hpp>

#include <variant>

namespace crnf {

/// Geometric series 1/(1 - e) to the working order; e must raise weighted
/// degree.
template <class C>
HoloSeries<C> geometric_inverse(const HoloSeries<C>& e) {
    const Weighting wt = e.weighting();
    const int trunc = e.trunc();
    HoloSeries<C> sum(wt, trunc), power(wt, trunc);
    sum.set({0, 0}, C(GaussianRational(rat(1))));
    power.set({0, 0}, C(GaussianRational(rat(1))));
    int lowest = trunc + 1;
    for (const auto& [k, v] : e.terms()) lowest = std::min(lowest, k.weighted_degree(wt));
    require(lowest >= 1, Errc::BadArgument, "geometric series needs a degree-raising argument");
    for (int n = 1; n * lowest <= trunc; ++n) {
        power = power * e;
        sum += power;
    }
    return sum;
}

/// (1 + x)^q as a formal binomial series with exact rational q.
template <class C>
HoloSeries<C> binomial_power(const HoloSeries<C>& x, const Rational& q) {
    const Weighting wt = x.weighting();
    const int trunc = x.trunc();
    HoloSeries<C> sum(wt, trunc), power(wt, trunc);
    sum.set({0, 0}, C(GaussianRational(rat(1))));
    power.set({0, 0}, C(GaussianRational(rat(1))));
    int lowest = trunc + 1;
    for (const auto& [k, v] : x.terms()) lowest = std::min(lowest, k.weighted_degree(wt));
    Rational coeff(1);
    for (int n = 1; n * std::max(lowest, 1) <= trunc; ++n) {
        coeff *= (q - (n - 1)) / n;
        power = power * x;
        sum += scaled(power, GaussianRational(coeff));
    }
    return sum;
}

/// The sphere automorphism (beta = delta e^{i theta} folded into one
/// complex parameter):
///   z* = beta (z + a w) / D,  w* = |beta|^2 w / D,
///   D  = 1 - 2i conj(a) z - (mu + i |a|^2) w.
template <class C>
BasicFormalMap<C> sphere_map(const C& beta, const C& a, const C& mu, const Weighting& wt,
                             int trunc) {
    require(wt.u_weight == 2, Errc::WeightMismatch, "sphere maps live at u weight 2");
    const C one(GaussianRational(rat(1)));
    const C two_i(GaussianRational(rat(0), rat(2)));
    const C i_c(GaussianRational::i());
    const C abar = conj(a);

    HoloSeries<C> e(wt, trunc);
    e.set({1, 0}, two_i * abar);
    e.set({0, 1}, mu + i_c * (a * abar));
    const HoloSeries<C> dinv = geometric_inverse(e);

    HoloSeries<C> znum(wt, trunc);
    znum.set({1, 0}, one);
    znum.set({0, 1}, a);

    HoloSeries<C> f = scaled(znum * dinv, beta);
    f.add_to({1, 0}, -one);
    HoloSeries<C> wmon(wt, trunc);
    wmon.set({0, 1}, one);
    HoloSeries<C> g = scaled(wmon * dinv, beta * conj(beta));
    g.add_to({0, 1}, -one);
    return BasicFormalMap<C>(std::move(f), std::move(g));
}

/// The circular-model map family for k = 2l:
///   z* = beta z (1 + mu w)^{-1/l},  w* = wscale w / (1 + mu w).
/// With wscale = |beta|^k these are the model automorphisms; a different
/// real wscale lets the same family carry v = a |z|^k onto v = a' |z|^k.
template <class C>
BasicFormalMap<C> circular_map(const C& beta, const C& mu, int l, const C& wscale,
                               const Weighting& wt, int trunc) {
    require(wt.u_weight == 2 * l, Errc::WeightMismatch,
            "circular maps live at u weight k = 2l");
    const C one(GaussianRational(rat(1)));
    HoloSeries<C> muw(wt, trunc);
    muw.set({0, 1}, mu);

    HoloSeries<C> zmon(wt, trunc), wmon(wt, trunc);
    zmon.set({1, 0}, one);
    wmon.set({0, 1}, one);

    HoloSeries<C> f = scaled(zmon * binomial_power(muw, rat(-1, l)), beta);
    f.add_to({1, 0}, -one);
    HoloSeries<C> g = scaled(wmon * geometric_inverse(-muw), wscale);
    g.add_to({0, 1}, -one);
    return BasicFormalMap<C>(std::move(f), std::move(g));
}

template <class C>
BasicFormalMap<C> circular_map(const C& beta, const C& mu, int l, const Weighting& wt, int trunc) {
    return circular_map(beta, mu, l, pow_coeff(beta * conj(beta), l), wt, trunc);
}

/// Exact parameters of a sphere automorphism; theta is carried as an
/// exact unit modulus Gaussian rational phase.
struct SphereAutomorphism {
    GaussianRational a;
    Rational delta = 1;
    GaussianRational theta{rat(1), rat(0)};
    Rational mu = 0;
};

struct CircularAutomorphism {
    Rational delta = 1;  // > 0
    GaussianRational theta{rat(1), rat(0)};
    Rational mu = 0;
    int l = 1;
};

inline FormalMap to_map(const SphereAutomorphism& h, int trunc) {
    require(sgn(h.delta) != 0, Errc::BadArgument, "delta must be nonzero");
    require(h.theta.norm2() == 1, Errc::BadArgument, "theta must be an exact unit phase");
    const GaussianRational beta = GaussianRational(h.delta) * h.theta;
    return sphere_map(beta, h.a, GaussianRational(h.mu), Weighting(2), trunc);
}

inline FormalMap to_map(const CircularAutomorphism& h, int trunc) {
    require(sgn(h.delta) > 0, Errc::BadArgument, "delta must be positive");
    require(h.theta.norm2() == 1, Errc::BadArgument, "theta must be an exact unit phase");
    const GaussianRational beta = GaussianRational(h.delta) * h.theta;
    return circular_map(beta, GaussianRational(h.mu), h.l, Weighting(2 * h.l), trunc);
}

inline FormalMap to_map(const LinearSymmetry& h, const Weighting& wt, int trunc) {
    require(!h.beta.is_zero() && sgn(h.delta) != 0, Errc::BadArgument, "singular linear map");
    HoloSeries<GaussianRational> f(wt, trunc), g(wt, trunc);
    f.set({1, 0}, h.beta - GaussianRational(rat(1)));
    g.set({0, 1}, GaussianRational(h.delta) - GaussianRational(rat(1)));
    return FormalMap(std::move(f), std::move(g));
}

using ModelSymmetry = std::variant<SphereAutomorphism, CircularAutomorphism, LinearSymmetry>;

/// Acts on a normal form by a symmetry of its model; the result satisfies
/// the same conditions (re-certified here) and the composed map is kept.
inline NormalFormReport apply_symmetry(const NormalFormReport& report, const ModelSymmetry& sym) {
    const Weighting wt = report.normalized.weighting();
    FormalMap map = FormalMap::identity(wt, report.order);
    if (const auto* s = std::get_if<SphereAutomorphism>(&sym)) {
        require(report.kase == NormalFormCase::ChernMoser, Errc::CaseMismatch,
                "sphere automorphisms act on Chern-Moser normal forms");
        map = to_map(*s, report.order);
    } else if (const auto* c = std::get_if<CircularAutomorphism>(&sym)) {
        require(report.kase == NormalFormCase::Circular, Errc::CaseMismatch,
                "circular automorphisms act on circular normal forms");
        require(2 * c->l == report.model.k && c->l == report.model.l, Errc::CaseMismatch,
                "essential type of the automorphism does not match the model");
        map = to_map(*c, report.order);
    } else {
        const auto& lin = std::get<LinearSymmetry>(sym);
        require(report.kase != NormalFormCase::ChernMoser, Errc::CaseMismatch,
                "linear symmetries act on finite type normal forms");
        require(preserves_model(report.model, lin), Errc::CaseMismatch,
                "linear map does not preserve the model");
        map = to_map(lin, wt, report.order);
    }
    Germ moved = transform(report.normalized, map);
    FormalMap total = compose(map, report.map);
    auto certs = certify_conditions(report.kase, moved, report.model, report.order);
    bool still_normal = true;
    for (const auto& c : certs)
        if (!c.all_zero) still_normal = false;
    if (!still_normal) {
        // Nonlinear symmetries move a nonzero normal form off the normal
        // slice: the group action on normal forms re-normalizes behind
        // the transform (only the jets of the transition map equal the
        // group element).
        NormalFormReport renorm =
            report.kase == NormalFormCase::ChernMoser
                ? chern_moser_normalize(moved, report.order)
                : (report.kase == NormalFormCase::Circular
                       ? circular_normalize(moved, report.model, report.order)
                       : generic_normalize(moved, report.model, report.order));
        moved = renorm.normalized;
        total = compose(renorm.map, total);
        certs = std::move(renorm.conditions);
        for (const auto& c : certs)
            require(c.all_zero, Errc::SingularStage,
                    "symmetry action failed to re-normalize");
    }
    return {std::move(moved), std::move(total), std::move(certs), report.kase, report.model,
            report.order};
}

}  // namespace crnf
