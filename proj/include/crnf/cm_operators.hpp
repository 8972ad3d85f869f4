#pragma once

// The linearization of the normalization equations at a model surface:
// the Chern-Moser operator for the sphere and its finite-type
// generalization, plus the scalar product pairing degree-(k-1) slices
// with P_z.

#include <crnf/germ.hpp>
#include <crnf/holo_series.hpp>
#include <crnf/series3.hpp>
#include <crnf/surface_ops.hpp>

#include <vector>

namespace crnf {

/// L(f,g) = Re{ i g(z, u+iP) + 2 P_z(z, zbar) f(z, u+iP) } for the model
/// surface v = P; the u weight must equal the model degree.
template <class C>
Series3<C> gcm_operator(const HoloSeries<C>& f, const HoloSeries<C>& g, const ModelPoly& model) {
    require_same(f.weighting(), g.weighting());
    require(f.weighting().u_weight == model.k, Errc::WeightMismatch,
            "generalized operator needs u weight equal to the model degree");
    const Weighting wt = f.weighting();
    const int trunc = std::min(f.trunc(), g.trunc());

    Series3<C> surface(wt, trunc);
    for (const auto& [j, c] : model.a) surface.set({j, model.k - j, 0}, C(c));

    const Series3<C> f_on = compose_on_surface(f.truncated(trunc), surface);
    const Series3<C> g_on = compose_on_surface(g.truncated(trunc), surface);
    // P is an exact polynomial, so its derivative carries the full order
    Series3<C> p_z(wt, trunc);
    for (const auto& [j, c] : model.a)
        if (j >= 1) p_z.set({j - 1, model.k - j, 0}, C(c * GaussianRational(rat(j))));

    Series3<C> inner = scaled(g_on, GaussianRational::i());
    inner += scaled(p_z * f_on, GaussianRational(rat(2)));
    return real_part(inner);
}

/// L(f,g) = Re( 2 zbar f(z, u+i|z|^2) + i g(z, u+i|z|^2) ): the sphere
/// case, with u weight 2.
template <class C>
Series3<C> cm_operator(const HoloSeries<C>& f, const HoloSeries<C>& g) {
    require(f.weighting().u_weight == 2, Errc::WeightMismatch,
            "Chern-Moser operator needs u weight 2");
    ModelPoly sphere;
    sphere.k = 2;
    sphere.a[1] = GaussianRational(rat(1));
    sphere.l = 1;
    sphere.klass = ModelClass::Circular;
    return gcm_operator(f, g, sphere);
}

/// (Q, S) = sum_{j=1}^{k-2} Q_j conj(S_j) for coefficient lists of
/// degree-(k-1) polynomials indexed by the z-exponent j = 0..k-1;
/// harmonic entries (j = 0 and j = k-1) are discarded.
inline GaussianRational scalar_product(const std::vector<GaussianRational>& q,
                                       const std::vector<GaussianRational>& s) {
    require(q.size() == s.size(), Errc::DegreeMismatch, "coefficient lists differ in degree");
    require(q.size() >= 2, Errc::DegreeMismatch, "coefficient lists too short");
    GaussianRational sum;
    for (size_t j = 1; j + 1 < q.size(); ++j) sum += q[j] * conj(s[j]);
    return sum;
}

/// Coefficient list of P_z, indexed by the z-exponent j = 0..k-2 of a
/// degree-(k-1) polynomial: the entry at j is (j+1) a_{j+1}.
inline std::vector<GaussianRational> pz_coefficients(const ModelPoly& model) {
    std::vector<GaussianRational> out(static_cast<size_t>(model.k));
    for (int j = 0; j + 1 <= model.k - 1; ++j)
        out[static_cast<size_t>(j)] = model.coeff(j + 1) * GaussianRational(rat(j + 1));
    return out;
}

}  // namespace crnf
