#pragma once

// Classification of the local automorphism group of a finite type germ
// from its normal form, and the jet order that determines automorphisms.
// The four cases: the full three-dimensional group of the circular model
// (sphere-like), a noncompact one-dimensional group R+ x Z_m for models
// with l < k/2, the circle for rotation-invariant normal forms, and a
// finite cyclic group otherwise.

#include <crnf/germ.hpp>
#include <crnf/normal_form.hpp>

#include <optional>

namespace crnf {

enum class AutStructure { FullModelGroup, ScaleCrossCyclic, Circle, Cyclic };

inline const char* aut_structure_name(AutStructure s) {
    switch (s) {
        case AutStructure::FullModelGroup: return "FullModelGroup";
        case AutStructure::ScaleCrossCyclic: return "R+ x Z_m";
        case AutStructure::Circle: return "S^1";
        case AutStructure::Cyclic: return "Z_m";
    }
    return "?";
}

struct AutVerdict {
    int case_id = 0;    // 1..4
    int dimension = 0;  // 3, 1, 1, 0
    AutStructure structure = AutStructure::Cyclic;
    std::optional<int> m;  // cases 2 and 4; certified to order_of_validity
    int order_of_validity = 0;
};

namespace detail {

/// Largest m such that a rotation by a primitive m-th root of unity,
/// together with a compensating scale, fixes every stored coefficient:
/// the rotation acts on a key by omega^(j-i), the allowed compensation is
/// a sign, so m is read off the i-j lattice of the support.
inline int rotation_order(const Series3<GaussianRational>& phi) {
    Integer g = 0;
    for (const auto& [key, c] : phi.terms()) g = gcd(g, Integer(key.i - key.j));
    if (sgn(g) == 0) return 0;  // rotation-invariant: the circle case
    const long gl = std::abs(g.get_si());
    // The fixing elements are beta = t omega, delta = sigma t-compensated:
    // phases obey omega^{i-j} = sigma^{1-m}. sigma = +1 gives the g-th
    // roots of unity. The sigma = -1 branch asks omega^{i-j} = (-1)^{m+1};
    // writing omega^g = chi it forces chi = (-1)^{m0+1} at any key with
    // odd (i-j)/g, and doubles the group exactly when chi = -1 works
    // across the whole support.
    long chi = 0;  // unknown; +1 or -1 once pinned
    bool coset_ok = true;
    for (const auto& [key, c] : phi.terms()) {
        const long dq = (key.i - key.j) / gl;
        const long eps = (key.m % 2 == 0) ? -1 : 1;  // (-1)^{m+1}
        if (dq % 2 == 0) {
            if (eps != 1) coset_ok = false;
        } else if (chi == 0) {
            chi = eps;
        } else if (chi != eps) {
            coset_ok = false;
        }
    }
    const bool doubled = coset_ok && chi == -1;
    return static_cast<int>(gl) * (doubled ? 2 : 1);
}

}  // namespace detail

/// Classifies Aut(M, p) for a finite type (k > 2) normal form report.
inline AutVerdict classify_aut(const NormalFormReport& report) {
    require(report.kase != NormalFormCase::ChernMoser, Errc::UnsupportedCase,
            "the automorphism classification covers finite type k > 2");
    const ModelPoly& model = report.model;
    require(model.k > 2, Errc::UnsupportedCase,
            "the automorphism classification covers finite type k > 2");
    const Germ& germ = report.normalized;
    const Series3<GaussianRational> reduced =
        germ.phi() - model_series(model, germ.weighting(), germ.phi().trunc());

    AutVerdict out;
    out.order_of_validity = report.order;
    if (reduced.is_zero() && model.klass == ModelClass::Circular) {
        out.case_id = 1;
        out.dimension = 3;
        out.structure = AutStructure::FullModelGroup;
        return out;
    }
    if (reduced.is_zero() && 2 * model.l < model.k) {
        out.case_id = 2;
        out.dimension = 1;
        out.structure = AutStructure::ScaleCrossCyclic;
        out.m = model_symmetries(model).cyclic_order;
        return out;
    }
    bool diagonal = true;
    for (const auto& [key, c] : germ.phi().terms())
        if (key.i != key.j) diagonal = false;
    if (diagonal) {
        out.case_id = 3;
        out.dimension = 1;
        out.structure = AutStructure::Circle;
        return out;
    }
    out.case_id = 4;
    out.dimension = 0;
    out.structure = AutStructure::Cyclic;
    out.m = detail::rotation_order(germ.phi());
    return out;
}

/// Automorphisms of the circular model S_k are determined by their
/// 2-jets; every other finite type germ is 1-jet determined.
inline int jet_order(const AutVerdict& verdict) { return verdict.case_id == 1 ? 2 : 1; }

}  // namespace crnf
