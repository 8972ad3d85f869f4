#pragma once

// Degree-by-degree formal normalization. At each weighted degree the
// unknown map coefficients of that degree act linearly on the defining
// series through the (generalized) Chern-Moser operator; the normal form
// conditions of the active case give a finite exact linear system. Free
// coordinates of an underdetermined stage are the symmetry-group
// directions; they are pinned to zero under a fixed monomial ordering,
// which is the gauge shared by the solver, the oracle tests, and the
// orbit matcher.

#include <crnf/cm_operators.hpp>
#include <crnf/formal_map.hpp>
#include <crnf/germ.hpp>
#include <crnf/linear_solve.hpp>
#include <crnf/transform.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace crnf {

enum class NormalFormCase { ChernMoser, Generic, Circular };

inline const char* case_name(NormalFormCase c) {
    switch (c) {
        case NormalFormCase::ChernMoser: return "ChernMoser";
        case NormalFormCase::Generic: return "Generic";
        case NormalFormCase::Circular: return "Circular";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// condition sets

/// One scalar condition row: either a single coefficient of the reduced
/// series F = Phi - P, or the scalar-product pairing of a degree-(k-1)
/// slice with P_z.
struct ConditionRow {
    std::string family;
    std::optional<Mono3> key;  // single-coefficient row
    int scalar_u_power = -1;   // scalar-product row at u^m when >= 0
};

/// All condition rows of the given case at one weighted degree.
inline std::vector<ConditionRow> condition_rows_at(NormalFormCase kase, const ModelPoly& model,
                                                   int mu, const Weighting& wt) {
    const int k = model.k;
    const int l = model.l;
    const int uw = wt.u_weight;
    std::vector<ConditionRow> rows;
    auto add = [&](const std::string& fam, int i, int j, int m) {
        if (m < 0 || i < 0 || j < 0) return;
        if (Mono3{i, j, m}.weighted_degree(wt) != mu) return;
        rows.push_back({fam, Mono3{i, j, m}, -1});
    };
    switch (kase) {
        case NormalFormCase::ChernMoser:
            for (int m = 0; m * uw <= mu; ++m) add("F_{j,0}", mu - m * uw, 0, m);
            for (int m = 0; 1 + 1 + m * uw <= mu; ++m) add("F_{1,j}", 1, mu - 1 - m * uw, m);
            if ((mu - 4) % uw == 0) add("F_{2,2}", 2, 2, (mu - 4) / uw);
            if ((mu - 6) % uw == 0) add("F_{3,3}", 3, 3, (mu - 6) / uw);
            if ((mu - 5) % uw == 0) add("F_{3,2}", 3, 2, (mu - 5) / uw);
            break;
        case NormalFormCase::Generic:
            for (int m = 0; 1 + m * uw <= mu; ++m) add("F_{j,0}", mu - m * uw, 0, m);
            for (int m = 0; k + 1 + m * uw <= mu; ++m) {
                const int j = mu - k - m * uw;
                if (j >= 1) add("F_{k-l+j,l}", k - l + j, l, m);
            }
            if ((mu - k) % uw == 0) add("F_{k-l,l}", k - l, l, (mu - k) / uw);
            if ((mu - 2 * k) % uw == 0) add("F_{2k-2l,2l}", 2 * k - 2 * l, 2 * l, (mu - 2 * k) / uw);
            if (mu >= k - 1 && (mu - (k - 1)) % uw == 0)
                rows.push_back({"(F_{k-1},P_z)", std::nullopt, (mu - (k - 1)) / uw});
            break;
        case NormalFormCase::Circular:
            for (int m = 0; m * uw <= mu; ++m) add("F_{j,0}", mu - m * uw, 0, m);
            for (int m = 0; 2 * l + m * uw <= mu; ++m) {
                const int j = mu - 2 * l - m * uw;
                if (j >= 0) add("F_{l,l+j}", l, l + j, m);
            }
            if ((mu - 4 * l) % uw == 0) add("F_{2l,2l}", 2 * l, 2 * l, (mu - 4 * l) / uw);
            if ((mu - 6 * l) % uw == 0) add("F_{3l,3l}", 3 * l, 3 * l, (mu - 6 * l) / uw);
            if ((mu - (4 * l - 1)) % uw == 0)
                add("F_{2l,2l-1}", 2 * l, 2 * l - 1, (mu - (4 * l - 1)) / uw);
            break;
    }
    return rows;
}

/// Evaluates one condition row on the reduced series F.
inline GaussianRational evaluate_row(const ConditionRow& row, const Series3<GaussianRational>& f,
                                     const ModelPoly& model) {
    if (row.key) return f.coeff(*row.key);
    std::vector<GaussianRational> slice(static_cast<size_t>(model.k));
    for (int j = 0; j <= model.k - 1; ++j)
        slice[static_cast<size_t>(j)] = f.coeff(j, model.k - 1 - j, row.scalar_u_power);
    return scalar_product(slice, pz_coefficients(model));
}

/// A row is real-valued (one equation) when it constrains a coefficient
/// with i == j; everything else is a complex pair of equations.
inline bool row_is_real(const ConditionRow& row) {
    return row.key && row.key->i == row.key->j;
}

struct ConditionResidual {
    std::string family;
    std::vector<std::pair<std::string, GaussianRational>> entries;
    bool all_zero = true;
};

struct NormalFormReport {
    Germ normalized;
    FormalMap map;  // transform(input, map) == normalized, exactly
    std::vector<ConditionResidual> conditions;
    NormalFormCase kase = NormalFormCase::ChernMoser;
    ModelPoly model;
    int order = 0;
};

inline std::string row_label(const ConditionRow& row) {
    if (row.key)
        return "F(" + std::to_string(row.key->i) + "," + std::to_string(row.key->j) + ") u^" +
               std::to_string(row.key->m);
    return "(F_{k-1},P_z) u^" + std::to_string(row.scalar_u_power);
}

/// Evaluates every condition family of the case on the normalized germ up
/// to `order`, grouping residuals by family.
inline std::vector<ConditionResidual> certify_conditions(NormalFormCase kase, const Germ& germ,
                                                         const ModelPoly& model, int order) {
    const Weighting wt = germ.weighting();
    const Series3<GaussianRational> reduced =
        germ.phi() - model_series(model, wt, germ.phi().trunc());
    std::vector<ConditionResidual> out;
    auto family_slot = [&](const std::string& fam) -> ConditionResidual& {
        for (auto& c : out)
            if (c.family == fam) return c;
        out.push_back({fam, {}, true});
        return out.back();
    };
    const int start = kase == NormalFormCase::ChernMoser ? 2 : model.k;
    for (int mu = start; mu <= order; ++mu)
        for (const auto& row : condition_rows_at(kase, model, mu, wt)) {
            const GaussianRational v = evaluate_row(row, reduced, model);
            auto& slot = family_slot(row.family);
            slot.entries.emplace_back(row_label(row), v);
            if (!v.is_zero()) slot.all_zero = false;
        }
    return out;
}

// ---------------------------------------------------------------------------
// stage solver

namespace detail {

struct StageUnknown {
    bool in_f = false;
    Mono2 mono;
    bool imaginary = false;  // contributes coefficient i instead of 1
};

inline std::vector<StageUnknown> stage_unknowns(int mu, int k, const Weighting& wt) {
    std::vector<StageUnknown> out;
    auto push = [&](bool in_f, int weight) {
        for (int j = 0; j * wt.u_weight <= weight; ++j) {
            const int i = weight - j * wt.u_weight;
            out.push_back({in_f, {i, j}, false});
            out.push_back({in_f, {i, j}, true});
        }
    };
    push(true, mu - k + 1);
    push(false, mu);
    return out;
}

/// Stacks the complex condition values into real rows.
inline std::vector<Rational> stack_rows(const std::vector<ConditionRow>& rows,
                                        const Series3<GaussianRational>& reduced,
                                        const ModelPoly& model) {
    std::vector<Rational> out;
    for (const auto& row : rows) {
        const GaussianRational v = evaluate_row(row, reduced, model);
        out.push_back(v.re);
        if (!row_is_real(row)) out.push_back(v.im);
    }
    return out;
}

}  // namespace detail

/// Solves one weighted degree: finds map coefficients of the matching
/// weights whose operator image cancels every condition row of F at that
/// degree. Underdetermined directions (the symmetry group) are set to
/// zero; an unsolvable stage reports its degree and rank defect.
inline FormalMap solve_stage(NormalFormCase kase, const ModelPoly& model,
                             const Series3<GaussianRational>& reduced, int mu,
                             const Weighting& wt, int trunc) {
    const auto rows = condition_rows_at(kase, model, mu, wt);
    const auto unknowns = detail::stage_unknowns(mu, model.k, wt);
    const std::vector<Rational> rhs = detail::stack_rows(rows, reduced, model);

    RatMatrix matrix(rhs.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    for (size_t col = 0; col < unknowns.size(); ++col) {
        const auto& un = unknowns[col];
        HoloSeries<GaussianRational> f(wt, trunc), g(wt, trunc);
        const GaussianRational c =
            un.imaginary ? GaussianRational::i() : GaussianRational(rat(1));
        (un.in_f ? f : g).set(un.mono, c);
        const Series3<GaussianRational> img = gcm_operator(f, g, model).slice(mu);
        const std::vector<Rational> colv = detail::stack_rows(rows, img, model);
        for (size_t r = 0; r < colv.size(); ++r) matrix[r][col] = colv[r];
    }

    const LinearSolution sol = solve_linear(matrix, rhs);
    if (!sol.consistent)
        raise(Errc::SingularStage,
              "normalization stage at weighted degree " + std::to_string(mu) +
                  " is unsolvable: rank " + std::to_string(sol.rank) + " of " +
                  std::to_string(rhs.size()) + " condition rows");

    HoloSeries<GaussianRational> f(wt, trunc), g(wt, trunc);
    for (size_t col = 0; col < unknowns.size(); ++col) {
        if (sgn(sol.values[col]) == 0) continue;
        const auto& un = unknowns[col];
        GaussianRational c = un.imaginary ? GaussianRational(rat(0), sol.values[col])
                                          : GaussianRational(sol.values[col]);
        (un.in_f ? f : g).add_to(un.mono, c);
    }
    return FormalMap(std::move(f), std::move(g));
}

// ---------------------------------------------------------------------------
// the normalizations

namespace detail {

struct NormalizationLoop {
    Germ germ;
    FormalMap total;

    NormalizationLoop(Germ g, FormalMap t) : germ(std::move(g)), total(std::move(t)) {}

    void apply(const FormalMap& step) {
        germ = transform(germ, step);
        total = compose(step, total);
    }

    void run_stages(NormalFormCase kase, const ModelPoly& model, int first, int order) {
        const Weighting wt = germ.weighting();
        for (int mu = first; mu <= order; ++mu) {
            const Series3<GaussianRational> reduced =
                germ.phi() - model_series(model, wt, germ.phi().trunc());
            bool clean = true;
            for (const auto& row : condition_rows_at(kase, model, mu, wt))
                if (!evaluate_row(row, reduced, model).is_zero()) clean = false;
            if (clean) continue;
            const FormalMap step = solve_stage(kase, model, reduced, mu, wt, order);
            apply(step);
            const Series3<GaussianRational> after =
                germ.phi() - model_series(model, wt, germ.phi().trunc());
            for (const auto& row : condition_rows_at(kase, model, mu, wt))
                require(evaluate_row(row, after, model).is_zero(), Errc::SingularStage,
                        "stage " + std::to_string(mu) + " left condition " + row_label(row) +
                            " nonzero");
        }
    }
};

}  // namespace detail

/// Chern-Moser normalization at a Levi nondegenerate point. Brings the
/// equation to v = |z|^2 + F first (sign flip, Levi scale to one, no
/// harmonic z^2 term), then enforces the five condition families degree
/// by degree in the u-weight-2 grading.
inline NormalFormReport chern_moser_normalize(const Germ& input, int order) {
    const Weighting w2(2);
    Germ start = reweight(input, w2);
    require(order >= 2, Errc::BadArgument, "order must be at least 2");
    require(order <= start.trunc(), Errc::TruncationTooLow,
            "requested order exceeds the trusted truncation");
    start = Germ(start.phi().truncated(order));
    const LeviValue levi = levi_sign(start);
    require(levi.sign != 0, Errc::LeviDegenerate,
            "Levi form vanishes; use the finite type path");

    detail::NormalizationLoop loop(start, FormalMap::identity(w2, order));
    auto wmap = [&](GaussianRational coeff, Mono2 mono) {
        HoloSeries<GaussianRational> g(w2, order);
        g.set(mono, std::move(coeff));
        return FormalMap(HoloSeries<GaussianRational>(w2, order), std::move(g));
    };
    if (levi.sign < 0) loop.apply(wmap(GaussianRational(rat(-2)), {0, 1}));
    const Rational a = loop.germ.phi().coeff(1, 1, 0).re;
    if (a != 1) loop.apply(wmap(GaussianRational(1 / a - 1), {0, 1}));
    const GaussianRational harmonic = loop.germ.phi().coeff(2, 0, 0);
    if (!harmonic.is_zero())
        loop.apply(wmap(GaussianRational(rat(0), rat(-2)) * harmonic, {2, 0}));

    ModelPoly sphere;
    sphere.k = 2;
    sphere.a[1] = GaussianRational(rat(1));
    sphere.l = 1;
    sphere.klass = ModelClass::Circular;

    loop.run_stages(NormalFormCase::ChernMoser, sphere, 3, order);

    require(transform(start, loop.total) == loop.germ, Errc::SingularStage,
            "normalizing map fails to reproduce the normalized germ");
    return {loop.germ,
            loop.total,
            certify_conditions(NormalFormCase::ChernMoser, loop.germ, sphere, order),
            NormalFormCase::ChernMoser,
            sphere,
            order};
}

namespace detail {

inline void require_model_form(const Germ& germ, const ModelPoly& model) {
    const Weighting wt = germ.weighting();
    require(wt.u_weight == model.k, Errc::WeightMismatch,
            "finite type normalization needs u weight equal to the type");
    const Series3<GaussianRational> reduced =
        germ.phi() - model_series(model, wt, germ.phi().trunc());
    for (const auto& [key, c] : reduced.terms())
        require(key.weighted_degree(wt) > model.k, Errc::IllFormedSurface,
                "germ is not in the form v = P + (higher order): run harmonic removal first");
}

inline NormalFormReport finite_type_normalize(NormalFormCase kase, const Germ& input,
                                              const ModelPoly& model, int order) {
    const Weighting wk(model.k);
    Germ start = reweight(input, wk);
    require(order <= start.trunc(), Errc::TruncationTooLow,
            "requested order exceeds the trusted truncation");
    require(order >= model.k, Errc::BadArgument, "order must reach the model degree");
    start = Germ(start.phi().truncated(order));
    require_model_form(start, model);

    NormalizationLoop loop(start, FormalMap::identity(wk, order));
    loop.run_stages(kase, model, model.k + 1, order);

    require(transform(start, loop.total) == loop.germ, Errc::SingularStage,
            "normalizing map fails to reproduce the normalized germ");
    return {loop.germ,        loop.total, certify_conditions(kase, loop.germ, model, order),
            kase,             model,      order};
}

}  // namespace detail

/// Finite type normal form in the generic case (Theorem-style condition
/// list with the scalar-product condition).
inline NormalFormReport generic_normalize(const Germ& input, const ModelPoly& model, int order) {
    require(model.klass == ModelClass::Generic, Errc::WrongCase,
            "model is not generic; dispatch on the model class");
    return detail::finite_type_normalize(NormalFormCase::Generic, input, model, order);
}

/// Finite type normal form in the circular case (2l = k).
inline NormalFormReport circular_normalize(const Germ& input, const ModelPoly& model, int order) {
    require(model.klass == ModelClass::Circular, Errc::WrongCase,
            "model is not circular; dispatch on the model class");
    return detail::finite_type_normalize(NormalFormCase::Circular, input, model, order);
}

/// Tubular models are out of scope here.
[[noreturn]] inline void tubular_normalize() {
    raise(Errc::TubularUnsupported,
          "tubular models have no normal form in this engine; see M. Kolar, 'Normal forms for "
          "hypersurfaces of finite type in C^2', Math. Res. Lett. 12 (2005)");
}

}  // namespace crnf
