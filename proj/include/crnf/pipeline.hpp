#pragma once

// The analysis pipeline shared by the command line and the equivalence
// decision: Levi dispatch, type detection, model classification, and the
// matching normalization.

#include <crnf/germ.hpp>
#include <crnf/normal_form.hpp>

#include <optional>

namespace crnf {

struct Analysis {
    enum class Kind { ChernMoser, FiniteType, InfiniteType, Tubular };
    Kind kind = Kind::InfiniteType;
    int order = 0;                             // weighted order of the active grading
    Germ input;                                // reweighted to u weight 2, truncated
    std::optional<TypeDecomposition> removal;  // finite type and tubular paths
    std::optional<NormalFormReport> report;    // Chern-Moser and finite type paths

    Analysis(Germ g) : input(std::move(g)) {}
};

inline Analysis analyze(const Germ& germ, int order) {
    const Weighting w2(2);
    Germ g2 = reweight(germ, w2);
    require(order >= 2, Errc::BadArgument, "order must be at least 2");
    require(order <= g2.trunc(), Errc::TruncationTooLow,
            "requested order exceeds the trusted truncation");
    g2 = Germ(g2.phi().truncated(order));

    Analysis out(g2);
    out.order = order;
    if (levi_sign(g2).sign != 0) {
        out.kind = Analysis::Kind::ChernMoser;
        out.report = chern_moser_normalize(g2, order);
        return out;
    }
    auto removal = remove_harmonics(g2, order);
    if (std::holds_alternative<InfiniteTypeWithinTruncation>(removal)) {
        out.kind = Analysis::Kind::InfiniteType;
        return out;
    }
    out.removal = std::get<TypeDecomposition>(std::move(removal));
    const ModelPoly& model = out.removal->model;
    switch (model.klass) {
        case ModelClass::Tubular:
            out.kind = Analysis::Kind::Tubular;
            return out;
        case ModelClass::Circular:
        case ModelClass::Generic: {
            out.kind = Analysis::Kind::FiniteType;
            const Germ reduced_k = reweight(out.removal->reduced, Weighting(model.k));
            out.report = model.klass == ModelClass::Circular
                             ? circular_normalize(reduced_k, model, order)
                             : generic_normalize(reduced_k, model, order);
            return out;
        }
    }
    return out;
}

}  // namespace crnf
