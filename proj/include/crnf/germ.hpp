#pragma once

// Hypersurface germs v = Phi(z, zbar, u) and their pointwise invariants:
// the Levi form, the type of the point via harmonic removal, the model
// polynomial with its essential type and class, and the group of linear
// symmetries of the model.

#include <crnf/formal_map.hpp>
#include <crnf/series3.hpp>
#include <crnf/transform.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crnf {

class Germ {
  public:
    explicit Germ(Series3<GaussianRational> phi) : phi_(std::move(phi)) {
        require(is_hermitian(phi_), Errc::RealityViolation, "defining series is not hermitian-real");
        require(phi_.coeff(0, 0, 0).is_zero(), Errc::IllFormedSurface,
                "defining series has a constant term");
        require(phi_.coeff(1, 0, 0).is_zero() && phi_.coeff(0, 1, 0).is_zero(),
                Errc::IllFormedSurface, "defining series has weight-one terms");
        require(phi_.coeff(0, 0, 1).is_zero(), Errc::IllFormedSurface,
                "defining series has a pure-u term: tangent plane is not {v = 0}");
    }

    const Series3<GaussianRational>& phi() const { return phi_; }
    const Weighting& weighting() const { return phi_.weighting(); }
    int trunc() const { return phi_.trunc(); }

    friend bool operator==(const Germ& a, const Germ& b) { return a.phi_ == b.phi_; }

  private:
    Series3<GaussianRational> phi_;
};

inline Germ transform(const Germ& germ, const FormalMap& map) {
    Series3<GaussianRational> image = transform_series(germ.phi(), map);
    require(is_hermitian(image), Errc::RealityViolation,
            "transform produced a non-hermitian series");
    return Germ(std::move(image));
}

inline Germ reweight(const Germ& germ, const Weighting& to) {
    return Germ(reweight(germ.phi(), to));
}

/// The Levi scalar at the point: the z zbar coefficient, with its sign.
struct LeviValue {
    Rational value;
    int sign = 0;
};

inline LeviValue levi_sign(const Germ& germ) {
    const GaussianRational c = germ.phi().coeff(1, 1, 0);
    return {c.re, sgn(c.re)};
}

enum class ModelClass { Circular, Tubular, Generic };

inline const char* model_class_name(ModelClass c) {
    switch (c) {
        case ModelClass::Circular: return "Circular";
        case ModelClass::Tubular: return "Tubular";
        case ModelClass::Generic: return "Generic";
    }
    return "?";
}

inline Rational binomial(int n, int k) {
    Rational r(1);
    for (int t = 0; t < k; ++t) r *= rat(n - t, t + 1);
    return r;
}

/// The homogeneous model polynomial P = sum_{j=1}^{k-1} a_j z^j zbar^{k-j};
/// real-valued, nonzero, no harmonic part.
struct ModelPoly {
    int k = 0;
    std::map<int, GaussianRational> a;  // j -> a_j, absent means zero
    int l = 0;                          // essential type: least j with a_j != 0
    ModelClass klass = ModelClass::Generic;

    GaussianRational coeff(int j) const {
        auto it = a.find(j);
        return it == a.end() ? GaussianRational() : it->second;
    }
};

inline int essential_type(const ModelPoly& p) { return p.l; }

/// Classification of the model: circular iff P = a_l |z|^k, tubular iff a
/// linear change z -> beta z, w -> delta w carries P to a real multiple of
/// the non-harmonic part of (Re z)^k, generic otherwise.
inline ModelClass classify_model_coeffs(int k, const std::map<int, GaussianRational>& a) {
    if (k % 2 == 0 && a.size() == 1 && a.begin()->first == k / 2) return ModelClass::Circular;
    if (static_cast<int>(a.size()) == k - 1) {
        // every coefficient present: compare consecutive ratios to binomials
        bool tubular = true;
        std::optional<GaussianRational> sigma;
        for (int j = 1; j + 1 <= k - 1 && tubular; ++j) {
            const GaussianRational s =
                a.at(j) * GaussianRational(binomial(k, j + 1)) *
                (a.at(j + 1) * GaussianRational(binomial(k, j))).inverse();
            if (!sigma)
                sigma = s;
            else if (!(*sigma == s))
                tubular = false;
        }
        if (tubular && sigma && sigma->norm2() == 1) return ModelClass::Tubular;
    }
    return ModelClass::Generic;
}

inline ModelPoly make_model(int k, std::map<int, GaussianRational> coeffs) {
    ModelPoly p;
    p.k = k;
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
    require(!coeffs.empty(), Errc::BadArgument, "model polynomial is zero");
    for (const auto& [j, c] : coeffs) {
        require(j >= 1 && j <= k - 1, Errc::BadArgument, "model has a harmonic or out-of-range term");
        GaussianRational mirror = coeffs.count(k - j) ? coeffs.at(k - j) : GaussianRational();
        require(c == conj(mirror), Errc::RealityViolation, "model polynomial is not real-valued");
    }
    p.a = std::move(coeffs);
    p.l = p.a.begin()->first;
    require(2 * p.l <= p.k, Errc::BadArgument, "essential type exceeds k/2");
    p.klass = classify_model_coeffs(k, p.a);
    return p;
}

inline ModelClass classify_model(const ModelPoly& p) { return p.klass; }

inline Series3<GaussianRational> model_series(const ModelPoly& p, const Weighting& wt, int trunc) {
    Series3<GaussianRational> s(wt, trunc);
    for (const auto& [j, c] : p.a) s.set({j, p.k - j, 0}, c);
    return s;
}

/// Extracts the degree-k model from a germ already free of lower-order and
/// harmonic degree-k terms.
inline ModelPoly model_from_germ(const Germ& germ, int k) {
    std::map<int, GaussianRational> coeffs;
    for (const auto& [key, c] : germ.phi().terms())
        if (key.m == 0 && key.i + key.j == k && key.i >= 1 && key.j >= 1) coeffs[key.i] = c;
    return make_model(k, std::move(coeffs));
}

/// Result of harmonic removal: the type, the model, the reduced germ
/// (carrying u weight 2) and the map that produced it.
struct TypeDecomposition {
    int k = 0;
    ModelPoly model;
    Germ reduced;
    FormalMap map;
};

struct InfiniteTypeWithinTruncation {
    int max_checked = 0;
};

using HarmonicRemoval = std::variant<TypeDecomposition, InfiniteTypeWithinTruncation>;

/// The unique change w* = w + sum beta_d z^d that removes all harmonic
/// terms of the u^0 slice up to the first degree with non-harmonic content.
/// Works in the u-weight-2 grading, where every such substitution raises
/// (or preserves, at d = 2) weighted degree.
inline HarmonicRemoval remove_harmonics(const Germ& input, int max_k) {
    const Weighting w2(2);
    Germ germ = reweight(input, w2);
    const int trunc = germ.trunc();
    require(max_k >= 2, Errc::BadArgument, "max type must be at least 2");
    require(max_k <= trunc, Errc::TruncationTooLow,
            "type search to degree " + std::to_string(max_k) + " needs truncation >= that order");

    FormalMap total = FormalMap::identity(w2, trunc);
    auto kill_harmonic = [&](int d) {
        const GaussianRational alpha = germ.phi().coeff(d, 0, 0);
        if (alpha.is_zero()) return;
        HoloSeries<GaussianRational> g(w2, trunc);
        g.set({d, 0}, GaussianRational(rat(0), rat(-2)) * alpha);  // beta = -2i a_{d00}
        FormalMap step(HoloSeries<GaussianRational>(w2, trunc), std::move(g));
        germ = transform(germ, step);
        total = compose(step, total);
        require(germ.phi().coeff(d, 0, 0).is_zero(), Errc::SingularStage,
                "harmonic coefficient survived its removal");
    };

    for (int d = 2; d <= max_k; ++d) {
        bool mixed = false;
        for (const auto& [key, c] : germ.phi().terms())
            if (key.m == 0 && key.i + key.j == d && key.i >= 1 && key.j >= 1) mixed = true;
        if (mixed) {
            kill_harmonic(d);
            return TypeDecomposition{d, model_from_germ(germ, d), germ, total};
        }
        kill_harmonic(d);
    }
    return InfiniteTypeWithinTruncation{max_k};
}

/// A linear symmetry z* = beta z, w* = delta w of a model polynomial.
struct LinearSymmetry {
    GaussianRational beta;
    Rational delta;
};

inline bool preserves_model(const ModelPoly& p, const LinearSymmetry& h) {
    if (h.beta.is_zero() || sgn(h.delta) == 0) return false;
    for (const auto& [j, c] : p.a) {
        const GaussianRational lhs = c * pow(h.beta, j) * pow(conj(h.beta), p.k - j);
        if (!(lhs == c * GaussianRational(h.delta))) return false;
    }
    return true;
}

/// The subgroup of z* = beta z, w* = delta w preserving the model, solved
/// from a_j beta^j conj(beta)^{k-j} = delta a_j: a scale family, a phase
/// family for circular models, and a finite cyclic part otherwise.
struct ModelSymmetryGroup {
    int dimension = 1;      // real dimension of the continuous part
    int cyclic_order = 1;   // order of the finite phase group
    std::vector<std::string> generators;
};

inline ModelSymmetryGroup model_symmetries(const ModelPoly& p) {
    ModelSymmetryGroup out;
    const int k = p.k;
    if (p.klass == ModelClass::Circular) {
        out.dimension = 2;
        out.cyclic_order = 0;  // the phase circle is continuous
        out.generators = {
            "scale: z* = t z, w* = t^" + std::to_string(k) + " w, t > 0",
            "phase: z* = e^{i theta} z, w* = w, theta real",
        };
        return out;
    }
    // phase constraint: omega^{e_j} equal for all support indices, with
    // value +-1 so that delta = sign * t^k stays real; e_j = 2j - k.
    Integer diff_gcd = 0;
    const int j0 = p.a.begin()->first;
    for (const auto& [j, c] : p.a) diff_gcd = gcd(diff_gcd, Integer(2 * (j - j0)));
    Integer m = gcd(diff_gcd, Integer(2 * (2 * j0 - k)));
    if (sgn(m) < 0) m = -m;
    out.dimension = 1;
    out.cyclic_order = m == 0 ? 1 : static_cast<int>(m.get_si());
    if (out.cyclic_order == 0) out.cyclic_order = 1;
    out.generators = {
        "scale: z* = t z, w* = sign(omega^(2j-k)) t^" + std::to_string(k) + " w, t > 0",
        "phase: omega with omega^" + std::to_string(out.cyclic_order) + " = 1",
    };
    return out;
}

}  // namespace crnf
