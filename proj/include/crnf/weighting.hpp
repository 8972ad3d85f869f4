#pragma once

// Weighted grading on the variables: z and zbar always carry weight one,
// u (and the holomorphic w) carry u_weight. The Levi nondegenerate theory
// runs with u_weight = 2, a finite type point of type k with u_weight = k.

#include <crnf/errors.hpp>

#include <compare>

namespace crnf {

struct Weighting {
    int u_weight = 2;

    Weighting() = default;
    explicit Weighting(int uw) : u_weight(uw) {
        require(uw >= 2, Errc::BadArgument, "u weight must be at least 2");
    }

    friend bool operator==(const Weighting&, const Weighting&) = default;
};

inline void require_same(const Weighting& a, const Weighting& b) {
    require(a == b, Errc::WeightMismatch, "operands carry different weightings");
}

/// Monomial z^i zbar^j u^m.
struct Mono3 {
    int i = 0;
    int j = 0;
    int m = 0;

    int weighted_degree(const Weighting& w) const { return i + j + m * w.u_weight; }
    int plain_degree() const { return i + j + m; }
    Mono3 mirrored() const { return {j, i, m}; }

    friend auto operator<=>(const Mono3&, const Mono3&) = default;
};

/// Monomial z^i w^j in the holomorphic variables.
struct Mono2 {
    int i = 0;
    int j = 0;

    int weighted_degree(const Weighting& w) const { return i + j * w.u_weight; }

    friend auto operator<=>(const Mono2&, const Mono2&) = default;
};

}  // namespace crnf
