#include <doctest.h>

#include <crnf/counting.hpp>
#include <crnf/equivalence.hpp>

#include "helpers.hpp"

using namespace crnf;

namespace {

using RS = Series3<GaussianRational>;

RS mono(Weighting wt, int trunc, int i, int j, int m, GaussianRational c = GaussianRational(rat(1))) {
    return RS::monomial(wt, trunc, {i, j, m}, std::move(c));
}

}  // namespace

TEST_CASE("count table values") {
    const auto rows = count_table(12);
    REQUIRE(rows.size() == 12);
    for (const auto& row : rows) {
        const Integer n(row.n);
        CHECK(row.surface_coeffs == (n + 1) * (n + 2) * (n + 3) / 6 - 1);
        CHECK(row.map_coeffs == 2 * n * n + 6 * n);
        CHECK(row.solvable_expected == (row.surface_coeffs <= row.map_coeffs));
    }
    CHECK(rows[0].surface_coeffs == 3);
    CHECK(rows[0].map_coeffs == 8);
    CHECK(rows[0].solvable_expected);
    CHECK(rows[7].surface_coeffs == 164);
    CHECK(rows[7].map_coeffs == 176);
    CHECK(rows[7].solvable_expected);
    CHECK(rows[8].surface_coeffs == 219);
    CHECK(rows[8].map_coeffs == 216);
    CHECK(!rows[8].solvable_expected);
}

TEST_CASE("threshold") {
    CHECK(threshold() == 9);
    CHECK(9 * 9 > 6 * 9 + 25);
    CHECK(!(8 * 8 > 6 * 8 + 25));
    // the first non-solvable row of the table is the threshold
    const auto rows = count_table(12);
    int first_false = 0;
    for (const auto& row : rows)
        if (!row.solvable_expected) {
            first_false = row.n;
            break;
        }
    CHECK(first_false == threshold());
}

TEST_CASE("contact system dimensions match the counts") {
    const Weighting w2(2);
    const Germ sphere(mono(w2, 10, 1, 1, 0));
    for (int n = 1; n <= 3; ++n) {
        const auto report = linearized_contact_check(sphere, sphere, n);
        const auto row = count_table(n).back();
        CHECK(Integer(report.equations) == row.surface_coeffs);
        CHECK(Integer(report.unknowns) == row.map_coeffs);
        CHECK(report.consistent);  // identical germs: the zero map works
    }
}

TEST_CASE("degree-3 perturbations of the sphere are matchable") {
    const Weighting w2(2);
    const Germ sphere(mono(w2, 10, 1, 1, 0));
    RS phi = mono(w2, 10, 1, 1, 0);
    phi += mono(w2, 10, 3, 0, 0, GaussianRational(rat(1, 2), rat(1)));
    phi += mono(w2, 10, 0, 3, 0, GaussianRational(rat(1, 2), rat(-1)));
    phi += mono(w2, 10, 2, 1, 0, GaussianRational(rat(1, 3)));
    phi += mono(w2, 10, 1, 2, 0, GaussianRational(rat(1, 3)));
    const Germ perturbed(phi);
    const auto report = linearized_contact_check(sphere, perturbed, 3);
    CHECK(report.consistent);
    // the brute-force (nonlinear) outcome agrees at this order: every
    // degree-3 stage of the normalization is solvable, so both germs
    // normalize to zero through weighted order 3
    const auto full = equivalent(sphere, perturbed, 3);
    CHECK(full.verdict == Equivalence::EquivalentToOrder);
    // the linearized order-3 statement does not extend: at order 6 the
    // perturbation leaves a genuine residue in the normal form
    const auto deeper = equivalent(sphere, perturbed, 6);
    CHECK(deeper.verdict == Equivalence::DistinctToOrder);
}

TEST_CASE("a type obstruction surfaces as an unsatisfiable row") {
    const Weighting w2(2);
    const Germ flat(mono(w2, 10, 2, 2, 0));   // type 4
    const Germ sphere(mono(w2, 10, 1, 1, 0)); // type 2
    const auto report = linearized_contact_check(flat, sphere, 3);
    CHECK(!report.consistent);
}

TEST_CASE("contact check argument validation") {
    const Weighting w2(2);
    const Germ sphere(mono(w2, 10, 1, 1, 0));
    CHECK_THROWS_AS(linearized_contact_check(sphere, sphere, 5), Error);
    const Germ short_germ(mono(w2, 4, 1, 1, 0));
    CHECK_THROWS_AS(linearized_contact_check(short_germ, short_germ, 3), Error);
}
