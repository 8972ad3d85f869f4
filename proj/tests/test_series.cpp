#include <doctest.h>

#include <crnf/series3.hpp>

#include "helpers.hpp"

using namespace crnf;
using crnf_test::Rng;

namespace {

using RS = Series3<GaussianRational>;

RS mono(Weighting wt, int trunc, int i, int j, int m, GaussianRational c = GaussianRational(rat(1))) {
    return RS::monomial(wt, trunc, {i, j, m}, std::move(c));
}

}  // namespace

TEST_CASE("additive identities") {
    const Weighting w2(2);
    Rng rng(1001);
    const RS phi = rng.series(w2, 6);
    CHECK(phi + RS(w2, 6) == phi);
    const RS zzb = mono(w2, 5, 1, 1, 0);
    CHECK((zzb + (-zzb)).is_zero());
}

TEST_CASE("addition takes the minimum truncation") {
    const Weighting w2(2);
    const RS a = mono(w2, 5, 1, 1, 0);
    const RS b = mono(w2, 3, 2, 2, 0);
    const RS sum = a + b;
    CHECK(sum.trunc() == 3);
    // the stated oracle: re-expand both operands at the minimum order first
    const RS oracle = a.truncated(3) + b.truncated(3);
    CHECK(sum == oracle);
    CHECK(sum == mono(w2, 3, 1, 1, 0));  // z^2 zbar^2 has weighted degree 4 > 3
}

TEST_CASE("products") {
    const Weighting w2(2);
    const RS zzb = mono(w2, 8, 1, 1, 0);
    CHECK(zzb * zzb == mono(w2, 8, 2, 2, 0));
    Rng rng(1002);
    const RS phi = rng.series(w2, 8);
    CHECK((phi * RS(w2, 8)).is_zero());
    // (z + zbar)(z - zbar) = z^2 - zbar^2, anti-hermitian
    const RS sum = mono(w2, 8, 1, 0, 0) + mono(w2, 8, 0, 1, 0);
    const RS diff = mono(w2, 8, 1, 0, 0) - mono(w2, 8, 0, 1, 0);
    const RS prod = sum * diff;
    CHECK(prod == mono(w2, 8, 2, 0, 0) - mono(w2, 8, 0, 2, 0));
    CHECK(!is_hermitian(prod));
}

TEST_CASE("ring laws hold exactly on random series") {
    const Weighting w2(2);
    Rng rng(1003);
    for (int round = 0; round < 8; ++round) {
        const RS a = rng.series(w2, 6);
        const RS b = rng.series(w2, 6);
        const RS c = rng.series(w2, 6);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("hermitian closure under add and mul") {
    const Weighting w3(3);
    Rng rng(1004);
    for (int round = 0; round < 6; ++round) {
        const RS a = rng.hermitian_series(w3, 7);
        const RS b = rng.hermitian_series(w3, 7);
        CHECK(is_hermitian(a));
        CHECK(is_hermitian(a + b));
        CHECK(is_hermitian(a * b));
        CHECK(conj_series(a) == a);
    }
}

TEST_CASE("truncation soundness") {
    const Weighting w2(2);
    Rng rng(1005);
    for (int round = 0; round < 6; ++round) {
        const RS a = rng.series(w2, 8);
        const RS b = rng.series(w2, 8);
        CHECK((a * b).truncated(5) == a.truncated(5) * b.truncated(5));
        CHECK((a + b).truncated(5) == a.truncated(5) + b.truncated(5));
    }
}

TEST_CASE("u-slices") {
    const Weighting w2(2);
    const RS zzb = mono(w2, 8, 1, 1, 0);
    CHECK(slice_in_u(zzb, 1, 1) == std::vector<GaussianRational>{GaussianRational(rat(1))});
    const RS zzbu2 = mono(w2, 8, 1, 1, 2);
    const auto f11 = slice_in_u(zzbu2, 1, 1);
    REQUIRE(f11.size() == 3);
    CHECK(f11[0].is_zero());
    CHECK(f11[1].is_zero());
    CHECK(f11[2] == GaussianRational(rat(1)));

    Rng rng(1006);
    const RS phi = rng.series(w2, 9);
    const auto f22 = slice_in_u(phi, 2, 2);
    for (size_t m = 0; m < f22.size(); ++m) CHECK(f22[m] == phi.coeff(2, 2, static_cast<int>(m)));
}

TEST_CASE("real and imaginary parts") {
    const Weighting w2(2);
    Rng rng(1007);
    const RS s = rng.series(w2, 6);
    const RS re = real_part(s);
    const RS im = imag_part(s);
    CHECK(is_hermitian(re));
    CHECK(is_hermitian(im));
    const RS rebuilt = re + scaled(im, GaussianRational::i());
    CHECK(rebuilt == s.truncated(rebuilt.trunc()));
}

TEST_CASE("reweighting preserves trusted coefficients") {
    const Weighting w2(2), w4(4);
    Rng rng(1008);
    const RS a = rng.series(w2, 8);
    const RS b = reweight(a, w4);
    CHECK(b.trunc() == 8);  // raising the u weight keeps the trusted order
    for (const auto& [k, v] : b.terms()) {
        CHECK(v == a.coeff(k));
        CHECK(k.weighted_degree(w4) <= b.trunc());
    }
    const RS back = reweight(b, w2);
    CHECK(back.trunc() == reweighted_trunc(w4, 8, w2));
    for (const auto& [k, v] : back.terms()) CHECK(v == a.coeff(k));
    // every key the new truncation admits was trusted before
    CHECK(reweighted_trunc(w4, 8, w2) == 4);
}

TEST_CASE("derivatives") {
    const Weighting w2(2);
    const RS s = mono(w2, 8, 2, 1, 1, GaussianRational(rat(3)));
    CHECK(derivative_z(s) == mono(w2, 7, 1, 1, 1, GaussianRational(rat(6))));
    CHECK(derivative_zbar(s) == mono(w2, 7, 2, 0, 1, GaussianRational(rat(3))));
    CHECK(derivative_u(s) == mono(w2, 6, 2, 1, 0, GaussianRational(rat(3))));
}
