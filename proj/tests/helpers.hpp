#pragma once

// Shared deterministic generators for the test suite. Everything is
// seeded explicitly so failures reproduce.

#include <crnf/gaussian_rational.hpp>
#include <crnf/holo_series.hpp>
#include <crnf/series3.hpp>

#include <random>

namespace crnf_test {

using namespace crnf;

class Rng {
  public:
    explicit Rng(unsigned long seed) : eng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    Rational rational(int max_num = 3, int max_den = 3) {
        int num = uniform(-max_num, max_num);
        int den = uniform(1, max_den);
        return rat(num, den);
    }

    Rational nonzero_rational(int max_num = 3, int max_den = 3) {
        Rational q = rational(max_num, max_den);
        while (sgn(q) == 0) q = rational(max_num, max_den);
        return q;
    }

    GaussianRational gaussian(int max_num = 3, int max_den = 3) {
        return {rational(max_num, max_den), rational(max_num, max_den)};
    }

    GaussianRational nonzero_gaussian(int max_num = 3, int max_den = 3) {
        GaussianRational c = gaussian(max_num, max_den);
        while (c.is_zero()) c = gaussian(max_num, max_den);
        return c;
    }

    /// Random complex-coefficient series, density ~ fill_percent.
    Series3<GaussianRational> series(Weighting wt, int trunc, int fill_percent = 35,
                                     int min_wdeg = 0) {
        Series3<GaussianRational> s(wt, trunc);
        for (int i = 0; i <= trunc; ++i)
            for (int j = 0; i + j <= trunc; ++j)
                for (int m = 0; i + j + m * wt.u_weight <= trunc; ++m) {
                    if (i + j + m * wt.u_weight < min_wdeg) continue;
                    if (uniform(0, 99) >= fill_percent) continue;
                    s.set({i, j, m}, gaussian());
                }
        return s;
    }

    /// Random hermitian-real series with no constant and no weight-one or
    /// pure-u linear terms, i.e. a valid defining-function perturbation.
    Series3<GaussianRational> hermitian_series(Weighting wt, int trunc, int fill_percent = 35,
                                               int min_wdeg = 2) {
        Series3<GaussianRational> s(wt, trunc);
        for (int i = 0; i <= trunc; ++i)
            for (int j = 0; j <= i && i + j <= trunc; ++j)
                for (int m = 0; i + j + m * wt.u_weight <= trunc; ++m) {
                    const Mono3 key{i, j, m};
                    if (key.weighted_degree(wt) < min_wdeg) continue;
                    if (i + j == 0) continue;  // no pure-u terms: tangency
                    if (uniform(0, 99) >= fill_percent) continue;
                    GaussianRational c = gaussian();
                    if (i == j) c.im = 0;
                    if (c.is_zero()) continue;
                    s.set(key, c);
                    if (i != j) s.set(key.mirrored(), conj(c));
                }
        return s;
    }

    HoloSeries<GaussianRational> holo_series(Weighting wt, int trunc, int fill_percent = 35,
                                             int min_wdeg = 1) {
        HoloSeries<GaussianRational> h(wt, trunc);
        for (int i = 0; i <= trunc; ++i)
            for (int j = 0; i + j * wt.u_weight <= trunc; ++j) {
                if (i + j * wt.u_weight < min_wdeg) continue;
                if (uniform(0, 99) >= fill_percent) continue;
                h.set({i, j}, gaussian());
            }
        return h;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace crnf_test
