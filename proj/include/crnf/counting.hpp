#pragma once

// The dimension-count heuristics: coefficient counts for surfaces and
// maps truncated at order n, the solvability threshold, and a small
// linearized contact-matching check that realizes the count as an actual
// linear system.

#include <crnf/germ.hpp>
#include <crnf/linear_solve.hpp>
#include <crnf/surface_ops.hpp>

#include <vector>

namespace crnf {

struct CountRow {
    int n = 0;
    Integer surface_coeffs;  // N  = (n+1)(n+2)(n+3)/6 - 1
    Integer map_coeffs;      // N' = 2n^2 + 6n
    bool solvable_expected = false;
};

inline std::vector<CountRow> count_table(int max_n) {
    require(max_n >= 1, Errc::BadArgument, "need at least one row");
    std::vector<CountRow> rows;
    for (int n = 1; n <= max_n; ++n) {
        CountRow row;
        row.n = n;
        row.surface_coeffs = Integer(n + 1) * Integer(n + 2) * Integer(n + 3) / 6 - 1;
        row.map_coeffs = Integer(2) * n * n + Integer(6) * n;
        row.solvable_expected = row.surface_coeffs <= row.map_coeffs;
        rows.push_back(row);
    }
    return rows;
}

/// Smallest n with n^2 > 6n + 25.
inline int threshold() {
    int n = 1;
    while (!(n * n > 6 * n + 25)) ++n;
    return n;
}

struct ContactReport {
    int order = 0;
    int equations = 0;  // real conditions, equals the N of the count
    int unknowns = 0;   // real map coefficients, equals N'
    int rank = 0;
    bool consistent = false;
};

/// Linearized order-n contact matching: assembles the first-order system
/// in the map coefficients whose vanishing makes the transformed first
/// germ osculate the second to plain order n. No claim beyond the
/// linearization.
inline ContactReport linearized_contact_check(const Germ& g1, const Germ& g2, int n) {
    require(n >= 1 && n <= 4, Errc::BadArgument, "contact check is desk-scale: n <= 4");
    const Weighting w2(2);
    const Germ a = reweight(g1, w2);
    const Germ b = reweight(g2, w2);
    const int needed = 2 * n + 1;
    require(a.trunc() >= needed && b.trunc() >= needed, Errc::TruncationTooLow,
            "contact check at order " + std::to_string(n) + " needs weighted truncation >= " +
                std::to_string(needed));
    const int trunc = std::min(a.trunc(), b.trunc());
    const Series3<GaussianRational> phi = a.phi().truncated(trunc);
    const Series3<GaussianRational> phi_z = derivative_z(phi);
    const Series3<GaussianRational> phi_u = derivative_u(phi);

    // first-order response of the defining series to the map (f, g)
    auto delta_phi = [&](const HoloSeries<GaussianRational>& f,
                         const HoloSeries<GaussianRational>& g) {
        const auto f_on = compose_on_surface(f, phi);
        const auto g_on = compose_on_surface(g, phi);
        Series3<GaussianRational> out = imag_part(g_on);
        out -= scaled(real_part(phi_z * f_on), GaussianRational(rat(2)));
        out -= phi_u * real_part(g_on);
        return out;
    };

    std::vector<Mono2> map_monos;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            if (i + j >= 1) map_monos.push_back({i, j});

    std::vector<Mono3> row_keys;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i && i + j <= n; ++j)
            for (int m = 0; i + j + m <= n; ++m)
                if (i + j + m >= 1) row_keys.push_back({i, j, m});

    auto stack = [&](const Series3<GaussianRational>& s) {
        std::vector<Rational> out;
        for (const auto& key : row_keys) {
            const GaussianRational c = s.coeff(key);
            out.push_back(c.re);
            if (key.i != key.j) out.push_back(c.im);
        }
        return out;
    };

    ContactReport report;
    report.order = n;
    report.unknowns = static_cast<int>(4 * map_monos.size());
    const std::vector<Rational> rhs = stack(b.phi() - phi);
    report.equations = static_cast<int>(rhs.size());

    RatMatrix matrix(rhs.size(), std::vector<Rational>(static_cast<size_t>(report.unknowns)));
    size_t col = 0;
    for (bool in_f : {true, false})
        for (const auto& mono : map_monos)
            for (bool imag : {false, true}) {
                HoloSeries<GaussianRational> f(w2, trunc), g(w2, trunc);
                const GaussianRational c =
                    imag ? GaussianRational::i() : GaussianRational(rat(1));
                (in_f ? f : g).set(mono, c);
                const auto column = stack(delta_phi(f, g));
                for (size_t r = 0; r < column.size(); ++r) matrix[r][col] = column[r];
                ++col;
            }

    const LinearSolution sol = solve_linear(matrix, rhs);
    report.rank = sol.rank;
    report.consistent = sol.consistent;
    return report;
}

}  // namespace crnf
