#pragma once

// Integer row-lattice reduction (Hermite-style) with transformation
// bookkeeping, for multiplicative systems x^A = c: membership of a target
// exponent vector in the row lattice yields an explicit integer
// combination, and the zero rows of the transform are the integer
// relations among the input rows.

#include <crnf/errors.hpp>
#include <crnf/rational.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace crnf {

using IntRow = std::vector<Integer>;

struct RowLattice {
    std::vector<IntRow> basis;        // echelon basis of the row lattice
    std::vector<IntRow> basis_combo;  // basis[r] = sum basis_combo[r][t] * input[t]
    std::vector<IntRow> relations;    // primitive kappa with kappa . input = 0
    size_t dim = 0;
    size_t input_count = 0;
};

/// Reduces the rows to an echelon lattice basis by integer row operations,
/// tracking how each basis row and each relation combines the input rows.
inline RowLattice reduce_rows(const std::vector<IntRow>& rows) {
    RowLattice out;
    if (rows.empty()) return out;
    out.dim = rows[0].size();
    out.input_count = rows.size();
    std::vector<IntRow> work = rows;
    std::vector<IntRow> combo(rows.size(), IntRow(rows.size(), 0));
    for (size_t t = 0; t < rows.size(); ++t) combo[t][t] = 1;

    size_t lead = 0;
    for (size_t col = 0; col < out.dim && lead < work.size(); ++col) {
        while (true) {
            size_t best = work.size();
            for (size_t r = lead; r < work.size(); ++r) {
                if (sgn(work[r][col]) == 0) continue;
                if (best == work.size() || abs(work[r][col]) < abs(work[best][col])) best = r;
            }
            if (best == work.size()) break;  // column exhausted, no pivot here
            std::swap(work[lead], work[best]);
            std::swap(combo[lead], combo[best]);
            bool leftovers = false;
            for (size_t r = lead + 1; r < work.size(); ++r) {
                if (sgn(work[r][col]) == 0) continue;
                const Integer q = work[r][col] / work[lead][col];
                if (sgn(q) != 0) {
                    for (size_t c = 0; c < out.dim; ++c) work[r][c] -= q * work[lead][c];
                    for (size_t t = 0; t < rows.size(); ++t) combo[r][t] -= q * combo[lead][t];
                }
                if (sgn(work[r][col]) != 0) leftovers = true;
            }
            if (!leftovers) {
                if (sgn(work[lead][col]) < 0) {
                    for (auto& x : work[lead]) x = -x;
                    for (auto& x : combo[lead]) x = -x;
                }
                ++lead;
                break;
            }
        }
    }
    for (size_t r = 0; r < work.size(); ++r) {
        bool zero = true;
        for (const auto& x : work[r])
            if (sgn(x) != 0) zero = false;
        if (!zero) {
            out.basis.push_back(work[r]);
            out.basis_combo.push_back(combo[r]);
            continue;
        }
        IntRow rel = combo[r];
        Integer g = 0;
        for (const auto& x : rel) g = gcd(g, x);
        if (sgn(g) > 0 && g != 1)
            for (auto& x : rel) x /= g;
        bool trivial = true;
        for (const auto& x : rel)
            if (sgn(x) != 0) trivial = false;
        if (!trivial) out.relations.push_back(std::move(rel));
    }
    return out;
}

/// Integer y with sum_t y[t] * rows[t] == target, if the target lies in
/// the row lattice.
inline std::optional<IntRow> express_in_lattice(const RowLattice& lat, const IntRow& target) {
    IntRow residue = target;
    IntRow y(lat.input_count, 0);
    for (size_t b = 0; b < lat.basis.size(); ++b) {
        size_t col = 0;
        while (col < lat.dim && sgn(lat.basis[b][col]) == 0) ++col;
        if (col == lat.dim || col >= residue.size()) continue;
        if (sgn(residue[col]) == 0) continue;
        if (residue[col] % lat.basis[b][col] != 0) return std::nullopt;
        const Integer q = residue[col] / lat.basis[b][col];
        for (size_t c = 0; c < lat.dim && c < residue.size(); ++c)
            residue[c] -= q * lat.basis[b][c];
        for (size_t t = 0; t < lat.input_count; ++t) y[t] += q * lat.basis_combo[b][t];
    }
    for (const auto& x : residue)
        if (sgn(x) != 0) return std::nullopt;
    return y;
}

}  // namespace crnf
