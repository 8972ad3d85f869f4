#pragma once

// Exact dense Gauss-Jordan elimination over the rationals. Pivoting is
// deterministic (first nonzero entry in column order), free variables are
// reported and set to zero in the returned solution; that choice is the
// gauge every caller in the library shares.

#include <crnf/errors.hpp>
#include <crnf/rational.hpp>

#include <vector>

namespace crnf {

using RatMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
    bool consistent = false;
    int rank = 0;
    std::vector<Rational> values;  // one per column; free columns hold zero
    std::vector<int> pivot_columns;
    std::vector<int> free_columns;
    RatMatrix reduced_rows;             // the pivot rows after reduction
    std::vector<Rational> reduced_rhs;  // their right-hand sides

    /// A pivot variable is forced when its reduced row touches no other
    /// column; forced values hold in every solution of the system.
    std::vector<std::pair<int, Rational>> forced_values() const {
        std::vector<std::pair<int, Rational>> out;
        for (size_t r = 0; r < reduced_rows.size(); ++r) {
            int nonzero = 0;
            for (const auto& v : reduced_rows[r])
                if (sgn(v) != 0) ++nonzero;
            if (nonzero == 1) out.emplace_back(pivot_columns[r], reduced_rhs[r]);
        }
        return out;
    }
};

/// Solves rows * x = rhs; `values` is the solution with free coordinates
/// zeroed. When inconsistent, `values` is empty.
inline LinearSolution solve_linear(RatMatrix rows, std::vector<Rational> rhs) {
    const size_t nrows = rows.size();
    require(rhs.size() == nrows, Errc::BadArgument, "rhs size mismatch");
    const size_t ncols = nrows == 0 ? 0 : rows[0].size();
    for (const auto& r : rows)
        require(r.size() == ncols, Errc::BadArgument, "ragged matrix");

    LinearSolution out;
    size_t pivot_row = 0;
    std::vector<int> pivot_col_of_row;
    for (size_t col = 0; col < ncols && pivot_row < nrows; ++col) {
        size_t sel = pivot_row;
        while (sel < nrows && sgn(rows[sel][col]) == 0) ++sel;
        if (sel == nrows) {
            out.free_columns.push_back(static_cast<int>(col));
            continue;
        }
        std::swap(rows[sel], rows[pivot_row]);
        std::swap(rhs[sel], rhs[pivot_row]);
        const Rational inv = 1 / rows[pivot_row][col];
        for (size_t c = col; c < ncols; ++c) rows[pivot_row][c] *= inv;
        rhs[pivot_row] *= inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == pivot_row || sgn(rows[r][col]) == 0) continue;
            const Rational factor = rows[r][col];
            for (size_t c = col; c < ncols; ++c) rows[r][c] -= factor * rows[pivot_row][c];
            rhs[r] -= factor * rhs[pivot_row];
        }
        out.pivot_columns.push_back(static_cast<int>(col));
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++pivot_row;
    }
    {
        std::vector<bool> is_pivot(ncols, false);
        for (int c : out.pivot_columns) is_pivot[static_cast<size_t>(c)] = true;
        out.free_columns.clear();
        for (size_t c = 0; c < ncols; ++c)
            if (!is_pivot[c]) out.free_columns.push_back(static_cast<int>(c));
    }
    out.rank = static_cast<int>(pivot_row);
    for (size_t r = 0; r < pivot_row; ++r) {
        out.reduced_rows.push_back(rows[r]);
        out.reduced_rhs.push_back(rhs[r]);
    }
    for (size_t r = pivot_row; r < nrows; ++r)
        if (sgn(rhs[r]) != 0) {
            out.consistent = false;
            return out;
        }
    out.consistent = true;
    out.values.assign(ncols, Rational(0));
    for (size_t r = 0; r < pivot_row; ++r)
        out.values[static_cast<size_t>(pivot_col_of_row[r])] = rhs[r];
    return out;
}

}  // namespace crnf
