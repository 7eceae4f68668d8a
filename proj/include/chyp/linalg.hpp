#pragma once

// Exact nullspace by fraction-free (Bareiss) elimination.

#include "chyp/exact_arith.hpp"

#include <vector>

namespace chyp {

using IntMatrix = std::vector<std::vector<Integer>>;
using RationalVector = std::vector<Rational>;

/**
 * Basis of {x in Q^cols : m x = 0}. Each basis vector has a 1 in its own free
 * column and 0 in the other free columns, so the basis is in reduced form.
 */
inline std::vector<RationalVector> nullspace(IntMatrix m, std::size_t cols) {
    const std::size_t rows = m.size();
    for (const auto& r : m)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");

    std::vector<std::size_t> pivot_cols;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t k = pivot_cols.size(); k-- > 0;) {
            const std::size_t c = pivot_cols[k];
            Rational acc = 0;
            for (std::size_t j = c + 1; j < cols; ++j)
                if (m[k][j] != 0 && x[j] != 0) acc += Rational(m[k][j]) * x[j];
            x[c] = -acc / Rational(m[k][c]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace chyp
