#pragma once

/**
 * @file simplex.hpp
 * @brief Exact rational simplex for max c.x subject to A x <= b, x >= 0, b >= 0.
 *
 * The slack basis is feasible because b >= 0, so a single phase suffices.
 * Bland's rule (lowest index enters, lowest basic index leaves on ties)
 * guarantees termination.
 */

#include "chyp/exact_arith.hpp"

#include <vector>

namespace chyp {

struct LpResult {
    enum class Status { Optimal, Unbounded };
    Status status = Status::Optimal;
    Rational value = 0;
    std::vector<Rational> x;
};

inline LpResult maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                         const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw std::invalid_argument("constraint count mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("ragged constraint matrix");
    for (const auto& v : b)
        if (v < 0) throw std::invalid_argument("right-hand side must be non-negative");

    // Tableau columns: n structural, m slack, then the right-hand side.
    const std::size_t width = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][width - 1] = b[i];
    }
    // Reduced costs: z_j - c_j, optimal when all >= 0.
    std::vector<Rational> cost(width, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = -c[j];
    std::vector<std::size_t> basic(m);
    for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) return {LpResult::Status::Unbounded, 0, {}};

        const Rational pivot = t[leave][enter];
        for (auto& v : t[leave]) v /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j)
                if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j)
                if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
        }
        basic[leave] = enter;
    }

    LpResult r;
    r.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < n) r.x[basic[i]] = t[i][width - 1];
    r.value = cost[width - 1];
    return r;
}

}  // namespace chyp
