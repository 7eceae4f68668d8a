#pragma once

/**
 * @file search.hpp
 * @brief Certificate search: face orbits -> relation kernel -> exact LP.
 *
 * For tuples t_1..t_n the relation rows r_i expand delta b(t_i) in free
 * orbit variables. Any lambda with sum lambda_i r_i = 0 certifies
 * |lambda.c| / |lambda|_1 as a lower bound, so the best bound is
 *
 *     max c.lambda  subject to  lambda in ker,  |lambda|_1 <= 1.
 *
 * With lambda = K mu for a kernel basis K this becomes an LP in
 * (mu+, mu-, s) with -s <= K mu <= s and sum s <= 1, whose slack basis is
 * feasible.
 */

#include "chyp/certificate.hpp"
#include "chyp/linalg.hpp"
#include "chyp/simplex.hpp"

#include <memory>
#include <thread>

namespace chyp {

struct RelationSystem {
    std::vector<Tuple5> tuples;
    std::vector<IncidenceRow> rows;
    std::vector<RationalVector> kernel;  // vectors lambda over the tuples with sum lambda_i rows_i = 0
    std::shared_ptr<const FaceOrbitTable> table;
};

/// Kernel of the transposed incidence matrix of the given rows.
inline std::vector<RationalVector> left_kernel(const std::vector<IncidenceRow>& rows) {
    std::map<int, std::size_t> orbit_row;
    for (const auto& r : rows)
        for (const auto& [orbit, coeff] : r) orbit_row.emplace(orbit, orbit_row.size());
    IntMatrix m(orbit_row.size(), std::vector<Integer>(rows.size(), Integer(0)));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [orbit, coeff] : rows[i]) m[orbit_row[orbit]][i] = coeff;
    return nullspace(std::move(m), rows.size());
}

inline RelationSystem relation_kernel(const std::vector<Tuple5>& tuples, std::shared_ptr<const FaceOrbitTable> table) {
    RelationSystem s;
    s.tuples = tuples;
    s.table = table;
    for (const auto& t : tuples) s.rows.push_back(incidence_row(t, [&](const Face& f) { return table->entry(f); }));
    s.kernel = left_kernel(s.rows);
    return s;
}

inline RelationSystem relation_kernel(const std::vector<Tuple5>& tuples, const FaceOrbitTable& table) {
    return relation_kernel(tuples, std::make_shared<const FaceOrbitTable>(table));
}

/// lambda maximizing c.lambda over the kernel with |lambda|_1 <= 1, and that maximum.
inline std::pair<RationalVector, Rational> maximize_over_kernel(const std::vector<RationalVector>& kernel,
                                                                const std::vector<Rational>& c) {
    const std::size_t n = c.size();
    const std::size_t k = kernel.size();
    if (k == 0) return {RationalVector(n, Rational(0)), Rational(0)};

    const std::size_t vars = 2 * k + n;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int side : {1, -1})
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> row(vars, Rational(0));
            for (std::size_t q = 0; q < k; ++q) {
                row[q] = side * kernel[q][j];
                row[k + q] = -side * kernel[q][j];
            }
            row[2 * k + j] = -1;
            a.push_back(std::move(row));
            b.push_back(0);
        }
    std::vector<Rational> total(vars, Rational(0));
    for (std::size_t j = 0; j < n; ++j) total[2 * k + j] = 1;
    a.push_back(std::move(total));
    b.push_back(1);

    std::vector<Rational> obj(vars, Rational(0));
    for (std::size_t q = 0; q < k; ++q) {
        Rational ck = 0;
        for (std::size_t j = 0; j < n; ++j) ck += c[j] * kernel[q][j];
        obj[q] = ck;
        obj[k + q] = -ck;
    }
    LpResult r = maximize(a, b, obj);
    if (r.status != LpResult::Status::Optimal) throw std::logic_error("bounded LP reported unbounded");

    RationalVector lambda(n, Rational(0));
    for (std::size_t q = 0; q < k; ++q) {
        const Rational mu = r.x[q] - r.x[k + q];
        if (mu == 0) continue;
        for (std::size_t j = 0; j < n; ++j) lambda[j] += mu * kernel[q][j];
    }
    return {lambda, r.value};
}

/**
 * Best certificate over the kernel of `system` for the cup-square values
 * `cvalues` (multiples of pi^2). Both c and -c are optimized; the larger
 * wins, ties going to c.
 */
inline Certificate optimize_certificate(const RelationSystem& system, const std::vector<Rational>& cvalues) {
    if (cvalues.size() != system.tuples.size()) throw std::invalid_argument("one cvalue per tuple is required");
    auto [plus, plus_value] = maximize_over_kernel(system.kernel, cvalues);
    std::vector<Rational> negated;
    for (const auto& v : cvalues) negated.push_back(-v);
    auto [minus, minus_value] = maximize_over_kernel(system.kernel, negated);
    RationalVector lambda = minus_value > plus_value ? minus : plus;
    const Rational value = std::max(plus_value, minus_value);
    if (value == 0) std::fill(lambda.begin(), lambda.end(), Rational(0));

    Certificate cert;
    if (system.table) {
        cert = make_certificate(*system.table, system.tuples, lambda, cvalues);
    } else {
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (lambda[i] == 0) continue;
            cert.tuples.push_back(system.tuples[i]);
            cert.rows.push_back(system.rows[i]);
            cert.lambda.push_back(lambda[i]);
            cert.cvalues.push_back(cvalues[i]);
        }
        cert.bound = certified_bound(cert.lambda, cert.cvalues);
    }
    if (cert.bound != value) throw std::logic_error("LP optimum and certified bound disagree");
    return cert;
}

/// All increasing 5-tuples of indices below n in lexicographic order, at most `cap` of them.
inline std::vector<Tuple5> enumerate_tuples(int n, std::size_t cap) {
    std::vector<Tuple5> out;
    if (n < 5) return out;
    Tuple5 t = {0, 1, 2, 3, 4};
    while (out.size() < cap) {
        out.push_back(t);
        int k = 4;
        while (k >= 0 && t[k] == n - 5 + k) --k;
        if (k < 0) break;
        ++t[k];
        for (int j = k + 1; j < 5; ++j) t[j] = t[j - 1] + 1;
    }
    return out;
}

struct SearchOutcome {
    Certificate certificate;
    std::size_t group_size = 0;
    std::size_t orbits = 0;
    std::size_t free_orbits = 0;
    std::size_t tuples_enumerated = 0;
    std::size_t tuples_inexact = 0;  // skipped: cup square not an exact multiple of pi^2
    std::size_t kernel_dimension = 0;
};

/**
 * Enumerates 5-tuples of distinct points (up to opts.max_tuples), keeps those
 * with an exact cup-square value, and optimizes a certificate. Deterministic
 * for fixed inputs; opts.threads only splits the cup-square evaluation.
 */
inline SearchOutcome search(const std::vector<BoundaryPoint>& points, const std::vector<Isometry>& group,
                            const SearchOptions& opts = {}) {
    if (opts.max_tuples == 0) throw std::invalid_argument("max-tuples must be positive");
    auto table = std::make_shared<const FaceOrbitTable>(face_orbits(points, group, opts));
    SearchOutcome out;
    out.group_size = table->group().size();
    out.orbits = table->orbit_count();
    for (std::size_t o = 0; o < out.orbits; ++o) out.free_orbits += table->orbit_free(static_cast<int>(o));

    const std::vector<Tuple5> all = enumerate_tuples(static_cast<int>(points.size()), opts.max_tuples);
    out.tuples_enumerated = all.size();

    std::vector<PiValue> values(all.size(), PiValue::zero(2));
    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::vector<BoundaryPoint> x;
            for (int k : all[i]) x.push_back(points[k]);
            values[i] = cup_sq_reduced(x);
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opts.threads, all.size()));
    if (workers == 1) {
        evaluate(0, all.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (all.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(evaluate, std::min(all.size(), w * chunk), std::min(all.size(), (w + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    std::vector<Tuple5> tuples;
    std::vector<Rational> cvalues;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!values[i].is_exact()) {
            ++out.tuples_inexact;
            continue;
        }
        tuples.push_back(all[i]);
        cvalues.push_back(values[i].is_exact_zero() ? Rational(0) : values[i].coefficient());
    }
    RelationSystem system = relation_kernel(tuples, table);
    out.kernel_dimension = system.kernel.size();
    out.certificate = optimize_certificate(system, cvalues);
    return out;
}

}  // namespace chyp
