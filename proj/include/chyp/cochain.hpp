#pragma once

/**
 * @file cochain.hpp
 * @brief Homogeneous cochains on finite tuples: alternation, cup product, coboundary.
 *
 * A degree-p cochain is a function of (p+1)-tuples of points. Values can be
 * any type closed under +, unary -, * and scale(value, Rational); PiValue
 * carries c_phi-derived quantities exactly.
 */

#include "chyp/boundary_invariants.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace chyp {

template <class Point, class Value>
class Cochain {
  public:
    using Evaluator = std::function<Value(std::span<const Point>)>;

    Cochain(int degree, Evaluator f) : degree_(degree), f_(std::move(f)) {
        if (degree < 0) throw std::invalid_argument("cochain degree must be non-negative");
    }

    int degree() const { return degree_; }
    std::size_t arity() const { return static_cast<std::size_t>(degree_) + 1; }

    Value operator()(std::span<const Point> x) const {
        if (x.size() != arity())
            throw std::invalid_argument("degree-" + std::to_string(degree_) + " cochain evaluated on " +
                                        std::to_string(x.size()) + " points");
        return f_(x);
    }

    Value operator()(const std::vector<Point>& x) const { return (*this)(std::span<const Point>(x)); }

  private:
    int degree_;
    Evaluator f_;
};

/// Sign of the permutation given as an image list.
inline int permutation_sign(std::span<const int> perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// Alt(f)(x) = 1/(p+1)! sum_sigma sign(sigma) f(x_sigma(0), ..., x_sigma(p)).
template <class Point, class Value>
Cochain<Point, Value> alt(const Cochain<Point, Value>& f) {
    return Cochain<Point, Value>(f.degree(), [f](std::span<const Point> x) {
        const int n = static_cast<int>(x.size());
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        Integer factorial = 1;
        for (int k = 2; k <= n; ++k) factorial *= k;
        const Rational weight(Integer(1), factorial);
        Value total{};
        std::vector<Point> permuted;
        permuted.reserve(n);
        do {
            permuted.clear();
            for (int k : perm) permuted.push_back(x[k]);
            Value term = scale(f(std::span<const Point>(permuted)), weight);
            if (permutation_sign(perm) > 0)
                total = total + term;
            else
                total = total - term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    });
}

/// (f cup g)(x_0..x_{p+q}) = f(x_0..x_p) g(x_p..x_{p+q}).
template <class Point, class Value>
Cochain<Point, Value> cup(const Cochain<Point, Value>& f, const Cochain<Point, Value>& g) {
    const std::size_t p = static_cast<std::size_t>(f.degree());
    return Cochain<Point, Value>(f.degree() + g.degree(), [f, g, p](std::span<const Point> x) {
        return f(x.subspan(0, p + 1)) * g(x.subspan(p, g.arity()));
    });
}

/// delta f(x_0..x_{p+1}) = sum_i (-1)^i f(x_0, .., omit x_i, .., x_{p+1}).
template <class Point, class Value>
Cochain<Point, Value> coboundary(const Cochain<Point, Value>& f) {
    return Cochain<Point, Value>(f.degree() + 1, [f](std::span<const Point> x) {
        Value total{};
        std::vector<Point> face;
        face.reserve(x.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            face.clear();
            for (std::size_t k = 0; k < x.size(); ++k)
                if (k != i) face.push_back(x[k]);
            Value term = f(std::span<const Point>(face));
            if (i % 2 == 0)
                total = total + term;
            else
                total = total - term;
        }
        return total;
    });
}

/// c_phi as a degree-2 cochain.
inline Cochain<BoundaryPoint, PiValue> kahler_cocycle() {
    return Cochain<BoundaryPoint, PiValue>(2, [](std::span<const BoundaryPoint> x) { return c_phi(x[0], x[1], x[2]); });
}

/**
 * delta c_phi on four distinct exact points, as an exact multiple of pi, even
 * when some Cartan angles are not rational multiples of pi. The alternating
 * product of triple products being a positive real puts the alternating sum of
 * angles in 2*pi*Z; each |A| <= pi/2, so the float sum picks the integer.
 * nullopt for inexact or repeated points.
 */
inline std::optional<Rational> kahler_coboundary_exact(std::span<const BoundaryPoint> x) {
    if (x.size() != 4) throw std::invalid_argument("delta c_phi needs exactly four points");
    for (std::size_t i = 0; i < 4; ++i) {
        if (!x[i].is_exact()) return std::nullopt;
        for (std::size_t j = i + 1; j < 4; ++j)
            if (same_point(x[i], x[j])) return std::nullopt;
    }
    auto t = [&](int a, int b, int d) { return std::get<GaussianRational>(cartan_triple_product(x[a], x[b], x[d])); };
    // arg t123 - arg t023 + arg t013 - arg t012 = arg(t123 t013 conj(t023 t012))
    const GaussianRational q = t(1, 2, 3) * t(0, 1, 3) * conjugate(t(0, 2, 3) * t(0, 1, 2));
    if (q.im != 0 || q.re <= 0) return std::nullopt;
    double sum = 0.0;
    const int face[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    for (int i = 0; i < 4; ++i) {
        const double a = cartan(x[face[i][0]], x[face[i][1]], x[face[i][2]]).angle.radians();
        sum += i % 2 == 0 ? a : -a;
    }
    const long k = std::lround(sum / (2.0 * kPi));
    if (std::abs(sum - 2.0 * kPi * static_cast<double>(k)) > 1e-6) return std::nullopt;
    return Rational(4 * k);  // c_phi = 2A
}

inline std::optional<Rational> kahler_coboundary_exact(const std::vector<BoundaryPoint>& x) {
    return kahler_coboundary_exact(std::span<const BoundaryPoint>(x));
}

namespace detail {

inline void require_five(std::span<const BoundaryPoint> x) {
    if (x.size() != 5) throw std::invalid_argument("cup square needs exactly five points");
    for (std::size_t k = 1; k < 5; ++k) require_same_model(x[0], x[k]);
}

}  // namespace detail

/**
 * Alternated cup square of c_phi, via the 3-term form obtained from the
 * cocycle relation:
 *
 *   1/3 [c(0,1,2) c(0,3,4) - c(0,1,3) c(0,2,4) + c(0,1,4) c(0,2,3)].
 *
 * Exact (a rational multiple of pi^2) whenever all six c_phi values are.
 */
inline PiValue cup_sq_reduced(std::span<const BoundaryPoint> x) {
    detail::require_five(x);
    auto c = [&](int a, int b, int d) { return c_phi(x[a], x[b], x[d]); };
    PiValue sum = c(0, 1, 2) * c(0, 3, 4) - c(0, 1, 3) * c(0, 2, 4) + c(0, 1, 4) * c(0, 2, 3);
    return sum.scaled(Rational(1, 3));
}

inline PiValue cup_sq_reduced(const std::vector<BoundaryPoint>& x) {
    return cup_sq_reduced(std::span<const BoundaryPoint>(x));
}

/// Brute-force 120-term alternation of the standard cup square; an independent check on cup_sq_reduced.
inline PiValue cup_sq_full_oracle(std::span<const BoundaryPoint> x) {
    detail::require_five(x);
    static const auto square = alt(cup(kahler_cocycle(), kahler_cocycle()));
    return square(x);
}

inline PiValue cup_sq_full_oracle(const std::vector<BoundaryPoint>& x) {
    return cup_sq_full_oracle(std::span<const BoundaryPoint>(x));
}

}  // namespace chyp
