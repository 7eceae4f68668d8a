#pragma once

// Cartan angular invariant, the Kahler cocycle c_phi = 2A, complex reflections.

#include "chyp/hermitian_space.hpp"

namespace chyp {

/// Value of the Cartan invariant; `degenerate` when two of the three points coincide.
struct CartanValue {
    bool degenerate = false;
    Angle angle;

    bool is_exact() const { return degenerate || angle.is_exact(); }

    std::string to_string() const { return degenerate ? "degenerate (c_phi = 0)" : angle.to_string(); }
};

/// The triple product -<p,q><q,r><r,p> whose argument is the Cartan invariant.
inline Scalar cartan_triple_product(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
    const Model m = p.model();
    const CVector& a = p.rep();
    const CVector& b = q.rep();
    const CVector& c = r.rep();
    if (a.is_exact() && b.is_exact() && c.is_exact()) {
        const auto& x = a.exact();
        const auto& y = b.exact();
        const auto& z = c.exact();
        return -(detail::herm(x, y, m) * detail::herm(y, z, m) * detail::herm(z, x, m));
    }
    auto x = a.approx();
    auto y = b.approx();
    auto z = c.approx();
    return -(detail::herm(x, y, m) * detail::herm(y, z, m) * detail::herm(z, x, m));
}

/// A(p,q,r) = arg(-<p,q><q,r><r,p>), independent of the chosen lifts.
inline CartanValue cartan(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
    require_same_model(p, q);
    require_same_model(p, r);
    if (same_point(p, q) || same_point(q, r) || same_point(p, r)) return {true, Angle()};
    Scalar prod = cartan_triple_product(p, q, r);
    if (const auto* g = std::get_if<GaussianRational>(&prod)) return {false, exact_arg(*g)};
    return {false, approx_arg(std::get<Complex>(prod))};
}

/**
 * c_phi(p,q,r) = 2 A(p,q,r) as a real multiple of pi in [-pi, pi]; exactly
 * 0 on degenerate triples. Not reduced mod 2*pi, so -pi stays -pi.
 */
inline PiValue c_phi(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
    CartanValue a = cartan(p, q, r);
    if (a.degenerate) return PiValue::zero(1);
    return PiValue::from_angle(a.angle).scaled(Rational(2));
}

/**
 * Complex reflection z -> z + (eta - 1) <z,c>/<c,c> c in the complex line
 * polar to the positive vector c.
 */
inline Isometry reflection_matrix(const CVector& c, const Scalar& eta, Model model) {
    if (c.is_zero() || classify(c, model) != PointClass::Positive)
        throw GeometryError("polar vector of a complex line must be positive");
    if (const auto* e = std::get_if<GaussianRational>(&eta)) {
        if (norm(*e) != 1) throw GeometryError("reflection factor " + to_string(*e) + " is not of modulus 1");
    } else if (std::abs(std::abs(std::get<Complex>(eta)) - 1.0) > kTolerance) {
        throw GeometryError("reflection factor is not of modulus 1");
    }
    const bool exact = c.is_exact() && is_exact(eta);
    auto build = [&](const auto& v, const auto& factor) {
        using S = std::decay_t<decltype(v[0])>;
        S cc = detail::herm(v, v, model);
        S coeff = (factor - S(1)) * inverse(cc);
        // <z,c> = sum_j z_j (J conj c)_j
        Vec3<S> jc;
        for (int j = 0; j < 3; ++j) {
            S acc{};
            for (int k = 0; k < 3; ++k) {
                int g = detail::gram(model, j, k);
                if (g != 0) acc = acc + S(g) * conjugate(v[k]);
            }
            jc[j] = acc;
        }
        Mat3<S> m;
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 3; ++col) m[3 * r + col] = S(r == col ? 1 : 0) + coeff * v[r] * jc[col];
        return CMatrix(m);
    };
    CMatrix m = exact ? build(c.exact(), std::get<GaussianRational>(eta)) : build(c.approx(), to_complex(eta));
    return make_isometry(m, model);
}

}  // namespace chyp
