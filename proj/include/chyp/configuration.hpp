#pragma once

// The six Ball-model boundary points and five Z[i]-isometries used by the
// lower-bound certificate.

#include "chyp/hermitian_space.hpp"

#include <array>
#include <string>
#include <vector>

namespace chyp {

struct Configuration {
    // x+ = (1,0,1), x_i = (i,0,1), y+ = (0,1,1), y_i = (0,i,1), y_-i = (0,-i,1), v = ((1+i)/2,(1+i)/2,1)
    std::vector<BoundaryPoint> points;
    std::vector<std::string> names;

    // diag(1,-1,1)            reflection in L_x
    // diag(-i,1,1)            reflection in L_y with factor -i
    // diag(1,i,1)             reflection in L_x with factor i
    // [[0,1,0],[1,0,0],[0,0,1]]
    // [[-1+i,0,1],[0,-i,0],[i,0,1-i]]
    std::vector<Isometry> symmetries;
    std::vector<std::string> symmetry_names;

    const BoundaryPoint& x_plus() const { return points[0]; }
    const BoundaryPoint& x_i() const { return points[1]; }
    const BoundaryPoint& y_plus() const { return points[2]; }
    const BoundaryPoint& y_i() const { return points[3]; }
    const BoundaryPoint& y_minus_i() const { return points[4]; }
    const BoundaryPoint& v() const { return points[5]; }

    /// (x+, x_i, y+, y_i, y_-i)
    std::vector<BoundaryPoint> octahedron_tuple() const { return {points[0], points[1], points[2], points[3], points[4]}; }
    /// (x+, x_i, y+, y_i, v)
    std::vector<BoundaryPoint> cube_tuple() const { return {points[0], points[1], points[2], points[3], points[5]}; }
};

/// Builds and validates the configuration: all points null and pairwise distinct, all matrices unitary.
inline Configuration six_point_configuration() {
    const GaussianRational i = GaussianRational::unit_i();
    const GaussianRational half_1i(Rational(1, 2), Rational(1, 2));
    Configuration c;
    auto add = [&](const char* name, CVector v) {
        c.points.emplace_back(Model::Ball, std::move(v));
        c.names.emplace_back(name);
    };
    add("x+", make_vector(1, 0, 1));
    add("x_i", make_vector(i, 0, 1));
    add("y+", make_vector(0, 1, 1));
    add("y_i", make_vector(0, i, 1));
    add("y_-i", make_vector(0, -i, 1));
    add("v", make_vector(half_1i, half_1i, 1));

    for (std::size_t a = 0; a < c.points.size(); ++a)
        for (std::size_t b = a + 1; b < c.points.size(); ++b)
            if (same_point(c.points[a], c.points[b])) throw GeometryError("configuration points coincide");

    auto sym = [&](const char* name, CMatrix m) {
        Isometry g = make_isometry(m, Model::Ball);
        if (g.scale().coefficient() != 1) throw GeometryError(std::string(name) + " does not preserve the form");
        c.symmetries.push_back(g);
        c.symmetry_names.emplace_back(name);
    };
    sym("diag(1,-1,1)", make_matrix({1, 0, 0, 0, -1, 0, 0, 0, 1}));
    sym("diag(-i,1,1)", make_matrix({-i, 0, 0, 0, 1, 0, 0, 0, 1}));
    sym("diag(1,i,1)", make_matrix({1, 0, 0, 0, i, 0, 0, 0, 1}));
    sym("swap", make_matrix({0, 1, 0, 1, 0, 0, 0, 0, 1}));
    sym("cube", make_matrix({GaussianRational(-1, 1), 0, 1, 0, -i, 0, i, 0, GaussianRational(1, -1)}));
    return c;
}

/// True when every entry is a Gaussian integer.
inline bool has_gaussian_integer_entries(const Isometry& g) {
    if (!g.is_exact()) return false;
    for (const auto& e : g.matrix().exact())
        if (boost::multiprecision::denominator(e.re) != 1 || boost::multiprecision::denominator(e.im) != 1) return false;
    return true;
}

}  // namespace chyp
