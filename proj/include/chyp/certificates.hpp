#pragma once

/**
 * @file certificates.hpp
 * @brief Checks on the six-point configuration: Cartan values, the two
 *        symmetry identities, the 2/9 certificate, norm bounds and derived constants.
 */

#include "chyp/certificate.hpp"
#include "chyp/configuration.hpp"

#include <sstream>

namespace chyp {

struct ReportLine {
    std::string label;
    bool pass = true;
    std::string detail;
    bool flagged = false;  // outside the expected value set; needs a human look, not a failure
};

struct Report {
    std::string title;
    std::vector<ReportLine> lines;

    void add(std::string label, bool pass, std::string detail = {}) {
        lines.push_back({std::move(label), pass, std::move(detail), false});
    }
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    bool flagged() const {
        for (const auto& l : lines)
            if (l.flagged) return true;
        return false;
    }
    std::string to_string() const {
        std::ostringstream os;
        os << "== " << title << (pass() ? "" : " [FAILED]") << "\n";
        for (const auto& l : lines) {
            os << (l.pass ? (l.flagged ? "  FLAG " : "  ok   ") : "  FAIL ") << l.label;
            if (!l.detail.empty()) os << ": " << l.detail;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::string triple_label(const Configuration& c, int a, int b, int d) {
    return "A(" + c.names[a] + ", " + c.names[b] + ", " + c.names[d] + ")";
}

inline std::string pi_string(const Rational& coeff, int power) { return format_pi_multiple(coeff, power); }

}  // namespace detail

/**
 * The Cartan values on the configuration: nine tabulated triples plus
 * A(x_i, y+, y_i), each with the doubling c_phi = 2A checked exactly.
 */
inline Report verify_cartan_table() {
    const Configuration c = six_point_configuration();
    struct Row {
        int a, b, d;
        Rational expect;  // multiple of pi
    };
    enum { XP, XI, YP, YI, YM, V };
    const Row rows[] = {
        {XP, XI, YP, Rational(1, 4)},  {XP, XI, YI, Rational(1, 4)},  {XP, XI, YM, Rational(1, 4)},
        {XP, YP, YI, Rational(1, 4)},  {XP, YP, YM, Rational(-1, 4)}, {XP, XI, V, Rational(-1, 4)},
        {XP, YI, YM, Rational(0)},     {XP, YP, V, Rational(0)},      {XP, YI, V, Rational(-1, 2)},
        {XI, YP, YI, Rational(1, 4)},
    };
    Report r{"Cartan invariants of the configuration", {}};
    for (const auto& row : rows) {
        const auto& p = c.points;
        CartanValue a = cartan(p[row.a], p[row.b], p[row.d]);
        PiValue cp = c_phi(p[row.a], p[row.b], p[row.d]);
        const bool exact = !a.degenerate && a.angle.is_exact() && cp.is_exact();
        const bool ok = exact && a.angle.pi_coefficient() == row.expect && cp.coefficient() == 2 * row.expect;
        std::string detail = a.to_string() + ", c_phi = " + cp.to_string();
        if (!ok) detail += " (expected " + detail::pi_string(row.expect, 1) + ")";
        r.add(detail::triple_label(c, row.a, row.b, row.d), ok, detail);
    }
    return r;
}

/// A claim "matrix k sends each source point to the matching target point".
struct MappingClaim {
    int matrix;
    std::vector<int> from;
    std::vector<int> to;
    std::string text;
};

inline std::vector<MappingClaim> symmetry_claims() {
    enum { XP, XI, YP, YI, YM, V };
    return {
        {0, {YI, YM}, {YM, YI}, "exchanges y_i and y_-i"},
        {0, {XP, XI}, {XP, XI}, "fixes x+ and x_i"},
        {1, {XI}, {XP}, "sends x_i to x+"},
        {1, {YP, YI, YM}, {YP, YI, YM}, "fixes y+, y_i and y_-i"},
        {2, {YP, YM}, {YI, YP}, "sends y+ to y_i and y_-i to y+"},
        {2, {XP, XI}, {XP, XI}, "fixes x+ and x_i"},
        {3, {XP, YP, XI, YI}, {YP, XP, YI, XI}, "exchanges x+ with y+ and x_i with y_i"},
        {3, {V}, {V}, "fixes v"},
        {4, {XP, XI, YI, V}, {XI, XP, V, YP}, "sends (x+, x_i, y_i, v) to (x_i, x+, v, y+)"},
    };
}

namespace detail {

/// delta b over a tuple, written in face variables of each orbit's smallest face.
inline std::string format_expansion(const FaceOrbitTable& table, const Configuration& c, const Tuple5& t) {
    IncidenceRow row = incidence_row(t, [&](const Face& f) { return table.entry(f); });
    if (row.empty()) return "0";
    std::string out;
    for (const auto& [orbit, coeff] : row) {
        Face face{};
        int sign = 0;
        for (const Face& f : table.faces()) {
            FaceEntry e = table.entry(f);
            if (e.orbit == orbit && e.sign != 0) {
                face = f;
                sign = e.sign;
                break;
            }
        }
        Integer k = coeff * sign;  // coefficient of b(face)
        std::string name = "b(" + c.names[face[0]] + "," + c.names[face[1]] + "," + c.names[face[2]] + "," +
                           c.names[face[3]] + ")";
        std::string mag = abs(k) == 1 ? "" : Integer(abs(k)).str() + " ";
        out += out.empty() ? (k < 0 ? "-" : "") : (k < 0 ? " - " : " + ");
        out += mag + name;
    }
    return out;
}

}  // namespace detail

/**
 * Verifies the nine point-mapping claims by matrix action, then replays the
 * two identities for alternating invariant b on formal face variables,
 * using only identifications made by the five generators themselves.
 */
inline Report verify_symmetry_lemmas() {
    const Configuration c = six_point_configuration();
    Report r{"Symmetry identities", {}};
    for (const auto& claim : symmetry_claims()) {
        const Isometry& g = c.symmetries[claim.matrix];
        bool ok = true;
        std::string detail;
        for (std::size_t k = 0; k < claim.from.size(); ++k) {
            BoundaryPoint img = apply(g, c.points[claim.from[k]]);
            if (!same_point(img, c.points[claim.to[k]])) {
                ok = false;
                detail += c.symmetry_names[claim.matrix] + " sends " + c.names[claim.from[k]] + " to " + to_string(img) +
                          ", not " + c.names[claim.to[k]] + "; ";
            }
        }
        r.add(c.symmetry_names[claim.matrix] + " " + claim.text, ok, detail);
    }

    SearchOptions generators_only;
    generators_only.word_length = 1;
    const FaceOrbitTable table = face_orbits(c.points, c.symmetries, generators_only);
    const Face base = {0, 1, 2, 3};
    const FaceEntry e = table.entry(base);
    const Tuple5 p1 = {0, 1, 2, 3, 4};
    const Tuple5 p2 = {0, 1, 2, 3, 5};
    auto lookup = [&](const Face& f) { return table.entry(f); };
    for (const auto& [t, mult, label] :
         {std::tuple{p1, 2, "delta b(x+,x_i,y+,y_i,y_-i)"}, std::tuple{p2, 1, "delta b(x+,x_i,y+,y_i,v)"}}) {
        IncidenceRow row = incidence_row(t, lookup);
        IncidenceRow expect;
        if (e.sign != 0) expect[e.orbit] = mult * e.sign;
        const bool ok = e.sign != 0 && row == expect;
        r.add(std::string(label) + " = " + detail::format_expansion(table, c, t), ok);
    }
    return r;
}

/// The certificate lambda = (1/3, -2/3) on (p1, p2), witnessed by generator identifications.
inline Certificate lower_bound_certificate() {
    const Configuration c = six_point_configuration();
    SearchOptions generators_only;
    generators_only.word_length = 1;
    const FaceOrbitTable table = face_orbits(c.points, c.symmetries, generators_only);
    const std::vector<Tuple5> tuples = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}};
    std::vector<Rational> cvalues;
    for (const auto& tuple : tuples) {
        std::vector<BoundaryPoint> x;
        for (int k : tuple) x.push_back(c.points[k]);
        PiValue v = cup_sq_reduced(x);
        if (!v.is_exact()) throw std::logic_error("configuration cup square is not exact");
        cvalues.push_back(v.coefficient());
    }
    return make_certificate(table, tuples, {Rational(1, 3), Rational(-2, 3)}, cvalues);
}

struct NormBounds {
    PiValue lower;
    PiValue upper;
};

/**
 * Bounds on the norm of the class of c_phi cup c_phi: the certificate's
 * bound below, and above the sup bound from |c_phi| <= pi in the 3-term form.
 */
inline NormBounds theorem_bounds() {
    const Rational terms = 3;
    const Rational c_phi_sup = 1;  // |c_phi| <= 1 * pi
    const Rational upper = Rational(1, 3) * terms * c_phi_sup * c_phi_sup;
    return {PiValue::exact(lower_bound_certificate().bound, 2), PiValue::exact(upper, 2)};
}

struct DerivedConstants {
    Integer chi;
    PiValue volume;                 // (8/3) pi^2 chi
    PiValue omega_lower, omega_upper;  // bounds on the volume-class norm
    Rational simplicial_lower, simplicial_upper;
    Rational milnor_wood;  // bound on |Euler number| of flat bundles
    PiValue cp2_volume;
    int cp2_chi = 3;
};

/// Constants for a closed complex hyperbolic surface with Euler characteristic chi.
inline DerivedConstants derived_constants(const Integer& chi) {
    if (chi <= 0) throw DomainError("Euler characteristic must be positive, got " + chi.str());
    const NormBounds b = theorem_bounds();
    DerivedConstants d;
    d.chi = chi;
    const Rational vol_per_chi(8, 3);
    d.volume = PiValue::exact(vol_per_chi * Rational(chi), 2);
    // omega = 1/2 c_phi cup c_phi
    d.omega_lower = b.lower.scaled(Rational(1, 2));
    d.omega_upper = b.upper.scaled(Rational(1, 2));
    // ||M|| = Vol / ||omega||; pi^2 cancels
    d.simplicial_lower = d.volume.coefficient() / d.omega_upper.coefficient();
    d.simplicial_upper = d.volume.coefficient() / d.omega_lower.coefficient();
    // Euler class sup norm <= 1/2^4 in rank 4
    d.milnor_wood = d.simplicial_upper / 16;
    d.cp2_volume = PiValue::exact(vol_per_chi * d.cp2_chi, 2);
    return d;
}

inline std::string to_string(const DerivedConstants& d) {
    std::ostringstream os;
    os << "chi: " << d.chi << "\n";
    os << "volume: " << d.volume.to_string() << "\n";
    os << "omega norm: [" << d.omega_lower.to_string() << ", " << d.omega_upper.to_string() << "]\n";
    os << "simplicial volume: [" << to_string(d.simplicial_lower) << ", " << to_string(d.simplicial_upper) << "]\n";
    os << "simplicial volume per chi: [" << to_string(d.simplicial_lower / Rational(d.chi)) << ", "
       << to_string(d.simplicial_upper / Rational(d.chi)) << "]\n";
    os << "milnor-wood bound: " << to_string(d.milnor_wood) << "\n";
    os << "cp2: volume " << d.cp2_volume.to_string() << ", chi " << d.cp2_chi << "\n";
    return os.str();
}

/// The simplicial-volume coefficient note printed by verify-paper.
inline std::string coefficient_erratum() {
    return "erratum: the upper coefficient in ||M|| <= C * Vol(M) is C = 9/pi^2 "
           "(= 1 / inf ||omega||, giving ||M|| <= 24 chi(M)); the variant C = 9/(4*pi^2) "
           "contradicts ||omega|| >= pi^2/9 and is not used";
}

/// Regular tetrahedron with all face invariants pi/4, in the Ball model and as Heisenberg lifts.
inline Report check_falbel_tetrahedron() {
    const Configuration c = six_point_configuration();
    Report r{"Regular symmetric tetrahedron", {}};
    auto check = [&](const std::string& label, const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& d) {
        CartanValue v = cartan(a, b, d);
        const bool ok = !v.degenerate && v.angle.is_exact() && v.angle.pi_coefficient() == Rational(1, 4);
        r.add(label, ok, v.to_string());
    };
    const auto& p = c.points;
    check("ball A(x+, x_i, y+)", p[0], p[1], p[2]);
    check("ball A(x+, x_i, y_i)", p[0], p[1], p[3]);
    check("ball A(x+, y+, y_i)", p[0], p[2], p[3]);
    check("ball A(x_i, y+, y_i)", p[1], p[2], p[3]);
    const BoundaryPoint inf = heisenberg_lift(HeisenbergPoint::infinity());
    const BoundaryPoint origin = heisenberg_lift(HeisenbergPoint::exact(0, 0));
    const BoundaryPoint a = heisenberg_lift(HeisenbergPoint::exact(1, 1));
    const BoundaryPoint b = heisenberg_lift(HeisenbergPoint::exact(GaussianRational::unit_i(), 1));
    check("siegel A(inf, 0, (1,1))", inf, origin, a);
    check("siegel A(inf, 0, (i,1))", inf, origin, b);
    check("siegel A(inf, (1,1), (i,1))", inf, a, b);
    check("siegel A(0, (1,1), (i,1))", origin, a, b);
    return r;
}

/// The eight octahedron simplices through the diagonal {y_i, y_-i}.
inline std::vector<std::vector<BoundaryPoint>> octahedron_simplices() {
    const GaussianRational i = GaussianRational::unit_i();
    std::vector<std::vector<BoundaryPoint>> out;
    for (int s0 : {1, -1})
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                out.push_back({BoundaryPoint(Model::Ball, make_vector(s0, 0, 1)),
                               BoundaryPoint(Model::Ball, make_vector(i * GaussianRational(s1), 0, 1)),
                               BoundaryPoint(Model::Ball, make_vector(0, s2, 1)),
                               BoundaryPoint(Model::Ball, make_vector(0, i, 1)),
                               BoundaryPoint(Model::Ball, make_vector(0, -i, 1))});
    return out;
}

/// The eight sliced-off cube corners: w with an even number of plus signs and its four axis neighbours.
inline std::vector<std::vector<BoundaryPoint>> cube_corner_simplices() {
    const GaussianRational i = GaussianRational::unit_i();
    std::vector<std::vector<BoundaryPoint>> out;
    for (int mask = 15; mask >= 0; --mask) {
        int s[4];
        int plus = 0;
        for (int k = 0; k < 4; ++k) {
            s[k] = (mask >> (3 - k)) & 1 ? 1 : -1;
            plus += s[k] > 0;
        }
        if (plus % 2 != 0) continue;
        GaussianRational w1(Rational(s[0], 2), Rational(s[1], 2));
        GaussianRational w2(Rational(s[2], 2), Rational(s[3], 2));
        out.push_back({BoundaryPoint(Model::Ball, make_vector(s[0], 0, 1)),
                       BoundaryPoint(Model::Ball, make_vector(i * GaussianRational(s[1]), 0, 1)),
                       BoundaryPoint(Model::Ball, make_vector(0, s[2], 1)),
                       BoundaryPoint(Model::Ball, make_vector(0, i * GaussianRational(s[3]), 1)),
                       BoundaryPoint(Model::Ball, make_vector(w1, w2, 1))});
    }
    return out;
}

/**
 * Cup-square values on the octahedron triangulation (expected |value| = pi^2/6)
 * and the cube corners (expected pi^2/4). Unexpected values are flagged.
 */
inline Report check_octahedron_cube_values() {
    Report r{"Octahedron and cube simplices", {}};
    auto check = [&](const std::string& label, const std::vector<BoundaryPoint>& x, const Rational& expect) {
        PiValue v = cup_sq_reduced(x);
        ReportLine line{label, true, v.to_string(), false};
        if (!v.is_exact() || abs(v.coefficient()) != expect) {
            line.flagged = true;
            line.detail += " (expected +-" + detail::pi_string(expect, 2) + ")";
        }
        r.lines.push_back(line);
    };
    auto name = [](const std::vector<BoundaryPoint>& x) {
        std::string s;
        for (const auto& p : x) s += (s.empty() ? "" : " ") + std::string("[") + to_string(p.rep()) + "]";
        return s;
    };
    for (const auto& x : octahedron_simplices()) check("octahedron " + name(x), x, Rational(1, 6));
    for (const auto& x : cube_corner_simplices()) check("cube corner " + name(x), x, Rational(1, 4));

    const Configuration c = six_point_configuration();
    std::vector<BoundaryPoint> repeated = {c.x_plus(), c.y_i(), c.y_minus_i(), c.y_i(), c.x_i()};
    PiValue z = cup_sq_reduced(repeated);
    r.add("repeated vertex gives 0", z.is_exact() && z.coefficient() == 0, z.to_string());
    return r;
}

/// The five Heisenberg points (0,-sqrt3), (-omega,0), (1,0), (0,sqrt3), (0,2sqrt3), lifted.
inline std::vector<BoundaryPoint> eisenstein_tuple() {
    const double s3 = std::sqrt(3.0);
    const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
    return {heisenberg_lift(HeisenbergPoint::approx(Complex(0, 0), -s3)),
            heisenberg_lift(HeisenbergPoint::approx(-omega, 0.0)),
            heisenberg_lift(HeisenbergPoint::approx(Complex(1, 0), 0.0)),
            heisenberg_lift(HeisenbergPoint::approx(Complex(0, 0), s3)),
            heisenberg_lift(HeisenbergPoint::approx(Complex(0, 0), 2 * s3))};
}

inline Report check_eisenstein_tuple() {
    Report r{"Eisenstein-Picard 5-tuple", {}};
    const auto x = eisenstein_tuple();
    double worst = 0.0;
    for (const auto& p : x) worst = std::max(worst, std::abs(to_complex(herm(p.rep(), p.rep(), Model::Siegel))));
    r.add("lifts are null", worst <= kTolerance, "max |<z,z>| = " + format_decimal(worst));
    const PiValue v = cup_sq_reduced(x);
    const double target = 2.0 * kPi * kPi / 9.0;
    const double err = std::abs(std::abs(v.value()) - target);
    r.add("|cup square| = 2/9*pi^2", err <= kIrrationalTolerance,
          "value " + format_decimal(v.value() / (kPi * kPi)) + "*pi^2, error " + format_decimal(err));
    auto y = x;
    std::swap(y[0], y[1]);
    const double flipped = cup_sq_reduced(y).value();
    r.add("transposition flips the sign", std::abs(flipped + v.value()) <= kTolerance);
    return r;
}

}  // namespace chyp
