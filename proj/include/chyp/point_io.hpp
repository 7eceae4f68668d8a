#pragma once

/**
 * @file point_io.hpp
 * @brief Text formats for boundary points and isometries.
 *
 * Points, one per line:
 *
 *     ball: s1, s2, s3
 *     siegel: s1, s2, s3
 *     heis: zeta_re, zeta_im ; t
 *     heis: inf
 *
 * Group elements, one per line:
 *
 *     holo: [[s,s,s],[s,s,s],[s,s,s]]
 *     anti: [[s,s,s],[s,s,s],[s,s,s]]
 *
 * Scalars use the exact literal grammar of exact_arith.hpp; decimals are
 * accepted and make the value inexact. `#` starts a comment.
 */

#include "chyp/hermitian_space.hpp"

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace chyp {

namespace detail {

inline std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
    std::size_t h = s.find('#');
    return h == std::string_view::npos ? s : s.substr(0, h);
}

struct Field {
    std::string_view text;
    std::size_t offset;
};

inline std::vector<Field> split(std::string_view s, char sep, std::size_t offset) {
    std::vector<Field> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
        if (k == s.size() || s[k] == sep) {
            out.push_back({s.substr(start, k - start), offset + start});
            start = k + 1;
        }
    }
    return out;
}

/// Splits "tag: rest" and returns the tag; `rest` and its offset are written back.
inline std::string_view split_tag(std::string_view line, std::string_view& rest, std::size_t& rest_offset) {
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected '<tag>:'", 0);
    rest = line.substr(colon + 1);
    rest_offset = colon + 1;
    return trim(line.substr(0, colon));
}

inline Scalar to_scalar(const ScalarLiteral& lit) {
    if (lit.exact) return *lit.exact;
    return lit.approx;
}

inline CVector vector_from(const std::vector<ScalarLiteral>& lits) {
    bool exact = true;
    for (const auto& l : lits) exact = exact && l.exact.has_value();
    if (exact) return make_vector(*lits[0].exact, *lits[1].exact, *lits[2].exact);
    return make_approx_vector(lits[0].approx, lits[1].approx, lits[2].approx);
}

inline ScalarLiteral parse_real(const Field& f) {
    ScalarLiteral lit = parse_scalar(f.text, f.offset);
    if (lit.exact ? lit.exact->im != 0 : lit.approx.imag() != 0.0)
        throw ParseError("expected a real number", f.offset);
    return lit;
}

}  // namespace detail

/// Parses a Heisenberg literal body ("zeta_re, zeta_im ; t" or "inf").
inline HeisenbergPoint parse_heisenberg(std::string_view body, std::size_t offset = 0) {
    if (detail::trim(body) == "inf") return HeisenbergPoint::infinity();
    auto halves = detail::split(body, ';', offset);
    if (halves.size() != 2) throw ParseError("expected 'zeta_re, zeta_im ; t'", offset);
    auto parts = detail::split(halves[0].text, ',', halves[0].offset);
    if (parts.size() != 2) throw ParseError("expected 'zeta_re, zeta_im' before ';'", halves[0].offset);
    ScalarLiteral re = detail::parse_real(parts[0]);
    ScalarLiteral im = detail::parse_real(parts[1]);
    ScalarLiteral t = detail::parse_real(halves[1]);
    if (re.exact && im.exact && t.exact) return HeisenbergPoint::exact({re.exact->re, im.exact->re}, t.exact->re);
    return HeisenbergPoint::approx({re.approx.real(), im.approx.real()}, t.approx.real());
}

/// Parses one point literal; Heisenberg points are lifted into the Siegel model.
inline BoundaryPoint parse_point(std::string_view line) {
    std::string_view rest;
    std::size_t offset = 0;
    std::string_view tag = detail::split_tag(line, rest, offset);
    if (tag == "heis") return heisenberg_lift(parse_heisenberg(rest, offset));
    Model model;
    if (tag == "ball") {
        model = Model::Ball;
    } else if (tag == "siegel") {
        model = Model::Siegel;
    } else {
        throw ParseError("unknown point tag '" + std::string(tag) + "' (expected ball, siegel or heis)", 0);
    }
    auto parts = detail::split(rest, ',', offset);
    if (parts.size() != 3) throw ParseError("expected three comma-separated scalars", offset);
    std::vector<ScalarLiteral> lits;
    for (const auto& p : parts) lits.push_back(parse_scalar(p.text, p.offset));
    CVector v = detail::vector_from(lits);
    if (v.is_zero()) throw ParseError("zero vector is not a point", offset);
    try {
        return BoundaryPoint(model, v);
    } catch (const GeometryError& e) {
        throw ParseError(e.what(), offset);
    }
}

/// Literal for a point, parseable by parse_point.
inline std::string format_point(const BoundaryPoint& p) {
    return to_string(p);
}

/// Reads a point file; errors carry the 1-based line number.
inline std::vector<BoundaryPoint> read_points(std::istream& in) {
    std::vector<BoundaryPoint> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view body = detail::trim(detail::strip_comment(line));
        if (body.empty()) continue;
        try {
            out.push_back(parse_point(body));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.message(), e.position());
        }
    }
    return out;
}

/// Parses "holo: [[..],[..],[..]]" or "anti: [[..]]" and validates it as an isometry of `model`.
inline Isometry parse_isometry(std::string_view line, Model model) {
    std::string_view rest;
    std::size_t offset = 0;
    std::string_view tag = detail::split_tag(line, rest, offset);
    bool anti;
    if (tag == "holo") {
        anti = false;
    } else if (tag == "anti") {
        anti = true;
    } else {
        throw ParseError("unknown group tag '" + std::string(tag) + "' (expected holo or anti)", 0);
    }
    // Strip brackets: expect [[a,b,c],[d,e,f],[g,h,k]].
    std::vector<ScalarLiteral> lits;
    std::size_t depth = 0;
    std::size_t field_start = 0;
    bool in_row = false;
    for (std::size_t k = 0; k < rest.size(); ++k) {
        char ch = rest[k];
        if (ch == '[') {
            ++depth;
            if (depth > 2) throw ParseError("unexpected '['", offset + k);
            if (depth == 2) {
                in_row = true;
                field_start = k + 1;
            }
        } else if (ch == ']') {
            if (depth == 0) throw ParseError("unbalanced ']'", offset + k);
            if (depth == 2) {
                lits.push_back(parse_scalar(rest.substr(field_start, k - field_start), offset + field_start));
                in_row = false;
            }
            --depth;
        } else if (ch == ',' && in_row) {
            lits.push_back(parse_scalar(rest.substr(field_start, k - field_start), offset + field_start));
            field_start = k + 1;
        } else if (!in_row && ch != ',' && ch != ' ' && ch != '\t') {
            throw ParseError(std::string("unexpected character '") + ch + "'", offset + k);
        }
    }
    if (depth != 0) throw ParseError("unbalanced '['", offset + rest.size());
    if (lits.size() != 9) throw ParseError("expected a 3x3 matrix", offset);
    bool exact = true;
    for (const auto& l : lits) exact = exact && l.exact.has_value();
    CMatrix m;
    if (exact) {
        CMatrix::Exact e;
        for (int k = 0; k < 9; ++k) e[k] = *lits[k].exact;
        m = CMatrix(e);
    } else {
        CMatrix::Approx a;
        for (int k = 0; k < 9; ++k) a[k] = lits[k].approx;
        m = CMatrix(a);
    }
    IsometryCheck check = is_isometry(m, model, anti);
    if (!check) throw ParseError("not an isometry of the " + std::string(to_string(model)) + " form: " + check.failure, 0);
    return *check.isometry;
}

inline std::string format_isometry(const Isometry& g) {
    std::string out = g.antiholomorphic() ? "anti: [" : "holo: [";
    for (int r = 0; r < 3; ++r) {
        out += r == 0 ? "[" : ",[";
        for (int c = 0; c < 3; ++c) {
            if (c > 0) out += ",";
            out += to_string(g.matrix()[3 * r + c]);
        }
        out += "]";
    }
    return out + "]";
}

inline std::vector<Isometry> read_group(std::istream& in, Model model) {
    std::vector<Isometry> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view body = detail::trim(detail::strip_comment(line));
        if (body.empty()) continue;
        try {
            out.push_back(parse_isometry(body, model));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.message(), e.position());
        }
    }
    return out;
}

}  // namespace chyp
