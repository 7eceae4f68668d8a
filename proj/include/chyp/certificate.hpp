#pragma once

/**
 * @file certificate.hpp
 * @brief Lower-bound certificates: data, text format and an independent checker.
 *
 * A certificate lists 5-tuples t_i, rational weights lambda_i and the exact
 * values c_i = (c_phi cup c_phi)(t_i) / pi^2. The witness shows that
 * sum_i lambda_i * (delta b)(t_i) = 0 for every alternating cochain b that is
 * invariant under the listed isometries: each merge line is an identification
 * b(from) = sign * b(to) checked by applying the isometry, and every face of
 * every tuple is assigned an orbit variable implied by those merges. Then
 *
 *     ||c_phi cup c_phi + delta b|| >= |sum lambda_i c_i| / sum |lambda_i| = bound.
 *
 * Text format (one item per line, '#' comments allowed):
 *
 *     certificate v1
 *     point: ball: 1, 0, 1                    points, indexed from 0 in order
 *     group: holo: [[...],[...],[...]]        isometries, indexed from 0 in order
 *     merge: 0 1 2 4 -> 0 1 2 3 by 2 sign -   b(0124) = -b(0123) via group element 2
 *     orbit: 0 1 2 3 id 0 sign-class +        b(0123) = +beta_0
 *     tuple: [ball: 1, 0, 1] [...] [...] [...] [...]
 *     row: 0:+2 3:-1                          signed orbit incidence of delta over the tuple
 *     lambda: 1/3 -2/3
 *     cvalues: 1/6 -1/4 *pi^2
 *     bound: 2/9 *pi^2
 */

#include "chyp/cochain.hpp"
#include "chyp/face_orbits.hpp"
#include "chyp/point_io.hpp"

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace chyp {

/// Signed incidence of free orbit variables in delta b over one tuple.
using IncidenceRow = std::map<int, Integer>;

struct OrbitClaim {
    Face face;
    FaceEntry entry;  // entry.sign == 0 marks the forced-zero class
};

struct Certificate {
    std::vector<BoundaryPoint> points;
    std::vector<Isometry> group;
    std::vector<FaceMerge> merges;
    std::vector<OrbitClaim> orbits;
    std::vector<Tuple5> tuples;
    std::vector<IncidenceRow> rows;
    std::vector<Rational> lambda;
    std::vector<Rational> cvalues;  // multiples of pi^2
    Rational bound = 0;             // multiple of pi^2

    PiValue bound_value() const { return PiValue::exact(bound, 2); }
};

/// |sum lambda_i c_i| / sum |lambda_i|, or 0 for the empty combination.
inline Rational certified_bound(const std::vector<Rational>& lambda, const std::vector<Rational>& cvalues) {
    if (lambda.size() != cvalues.size()) throw std::invalid_argument("lambda and cvalues differ in length");
    Rational dot = 0;
    Rational l1 = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        dot += lambda[i] * cvalues[i];
        l1 += abs(lambda[i]);
    }
    return l1 == 0 ? Rational(0) : abs(dot) / l1;
}

/// Expands delta b over a tuple through a face lookup; forced-zero faces drop out.
template <class Lookup>
IncidenceRow incidence_row(const Tuple5& t, Lookup&& lookup) {
    IncidenceRow row;
    for (int i = 0; i < 5; ++i) {
        Face f;
        for (int k = 0, j = 0; k < 5; ++k)
            if (k != i) f[j++] = t[k];
        const int s = sort_with_sign(f);
        const FaceEntry e = lookup(f);
        if (e.sign == 0) continue;
        row[e.orbit] += (i % 2 == 0 ? 1 : -1) * s * e.sign;
    }
    for (auto it = row.begin(); it != row.end();)
        it = it->second == 0 ? row.erase(it) : std::next(it);
    return row;
}

inline std::vector<BoundaryPoint> tuple_points(const Certificate& c, const Tuple5& t) {
    std::vector<BoundaryPoint> out;
    for (int k : t) out.push_back(c.points.at(k));
    return out;
}

/**
 * Assembles a certificate from a face-orbit table. Only tuples with nonzero
 * weight are kept; all merges of the table are kept as the witness.
 */
inline Certificate make_certificate(const FaceOrbitTable& table, const std::vector<Tuple5>& tuples,
                                    const std::vector<Rational>& lambda, const std::vector<Rational>& cvalues) {
    if (tuples.size() != lambda.size() || tuples.size() != cvalues.size())
        throw std::invalid_argument("tuples, lambda and cvalues differ in length");
    Certificate c;
    c.points = table.points();
    std::map<int, int> element_index;
    for (const auto& m : table.merges()) {
        auto [it, inserted] = element_index.emplace(m.element, static_cast<int>(c.group.size()));
        if (inserted) c.group.push_back(table.group()[m.element]);
        c.merges.push_back({m.from, m.to, it->second, m.sign});
    }
    std::map<Face, FaceEntry> used;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (lambda[i] == 0) continue;
        c.tuples.push_back(tuples[i]);
        c.lambda.push_back(lambda[i]);
        c.cvalues.push_back(cvalues[i]);
        c.rows.push_back(incidence_row(tuples[i], [&](const Face& f) {
            FaceEntry e = table.entry(f);
            used[f] = e;
            return e;
        }));
    }
    for (const auto& [f, e] : used) c.orbits.push_back({f, e});
    c.bound = certified_bound(c.lambda, c.cvalues);
    return c;
}

struct CheckResult {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
};

/**
 * Re-verifies every claim of a certificate from its own data: isometries,
 * each merge by matrix action, orbit claims against the merges, incidence
 * rows, the zero-sum relation, cup-square values and the bound.
 */
inline CheckResult check_certificate(const Certificate& c) {
    CheckResult r;
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    const int n = static_cast<int>(c.points.size());

    for (int a = 0; a < n; ++a) {
        if (c.points[a].model() != c.points[0].model()) fail("point " + std::to_string(a) + " uses a different model");
        for (int b = a + 1; b < n; ++b)
            if (same_point(c.points[a], c.points[b]))
                fail("points " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
    }
    if (!r.ok()) return r;

    bool gaussian_integers = true;
    for (std::size_t k = 0; k < c.group.size(); ++k) {
        const Isometry& g = c.group[k];
        IsometryCheck chk = is_isometry(g.matrix(), g.model(), g.antiholomorphic());
        if (!chk) fail("group element " + std::to_string(k) + ": " + chk.failure);
        if (n > 0 && g.model() != c.points[0].model()) fail("group element " + std::to_string(k) + " uses a different model");
        if (g.antiholomorphic()) r.notes.push_back("group element " + std::to_string(k) + " is antiholomorphic");
        if (g.is_exact()) {
            for (const auto& e : g.matrix().exact())
                if (boost::multiprecision::denominator(e.re) != 1 || boost::multiprecision::denominator(e.im) != 1)
                    gaussian_integers = false;
        } else {
            gaussian_integers = false;
        }
    }
    if (!r.ok()) return r;
    if (!c.group.empty())
        r.notes.push_back(gaussian_integers ? "all group elements have Z[i] entries"
                                            : "some group elements lie outside Z[i]");

    auto valid_face = [&](const Face& f) {
        for (int k = 0; k < 4; ++k) {
            if (f[k] < 0 || f[k] >= n) return false;
            if (k > 0 && f[k] <= f[k - 1]) return false;
        }
        return true;
    };

    // Rebuild the identifications from the merges alone.
    std::map<Face, int> node;
    auto node_of = [&](const Face& f) { return node.emplace(f, static_cast<int>(node.size())).first->second; };
    for (const auto& m : c.merges) {
        node_of(m.from);
        node_of(m.to);
    }
    for (const auto& o : c.orbits) node_of(o.face);
    SignedUnionFind uf(node.size());
    for (std::size_t k = 0; k < c.merges.size(); ++k) {
        const FaceMerge& m = c.merges[k];
        const std::string where = "merge " + std::to_string(k) + " (" + to_string(m.from) + " -> " + to_string(m.to) + ")";
        if (!valid_face(m.from) || !valid_face(m.to)) {
            fail(where + ": face is not a sorted 4-subset of the points");
            continue;
        }
        if (m.element < 0 || m.element >= static_cast<int>(c.group.size())) {
            fail(where + ": no such group element");
            continue;
        }
        Face img;
        bool found = true;
        for (int i = 0; i < 4; ++i) {
            BoundaryPoint q = apply(c.group[m.element], c.points[m.from[i]]);
            img[i] = -1;
            for (int p = 0; p < n; ++p)
                if (same_point(q, c.points[p])) {
                    img[i] = p;
                    break;
                }
            found = found && img[i] >= 0;
        }
        if (!found) {
            fail(where + ": image leaves the point set");
            continue;
        }
        const int s = sort_with_sign(img);
        if (img != m.to) {
            fail(where + ": element maps the face to " + to_string(img));
            continue;
        }
        if (s != m.sign) {
            fail(where + ": recorded sign disagrees with the permutation");
            continue;
        }
        uf.unite(node_of(m.from), node_of(m.to), m.sign);
    }

    std::map<Face, FaceEntry> claimed;
    std::map<int, std::pair<Face, int>> orbit_rep;  // orbit id -> (face, sign)
    for (const auto& o : c.orbits) {
        const std::string where = "orbit claim " + to_string(o.face);
        if (!valid_face(o.face)) {
            fail(where + ": not a sorted 4-subset of the points");
            continue;
        }
        if (!claimed.emplace(o.face, o.entry).second) {
            fail(where + ": listed twice");
            continue;
        }
        const int id = node_of(o.face);
        if (o.entry.sign == 0) {
            if (!uf.forced_zero(id)) fail(where + ": claimed zero but no odd identification cycle supports it");
            continue;
        }
        auto [it, inserted] = orbit_rep.emplace(o.entry.orbit, std::make_pair(o.face, o.entry.sign));
        if (inserted) continue;
        auto [ra, sa] = uf.find(id);
        auto [rb, sb] = uf.find(node_of(it->second.first));
        if (ra != rb) {
            fail(where + ": shares orbit " + std::to_string(o.entry.orbit) + " with " + to_string(it->second.first) +
                 " without a chain of merges");
        } else if (sa * sb != o.entry.sign * it->second.second) {
            fail(where + ": orbit sign contradicts the merges");
        }
    }

    if (c.rows.size() != c.tuples.size() || c.lambda.size() != c.tuples.size() || c.cvalues.size() != c.tuples.size()) {
        fail("tuple, row, lambda and cvalue counts differ");
        return r;
    }

    std::map<int, Rational> relation;
    for (std::size_t i = 0; i < c.tuples.size(); ++i) {
        const Tuple5& t = c.tuples[i];
        const std::string where = "tuple " + std::to_string(i);
        bool in_range = true;
        for (int k : t) in_range = in_range && k >= 0 && k < n;
        if (!in_range) {
            fail(where + ": point index out of range");
            continue;
        }
        bool missing = false;
        IncidenceRow row = incidence_row(t, [&](const Face& f) {
            for (int k = 1; k < 4; ++k)
                if (f[k] == f[k - 1]) return FaceEntry{-1, 0};
            auto it = claimed.find(f);
            if (it == claimed.end()) {
                missing = true;
                return FaceEntry{-1, 0};
            }
            return it->second;
        });
        if (missing) {
            fail(where + ": a face has no orbit claim");
            continue;
        }
        if (row != c.rows[i]) fail(where + ": incidence row does not match its faces");
        for (const auto& [orbit, coeff] : row) relation[orbit] += c.lambda[i] * Rational(coeff);

        PiValue v = cup_sq_reduced(tuple_points(c, t));
        const Rational got = v.is_exact_zero() ? Rational(0) : v.is_exact() ? v.coefficient() : Rational(0);
        if (!v.is_exact()) {
            fail(where + ": cup square is not exact");
        } else if (got != c.cvalues[i]) {
            fail(where + ": stored cvalue " + to_string(c.cvalues[i]) + " but recomputed " + v.to_string());
        }
    }
    for (const auto& [orbit, sum] : relation)
        if (sum != 0) fail("relation does not vanish on orbit " + std::to_string(orbit) + " (sum " + to_string(sum) + ")");

    if (certified_bound(c.lambda, c.cvalues) != c.bound)
        fail("bound " + to_string(c.bound) + " differs from |lambda.c| / |lambda|_1 = " +
             to_string(certified_bound(c.lambda, c.cvalues)));
    return r;
}

// ---------------------------------------------------------------- text format

namespace detail {

inline std::string rational_list(const std::vector<Rational>& v) {
    std::string out;
    for (const auto& x : v) out += " " + to_string(x);
    return out;
}

}  // namespace detail

inline std::string write_certificate(const Certificate& c) {
    std::ostringstream os;
    os << "certificate v1\n";
    for (const auto& p : c.points) os << "point: " << format_point(p) << "\n";
    for (const auto& g : c.group) os << "group: " << format_isometry(g) << "\n";
    for (const auto& m : c.merges)
        os << "merge: " << to_string(m.from) << " -> " << to_string(m.to) << " by " << m.element << " sign "
           << (m.sign > 0 ? "+" : "-") << "\n";
    for (const auto& o : c.orbits)
        os << "orbit: " << to_string(o.face) << " id " << o.entry.orbit << " sign-class "
           << (o.entry.sign == 0 ? "zero" : o.entry.sign > 0 ? "+" : "-") << "\n";
    for (std::size_t i = 0; i < c.tuples.size(); ++i) {
        os << "tuple:";
        for (int k : c.tuples[i]) os << " [" << format_point(c.points[k]) << "]";
        os << "\nrow:";
        for (const auto& [orbit, coeff] : c.rows[i]) os << " " << orbit << ":" << (coeff > 0 ? "+" : "") << coeff;
        os << "\n";
    }
    os << "lambda:" << detail::rational_list(c.lambda) << "\n";
    os << "cvalues:" << detail::rational_list(c.cvalues) << " *pi^2\n";
    os << "bound: " << to_string(c.bound) << " *pi^2\n";
    return os.str();
}

namespace detail {

inline std::vector<std::string> words(std::string_view s) {
    std::istringstream is{std::string(s)};
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

inline int parse_index(const std::string& w) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(w, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != w.size() || w.empty()) throw ParseError("expected an integer, got '" + w + "'", 0);
    return v;
}

inline int parse_sign(const std::string& w) {
    if (w == "+") return 1;
    if (w == "-") return -1;
    throw ParseError("expected '+' or '-', got '" + w + "'", 0);
}

inline Face parse_face(const std::vector<std::string>& w, std::size_t at) {
    if (w.size() < at + 4) throw ParseError("expected four point indices", 0);
    return {parse_index(w[at]), parse_index(w[at + 1]), parse_index(w[at + 2]), parse_index(w[at + 3])};
}

inline std::vector<Rational> parse_rational_words(const std::vector<std::string>& w, std::size_t count) {
    std::vector<Rational> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(parse_rational(w[k]));
    return out;
}

}  // namespace detail

/// Reads a certificate; ParseError messages carry the line number.
inline Certificate read_certificate(std::istream& in) {
    Certificate c;
    std::string line;
    int number = 0;
    bool header = false, have_lambda = false, have_cvalues = false, have_bound = false;
    while (std::getline(in, line)) {
        ++number;
        std::string_view body = detail::trim(detail::strip_comment(line));
        if (body.empty()) continue;
        try {
            if (!header) {
                if (body != "certificate v1") throw ParseError("expected header 'certificate v1'", 0);
                header = true;
                continue;
            }
            std::string_view rest;
            std::size_t offset = 0;
            std::string tag(detail::split_tag(body, rest, offset));
            auto w = detail::words(rest);
            if (tag == "point") {
                c.points.push_back(parse_point(detail::trim(rest)));
            } else if (tag == "group") {
                if (c.points.empty()) throw ParseError("group lines must follow the points", 0);
                c.group.push_back(parse_isometry(detail::trim(rest), c.points[0].model()));
            } else if (tag == "merge") {
                if (w.size() != 13 || w[4] != "->" || w[9] != "by" || w[11] != "sign")
                    throw ParseError("expected 'merge: a b c d -> e f g h by k sign s'", offset);
                c.merges.push_back(
                    {detail::parse_face(w, 0), detail::parse_face(w, 5), detail::parse_index(w[10]), detail::parse_sign(w[12])});
            } else if (tag == "orbit") {
                if (w.size() != 8 || w[4] != "id" || w[6] != "sign-class")
                    throw ParseError("expected 'orbit: a b c d id k sign-class s'", offset);
                FaceEntry e{detail::parse_index(w[5]), w[7] == "zero" ? 0 : detail::parse_sign(w[7])};
                c.orbits.push_back({detail::parse_face(w, 0), e});
            } else if (tag == "tuple") {
                Tuple5 t;
                std::size_t pos = 0;
                for (int k = 0; k < 5; ++k) {
                    std::size_t open = rest.find('[', pos);
                    std::size_t close = open == std::string_view::npos ? open : rest.find(']', open);
                    if (close == std::string_view::npos)
                        throw ParseError("expected five bracketed point literals", offset + pos);
                    BoundaryPoint p = parse_point(rest.substr(open + 1, close - open - 1));
                    t[k] = -1;
                    for (std::size_t q = 0; q < c.points.size(); ++q)
                        if (p.model() == c.points[q].model() && same_point(p, c.points[q])) {
                            t[k] = static_cast<int>(q);
                            break;
                        }
                    if (t[k] < 0) throw ParseError("tuple point is not among the listed points", offset + open);
                    pos = close + 1;
                }
                if (!detail::trim(rest.substr(pos)).empty()) throw ParseError("trailing text after tuple", offset + pos);
                c.tuples.push_back(t);
            } else if (tag == "row") {
                if (c.rows.size() + 1 != c.tuples.size()) throw ParseError("row must follow its tuple", 0);
                IncidenceRow row;
                for (const auto& item : w) {
                    std::size_t colon = item.find(':');
                    if (colon == std::string::npos) throw ParseError("expected 'orbit:coefficient'", offset);
                    std::string coeff = item.substr(colon + 1);
                    if (!coeff.empty() && coeff[0] == '+') coeff.erase(0, 1);
                    row[detail::parse_index(item.substr(0, colon))] = Integer(detail::parse_index(coeff));
                }
                c.rows.push_back(row);
            } else if (tag == "lambda") {
                c.lambda = detail::parse_rational_words(w, w.size());
                have_lambda = true;
            } else if (tag == "cvalues" || tag == "bound") {
                if (w.empty() || w.back() != "*pi^2") throw ParseError("expected values followed by '*pi^2'", offset);
                auto values = detail::parse_rational_words(w, w.size() - 1);
                if (tag == "cvalues") {
                    c.cvalues = values;
                    have_cvalues = true;
                } else {
                    if (values.size() != 1) throw ParseError("expected a single bound", offset);
                    c.bound = values[0];
                    have_bound = true;
                }
            } else {
                throw ParseError("unknown certificate line '" + tag + "'", 0);
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.message(), e.position());
        }
    }
    if (!header) throw ParseError("empty certificate", 0);
    if (!have_lambda || !have_cvalues || !have_bound) throw ParseError("certificate lacks lambda, cvalues or bound", 0);
    return c;
}

inline Certificate read_certificate(const std::string& text) {
    std::istringstream in(text);
    return read_certificate(in);
}

}  // namespace chyp
