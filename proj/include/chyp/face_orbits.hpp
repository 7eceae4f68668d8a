#pragma once

/**
 * @file face_orbits.hpp
 * @brief Orbits of unordered 4-point faces under a finite set of isometries.
 *
 * An alternating cochain b invariant under g satisfies
 * b(F) = s * b(sorted(gF)), with s the sign of the sorting permutation.
 * Faces are therefore linked by a union-find that carries a sign along every
 * edge; a cycle with odd total sign forces b to vanish on the whole class.
 */

#include "chyp/hermitian_space.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace chyp {

using Face = std::array<int, 4>;
using Tuple5 = std::array<int, 5>;

/// Union-find in which every node stores sign(x) with b(x) = sign * b(parent).
class SignedUnionFind {
  public:
    explicit SignedUnionFind(std::size_t n = 0) : parent_(n), sign_(n, 1), zero_(n, false) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t size() const { return parent_.size(); }

    /// Root of x and the sign s with b(x) = s * b(root).
    std::pair<int, int> find(int x) {
        int s = 1;
        int r = x;
        while (parent_[r] != r) {
            s *= sign_[r];
            r = parent_[r];
        }
        // path compression, rewriting signs relative to the root
        int acc = s;
        while (parent_[x] != r) {
            int next = parent_[x];
            int next_sign = acc * sign_[x];
            parent_[x] = r;
            sign_[x] = acc;
            acc = next_sign;
            x = next;
        }
        return {r, s};
    }

    /// Records b(a) = s * b(b). Returns false when nothing new was learned.
    bool unite(int a, int b, int s) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        const int rel = sa * s * sb;  // b(ra) = rel * b(rb)
        if (ra == rb) {
            if (rel == 1 || zero_[ra]) return false;
            zero_[ra] = true;
            return true;
        }
        parent_[ra] = rb;
        sign_[ra] = rel;
        zero_[rb] = zero_[rb] || zero_[ra];
        return true;
    }

    bool forced_zero(int x) { return zero_[find(x).first]; }

  private:
    std::vector<int> parent_;
    std::vector<int> sign_;
    std::vector<bool> zero_;
};

/// Sign of the permutation that sorts `v` (entries distinct), and the sorted values.
template <std::size_t N>
int sort_with_sign(std::array<int, N>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

struct SearchOptions {
    std::size_t max_tuples = 10000;
    int word_length = 4;
    bool include_antiholomorphic = false;
    unsigned threads = 1;
};

/// Closes the generators under composition, keeping words of length <= word_length (projectively distinct).
inline std::vector<Isometry> close_group(const std::vector<Isometry>& generators, int word_length,
                                         bool include_antiholomorphic = false) {
    if (word_length < 1) throw std::invalid_argument("word length must be positive");
    std::vector<Isometry> gens;
    for (const auto& g : generators)
        if (include_antiholomorphic || !g.antiholomorphic()) gens.push_back(g);
    if (gens.empty()) return {};

    std::vector<Isometry> out;
    auto fresh = [&](const Isometry& g) {
        for (const auto& h : out)
            if (proj_equal(g, h)) return false;
        return true;
    };
    std::vector<Isometry> frontier;
    for (const auto& g : gens)
        if (fresh(g)) {
            out.push_back(g);
            frontier.push_back(g);
        }
    for (int len = 2; len <= word_length && !frontier.empty(); ++len) {
        std::vector<Isometry> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                Isometry gw = compose(g, w);
                if (fresh(gw)) {
                    out.push_back(gw);
                    next.push_back(gw);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

/// One recorded identification b(from) = sign * b(to), witnessed by element `element` of the closed group.
struct FaceMerge {
    Face from;
    Face to;
    int element;
    int sign;
};

/// Orbit assignment of a face: b(face) = sign * beta[orbit]; sign 0 marks a forced-zero orbit.
struct FaceEntry {
    int orbit = -1;
    int sign = 0;
};

inline std::string to_string(const Face& f) {
    return std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + " " + std::to_string(f[3]);
}

class FaceOrbitTable {
  public:
    const std::vector<BoundaryPoint>& points() const { return points_; }
    const std::vector<Isometry>& group() const { return group_; }
    const std::vector<FaceMerge>& merges() const { return merges_; }
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t orbit_count() const { return orbit_free_.size(); }
    bool orbit_free(int orbit) const { return orbit_free_[orbit]; }

    /// Orbit and sign of an unordered face given in any order (sign includes the sorting permutation).
    FaceEntry entry(Face f) const {
        const int s = sort_with_sign(f);
        for (std::size_t k = 1; k < 4; ++k)
            if (f[k] == f[k - 1]) return {-1, 0};  // repeated point: b vanishes
        auto it = index_.find(f);
        if (it == index_.end()) throw std::out_of_range("face " + to_string(f) + " is not in the table");
        FaceEntry e = entries_[it->second];
        e.sign *= s;
        return e;
    }

    /// Entry of the i-th face of a 5-tuple (point i omitted).
    FaceEntry slot(const Tuple5& t, int i) const {
        Face f;
        for (int k = 0, j = 0; k < 5; ++k)
            if (k != i) f[j++] = t[k];
        return entry(f);
    }

    friend FaceOrbitTable face_orbits(const std::vector<BoundaryPoint>& points, const std::vector<Isometry>& generators,
                                      const SearchOptions& opts);

  private:
    std::vector<BoundaryPoint> points_;
    std::vector<Isometry> group_;
    std::vector<Face> faces_;
    std::map<Face, int> index_;
    std::vector<FaceEntry> entries_;
    std::vector<bool> orbit_free_;
    std::vector<FaceMerge> merges_;
};

/**
 * Builds the face-orbit table of all 4-subsets of `points`. Points are indexed
 * in the given order. Group images leaving the point set are ignored.
 */
inline FaceOrbitTable face_orbits(const std::vector<BoundaryPoint>& points, const std::vector<Isometry>& generators,
                                  const SearchOptions& opts = {}) {
    FaceOrbitTable t;
    const int n = static_cast<int>(points.size());
    for (int a = 0; a < n; ++a) {
        if (a > 0) require_same_model(points[0], points[a]);
        for (int b = a + 1; b < n; ++b)
            if (same_point(points[a], points[b]))
                throw GeometryError("duplicate points " + std::to_string(a) + " and " + std::to_string(b));
    }
    for (const auto& g : generators)
        if (n > 0 && g.model() != points[0].model()) throw GeometryError("group element and points use different models");
    t.points_ = points;
    t.group_ = close_group(generators, opts.word_length, opts.include_antiholomorphic);

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    t.index_.emplace(Face{a, b, c, d}, static_cast<int>(t.faces_.size()));
                    t.faces_.push_back({a, b, c, d});
                }

    // image[g][p] = index of g.p in the point set, or -1
    std::vector<std::vector<int>> image(t.group_.size(), std::vector<int>(n, -1));
    for (std::size_t g = 0; g < t.group_.size(); ++g)
        for (int p = 0; p < n; ++p) {
            BoundaryPoint q = apply(t.group_[g], points[p]);
            for (int k = 0; k < n; ++k)
                if (same_point(q, points[k])) {
                    image[g][p] = k;
                    break;
                }
        }

    SignedUnionFind uf(t.faces_.size());
    for (std::size_t g = 0; g < t.group_.size(); ++g)
        for (std::size_t f = 0; f < t.faces_.size(); ++f) {
            Face img;
            bool inside = true;
            for (int k = 0; k < 4; ++k) {
                img[k] = image[g][t.faces_[f][k]];
                inside = inside && img[k] >= 0;
            }
            if (!inside) continue;
            const int s = sort_with_sign(img);
            if (uf.unite(static_cast<int>(f), t.index_.at(img), s))
                t.merges_.push_back({t.faces_[f], img, static_cast<int>(g), s});
        }

    std::map<int, int> orbit_of_root;
    t.entries_.resize(t.faces_.size());
    for (std::size_t f = 0; f < t.faces_.size(); ++f) {
        auto [root, sign] = uf.find(static_cast<int>(f));
        auto [it, inserted] = orbit_of_root.emplace(root, static_cast<int>(t.orbit_free_.size()));
        if (inserted) t.orbit_free_.push_back(!uf.forced_zero(root));
        const int orbit = it->second;
        t.entries_[f] = {orbit, t.orbit_free_[orbit] ? sign : 0};
    }
    return t;
}

}  // namespace chyp
