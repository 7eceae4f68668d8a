#include "chyp/certificates.hpp"
#include "chyp/search.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace chyp;
using chyp::testgen::Rng;

namespace {

const Configuration& config() {
    static const Configuration c = six_point_configuration();
    return c;
}

SearchOptions with_word_length(int l) {
    SearchOptions o;
    o.word_length = l;
    return o;
}

// Rank over Q by plain Gauss-Jordan on rationals; independent of the Bareiss code.
std::size_t rank_of(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[rank][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Alternating cochain on index 4-tuples built from orbit values: b(F) = sign * beta[orbit].
Cochain<int, Rational> cochain_from_orbits(const FaceOrbitTable& table, const std::vector<Rational>& beta) {
    return Cochain<int, Rational>(3, [&table, beta](std::span<const int> x) {
        Face f = {x[0], x[1], x[2], x[3]};
        FaceEntry e = table.entry(f);
        return e.sign == 0 ? Rational(0) : Rational(e.sign) * beta[e.orbit];
    });
}

std::vector<Rational> random_beta(Rng& rng, std::size_t n) {
    std::vector<Rational> beta;
    for (std::size_t k = 0; k < n; ++k) beta.push_back(testgen::random_rational(rng));
    return beta;
}

}  // namespace

TEST(SignedUnionFind, TracksSignsAndContradictions) {
    SignedUnionFind uf(4);
    EXPECT_TRUE(uf.unite(0, 1, -1));
    EXPECT_TRUE(uf.unite(1, 2, -1));
    auto [r0, s0] = uf.find(0);
    auto [r2, s2] = uf.find(2);
    EXPECT_EQ(r0, r2);
    EXPECT_EQ(s0 * s2, 1);  // b(0) = b(2)
    EXPECT_FALSE(uf.unite(0, 2, 1));
    EXPECT_FALSE(uf.forced_zero(0));
    EXPECT_TRUE(uf.unite(0, 2, -1));
    EXPECT_TRUE(uf.forced_zero(1));
    EXPECT_FALSE(uf.forced_zero(3));
    EXPECT_TRUE(uf.unite(3, 3, -1));
    EXPECT_TRUE(uf.forced_zero(3));
}

TEST(SortWithSign, MatchesPermutationSign) {
    std::array<int, 4> v = {3, 1, 2, 0};
    std::vector<int> perm(v.begin(), v.end());
    EXPECT_EQ(sort_with_sign(v), permutation_sign(perm));
    EXPECT_EQ(v, (std::array<int, 4>{0, 1, 2, 3}));
}

TEST(CloseGroup, Sizes) {
    EXPECT_EQ(close_group(config().symmetries, 1).size(), 5u);
    EXPECT_EQ(close_group(config().symmetries, 4).size(), 134u);
    EXPECT_EQ(close_group({Isometry::identity(Model::Ball)}, 4).size(), 1u);
    Isometry anti = make_isometry(make_matrix({1, 0, 0, 0, 1, 0, 0, 0, 1}), Model::Ball, true);
    EXPECT_EQ(close_group({anti}, 3).size(), 0u);
    EXPECT_EQ(close_group({anti}, 3, true).size(), 2u);
    EXPECT_THROW(close_group(config().symmetries, 0), std::invalid_argument);
}

TEST(FaceOrbits, ConfigurationIdentifications) {
    const FaceOrbitTable t = face_orbits(config().points, config().symmetries, with_word_length(4));
    EXPECT_EQ(t.entry({0, 1, 3, 4}).sign, 0);
    FaceEntry a = t.entry({1, 2, 3, 4});
    FaceEntry b = t.entry({0, 2, 3, 4});
    EXPECT_EQ(a.orbit, b.orbit);
    EXPECT_EQ(a.sign * b.sign, 1);
    FaceEntry c = t.entry({0, 1, 2, 4});
    FaceEntry d = t.entry({0, 1, 2, 3});
    EXPECT_EQ(c.orbit, d.orbit);
    EXPECT_EQ(c.sign * d.sign, -1);
    // Unsorted lookups carry the permutation sign.
    EXPECT_EQ(t.entry({1, 0, 2, 3}).sign, -d.sign);
    EXPECT_EQ(t.entry({0, 0, 2, 3}).sign, 0);
    EXPECT_EQ(t.orbit_count(), 10u);
}

TEST(FaceOrbits, RejectsDuplicatePoints) {
    auto pts = config().points;
    pts.push_back(pts[2]);
    EXPECT_THROW(face_orbits(pts, config().symmetries), GeometryError);
}

TEST(FaceOrbits, EveryMergeIsReproducedByTheGroup) {
    const FaceOrbitTable t = face_orbits(config().points, config().symmetries, with_word_length(4));
    const auto& pts = t.points();
    for (const auto& m : t.merges()) {
        Face img;
        for (int k = 0; k < 4; ++k) {
            BoundaryPoint q = apply(t.group()[m.element], pts[m.from[k]]);
            img[k] = -1;
            for (std::size_t p = 0; p < pts.size(); ++p)
                if (same_point(q, pts[p])) img[k] = static_cast<int>(p);
            ASSERT_GE(img[k], 0);
        }
        ASSERT_EQ(sort_with_sign(img), m.sign);
        ASSERT_EQ(img, m.to);
    }
}

TEST(FaceOrbits, OrbitCochainsAreInvariantAndAlternating) {
    Rng rng(50);
    const FaceOrbitTable t = face_orbits(config().points, config().symmetries, with_word_length(4));
    const auto& pts = t.points();
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const auto& g : t.group())
        for (const Face& f : t.faces()) {
            std::vector<int> img;
            for (int k : f) {
                BoundaryPoint q = apply(g, pts[k]);
                for (std::size_t p = 0; p < pts.size(); ++p)
                    if (same_point(q, pts[p])) img.push_back(static_cast<int>(p));
            }
            if (img.size() == 4) pairs.emplace_back(std::vector<int>(f.begin(), f.end()), img);
        }
    ASSERT_FALSE(pairs.empty());
    for (int trial = 0; trial < 20; ++trial) {
        auto b = cochain_from_orbits(t, random_beta(rng, t.orbit_count()));
        for (const auto& [f, img] : pairs) ASSERT_EQ(b(img), b(f));
    }
}

TEST(Nullspace, Examples) {
    auto k = nullspace({{1, 1}}, 2);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (RationalVector{Rational(-1), Rational(1)}));
    EXPECT_TRUE(nullspace({{1, 0}, {0, 1}}, 2).empty());
    EXPECT_EQ(nullspace({}, 3).size(), 3u);
    auto k2 = nullspace({{2, 4, 6}, {1, 2, 3}}, 3);
    EXPECT_EQ(k2.size(), 2u);
}

TEST(Nullspace, RandomMatricesAgreeWithRank) {
    Rng rng(51);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = dim(rng), cols = dim(rng);
        IntMatrix m(rows, std::vector<Integer>(cols));
        std::vector<std::vector<Rational>> q(rows, std::vector<Rational>(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const int v = entry(rng) * (entry(rng) > 0);  // sparse-ish, rank deficient often
                m[i][j] = v;
                q[i][j] = v;
            }
        auto basis = nullspace(m, cols);
        ASSERT_EQ(basis.size(), cols - rank_of(q));
        for (const auto& x : basis)
            for (int i = 0; i < rows; ++i) {
                Rational s = 0;
                for (int j = 0; j < cols; ++j) s += q[i][j] * x[j];
                ASSERT_EQ(s, 0);
            }
        // basis vectors are independent
        ASSERT_EQ(rank_of(basis), basis.size());
    }
}

TEST(Simplex, SmallProgram) {
    // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    LpResult r = maximize({{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2});
    ASSERT_EQ(r.status, LpResult::Status::Optimal);
    EXPECT_EQ(r.value, Rational(11));
    EXPECT_EQ(r.x, (std::vector<Rational>{3, 1}));
}

TEST(Simplex, DetectsUnbounded) {
    LpResult r = maximize({{1, -1}}, {1}, {0, 1});
    EXPECT_EQ(r.status, LpResult::Status::Unbounded);
}

TEST(Simplex, BlandRuleTerminatesOnCyclingExample) {
    // Beale's degenerate program; cycles under the largest-coefficient rule.
    LpResult r = maximize({{Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0}},
                          {0, 0, 1}, {Rational(3, 4), -20, Rational(1, 2), -6});
    ASSERT_EQ(r.status, LpResult::Status::Optimal);
    EXPECT_EQ(r.value, Rational(5, 4));
    EXPECT_EQ(r.x, (std::vector<Rational>{1, 0, 1, 0}));
}

TEST(RelationKernel, Examples) {
    const FaceOrbitTable t = face_orbits(config().points, config().symmetries, with_word_length(4));
    const Tuple5 p1 = {0, 1, 2, 3, 4}, p2 = {0, 1, 2, 3, 5};
    RelationSystem s = relation_kernel({p1, p2}, t);
    ASSERT_EQ(s.kernel.size(), 1u);
    EXPECT_EQ(s.kernel[0][0] * -2, s.kernel[0][1]);
    EXPECT_TRUE(relation_kernel({p1}, t).kernel.empty());
    RelationSystem dup = relation_kernel({p2, p2}, t);
    ASSERT_EQ(dup.kernel.size(), 1u);
    EXPECT_EQ(dup.kernel[0][0], -dup.kernel[0][1]);
    EXPECT_TRUE(relation_kernel({}, t).kernel.empty());
}

TEST(OptimizeCertificate, Examples) {
    const FaceOrbitTable t = face_orbits(config().points, config().symmetries, with_word_length(4));
    RelationSystem s = relation_kernel({{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}}, t);
    Certificate c = optimize_certificate(s, {Rational(1, 6), Rational(-1, 4)});
    EXPECT_EQ(c.bound, Rational(2, 9));
    EXPECT_EQ(c.lambda, (std::vector<Rational>{Rational(1, 3), Rational(-2, 3)}));
    EXPECT_TRUE(check_certificate(c).ok());

    EXPECT_EQ(optimize_certificate(s, {Rational(0), Rational(0)}).bound, Rational(0));

    RelationSystem line;
    line.tuples = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}};
    line.rows = {{}, {}};
    line.kernel = {{Rational(1), Rational(-1)}};
    Certificate h = optimize_certificate(line, {Rational(1, 6), Rational(-1, 4)});
    EXPECT_EQ(h.bound, Rational(5, 24));
    EXPECT_EQ(h.lambda, (std::vector<Rational>{Rational(1, 2), Rational(-1, 2)}));

    RelationSystem empty;
    empty.tuples = {{0, 1, 2, 3, 4}};
    empty.rows = {{}};
    EXPECT_EQ(optimize_certificate(empty, {Rational(1)}).bound, Rational(0));
    EXPECT_THROW(optimize_certificate(empty, {}), std::invalid_argument);
}

TEST(Search, RederivesTheConfigurationBound) {
    SearchOutcome s = search(config().points, config().symmetries);
    EXPECT_GE(s.certificate.bound, Rational(2, 9));
    EXPECT_EQ(s.group_size, 134u);
    EXPECT_EQ(s.free_orbits, 9u);
    EXPECT_EQ(s.tuples_enumerated, 6u);
    CheckResult chk = check_certificate(s.certificate);
    for (const auto& f : chk.failures) ADD_FAILURE() << f;
    CheckResult round = check_certificate(read_certificate(write_certificate(s.certificate)));
    EXPECT_TRUE(round.ok());
}

TEST(Search, TrivialGroupAndTinyInputsGiveZero) {
    EXPECT_EQ(search(config().points, {Isometry::identity(Model::Ball)}).certificate.bound, Rational(0));
    EXPECT_EQ(search(config().points, {}).certificate.bound, Rational(0));
    std::vector<BoundaryPoint> four(config().points.begin(), config().points.begin() + 4);
    EXPECT_EQ(search(four, config().symmetries).certificate.bound, Rational(0));
    SearchOptions zero;
    zero.max_tuples = 0;
    EXPECT_THROW(search(config().points, config().symmetries, zero), std::invalid_argument);
}

TEST(Search, DeterministicAndThreadIndependent) {
    SearchOptions one, four;
    four.threads = 4;
    const auto pool = testgen::cube_vertices();
    std::vector<BoundaryPoint> pts(pool.begin(), pool.begin() + 10);
    const std::string a = write_certificate(search(pts, config().symmetries, one).certificate);
    const std::string b = write_certificate(search(pts, config().symmetries, one).certificate);
    const std::string c = write_certificate(search(pts, config().symmetries, four).certificate);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(Search, AddingTuplesNeverLowersTheBound) {
    const auto pool = testgen::cube_vertices();
    std::vector<BoundaryPoint> pts(pool.begin(), pool.begin() + 12);
    auto table = std::make_shared<const FaceOrbitTable>(face_orbits(pts, config().symmetries, with_word_length(2)));
    std::vector<Tuple5> exact;
    std::vector<Rational> values;
    for (const auto& t : enumerate_tuples(static_cast<int>(pts.size()), 100000)) {
        std::vector<BoundaryPoint> x;
        for (int k : t) x.push_back(pts[k]);
        PiValue v = cup_sq_reduced(x);
        if (!v.is_exact()) continue;
        exact.push_back(t);
        values.push_back(v.is_exact_zero() ? Rational(0) : v.coefficient());
    }
    ASSERT_GT(exact.size(), 20u);
    Rational last = -1;
    for (std::size_t n = 5; n <= exact.size(); n += std::max<std::size_t>(5, exact.size() / 6)) {
        std::vector<Tuple5> sub(exact.begin(), exact.begin() + n);
        std::vector<Rational> cv(values.begin(), values.begin() + n);
        Certificate c = optimize_certificate(relation_kernel(sub, table), cv);
        ASSERT_GE(c.bound, last);
        ASSERT_TRUE(check_certificate(c).ok());
        last = c.bound;
    }
}

TEST(Search, CertificateRelationHoldsForRandomOrbitValues) {
    Rng rng(52);
    for (const Certificate& cert : {search(config().points, config().symmetries).certificate, lower_bound_certificate()}) {
        std::map<Face, FaceEntry> claims;
        int max_orbit = 0;
        for (const auto& o : cert.orbits) {
            claims[o.face] = o.entry;
            max_orbit = std::max(max_orbit, o.entry.orbit);
        }
        for (int trial = 0; trial < 100; ++trial) {
            auto beta = random_beta(rng, max_orbit + 1);
            Cochain<int, Rational> b(3, [&](std::span<const int> x) {
                std::array<int, 4> f = {x[0], x[1], x[2], x[3]};
                std::vector<int> rank(4);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) rank[i] += f[j] < f[i];
                std::sort(f.begin(), f.end());
                const FaceEntry& e = claims.at(f);
                return e.sign == 0 ? Rational(0) : Rational(permutation_sign(rank) * e.sign) * beta[e.orbit];
            });
            auto db = coboundary(b);
            Rational total = 0;
            for (std::size_t i = 0; i < cert.tuples.size(); ++i)
                total += cert.lambda[i] * db(std::vector<int>(cert.tuples[i].begin(), cert.tuples[i].end()));
            ASSERT_EQ(total, 0);
        }
    }
}
