#pragma once

/**
 * @file hermitian_space.hpp
 * @brief C^{2,1}: Hermitian forms, boundary points, isometries, Heisenberg coordinates.
 *
 * Two models of the complex hyperbolic plane are supported:
 *
 *   Ball:   <z,w> = z1 conj(w1) + z2 conj(w2) - z3 conj(w3)
 *   Siegel: <z,w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1)
 *
 * Vectors and matrices hold either Gaussian-rational entries (exact) or
 * doubles (inexact). Binary operations on a mixed pair silently promote to
 * inexact.
 */

#include "chyp/exact_arith.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace chyp {

enum class Model { Ball, Siegel };

inline const char* to_string(Model m) { return m == Model::Ball ? "ball" : "siegel"; }

enum class PointClass { Negative, Null, Positive };

class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A complex scalar, exact or floating.
using Scalar = std::variant<GaussianRational, Complex>;

inline bool is_exact(const Scalar& s) { return std::holds_alternative<GaussianRational>(s); }
inline Complex to_complex(const Scalar& s) {
    return std::visit([](const auto& v) { return to_complex(v); }, s);
}
inline std::string to_string(const Scalar& s) {
    if (const auto* g = std::get_if<GaussianRational>(&s)) return to_string(*g);
    Complex z = std::get<Complex>(s);
    std::ostringstream os;
    os << std::setprecision(17) << z.real() + 0.0;
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

/// N complex entries sharing one exactness flag.
template <std::size_t N>
class EntryArray {
  public:
    using Exact = std::array<GaussianRational, N>;
    using Approx = std::array<Complex, N>;

    EntryArray() : data_(Exact{}) {}
    explicit EntryArray(Exact e) : data_(std::move(e)) {}
    explicit EntryArray(Approx a) : data_(std::move(a)) {}

    bool is_exact() const { return std::holds_alternative<Exact>(data_); }

    const Exact& exact() const {
        if (!is_exact()) throw DomainError("entries are not exact");
        return std::get<Exact>(data_);
    }

    Approx approx() const {
        if (const auto* a = std::get_if<Approx>(&data_)) return *a;
        Approx out;
        const auto& e = std::get<Exact>(data_);
        for (std::size_t k = 0; k < N; ++k) out[k] = to_complex(e[k]);
        return out;
    }

    Scalar operator[](std::size_t k) const {
        if (const auto* e = std::get_if<Exact>(&data_)) return (*e)[k];
        return std::get<Approx>(data_)[k];
    }

    bool is_zero() const {
        return std::visit(
            [](const auto& arr) {
                for (const auto& x : arr)
                    if (!(x == std::decay_t<decltype(x)>{})) return false;
                return true;
            },
            data_);
    }

    EntryArray conjugated() const {
        return std::visit(
            [](const auto& arr) {
                auto out = arr;
                for (auto& x : out) x = conjugate(x);
                return EntryArray(out);
            },
            data_);
    }

    /// Calls f with (exact, exact) arrays when both sides are exact, otherwise with approximations.
    template <std::size_t M, class F>
    friend decltype(auto) visit_pair(const EntryArray& a, const EntryArray<M>& b, F&& f) {
        if (a.is_exact() && b.is_exact()) return f(a.exact(), b.exact());
        return f(a.approx(), b.approx());
    }

    template <class F>
    decltype(auto) visit(F&& f) const {
        return std::visit(std::forward<F>(f), data_);
    }

  private:
    std::variant<Exact, Approx> data_;
};

using CVector = EntryArray<3>;
/// Row-major 3x3 complex matrix.
using CMatrix = EntryArray<9>;

template <class S>
using Vec3 = std::array<S, 3>;
template <class S>
using Mat3 = std::array<S, 9>;

inline CVector make_vector(GaussianRational a, GaussianRational b, GaussianRational c) {
    return CVector(CVector::Exact{std::move(a), std::move(b), std::move(c)});
}

inline CVector make_approx_vector(Complex a, Complex b, Complex c) {
    return CVector(CVector::Approx{a, b, c});
}

inline std::string to_string(const CVector& v) {
    return to_string(v[0]) + ", " + to_string(v[1]) + ", " + to_string(v[2]);
}

namespace detail {

template <class S>
S herm(const Vec3<S>& z, const Vec3<S>& w, Model m) {
    if (m == Model::Ball) return z[0] * conjugate(w[0]) + z[1] * conjugate(w[1]) - z[2] * conjugate(w[2]);
    return z[0] * conjugate(w[2]) + z[1] * conjugate(w[1]) + z[2] * conjugate(w[0]);
}

template <class S>
Vec3<S> mat_vec(const Mat3<S>& m, const Vec3<S>& v) {
    Vec3<S> out;
    for (int r = 0; r < 3; ++r) out[r] = m[3 * r] * v[0] + m[3 * r + 1] * v[1] + m[3 * r + 2] * v[2];
    return out;
}

template <class S>
Mat3<S> mat_mul(const Mat3<S>& a, const Mat3<S>& b) {
    Mat3<S> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[3 * r + c] = a[3 * r] * b[c] + a[3 * r + 1] * b[3 + c] + a[3 * r + 2] * b[6 + c];
    return out;
}

/// Gram matrix J of the model: <z,w> = w^* J z.
inline int gram(Model m, int r, int c) {
    if (m == Model::Ball) return r == c ? (r == 2 ? -1 : 1) : 0;
    return r + c == 2 ? 1 : 0;
}

inline double squared_norm(const Vec3<Complex>& z) {
    return std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]);
}

}  // namespace detail

/// Sesquilinear form of the model: linear in z, conjugate-linear in w.
inline Scalar herm(const CVector& z, const CVector& w, Model model) {
    return visit_pair(z, w, [&](const auto& a, const auto& b) -> Scalar { return detail::herm(a, b, model); });
}

inline PointClass classify(const CVector& z, Model model) {
    if (z.is_zero()) throw DomainError("cannot classify the zero vector");
    if (z.is_exact()) {
        const auto& e = z.exact();
        const int s = detail::herm(e, e, model).re.sign();
        return s < 0 ? PointClass::Negative : (s == 0 ? PointClass::Null : PointClass::Positive);
    }
    auto a = z.approx();
    double q = detail::herm(a, a, model).real();
    if (std::abs(q) <= kIrrationalTolerance * detail::squared_norm(a)) return PointClass::Null;
    return q < 0 ? PointClass::Negative : PointClass::Positive;
}

/// cosh^2(d(z,w)/2) = <z,w><w,z> / (<z,z><w,w>) for negative vectors; a power-0 PiValue.
inline PiValue distance_cosh2(const CVector& z, const CVector& w, Model model) {
    if (classify(z, model) != PointClass::Negative || classify(w, model) != PointClass::Negative)
        throw DomainError("distance is defined for negative vectors only");
    return visit_pair(z, w, [&](const auto& a, const auto& b) -> PiValue {
        auto zw = detail::herm(a, b, model);
        auto num = norm(zw);
        auto den = real_part(detail::herm(a, a, model)) * real_part(detail::herm(b, b, model));
        if constexpr (std::is_same_v<decltype(num), Rational>) {
            return PiValue::exact(num / den, 0);
        } else {
            return PiValue::approx(num / den, 0);
        }
    });
}

/// True iff z and w span the same complex line (all 2x2 minors vanish).
inline bool proj_equal(const CVector& z, const CVector& w) {
    if (z.is_zero() || w.is_zero()) throw DomainError("projective comparison with the zero vector");
    if (z.is_exact() && w.is_exact()) {
        const auto& a = z.exact();
        const auto& b = w.exact();
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
        return true;
    }
    auto a = z.approx();
    auto b = w.approx();
    double scale = std::sqrt(detail::squared_norm(a) * detail::squared_norm(b));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(a[i] * b[j] - a[j] * b[i]) > kIrrationalTolerance * scale) return false;
    return true;
}

/// Representative scaled so that the last nonzero entry is 1.
inline CVector canonical_form(const CVector& z) {
    if (z.is_zero()) throw DomainError("zero vector has no projective class");
    return z.visit([](const auto& arr) {
        using S = std::decay_t<decltype(arr[0])>;
        int k = 2;
        while (arr[k] == S{}) --k;
        S inv = inverse(arr[k]);
        auto out = arr;
        for (auto& x : out) x = x * inv;
        out[k] = S(1);
        return CVector(out);
    });
}

/// Lexicographic order on canonical forms; -1, 0 or 1.
inline int compare_canonical(const CVector& z, const CVector& w) {
    CVector a = canonical_form(z);
    CVector b = canonical_form(w);
    return visit_pair(a, b, [](const auto& x, const auto& y) {
        for (int k = 0; k < 3; ++k)
            if (int c = compare_lex(x[k], y[k]); c != 0) return c;
        return 0;
    });
}

// ---------------------------------------------------------------------------
// Boundary points
// ---------------------------------------------------------------------------

/// A point of the boundary sphere: projective class of a null vector.
class BoundaryPoint {
  public:
    BoundaryPoint(Model model, CVector rep) : model_(model), rep_(std::move(rep)) {
        if (rep_.is_zero()) throw GeometryError("boundary point with zero representative");
        if (classify(rep_, model_) != PointClass::Null)
            throw GeometryError("vector (" + to_string(rep_) + ") is not null for the " + chyp::to_string(model_) +
                                " form");
    }

    Model model() const { return model_; }
    const CVector& rep() const { return rep_; }
    bool is_exact() const { return rep_.is_exact(); }

    friend bool same_point(const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.model_ == b.model_ && proj_equal(a.rep_, b.rep_);
    }

  private:
    Model model_;
    CVector rep_;
};

inline void require_same_model(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.model() != b.model()) throw GeometryError("points belong to different models");
}

inline std::string to_string(const BoundaryPoint& p) {
    return std::string(to_string(p.model())) + ": " + to_string(p.rep());
}

// ---------------------------------------------------------------------------
// Isometries
// ---------------------------------------------------------------------------

struct IsometryCheck;

/// A matrix M with M^* J M = scale * J. Antiholomorphic elements act by z -> M conj(z).
class Isometry {
  public:
    const CMatrix& matrix() const { return matrix_; }
    bool antiholomorphic() const { return anti_; }
    Model model() const { return model_; }
    /// The positive real scale; exact when the matrix is.
    const PiValue& scale() const { return scale_; }
    bool is_exact() const { return matrix_.is_exact(); }

    static Isometry identity(Model model) {
        CMatrix::Exact e{};
        e[0] = e[4] = e[8] = 1;
        return Isometry(CMatrix(e), false, model, PiValue::exact(Rational(1), 0));
    }

  private:
    Isometry(CMatrix m, bool anti, Model model, PiValue scale)
        : matrix_(std::move(m)), anti_(anti), model_(model), scale_(std::move(scale)) {}

    friend struct IsometryCheck;
    friend IsometryCheck is_isometry(const CMatrix& m, Model model, bool antiholomorphic);
    friend Isometry compose(const Isometry& g, const Isometry& h);

    CMatrix matrix_;
    bool anti_ = false;
    Model model_ = Model::Ball;
    PiValue scale_;
};

/// Outcome of is_isometry: the isometry, or a description of the offending residual.
struct IsometryCheck {
    std::optional<Isometry> isometry;
    std::string failure;
    double residual = 0.0;

    explicit operator bool() const { return isometry.has_value(); }
};

/// Succeeds iff M^* J M = lambda J for a real lambda > 0.
inline IsometryCheck is_isometry(const CMatrix& m, Model model, bool antiholomorphic = false) {
    IsometryCheck out;
    std::optional<PiValue> scale;
    auto check = [&](const auto& e) {
        using S = std::decay_t<decltype(e[0])>;
        // G = M^* J M
        std::array<S, 9> g{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                S acc{};
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        int j = detail::gram(model, k, l);
                        if (j == 0) continue;
                        S term = conjugate(e[3 * k + r]) * e[3 * l + c];
                        acc = j > 0 ? acc + term : acc - term;
                    }
                g[3 * r + c] = acc;
            }
        // lambda is read off the (0,0) entry for Ball and the (0,2) entry for Siegel.
        S lambda = model == Model::Ball ? g[0] : g[2];
        double worst = 0.0;
        int worst_r = 0;
        int worst_c = 0;
        bool ok = true;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                S expected = S(detail::gram(model, r, c)) * lambda;
                S diff = g[3 * r + c] - expected;
                double mag = std::abs(to_complex(diff));
                bool bad;
                if constexpr (std::is_same_v<S, GaussianRational>) {
                    bad = !diff.is_zero();
                } else {
                    bad = mag > kIrrationalTolerance * std::max(1.0, std::abs(lambda));
                }
                if (bad) {
                    ok = false;
                    if (mag >= worst) {
                        worst = mag;
                        worst_r = r;
                        worst_c = c;
                    }
                }
            }
        if (!ok) {
            out.residual = worst;
            out.failure = "M^*JM is not a multiple of J: residual " + format_decimal(worst) + " at entry (" +
                          std::to_string(worst_r + 1) + "," + std::to_string(worst_c + 1) + ")";
            return;
        }
        if constexpr (std::is_same_v<S, GaussianRational>) {
            if (lambda.im != 0 || lambda.re <= 0) {
                out.failure = "scale " + to_string(lambda) + " is not a positive real";
                return;
            }
            scale = PiValue::exact(lambda.re, 0);
        } else {
            if (std::abs(lambda.imag()) > kIrrationalTolerance * std::abs(lambda) || lambda.real() <= 0) {
                out.failure = "scale is not a positive real";
                return;
            }
            scale = PiValue::approx(lambda.real(), 0);
        }
    };
    m.visit(check);
    if (scale) out.isometry = Isometry(m, antiholomorphic, model, *scale);
    return out;
}

/// is_isometry, throwing GeometryError on failure.
inline Isometry make_isometry(const CMatrix& m, Model model, bool antiholomorphic = false) {
    IsometryCheck c = is_isometry(m, model, antiholomorphic);
    if (!c) throw GeometryError(c.failure);
    return *c.isometry;
}

inline CVector apply(const Isometry& g, const CVector& z) {
    CVector input = g.antiholomorphic() ? z.conjugated() : z;
    return visit_pair(g.matrix(), input, [](const auto& m, const auto& v) { return CVector(detail::mat_vec(m, v)); });
}

inline BoundaryPoint apply(const Isometry& g, const BoundaryPoint& p) {
    if (g.model() != p.model()) throw GeometryError("isometry and point belong to different models");
    return BoundaryPoint(p.model(), apply(g, p.rep()));
}

/// g o h.
inline Isometry compose(const Isometry& g, const Isometry& h) {
    if (g.model() != h.model()) throw GeometryError("composing isometries of different models");
    // g(h(z)) = G * (g anti ? conj(H) : H) * (z or conj z)
    CMatrix rhs = g.antiholomorphic() ? h.matrix().conjugated() : h.matrix();
    CMatrix product =
        visit_pair(g.matrix(), rhs, [](const auto& a, const auto& b) { return CMatrix(detail::mat_mul(a, b)); });
    PiValue scale = g.scale() * h.scale();
    return Isometry(product, g.antiholomorphic() != h.antiholomorphic(), g.model(), scale);
}

/// Equal as projective transformations of the same holomorphy type.
inline bool proj_equal(const Isometry& g, const Isometry& h) {
    if (g.model() != h.model() || g.antiholomorphic() != h.antiholomorphic()) return false;
    return visit_pair(g.matrix(), h.matrix(), [](const auto& a, const auto& b) {
        using S = std::decay_t<decltype(a[0])>;
        // Find a pivot entry of a; b must be that multiple everywhere.
        int p = 0;
        while (p < 9 && a[p] == S{}) ++p;
        if (p == 9 || b[p] == S{}) return false;
        for (int k = 0; k < 9; ++k) {
            S lhs = a[k] * b[p];
            S rhs = b[k] * a[p];
            if constexpr (std::is_same_v<S, GaussianRational>) {
                if (!(lhs == rhs)) return false;
            } else {
                if (std::abs(lhs - rhs) > kIrrationalTolerance * std::abs(a[p] * b[p])) return false;
            }
        }
        return true;
    });
}

inline CMatrix make_matrix(std::initializer_list<GaussianRational> entries) {
    if (entries.size() != 9) throw std::invalid_argument("a 3x3 matrix needs 9 entries");
    CMatrix::Exact e;
    std::copy(entries.begin(), entries.end(), e.begin());
    return CMatrix(e);
}

// ---------------------------------------------------------------------------
// Heisenberg coordinates and model conversion
// ---------------------------------------------------------------------------

/// A point of the Heisenberg group (zeta, t), or the point at infinity.
struct HeisenbergPoint {
    bool at_infinity = false;
    Scalar zeta = GaussianRational{};
    std::optional<Rational> t_exact = Rational(0);
    double t = 0.0;

    static HeisenbergPoint infinity() {
        HeisenbergPoint h;
        h.at_infinity = true;
        return h;
    }
    static HeisenbergPoint exact(GaussianRational zeta, Rational t) {
        HeisenbergPoint h;
        h.t = to_double(t);
        h.zeta = std::move(zeta);
        h.t_exact = std::move(t);
        return h;
    }
    static HeisenbergPoint approx(Complex zeta, double t) {
        HeisenbergPoint h;
        h.zeta = zeta;
        h.t_exact.reset();
        h.t = t;
        return h;
    }

    bool is_exact() const { return at_infinity || (chyp::is_exact(zeta) && t_exact.has_value()); }
};

inline std::string to_string(const HeisenbergPoint& h) {
    if (h.at_infinity) return "heis: inf";
    Complex z = to_complex(h.zeta);
    if (h.is_exact()) {
        const auto& g = std::get<GaussianRational>(h.zeta);
        return "heis: " + to_string(g.re) + ", " + to_string(g.im) + " ; " + to_string(*h.t_exact);
    }
    std::ostringstream os;
    // + 0.0 turns -0 into 0
    os << std::setprecision(17) << "heis: " << z.real() + 0.0 << ", " << z.imag() + 0.0 << " ; " << h.t + 0.0;
    return os.str();
}

/// infinity -> (1,0,0); (zeta, t) -> ((-|zeta|^2 + i t)/2, zeta, 1) in the Siegel model.
inline BoundaryPoint heisenberg_lift(const HeisenbergPoint& h) {
    if (h.at_infinity) return BoundaryPoint(Model::Siegel, make_vector(1, 0, 0));
    if (h.is_exact()) {
        const auto& z = std::get<GaussianRational>(h.zeta);
        GaussianRational first(-norm(z) / 2, *h.t_exact / 2);
        return BoundaryPoint(Model::Siegel, make_vector(first, z, 1));
    }
    Complex z = to_complex(h.zeta);
    Complex first(-std::norm(z) / 2, h.t / 2);
    return BoundaryPoint(Model::Siegel, make_approx_vector(first, z, Complex(1.0)));
}

/// Heisenberg coordinates of a Siegel-model boundary point.
inline HeisenbergPoint heisenberg_coordinates(const BoundaryPoint& p) {
    if (p.model() != Model::Siegel) throw GeometryError("Heisenberg coordinates need a Siegel-model point");
    return p.rep().visit([](const auto& s) {
        using S = std::decay_t<decltype(s[0])>;
        if (s[2] == S{}) return HeisenbergPoint::infinity();
        S inv = inverse(s[2]);
        S first = s[0] * inv;
        S zeta = s[1] * inv;
        if constexpr (std::is_same_v<S, GaussianRational>) {
            return HeisenbergPoint::exact(zeta, 2 * first.im);
        } else {
            return HeisenbergPoint::approx(zeta, 2 * first.imag());
        }
    });
}

/**
 * Form-preserving map from the Ball model to the Siegel model:
 * (z1, z2, z3) -> ((z1 + z3)/2, z2, z1 - z3). It has rational entries, so
 * conversion stays exact; Hermitian products are preserved on the nose.
 */
inline CVector ball_to_siegel(const CVector& z) {
    return z.visit([](const auto& a) {
        using S = std::decay_t<decltype(a[0])>;
        S half = S(1) * inverse(S(2));
        return CVector(Vec3<S>{(a[0] + a[2]) * half, a[1], a[0] - a[2]});
    });
}

inline CVector siegel_to_ball(const CVector& s) {
    return s.visit([](const auto& a) {
        using S = std::decay_t<decltype(a[0])>;
        S half = S(1) * inverse(S(2));
        return CVector(Vec3<S>{a[0] + a[2] * half, a[1], a[0] - a[2] * half});
    });
}

inline BoundaryPoint to_model(const BoundaryPoint& p, Model target) {
    if (p.model() == target) return p;
    if (target == Model::Siegel) return BoundaryPoint(Model::Siegel, ball_to_siegel(p.rep()));
    return BoundaryPoint(Model::Ball, siegel_to_ball(p.rep()));
}

}  // namespace chyp
