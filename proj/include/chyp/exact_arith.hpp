#pragma once

/**
 * @file exact_arith.hpp
 * @brief Exact scalar tower: rationals, Gaussian rationals, exact angles.
 *
 * All exact geometry in this library runs over Q(i). Angles are carried as
 * rational multiples of pi when the argument of a Gaussian rational sits on
 * a coordinate axis or a diagonal; everything else falls back to doubles.
 *
 * Values that are rational multiples of a power of pi (the Kahler cocycle,
 * its cup square) are carried by PiValue, which stays exact as long as every
 * input was exact.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chyp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Comparison tolerance for unit-scale floating quantities.
inline constexpr double kTolerance = 1e-12;
/// Tolerance used once irrational coordinates (sqrt(3), cube roots of unity) enter.
inline constexpr double kIrrationalTolerance = 1e-9;

inline constexpr double kPi = std::numbers::pi;

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed literal. `position()` is the 0-based column of the offending character.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string& message, std::size_t position)
        : std::invalid_argument(message + " (at column " + std::to_string(position + 1) + ")"),
          message_(message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }
    /// The message without the column annotation.
    const std::string& message() const noexcept { return message_; }

  private:
    std::string message_;
    std::size_t position_;
};

// ---------------------------------------------------------------------------
// Rational helpers
// ---------------------------------------------------------------------------

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

inline Integer floor_div(const Integer& n, const Integer& d) {
    Integer q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

inline Integer floor(const Rational& q) {
    return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

inline Integer ceil(const Rational& q) {
    return -floor(-q);
}

inline Rational abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

// ---------------------------------------------------------------------------
// GaussianRational
// ---------------------------------------------------------------------------

/// Exact complex scalar re + im*i with rational parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline GaussianRational conjugate(const GaussianRational& z) {
    return {z.re, -z.im};
}

/// z * conj(z).
inline Rational norm(const GaussianRational& z) {
    return z.re * z.re + z.im * z.im;
}

inline GaussianRational inverse(const GaussianRational& z) {
    if (z.is_zero()) throw DomainError("division by zero Gaussian rational");
    Rational n = norm(z);
    return {z.re / n, -z.im / n};
}

inline GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= inverse(o);
}

inline Rational real_part(const GaussianRational& z) { return z.re; }
inline Rational imag_part(const GaussianRational& z) { return z.im; }

inline Complex to_complex(const GaussianRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

/// Lexicographic order on (re, im).
inline int compare_lex(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re ? -1 : 1;
    if (a.im != b.im) return a.im < b.im ? -1 : 1;
    return 0;
}

// Same vocabulary for the floating fallback, so templated code can use either.
inline Complex conjugate(const Complex& z) { return std::conj(z); }
inline double norm(const Complex& z) { return std::norm(z); }
inline double real_part(const Complex& z) { return z.real(); }
inline double imag_part(const Complex& z) { return z.imag(); }
inline Complex to_complex(const Complex& z) { return z; }
inline Complex inverse(const Complex& z) {
    if (z == Complex{}) throw DomainError("division by zero complex scalar");
    return 1.0 / z;
}
inline int compare_lex(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
    if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
    return 0;
}

namespace detail {

inline void append_coefficient(std::string& out, const Rational& q, bool imaginary, bool leading) {
    const bool negative = q < 0;
    Rational mag = negative ? Rational(-q) : q;
    if (negative) {
        out += '-';
    } else if (!leading) {
        out += '+';
    }
    if (!imaginary || mag != 1) out += mag.str();
    if (imaginary) out += 'i';
}

}  // namespace detail

/// Formats in the literal grammar accepted by parse_gaussian: "0", "-1/2+3/4i", "-i".
inline std::string to_string(const GaussianRational& z) {
    if (z.is_zero()) return "0";
    std::string out;
    if (z.re != 0) detail::append_coefficient(out, z.re, false, true);
    if (z.im != 0) detail::append_coefficient(out, z.im, true, z.re == 0);
    return out;
}

// ---------------------------------------------------------------------------
// Literal parsing
// ---------------------------------------------------------------------------

/// A parsed scalar literal: exact unless it contained a decimal point or exponent.
struct ScalarLiteral {
    std::optional<GaussianRational> exact;
    Complex approx;
};

namespace detail {

class LiteralCursor {
  public:
    LiteralCursor(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    char take() { return text_[pos_++]; }
    std::size_t column() const { return offset_ + pos_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, column()); }

  private:
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Term {
    Rational exact{0};
    double approx = 0.0;
    bool inexact = false;
    bool imaginary = false;
};

// rational := integer ('/' positive-integer)?  |  decimal
inline Term parse_term(LiteralCursor& cur, bool allow_sign) {
    Term term;
    bool negative = false;
    if (allow_sign && (cur.peek() == '-' || cur.peek() == '+')) negative = cur.take() == '-';

    std::string digits;
    while (is_digit(cur.peek()) || cur.peek() == '.' || cur.peek() == 'e' || cur.peek() == 'E' ||
           ((cur.peek() == '-' || cur.peek() == '+') && !digits.empty() &&
            (digits.back() == 'e' || digits.back() == 'E'))) {
        digits += cur.take();
    }

    if (digits.empty()) {
        if (cur.peek() != 'i') cur.fail("expected a number or 'i'");
        term.exact = 1;
    } else if (digits.find_first_of(".eE") != std::string::npos) {
        std::size_t used = 0;
        try {
            term.approx = std::stod(digits, &used);
        } catch (const std::exception&) {
            cur.fail("malformed decimal '" + digits + "'");
        }
        if (used != digits.size()) cur.fail("malformed decimal '" + digits + "'");
        term.inexact = true;
    } else {
        Integer num(digits);
        Integer den = 1;
        if (cur.peek() == '/') {
            cur.take();
            std::string den_digits;
            while (is_digit(cur.peek())) den_digits += cur.take();
            if (den_digits.empty()) cur.fail("expected a positive integer denominator");
            den = Integer(den_digits);
            if (den == 0) cur.fail("zero denominator");
        }
        term.exact = Rational(num, den);
    }
    if (cur.peek() == 'i') {
        cur.take();
        term.imaginary = true;
    }
    if (negative) {
        term.exact = -term.exact;
        term.approx = -term.approx;
    }
    return term;
}

}  // namespace detail

/**
 * Parses `scalar := term (('+'|'-') term)?`, `term := rational | rational? 'i'`.
 *
 * Surrounding whitespace is ignored. `offset` shifts reported columns so that
 * callers embedding the scalar in a longer line get line-relative positions.
 */
inline ScalarLiteral parse_scalar(std::string_view text, std::size_t offset = 0) {
    std::size_t begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) throw ParseError("empty scalar", offset);
    std::size_t end = text.find_last_not_of(" \t") + 1;
    detail::LiteralCursor cur(text.substr(begin, end - begin), offset + begin);

    detail::Term terms[2];
    int count = 0;
    terms[count++] = detail::parse_term(cur, true);
    if (!cur.done()) {
        char op = cur.peek();
        if (op != '+' && op != '-') cur.fail(std::string("unexpected character '") + op + "'");
        cur.take();
        terms[count] = detail::parse_term(cur, false);
        if (op == '-') {
            terms[count].exact = -terms[count].exact;
            terms[count].approx = -terms[count].approx;
        }
        ++count;
    }
    if (!cur.done()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");

    bool inexact = false;
    GaussianRational exact;
    Complex approx;
    for (int k = 0; k < count; ++k) {
        const auto& t = terms[k];
        inexact = inexact || t.inexact;
        double value = t.inexact ? t.approx : to_double(t.exact);
        if (t.imaginary) {
            exact.im += t.exact;
            approx += Complex(0.0, value);
        } else {
            exact.re += t.exact;
            approx += Complex(value, 0.0);
        }
    }
    ScalarLiteral out;
    out.approx = approx;
    if (!inexact) {
        out.exact = exact;
        out.approx = to_complex(exact);
    }
    return out;
}

/// Exact-only variant of parse_scalar.
inline GaussianRational parse_gaussian(std::string_view text, std::size_t offset = 0) {
    ScalarLiteral lit = parse_scalar(text, offset);
    if (!lit.exact) throw ParseError("expected an exact scalar literal", offset);
    return *lit.exact;
}

inline Rational parse_rational(std::string_view text, std::size_t offset = 0) {
    GaussianRational z = parse_gaussian(text, offset);
    if (z.im != 0) throw ParseError("expected a real rational", offset);
    return z.re;
}

// ---------------------------------------------------------------------------
// Angle
// ---------------------------------------------------------------------------

inline std::string format_decimal(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << (x == 0.0 ? 0.0 : x);
    return os.str();
}

/// Formats coeff * pi^power as "k/n*pi^p" ("0" for zero, "pi" for coefficient 1).
inline std::string format_pi_multiple(const Rational& coeff, int power) {
    if (coeff == 0 || power == 0) return coeff.str();
    std::string unit = power == 1 ? "pi" : "pi^" + std::to_string(power);
    if (coeff == 1) return unit;
    if (coeff == -1) return "-" + unit;
    return coeff.str() + "*" + unit;
}

/**
 * An angle modulo 2*pi. Exact angles are a rational coefficient of pi in
 * (-1, 1]; approximate angles are radians in (-pi, pi]. +pi is canonical.
 */
class Angle {
  public:
    Angle() : exact_(Rational(0)) {}

    static Angle exact_pi(const Rational& coeff) {
        // coeff - 2k with k = ceil((coeff - 1) / 2) lands in (-1, 1].
        Rational k(ceil((coeff - 1) / 2));
        return Angle(std::optional<Rational>(coeff - 2 * k), 0.0);
    }

    static Angle approx(double radians) {
        double r = std::remainder(radians, 2 * kPi);
        if (r <= -kPi) r += 2 * kPi;
        return Angle(std::nullopt, r);
    }

    bool is_exact() const { return exact_.has_value(); }

    /// Coefficient c of c*pi. Throws for approximate angles.
    const Rational& pi_coefficient() const {
        if (!exact_) throw DomainError("angle is not an exact multiple of pi");
        return *exact_;
    }

    double radians() const { return exact_ ? to_double(*exact_) * kPi : radians_; }

    Angle operator-() const {
        if (exact_) return exact_pi(-*exact_);
        return approx(-radians_);
    }

    friend Angle operator+(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return exact_pi(*a.exact_ + *b.exact_);
        return approx(a.radians() + b.radians());
    }
    friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }

    /// Exact equality for exact angles; approximate angles compare within kTolerance (mod 2*pi).
    friend bool operator==(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
        double d = std::abs(std::remainder(a.radians() - b.radians(), 2 * kPi));
        return d <= kTolerance;
    }

    std::string to_string() const {
        return exact_ ? format_pi_multiple(*exact_, 1) : format_decimal(radians_);
    }

  private:
    Angle(std::optional<Rational> exact, double radians) : exact_(std::move(exact)), radians_(radians) {}

    std::optional<Rational> exact_;
    double radians_ = 0.0;
};

/**
 * arg(z) in (-pi, pi]. Exact exactly when z lies on an axis or a diagonal;
 * otherwise an approximate angle from atan2.
 */
inline Angle exact_arg(const GaussianRational& z) {
    if (z.is_zero()) throw DomainError("arg of zero is undefined");
    const int sr = z.re.sign();
    const int si = z.im.sign();
    if (si == 0) return Angle::exact_pi(sr > 0 ? Rational(0) : Rational(1));
    if (sr == 0) return Angle::exact_pi(Rational(si, 2));
    if (abs(z.re) == abs(z.im)) {
        Rational quarter = sr > 0 ? Rational(1, 4) : Rational(3, 4);
        return Angle::exact_pi(si > 0 ? quarter : Rational(-quarter));
    }
    return Angle::approx(std::atan2(to_double(z.im), to_double(z.re)));
}

inline Angle approx_arg(const Complex& z) {
    if (z == Complex{}) throw DomainError("arg of zero is undefined");
    return Angle::approx(std::arg(z));
}

// ---------------------------------------------------------------------------
// PiValue
// ---------------------------------------------------------------------------

/**
 * A real number c * pi^power. Exact when c is a known rational; otherwise
 * only the floating value is kept. Products add powers; sums need equal
 * powers unless one side is an exact zero.
 */
class PiValue {
  public:
    PiValue() : power_(0), coeff_(Rational(0)) {}

    static PiValue exact(Rational coeff, int power) { return PiValue(power, std::move(coeff), 0.0); }
    static PiValue approx(double value, int power) { return PiValue(power, std::nullopt, value); }
    static PiValue zero(int power = 0) { return exact(Rational(0), power); }
    static PiValue from_angle(const Angle& a) {
        return a.is_exact() ? exact(a.pi_coefficient(), 1) : approx(a.radians(), 1);
    }

    bool is_exact() const { return coeff_.has_value(); }
    bool is_exact_zero() const { return coeff_ && *coeff_ == 0; }
    int power() const { return power_; }

    const Rational& coefficient() const {
        if (!coeff_) throw DomainError("value is not an exact multiple of a power of pi");
        return *coeff_;
    }

    double value() const { return coeff_ ? to_double(*coeff_) * std::pow(kPi, power_) : value_; }

    PiValue operator-() const { return coeff_ ? exact(-*coeff_, power_) : approx(-value_, power_); }

    friend PiValue operator+(const PiValue& a, const PiValue& b) {
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        if (a.power_ != b.power_) throw DomainError("adding multiples of different powers of pi");
        if (a.coeff_ && b.coeff_) return exact(*a.coeff_ + *b.coeff_, a.power_);
        return approx(a.value() + b.value(), a.power_);
    }
    friend PiValue operator-(const PiValue& a, const PiValue& b) { return a + (-b); }

    friend PiValue operator*(const PiValue& a, const PiValue& b) {
        if (a.coeff_ && b.coeff_) return exact(*a.coeff_ * *b.coeff_, a.power_ + b.power_);
        return approx(a.value() * b.value(), a.power_ + b.power_);
    }

    PiValue scaled(const Rational& s) const {
        return coeff_ ? exact(*coeff_ * s, power_) : approx(value_ * to_double(s), power_);
    }

    PiValue& operator+=(const PiValue& o) { return *this = *this + o; }

    /// Exact comparison when both are exact; otherwise false unless the values are bit-equal.
    friend bool operator==(const PiValue& a, const PiValue& b) {
        if (a.coeff_ && b.coeff_) return *a.coeff_ == *b.coeff_ && (a.power_ == b.power_ || *a.coeff_ == 0);
        return a.value() == b.value();
    }

    std::string to_string() const {
        return coeff_ ? format_pi_multiple(*coeff_, power_) : format_decimal(value_);
    }

  private:
    PiValue(int power, std::optional<Rational> coeff, double value)
        : power_(power), coeff_(std::move(coeff)), value_(value) {}

    int power_;
    std::optional<Rational> coeff_;
    double value_ = 0.0;
};

/// Uniform scaling hook for generic cochain code.
inline PiValue scale(const PiValue& v, const Rational& s) { return v.scaled(s); }
inline Rational scale(const Rational& v, const Rational& s) { return v * s; }
inline double scale(double v, const Rational& s) { return v * to_double(s); }

}  // namespace chyp
