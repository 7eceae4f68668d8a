#include "chyp/exact_arith.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace chyp;
using chyp::testgen::Rng;

namespace {

GaussianRational gr(const char* s) { return parse_gaussian(s); }

// arctan by its Taylor series in long double; independent of std::atan2.
long double series_arctan(long double x) {
    long double sum = 0.0L;
    long double power = x;
    for (int k = 0; k < 400; ++k) {
        sum += (k % 2 == 0 ? power : -power) / (2 * k + 1);
        power *= x * x;
    }
    return sum;
}

}  // namespace

TEST(GaussianRational, FieldOperations) {
    EXPECT_EQ(gr("1+i") * gr("1-i"), GaussianRational(2));
    EXPECT_EQ(conjugate(gr("-1-i")), gr("-1+i"));
    EXPECT_EQ(gr("1+i") / GaussianRational(2), GaussianRational(Rational(1, 2), Rational(1, 2)));
    EXPECT_EQ(norm(gr("3+4i")), Rational(25));
}

TEST(GaussianRational, DivisionByZeroThrows) {
    EXPECT_THROW(gr("1") / GaussianRational(0), DomainError);
    EXPECT_THROW(inverse(GaussianRational()), DomainError);
}

TEST(GaussianRational, FieldAxiomsOnRandomSamples) {
    Rng rng(1);
    for (int n = 0; n < 1000; ++n) {
        auto a = testgen::random_gaussian(rng);
        auto b = testgen::random_gaussian(rng);
        auto c = testgen::random_gaussian(rng);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            ASSERT_EQ(a * inverse(a), GaussianRational(1));
        }
        ASSERT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
        ASSERT_GE(norm(a), 0);
    }
}

TEST(Literal, ParsesGrammarExamples) {
    EXPECT_EQ(gr("1"), GaussianRational(1));
    EXPECT_EQ(gr("-1/2+3/4i"), GaussianRational(Rational(-1, 2), Rational(3, 4)));
    EXPECT_EQ(gr("i"), GaussianRational::unit_i());
    EXPECT_EQ(gr("-i"), -GaussianRational::unit_i());
    EXPECT_EQ(gr("0"), GaussianRational());
    EXPECT_EQ(gr(" 2/4 "), GaussianRational(Rational(1, 2)));
    EXPECT_EQ(gr("1-i"), GaussianRational(1, -1));
}

TEST(Literal, RoundTripsThroughToString) {
    Rng rng(2);
    for (int n = 0; n < 200; ++n) {
        auto z = testgen::random_gaussian(rng);
        ASSERT_EQ(parse_gaussian(to_string(z)), z) << to_string(z);
    }
}

TEST(Literal, ReportsPositionOfMalformedInput) {
    try {
        parse_gaussian("1/2+x");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(parse_gaussian("1/0"), ParseError);
    EXPECT_THROW(parse_gaussian(""), ParseError);
    EXPECT_THROW(parse_gaussian("1+2+3"), ParseError);
    EXPECT_THROW(parse_gaussian("0.5"), ParseError);  // decimals are inexact
}

TEST(Literal, DecimalsGiveInexactScalars) {
    ScalarLiteral lit = parse_scalar("1.5-0.25i");
    EXPECT_FALSE(lit.exact.has_value());
    EXPECT_DOUBLE_EQ(lit.approx.real(), 1.5);
    EXPECT_DOUBLE_EQ(lit.approx.imag(), -0.25);
}

TEST(ExactArg, AxesAndDiagonals) {
    EXPECT_EQ(exact_arg(gr("1+i")).pi_coefficient(), Rational(1, 4));
    EXPECT_EQ(exact_arg(gr("-1")).pi_coefficient(), Rational(1));
    EXPECT_EQ(exact_arg(gr("-2i")).pi_coefficient(), Rational(-1, 2));
    EXPECT_EQ(exact_arg(gr("-3+3i")).pi_coefficient(), Rational(3, 4));
    EXPECT_EQ(exact_arg(gr("-1/2-1/2i")).pi_coefficient(), Rational(-3, 4));
    EXPECT_EQ(exact_arg(gr("5")).pi_coefficient(), Rational(0));
}

TEST(ExactArg, OffDiagonalIsApproximate) {
    Angle a = exact_arg(gr("3+4i"));
    EXPECT_FALSE(a.is_exact());
    const double oracle = static_cast<double>(1.5707963267948966192313216916397514L - series_arctan(0.75L));
    EXPECT_NEAR(oracle, 0.927295218002, 5e-13);
    EXPECT_NEAR(a.radians(), oracle, kTolerance);
    EXPECT_EQ(a.to_string(), "0.927295218002");
}

TEST(ExactArg, ZeroIsADomainError) {
    EXPECT_THROW(exact_arg(GaussianRational()), DomainError);
}

TEST(ExactArg, AdditiveOnExactProducts) {
    Rng rng(3);
    const GaussianRational units[] = {gr("1"), gr("i"), gr("-1"), gr("-i"), gr("1+i"), gr("1-i"), gr("-1+i"), gr("-1-i")};
    std::uniform_int_distribution<int> pick(0, 7);
    std::uniform_int_distribution<int> mag(1, 9);
    for (int n = 0; n < 500; ++n) {
        GaussianRational z = units[pick(rng)] * GaussianRational(Rational(mag(rng), mag(rng)));
        GaussianRational w = units[pick(rng)] * GaussianRational(Rational(mag(rng), mag(rng)));
        Angle sum = exact_arg(z) + exact_arg(w);
        Angle prod = exact_arg(z * w);
        ASSERT_TRUE(sum.is_exact());
        ASSERT_TRUE(prod.is_exact());
        ASSERT_EQ(sum, prod);
    }
}

TEST(ExactArg, ConjugationNegatesExceptOnNegativeAxis) {
    Rng rng(4);
    for (int n = 0; n < 500; ++n) {
        auto z = testgen::random_nonzero_gaussian(rng);
        Angle a = exact_arg(z);
        Angle b = exact_arg(conjugate(z));
        if (z.im == 0 && z.re < 0) {
            ASSERT_EQ(b.pi_coefficient(), Rational(1));
        } else if (a.is_exact()) {
            ASSERT_EQ(b.pi_coefficient(), -a.pi_coefficient());
        } else {
            ASSERT_NEAR(b.radians(), -a.radians(), kTolerance);
        }
    }
}

TEST(Angle, NormalizesIntoHalfOpenInterval) {
    EXPECT_EQ(Angle::exact_pi(Rational(-1)).pi_coefficient(), Rational(1));
    EXPECT_EQ(Angle::exact_pi(Rational(3)).pi_coefficient(), Rational(1));
    EXPECT_EQ(Angle::exact_pi(Rational(3, 2)).pi_coefficient(), Rational(-1, 2));
    EXPECT_EQ(Angle::exact_pi(Rational(-7, 4)).pi_coefficient(), Rational(1, 4));
    EXPECT_DOUBLE_EQ(Angle::approx(-kPi).radians(), kPi);
    EXPECT_NEAR(Angle::approx(3 * kPi + 0.5).radians(), -kPi + 0.5, 1e-12);
    EXPECT_EQ(Angle::exact_pi(Rational(1, 4)).to_string(), "1/4*pi");
    EXPECT_EQ(Angle::exact_pi(Rational(1)).to_string(), "pi");
    EXPECT_EQ(Angle::exact_pi(Rational(0)).to_string(), "0");
}

TEST(PiValue, ProductsAndSums) {
    PiValue half = PiValue::exact(Rational(1, 2), 1);
    PiValue prod = half * half;
    EXPECT_EQ(prod.power(), 2);
    EXPECT_EQ(prod.coefficient(), Rational(1, 4));
    EXPECT_EQ((prod + PiValue::zero(1)).coefficient(), Rational(1, 4));
    EXPECT_THROW(prod + half, DomainError);
    EXPECT_EQ(prod.to_string(), "1/4*pi^2");
    EXPECT_FALSE((prod + PiValue::approx(1.0, 2)).is_exact());
    EXPECT_NEAR((prod + PiValue::approx(1.0, 2)).value(), kPi * kPi / 4 + 1.0, 1e-12);
}
