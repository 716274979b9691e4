#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <betaforge/numeric_core.hpp>
#include <betaforge/series_eval.hpp>

using namespace betaforge;

namespace
{

Rational pow2_rational(int e)
{
    return e >= 0 ? Rational(pow2(static_cast<unsigned>(e))) : Rational(1, pow2(static_cast<unsigned>(-e)));
}

// Random expression over small rationals, evaluated both exactly and in
// ball arithmetic at a given precision.
struct Expr {
    enum class Op { Leaf, Add, Sub, Mul, Div, Pow };
    Op op = Op::Leaf;
    Rational leaf;
    int exponent = 0;
    std::vector<Expr> kids;
};

Expr random_expr(std::mt19937_64 &rng, int depth)
{
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 37);
    Expr e;
    if (depth == 0 || rng() % 4 == 0) {
        e.leaf = Rational(num(rng), den(rng));
        return e;
    }
    e.op = static_cast<Expr::Op>(1 + rng() % 5);
    if (e.op == Expr::Op::Pow) {
        e.exponent = static_cast<int>(rng() % 5);
        e.kids.push_back(random_expr(rng, depth - 1));
        return e;
    }
    e.kids.push_back(random_expr(rng, depth - 1));
    e.kids.push_back(random_expr(rng, depth - 1));
    return e;
}

std::optional<Rational> eval_exact(const Expr &e)
{
    switch (e.op) {
    case Expr::Op::Leaf:
        return e.leaf;
    case Expr::Op::Pow: {
        auto a = eval_exact(e.kids[0]);
        if (!a) {
            return std::nullopt;
        }
        return rpow(*a, e.exponent);
    }
    default:
        break;
    }
    auto a = eval_exact(e.kids[0]);
    auto b = eval_exact(e.kids[1]);
    if (!a || !b) {
        return std::nullopt;
    }
    switch (e.op) {
    case Expr::Op::Add:
        return *a + *b;
    case Expr::Op::Sub:
        return *a - *b;
    case Expr::Op::Mul:
        return *a * *b;
    default:
        if (*b == 0) {
            return std::nullopt;
        }
        return *a / *b;
    }
}

// nullopt when a divisor ball straddles zero.
std::optional<BallReal> eval_ball(const Expr &e, int precision)
{
    switch (e.op) {
    case Expr::Op::Leaf:
        return rational_to_ball(e.leaf, precision);
    case Expr::Op::Pow: {
        auto a = eval_ball(e.kids[0], precision);
        if (!a) {
            return std::nullopt;
        }
        return ball_pow_int(*a, e.exponent);
    }
    default:
        break;
    }
    auto a = eval_ball(e.kids[0], precision);
    auto b = eval_ball(e.kids[1], precision);
    if (!a || !b) {
        return std::nullopt;
    }
    switch (e.op) {
    case Expr::Op::Add:
        return *a + *b;
    case Expr::Op::Sub:
        return *a - *b;
    case Expr::Op::Mul:
        return *a * *b;
    default:
        if (b->contains_zero()) {
            return std::nullopt;
        }
        return *a / *b;
    }
}

} // namespace

TEST(Factorial, SmallValues)
{
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(6), 720);
    std::uint64_t product = 1;
    for (std::uint64_t i = 2; i <= 10; ++i) {
        product *= i;
    }
    EXPECT_EQ(factorial(10), Integer(product));
    EXPECT_EQ(factorial(10), 3628800);
}

TEST(Factorial, SuccessorRelation)
{
    for (int n = 0; n <= 30; ++n) {
        EXPECT_EQ(factorial(n + 1), Integer(n + 1) * factorial(n)) << n;
    }
}

TEST(Factorial, RejectsNegative)
{
    EXPECT_THROW(factorial(-1), std::invalid_argument);
}

TEST(Binomial, MatchesPascalTriangle)
{
    std::vector<std::vector<Integer>> pascal(31);
    for (int n = 0; n <= 30; ++n) {
        pascal[n].assign(static_cast<std::size_t>(n) + 1, Integer(1));
        for (int k = 1; k < n; ++k) {
            pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
        }
    }
    for (int n = 0; n <= 30; ++n) {
        for (int k = 0; k <= n; ++k) {
            ASSERT_EQ(binomial(n, k), pascal[n][k]) << n << "," << k;
        }
    }
    EXPECT_EQ(binomial(30, 15), 155117520);
    EXPECT_EQ(binomial(8, 4), 70);
    EXPECT_EQ(binomial(17, 0), 1);
}

TEST(Binomial, RejectsKAboveN)
{
    EXPECT_THROW(binomial(3, 4), std::invalid_argument);
}

TEST(RationalCanonical, NormalizationIsIdempotentAndSignCanonical)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-1000000, 1000000);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t a = dist(rng);
        std::int64_t b = dist(rng);
        if (b == 0) {
            b = 1;
        }
        const Rational q = make_rational(a, b);
        const Integer num = numerator_of(q);
        const Integer den = denominator_of(q);
        ASSERT_GT(den, 0);
        ASSERT_EQ(boost::multiprecision::gcd(iabs(num), den), num == 0 ? den : Integer(1));
        ASSERT_EQ(Rational(num, den), q);
        ASSERT_EQ(numerator_of(Rational(num, den)), num);
        if (a == 0) {
            ASSERT_EQ(den, 1);
        }
    }
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(BallArithmetic, ExactIntegerAdd)
{
    const BallReal sum = BallReal::exact(1, 64) + BallReal::exact(2, 64);
    EXPECT_TRUE(sum.contains(3));
    EXPECT_EQ(sum.rad(), 0);
}

TEST(BallArithmetic, ZeroAbsorbsUpToRounding)
{
    const BallReal x(Integer(12345) << 40, Integer(999), 64);
    const BallReal product = x * BallReal::exact(0, 64);
    EXPECT_EQ(product.mid(), 0);
    EXPECT_LE(product.rad(), 1);
}

TEST(BallArithmetic, IntervalSquare)
{
    const BallReal one_ish = ball_add_error(BallReal::exact(1, 64), Rational(1, 10));
    const BallReal sq = ball_pow_int(one_ish, 2);
    EXPECT_TRUE(sq.contains(Rational(81, 100)));
    EXPECT_TRUE(sq.contains(Rational(121, 100)));
}

TEST(BallArithmetic, DivisionByBallContainingZeroThrows)
{
    const BallReal around_zero(Integer(1), Integer(2), 32);
    EXPECT_THROW(BallReal::exact(1, 32) / around_zero, std::domain_error);
    EXPECT_THROW(ball_div(BallReal::exact(1, 32), Integer(0)), std::domain_error);
}

TEST(BallArithmetic, RejectsNegativeRadius)
{
    EXPECT_THROW(BallReal(Integer(0), Integer(-1), 10), std::invalid_argument);
}

TEST(BallArithmetic, PrecisionChangeKeepsContainment)
{
    const Rational third(1, 3);
    const BallReal b = rational_to_ball(third, 200);
    for (int p : {8, 50, 199, 200, 300}) {
        EXPECT_TRUE(b.at_precision(p).contains(third)) << p;
    }
}

// Composed random expressions: the ball contains the exact value, and the
// midpoint of the 4x-precision evaluation.
TEST(BallProperties, ContainmentUnderRandomExpressions)
{
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        const Expr e = random_expr(rng, 4);
        const auto exact = eval_exact(e);
        const int p = 16 + static_cast<int>(rng() % 100);
        const auto lo = eval_ball(e, p);
        const auto hi = eval_ball(e, 4 * p);
        if (!exact || !lo || !hi) {
            continue;
        }
        ASSERT_TRUE(lo->contains(*exact)) << "trial " << trial;
        ASSERT_TRUE(hi->contains(*exact)) << "trial " << trial;
        ASSERT_TRUE(lo->contains(hi->midpoint_value())) << "trial " << trial;
        ++checked;
    }
    EXPECT_GE(checked, 1000);
}

TEST(RationalToBall, DyadicIsExact)
{
    for (int p : {8, 64, 333}) {
        const BallReal half = rational_to_ball(Rational(1, 2), p);
        EXPECT_EQ(half.rad(), 0);
        EXPECT_EQ(half.midpoint_value(), Rational(1, 2));
    }
}

TEST(RationalToBall, WidthBound)
{
    const BallReal third = rational_to_ball(Rational(1, 3), 64);
    EXPECT_TRUE(third.contains(Rational(1, 3)));
    EXPECT_LE(third.radius_value(), pow2_rational(-63));
}

TEST(RationalToBall, BetaSevenCoefficientTimesPiPower)
{
    // Independent oracle: 4000 terms of the alternating series, tail below
    // 8001^-7 ~ 2^-90.
    const BallReal series = beta_partial_sum(7, 4000, 96);
    const BallReal exact = ball_mul(ball_pow_int(pi_ball(64), 7), rational_to_ball(Rational(61, 184320), 96));
    EXPECT_TRUE(intersects(series, exact));
    EXPECT_LT(exact.radius_value(), pow2_rational(-60));
}

TEST(PiBall, ContainsKnownDigits)
{
    const BallReal pi = pi_ball(64);
    const Rational lo(Integer("314159265358979323846"), Integer("100000000000000000000"));
    const Rational hi(Integer("314159265358979323847"), Integer("100000000000000000000"));
    EXPECT_LE(pi.lower(), hi);
    EXPECT_GE(pi.upper(), lo);
    EXPECT_LE(pi.radius_value(), pow2_rational(-62));
}

TEST(PiBall, TwoIndependentSeriesIntersect)
{
    for (int p : {8, 32, 64, 128, 256, 1024}) {
        EXPECT_TRUE(intersects(pi_ball(p), pi_ball_bbp(p))) << p;
        EXPECT_LE(pi_ball_bbp(p).radius_value(), pow2_rational(-p + 2)) << p;
    }
}

TEST(PiBall, CoarseBracketAtEveryPrecision)
{
    for (int p = 8; p <= 300; p += 17) {
        const Rational mid = pi_ball(p).midpoint_value();
        EXPECT_GT(mid, Rational(31415, 10000)) << p;
        EXPECT_LT(mid, Rational(31416, 10000)) << p;
        EXPECT_LE(pi_ball(p).radius_value(), pow2_rational(-p + 2)) << p;
    }
}

TEST(PiBall, NestedPrecisionsIntersectAndShrink)
{
    for (int p : {32, 64, 128, 256}) {
        const BallReal a = pi_ball(p);
        const BallReal b = pi_ball(2 * p);
        EXPECT_TRUE(intersects(a, b)) << p;
        // The radius is O(p) ulps, so doubling p gains p bits up to a factor below 4.
        EXPECT_LE(b.radius_value(), a.radius_value() * pow2_rational(-(p - 2))) << p;
    }
}

TEST(PiBall, RejectsTinyPrecision)
{
    EXPECT_THROW(pi_ball(7), std::invalid_argument);
}

TEST(Atanh, LogOfThreeHalvesAgainstAlternateSplit)
{
    // ln 3 = 2 artanh(1/2); ln 3 = ln(3/2) + ln 2 = 2 artanh(1/5) + 2 artanh(1/3).
    const int w = 200;
    const BallReal direct = ball_mul(atanh_ball(Rational(1, 2), w), Integer(2));
    const BallReal split = ball_mul(atanh_ball(Rational(1, 5), w) + atanh_ball(Rational(1, 3), w), Integer(2));
    EXPECT_TRUE(intersects(direct, split));
    EXPECT_THROW(atanh_ball(Rational(3, 4), w), std::invalid_argument);
}

TEST(DecimalText, DyadicRoundTrip)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const int p = static_cast<int>(rng() % 200);
        const Integer m = Integer(static_cast<std::int64_t>(rng())) * Integer(static_cast<std::int64_t>(rng() % 1000))
                          - Integer(static_cast<std::int64_t>(rng() % 5000));
        ASSERT_EQ(decimal_to_dyadic(dyadic_to_decimal(m, p), p), m);
    }
    EXPECT_THROW(decimal_to_dyadic("0.1", 10), std::invalid_argument);
    EXPECT_THROW(decimal_to_dyadic("1.2.3", 10), std::invalid_argument);
}

TEST(DecimalText, TruncationIsJustifiedByEnclosure)
{
    const BallReal pi = pi_ball(128);
    const DecimalText t = format_truncated(pi, 30);
    EXPECT_EQ(t.digits, 30);
    EXPECT_EQ(t.text, "3.141592653589793238462643383279");
    // A wide ball only justifies a few digits.
    const BallReal wide = ball_add_error(pi, Rational(1, 1000));
    const DecimalText w = format_truncated(wide, 30);
    EXPECT_LE(w.digits, 3);
    EXPECT_EQ(w.text.substr(0, 3), "3.1");
    const DecimalText neg = format_truncated(-pi, 5);
    EXPECT_EQ(neg.text, "-3.14159");
}
