#ifndef BETAFORGE_BALL_REAL_HPP
#define BETAFORGE_BALL_REAL_HPP

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <betaforge/integer.hpp>

namespace betaforge
{

// Extra bits carried by every certified evaluation on top of the caller's
// requested precision.
inline constexpr int kGuardBits = 32;

// A real enclosure [mid - rad, mid + rad] * 2^-precision. Both mid and rad
// are integers in units of the last place (ulp) at that precision.
class BallReal
{
public:
    BallReal() = default;

    BallReal(Integer mid, Integer rad, int precision)
        : m_mid(std::move(mid)), m_rad(std::move(rad)), m_prec(precision)
    {
        if (m_rad < 0) {
            throw std::invalid_argument("betaforge::BallReal: negative radius");
        }
        if (m_prec < 0) {
            throw std::invalid_argument("betaforge::BallReal: negative precision");
        }
    }

    static BallReal exact(const Integer &value, int precision)
    {
        return BallReal(value << precision, 0, precision);
    }

    [[nodiscard]] const Integer &mid() const noexcept { return m_mid; }
    [[nodiscard]] const Integer &rad() const noexcept { return m_rad; }
    [[nodiscard]] int precision() const noexcept { return m_prec; }

    [[nodiscard]] Rational midpoint_value() const { return Rational(m_mid, pow2(static_cast<unsigned>(m_prec))); }
    [[nodiscard]] Rational radius_value() const { return Rational(m_rad, pow2(static_cast<unsigned>(m_prec))); }
    [[nodiscard]] Rational lower() const { return Rational(m_mid - m_rad, pow2(static_cast<unsigned>(m_prec))); }
    [[nodiscard]] Rational upper() const { return Rational(m_mid + m_rad, pow2(static_cast<unsigned>(m_prec))); }

    [[nodiscard]] bool contains(const Rational &x) const
    {
        const Rational scaled = x * Rational(pow2(static_cast<unsigned>(m_prec)));
        return scaled >= Rational(m_mid - m_rad) && scaled <= Rational(m_mid + m_rad);
    }

    [[nodiscard]] bool contains_zero() const { return iabs(m_mid) <= m_rad; }

    // Re-expresses the ball at another precision. Going up is exact; going
    // down truncates the midpoint and rounds the radius outward.
    [[nodiscard]] BallReal at_precision(int precision) const
    {
        if (precision >= m_prec) {
            const auto shift = static_cast<unsigned>(precision - m_prec);
            return BallReal(m_mid << shift, m_rad << shift, precision);
        }
        const Integer scale = pow2(static_cast<unsigned>(m_prec - precision));
        Integer q;
        Integer r;
        boost::multiprecision::divide_qr(m_mid, scale, q, r);
        Integer rad = ceil_div(m_rad, scale) + (r != 0 ? 1 : 0);
        return BallReal(std::move(q), std::move(rad), precision);
    }

    friend bool operator==(const BallReal &, const BallReal &) = default;

private:
    Integer m_mid = 0;
    Integer m_rad = 0;
    int m_prec = 0;
};

namespace detail
{

inline std::pair<BallReal, BallReal> aligned(const BallReal &a, const BallReal &b)
{
    const int p = std::max(a.precision(), b.precision());
    return {a.at_precision(p), b.at_precision(p)};
}

// Truncating division plus one ulp of radius when the quotient is inexact.
inline std::pair<Integer, Integer> div_with_error(const Integer &num, const Integer &den)
{
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(num, den, q, r);
    return {std::move(q), Integer(r != 0 ? 1 : 0)};
}

} // namespace detail

inline BallReal rational_to_ball(const Rational &q, int precision)
{
    auto [mid, err] = detail::div_with_error(numerator_of(q) << precision, denominator_of(q));
    return BallReal(std::move(mid), std::move(err), precision);
}

inline BallReal integer_to_ball(const Integer &v, int precision)
{
    return BallReal::exact(v, precision);
}

inline BallReal ball_neg(const BallReal &a)
{
    return BallReal(-a.mid(), a.rad(), a.precision());
}

inline BallReal ball_add(const BallReal &a, const BallReal &b)
{
    const auto [x, y] = detail::aligned(a, b);
    return BallReal(x.mid() + y.mid(), x.rad() + y.rad(), x.precision());
}

inline BallReal ball_sub(const BallReal &a, const BallReal &b)
{
    return ball_add(a, ball_neg(b));
}

inline BallReal ball_mul(const BallReal &a, const BallReal &b)
{
    const auto [x, y] = detail::aligned(a, b);
    const int p = x.precision();
    const Integer scale = pow2(static_cast<unsigned>(p));
    auto [mid, round_err] = detail::div_with_error(x.mid() * y.mid(), scale);
    const Integer spread = iabs(x.mid()) * y.rad() + iabs(y.mid()) * x.rad() + x.rad() * y.rad();
    return BallReal(std::move(mid), ceil_div(spread, scale) + round_err, p);
}

inline BallReal ball_mul(const BallReal &a, const Integer &k)
{
    return BallReal(a.mid() * k, a.rad() * iabs(k), a.precision());
}

inline BallReal ball_div(const BallReal &a, const Integer &k)
{
    if (k == 0) {
        throw std::domain_error("betaforge::ball_div: division by zero");
    }
    auto [mid, round_err] = detail::div_with_error(a.mid(), k);
    return BallReal(std::move(mid), ceil_div(a.rad(), iabs(k)) + round_err, a.precision());
}

inline BallReal ball_div(const BallReal &a, const BallReal &b)
{
    if (b.contains_zero()) {
        throw std::domain_error("betaforge::ball_div: divisor ball contains zero");
    }
    const auto [x, y] = detail::aligned(a, b);
    const int p = x.precision();
    auto [mid, round_err] = detail::div_with_error(x.mid() << p, y.mid());
    const Integer abs_d = iabs(y.mid());
    const Integer spread = (iabs(x.mid()) * y.rad() + abs_d * x.rad()) << p;
    const Integer rad = ceil_div(spread, abs_d * (abs_d - y.rad())) + round_err;
    return BallReal(std::move(mid), rad, p);
}

inline BallReal ball_pow_int(const BallReal &a, int exponent)
{
    if (exponent < 0) {
        return ball_div(BallReal::exact(1, a.precision()), ball_pow_int(a, -exponent));
    }
    BallReal out = BallReal::exact(1, a.precision());
    BallReal base = a;
    auto e = static_cast<unsigned>(exponent);
    while (e != 0) {
        if (e & 1U) {
            out = ball_mul(out, base);
        }
        e >>= 1U;
        if (e != 0) {
            base = ball_mul(base, base);
        }
    }
    return out;
}

inline BallReal operator-(const BallReal &a) { return ball_neg(a); }
inline BallReal operator+(const BallReal &a, const BallReal &b) { return ball_add(a, b); }
inline BallReal operator-(const BallReal &a, const BallReal &b) { return ball_sub(a, b); }
inline BallReal operator*(const BallReal &a, const BallReal &b) { return ball_mul(a, b); }
inline BallReal operator/(const BallReal &a, const BallReal &b) { return ball_div(a, b); }
inline BallReal operator*(const BallReal &a, const Integer &k) { return ball_mul(a, k); }
inline BallReal operator/(const BallReal &a, const Integer &k) { return ball_div(a, k); }

inline BallReal ball_mul(const BallReal &a, const Rational &q)
{
    return ball_div(ball_mul(a, numerator_of(q)), denominator_of(q));
}

// Adds a one-sided correction known to lie in [0, bound] (a truncated tail
// of non-negative terms, say) to the enclosure.
inline BallReal ball_add_nonnegative(const BallReal &a, const Rational &bound)
{
    const Integer ulps = ceil_div(numerator_of(bound) << a.precision(), denominator_of(bound));
    const Integer half = ulps / 2;
    return BallReal(a.mid() + half, a.rad() + (ulps - half), a.precision());
}

// Widens the radius by a symmetric error bound.
inline BallReal ball_add_error(const BallReal &a, const Rational &bound)
{
    const Integer ulps = ceil_div(numerator_of(bound) << a.precision(), denominator_of(bound));
    return BallReal(a.mid(), a.rad() + iabs(ulps), a.precision());
}

inline bool intersects(const BallReal &a, const BallReal &b)
{
    const auto [x, y] = detail::aligned(a, b);
    return iabs(x.mid() - y.mid()) <= x.rad() + y.rad();
}

// Upper bound on |u - v| over u in a, v in b.
inline Rational residual_bound(const BallReal &a, const BallReal &b)
{
    const auto [x, y] = detail::aligned(a, b);
    return Rational(iabs(x.mid() - y.mid()) + x.rad() + y.rad(), pow2(static_cast<unsigned>(x.precision())));
}

// Exact decimal expansion of the dyadic number m * 2^-precision.
inline std::string dyadic_to_decimal(const Integer &m, int precision)
{
    const bool neg = m < 0;
    const Integer scaled = iabs(m) * ipow(Integer(5), static_cast<unsigned>(precision));
    const Integer ten_p = ipow(Integer(10), static_cast<unsigned>(precision));
    std::string out = neg ? "-" : "";
    out += Integer(scaled / ten_p).str();
    Integer frac = scaled % ten_p;
    if (frac != 0) {
        std::string digits = frac.str();
        digits.insert(0, static_cast<std::size_t>(precision) - digits.size(), '0');
        while (digits.back() == '0') {
            digits.pop_back();
        }
        out += "." + digits;
    }
    return out;
}

// Inverse of dyadic_to_decimal; rejects text that is not a multiple of
// 2^-precision.
inline Integer decimal_to_dyadic(std::string_view text, int precision)
{
    if (text.empty()) {
        throw std::invalid_argument("betaforge: empty decimal");
    }
    bool neg = false;
    if (text.front() == '-') {
        neg = true;
        text.remove_prefix(1);
    }
    std::string digits;
    std::size_t frac_len = 0;
    bool seen_point = false;
    for (char ch : text) {
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
            digits.push_back(ch);
            frac_len += seen_point ? 1 : 0;
        } else {
            throw std::invalid_argument("betaforge: malformed decimal '" + std::string(text) + "'");
        }
    }
    if (digits.empty()) {
        throw std::invalid_argument("betaforge: malformed decimal");
    }
    // A leading zero would select octal in the string constructor.
    const std::size_t first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
    const Integer value(digits.substr(first));
    const Integer num = value << precision;
    const Integer den = ipow(Integer(10), static_cast<unsigned>(frac_len));
    if (num % den != 0) {
        throw std::invalid_argument("betaforge: decimal is not representable at the given precision");
    }
    Integer m = num / den;
    return neg ? Integer(-m) : m;
}

struct DecimalText {
    std::string text;
    // Number of certified fractional digits, or -1 when not even the
    // integer part is determined by the enclosure.
    int digits = 0;
};

// Prints the enclosure truncated toward zero to the largest digit count
// (at most max_digits) on which every point of the ball agrees.
inline DecimalText format_truncated(const BallReal &x, int max_digits)
{
    if (x.contains_zero()) {
        return {"0", -1};
    }
    const bool neg = x.mid() < 0;
    const Integer lo = iabs(x.mid()) - x.rad();
    const Integer hi = iabs(x.mid()) + x.rad();
    const Integer scale = pow2(static_cast<unsigned>(x.precision()));

    int start = max_digits;
    if (x.rad() != 0) {
        // 10^-d must exceed roughly twice the radius for agreement.
        const auto rad_log2 = static_cast<double>(bit_length(x.rad()) + 1 - x.precision());
        start = std::min(max_digits, std::max(0, static_cast<int>(-rad_log2 * 0.30103) + 1));
    }
    for (int d = start; d >= 0; --d) {
        const Integer ten_d = ipow(Integer(10), static_cast<unsigned>(d));
        const Integer t_lo = (lo * ten_d) / scale;
        const Integer t_hi = (hi * ten_d) / scale;
        if (t_lo == t_hi) {
            std::string out = neg ? "-" : "";
            out += Integer(t_lo / ten_d).str();
            if (d > 0) {
                std::string frac = Integer(t_lo % ten_d).str();
                frac.insert(0, static_cast<std::size_t>(d) - frac.size(), '0');
                out += "." + frac;
            }
            return {out, d};
        }
    }
    std::string out = neg ? "-" : "";
    out += Integer(lo / scale).str();
    return {out, -1};
}

} // namespace betaforge

#endif
