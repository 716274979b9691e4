#ifndef BETAFORGE_IDENTITIES_HPP
#define BETAFORGE_IDENTITIES_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <betaforge/cot_engine.hpp>
#include <betaforge/numeric_core.hpp>
#include <betaforge/series_eval.hpp>

namespace betaforge
{

namespace detail
{

inline int sign_pow(int s)
{
    return (s % 2 == 0) ? 1 : -1;
}

inline void require_s(int s, int min, const char *who)
{
    if (s < min) {
        throw std::invalid_argument(std::string(who) + ": s must be >= " + std::to_string(min));
    }
}

// psi^(s-1)(1/4) and psi^(s-1)(3/4) at enough precision that dividing by
// the Gamma-weighted denominators keeps precision + guard bits.
inline std::array<BallReal, 2> quarter_pair(int order, int precision)
{
    return {polygamma_quarter(order, QuarterPoint::OneQuarter, precision),
            polygamma_quarter(order, QuarterPoint::ThreeQuarters, precision)};
}

// Multiplies by (-1)^s / den.
inline BallReal signed_over(const BallReal &x, int s, const Integer &den)
{
    return ball_div(ball_mul(x, Integer(sign_pow(s))), den);
}

} // namespace detail

// zeta(s) = (-1)^s (psi^(s-1)(1/4) + psi^(s-1)(3/4)) / (2^s (2^s - 1) Gamma(s))
inline BallReal zeta_via_polygamma(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::zeta_via_polygamma");
    const int w = precision + kGuardBits;
    const auto psi = detail::quarter_pair(s - 1, precision);
    const Integer two_s = pow2(static_cast<unsigned>(s));
    return detail::signed_over(ball_add(psi[0], psi[1]), s, two_s * (two_s - 1) * factorial(s - 1)).at_precision(w);
}

// beta(s) = (-1)^s (psi^(s-1)(1/4) - psi^(s-1)(3/4)) / (2^s 2^s Gamma(s));
// at s = 1 the digamma difference stands in for the individual values.
inline BallReal beta_via_polygamma(int s, int precision)
{
    detail::require_s(s, 1, "betaforge::beta_via_polygamma");
    const int w = precision + kGuardBits;
    const Integer two_s = pow2(static_cast<unsigned>(s));
    if (s == 1) {
        return detail::signed_over(digamma_difference(precision), 1, two_s * two_s).at_precision(w);
    }
    const auto psi = detail::quarter_pair(s - 1, precision);
    return detail::signed_over(ball_sub(psi[0], psi[1]), s, two_s * two_s * factorial(s - 1)).at_precision(w);
}

namespace detail
{

// (-1)^s 2 psi^(s-1)(3/4) / (den Gamma(s)), the correction shared by the
// zeta/beta conversion formulas.
inline BallReal three_quarter_correction(int s, int precision, const Integer &den)
{
    const BallReal psi = polygamma_quarter(s - 1, QuarterPoint::ThreeQuarters, precision);
    return signed_over(ball_mul(psi, Integer(2)), s, den * factorial(s - 1));
}

inline BallReal beta_from_zeta(const BallReal &zeta, int s, int precision)
{
    const int w = precision + kGuardBits;
    const Integer two_s = pow2(static_cast<unsigned>(s));
    const BallReal odd_part = ball_mul(zeta, Rational(two_s - 1, two_s));
    return ball_sub(odd_part, three_quarter_correction(s, precision, two_s * two_s)).at_precision(w);
}

} // namespace detail

// beta(s) = ((2^s-1)/2^s) zeta(s) - (-1)^s (2/(2^s 2^s)) psi^(s-1)(3/4) / Gamma(s)
inline BallReal beta_via_zeta_correction(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::beta_via_zeta_correction");
    return detail::beta_from_zeta(zeta_series(s, precision), s, precision);
}

// Same relation with zeta(s) itself replaced by its polygamma form.
inline BallReal beta_via_substitution(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::beta_via_substitution");
    return detail::beta_from_zeta(zeta_via_polygamma(s, precision), s, precision);
}

// zeta(s) = (2^s/(2^s-1)) beta(s) + (-1)^s (2/(2^s (2^s-1))) psi^(s-1)(3/4) / Gamma(s).
// The correction enters with + for even s and - for odd s.
inline BallReal zeta_via_beta(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::zeta_via_beta");
    const int w = precision + kGuardBits;
    const Integer two_s = pow2(static_cast<unsigned>(s));
    const BallReal scaled = ball_mul(beta_series(s, precision), Rational(two_s, two_s - 1));
    return ball_add(scaled, detail::three_quarter_correction(s, precision, two_s * (two_s - 1))).at_precision(w);
}

// sum 1/(2k-1)^s = (-1)^s (psi^(s-1)(1/4) + psi^(s-1)(3/4)) / (2^s 2^s Gamma(s))
inline BallReal odd_denominator_via_polygamma(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::odd_denominator_via_polygamma");
    const int w = precision + kGuardBits;
    const auto psi = detail::quarter_pair(s - 1, precision);
    const Integer two_s = pow2(static_cast<unsigned>(s));
    return detail::signed_over(ball_add(psi[0], psi[1]), s, two_s * two_s * factorial(s - 1)).at_precision(w);
}

// beta(2s+1) = P_2s(1) pi^(2s+1) / (2^(2s+1) 2^(2s+1) Gamma(2s+1)).
inline PiForm beta_odd_exact(int s)
{
    detail::require_s(s, 0, "betaforge::beta_odd_exact");
    const Integer p = eval_at_one(cot_derivative_poly(2 * s));
    const Integer two = pow2(static_cast<unsigned>(2 * s + 1));
    return {Rational(p, two * two * factorial(2 * s)), 2 * s + 1};
}

// zeta(2s) = -P_{2s-1}(1) pi^(2s) / (2^(2s) (2^(2s) - 1) Gamma(2s)).
//
// Note the leading minus: pi d^(2s-1)/dz^(2s-1) cot(pi z) at z = 1/4 equals
// -(psi^(2s-1)(1/4) + psi^(2s-1)(3/4)), so dropping it yields -zeta(2s).
inline PiForm zeta_even_exact(int s)
{
    detail::require_s(s, 1, "betaforge::zeta_even_exact");
    const Integer p = eval_at_one(cot_derivative_poly(2 * s - 1));
    const Integer two = pow2(static_cast<unsigned>(2 * s));
    return {Rational(-p, two * (two - 1) * factorial(2 * s - 1)), 2 * s};
}

// The cot form read without the minus sign. Kept only as a negative control
// for the verification harness; its value is -zeta(2s).
inline PiForm zeta_even_exact_uncorrected(int s)
{
    PiForm f = zeta_even_exact(s);
    f.coeff = -f.coeff;
    return f;
}

struct EulerNumber {
    int index = 0;
    Integer value;

    friend bool operator==(const EulerNumber &, const EulerNumber &) = default;
};

namespace detail
{

inline void require_even_index(int two_s, const char *who)
{
    if (two_s < 0 || two_s % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": index must be even and non-negative");
    }
}

} // namespace detail

// E_2s = (-1)^s 2^(2s+2) Gamma(2s+1) * coeff(beta(2s+1)), the real form of
// the (pi i)^(2s+1) expression; the pi powers cancel exactly.
inline EulerNumber euler_via_beta(int two_s)
{
    detail::require_even_index(two_s, "betaforge::euler_via_beta");
    const int s = two_s / 2;
    const Rational scaled = beta_odd_exact(s).coeff * Rational(pow2(static_cast<unsigned>(two_s + 2)) * factorial(two_s));
    if (denominator_of(scaled) != 1) {
        throw std::logic_error("betaforge::euler_via_beta: non-integral Euler number");
    }
    const Integer magnitude = numerator_of(scaled);
    return {two_s, s % 2 == 0 ? magnitude : Integer(-magnitude)};
}

// All E_0, E_2, ..., E_{two_s} from E_0 = 1 and sum_{k=0}^{n} C(2n,2k) E_2k = 0.
inline std::vector<Integer> euler_table(int two_s)
{
    detail::require_even_index(two_s, "betaforge::euler_table");
    const int n_max = two_s / 2;
    std::vector<Integer> e(static_cast<std::size_t>(n_max) + 1);
    e[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        Integer acc = 0;
        Integer c = 1; // C(2n, j), walked along j
        for (int j = 0; j < 2 * n; ++j) {
            if (j % 2 == 0) {
                acc += c * e[static_cast<std::size_t>(j / 2)];
            }
            c = c * (2 * n - j) / (j + 1);
        }
        e[static_cast<std::size_t>(n)] = -acc;
    }
    return e;
}

inline EulerNumber euler_recurrence(int two_s)
{
    detail::require_even_index(two_s, "betaforge::euler_recurrence");
    return {two_s, euler_table(two_s).back()};
}

// Numeric E_2s = (-1)^s 2^(2s+2) Gamma(2s+1) beta(2s+1) / pi^(2s+1).
inline BallReal euler_from_beta_series(int s, int precision)
{
    detail::require_s(s, 0, "betaforge::euler_from_beta_series");
    const int w = precision + kGuardBits;
    const Integer factor = pow2(static_cast<unsigned>(2 * s + 2)) * factorial(2 * s);
    const int inner = precision + detail::scale_bits(factor);
    const BallReal beta = beta_series(2 * s + 1, inner);
    const BallReal pi_pow = ball_pow_int(pi_ball(inner), 2 * s + 1);
    return ball_div(ball_mul(beta, Integer(detail::sign_pow(s)) * factor), pi_pow).at_precision(w);
}

// Numeric E_2s = -(psi^(2s)(1/4) - psi^(2s)(3/4)) 2 (-1)^s / (2 pi)^(2s+1).
inline BallReal euler_from_polygamma(int s, int precision)
{
    detail::require_s(s, 0, "betaforge::euler_from_polygamma");
    const int w = precision + kGuardBits;
    const Integer inv_scale = pow2(static_cast<unsigned>(2 * s + 1));
    const BallReal pi_pow = ball_pow_int(pi_ball(precision + 2 * s + 8), 2 * s + 1);
    BallReal diff;
    if (s == 0) {
        diff = digamma_difference(precision + 2 * s + 8);
    } else {
        diff = ball_sub(polygamma_quarter(2 * s, QuarterPoint::OneQuarter, precision + 2 * s + 8),
                        polygamma_quarter(2 * s, QuarterPoint::ThreeQuarters, precision + 2 * s + 8));
    }
    const BallReal numer = ball_mul(diff, Integer(-2 * detail::sign_pow(s)));
    return ball_div(ball_div(numer, pi_pow), inv_scale).at_precision(w);
}

enum class IdentityId {
    BetaPolygamma,
    BetaZetaCorrection,
    BetaSubstitution,
    BetaCotExact,
    OddDenominatorSum,
    OddDenominatorPolygamma,
    ZetaPolygamma,
    ZetaViaBeta,
    ZetaCotExact,
    Reflection,
    EulerBetaForm,
    EulerPolygammaForm,
};

inline constexpr std::array<std::pair<IdentityId, std::string_view>, 12> kIdentityNames{{
    {IdentityId::BetaPolygamma, "beta_polygamma"},
    {IdentityId::BetaZetaCorrection, "beta_zeta_correction"},
    {IdentityId::BetaSubstitution, "beta_substitution"},
    {IdentityId::BetaCotExact, "beta_cot_exact"},
    {IdentityId::OddDenominatorSum, "odd_denominator_sum"},
    {IdentityId::OddDenominatorPolygamma, "odd_denominator_polygamma"},
    {IdentityId::ZetaPolygamma, "zeta_polygamma"},
    {IdentityId::ZetaViaBeta, "zeta_via_beta"},
    {IdentityId::ZetaCotExact, "zeta_cot_exact"},
    {IdentityId::Reflection, "reflection"},
    {IdentityId::EulerBetaForm, "euler_beta_form"},
    {IdentityId::EulerPolygammaForm, "euler_polygamma_form"},
}};

inline std::string_view to_string(IdentityId id)
{
    for (const auto &[key, name] : kIdentityNames) {
        if (key == id) {
            return name;
        }
    }
    throw std::invalid_argument("betaforge: unknown identity id");
}

inline IdentityId identity_from_string(std::string_view name)
{
    for (const auto &[key, n] : kIdentityNames) {
        if (n == name) {
            return key;
        }
    }
    throw std::invalid_argument("betaforge: unknown identity '" + std::string(name) + "'");
}

// One identity checked at one argument. `left` is the route under test,
// `right` the reference; both are stored at a common ball precision.
struct IdentityReport {
    IdentityId id{};
    int s = 0;
    int precision = 0;
    BallReal left;
    BallReal right;
    Rational residual;
    bool pass = false;

    friend bool operator==(const IdentityReport &, const IdentityReport &) = default;
};

inline IdentityReport make_report(IdentityId id, int s, int precision, const BallReal &left, const BallReal &right)
{
    const int p = std::max(left.precision(), right.precision());
    IdentityReport r;
    r.id = id;
    r.s = s;
    r.precision = precision;
    r.left = left.at_precision(p);
    r.right = right.at_precision(p);
    r.residual = residual_bound(r.left, r.right);
    r.pass = intersects(r.left, r.right);
    return r;
}

// (-1)^(s-1) psi^(s-1)(3/4) - psi^(s-1)(1/4) against pi^s P_{s-1}(1).
inline IdentityReport reflection_check(int s, int precision)
{
    detail::require_s(s, 2, "betaforge::reflection_check");
    const auto psi = detail::quarter_pair(s - 1, precision);
    const BallReal left = ball_sub(ball_mul(psi[1], Integer(detail::sign_pow(s - 1))), psi[0]);
    const PiForm right{Rational(eval_at_one(cot_derivative_poly(s - 1))), s};
    const int inner = precision + detail::scale_bits(numerator_of(right.coeff)) + 2 * s;
    return make_report(IdentityId::Reflection, s, precision, left,
                       right.to_ball(inner).at_precision(precision + kGuardBits));
}

struct VerifyOptions {
    // Negative control: check the cot form of zeta(2s) without its sign fix.
    bool uncorrected_zeta_cot = false;
};

inline std::vector<IdentityReport> verify_all(int max_s, int precision, const VerifyOptions &options = {})
{
    if (max_s < 1) {
        throw std::invalid_argument("betaforge::verify_all: max_s must be >= 1");
    }
    detail::require_precision(precision, "betaforge::verify_all");
    const int w = precision + kGuardBits;

    std::vector<IdentityReport> out;
    auto add = [&](IdentityId id, int s, const BallReal &left, const BallReal &right) {
        out.push_back(make_report(id, s, precision, left, right));
    };

    for (int s = 1; s <= max_s; ++s) {
        const BallReal beta = beta_series(s, precision);
        add(IdentityId::BetaPolygamma, s, beta_via_polygamma(s, precision), beta);
        if (s % 2 == 1) {
            add(IdentityId::BetaCotExact, s, beta_odd_exact((s - 1) / 2).to_ball(precision), beta);
            const int t = (s - 1) / 2;
            const BallReal exact = BallReal::exact(euler_recurrence(2 * t).value, w);
            add(IdentityId::EulerBetaForm, s, euler_from_beta_series(t, precision), exact);
            add(IdentityId::EulerPolygammaForm, s, euler_from_polygamma(t, precision), exact);
        }
        if (s < 2) {
            continue;
        }
        const BallReal zeta = zeta_series(s, precision);
        const BallReal odd = odd_denominator_sum(s, precision);
        const Integer two_s = pow2(static_cast<unsigned>(s));
        add(IdentityId::BetaZetaCorrection, s, beta_via_zeta_correction(s, precision), beta);
        add(IdentityId::BetaSubstitution, s, beta_via_substitution(s, precision), beta);
        add(IdentityId::OddDenominatorSum, s, odd, ball_mul(zeta, Rational(two_s - 1, two_s)).at_precision(w));
        add(IdentityId::OddDenominatorPolygamma, s, odd_denominator_via_polygamma(s, precision), odd);
        add(IdentityId::ZetaPolygamma, s, zeta_via_polygamma(s, precision), zeta);
        add(IdentityId::ZetaViaBeta, s, zeta_via_beta(s, precision), zeta);
        if (s % 2 == 0) {
            const PiForm form = options.uncorrected_zeta_cot ? zeta_even_exact_uncorrected(s / 2) : zeta_even_exact(s / 2);
            add(IdentityId::ZetaCotExact, s, form.to_ball(precision), zeta);
        }
        out.push_back(reflection_check(s, precision));
    }

    std::stable_sort(out.begin(), out.end(), [](const IdentityReport &a, const IdentityReport &b) {
        if (a.id != b.id) {
            return a.id < b.id;
        }
        return a.s < b.s;
    });
    return out;
}

inline bool all_pass(const std::vector<IdentityReport> &reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const IdentityReport &r) { return r.pass; });
}

} // namespace betaforge

#endif
