#ifndef BETAFORGE_SERIES_EVAL_HPP
#define BETAFORGE_SERIES_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <betaforge/numeric_core.hpp>

namespace betaforge
{

enum class QuarterPoint { OneQuarter, ThreeQuarters };

namespace detail
{

inline void require_precision(int precision, const char *who)
{
    if (precision < 8) {
        throw std::invalid_argument(std::string(who) + ": precision below 8 bits");
    }
}

// Tangent numbers T_1..T_n (1, 2, 16, 272, ...) by the in-place integer
// recurrence of Brent and Harvey.
inline std::vector<Integer> tangent_numbers(int n)
{
    std::vector<Integer> t(static_cast<std::size_t>(n) + 1, Integer(0));
    if (n < 1) {
        return t;
    }
    t[1] = 1;
    for (int k = 2; k <= n; ++k) {
        t[k] = t[k - 1] * (k - 1);
    }
    for (int k = 2; k <= n; ++k) {
        for (int j = k; j <= n; ++j) {
            t[j] = t[j - 1] * (j - k) + t[j] * (j - k + 2);
        }
    }
    return t;
}

class BernoulliTable
{
public:
    // B_{2j}, j >= 1. Extends the table on demand; reads are consistent
    // whether or not an entry was already cached.
    Rational b2n(int j)
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        if (j >= static_cast<int>(m_values.size())) {
            extend(std::max(2 * j, 64));
        }
        return m_values[static_cast<std::size_t>(j)];
    }

private:
    void extend(int n)
    {
        const auto t = tangent_numbers(n);
        m_values.assign(static_cast<std::size_t>(n) + 1, Rational(0));
        m_values[0] = 1;
        for (int j = 1; j <= n; ++j) {
            const Integer four_j = pow2(static_cast<unsigned>(2 * j));
            Rational b(t[static_cast<std::size_t>(j)] * (2 * j), four_j * (four_j - 1));
            m_values[static_cast<std::size_t>(j)] = (j % 2 == 1) ? b : Rational(-b);
        }
    }

    std::mutex m_mutex;
    std::vector<Rational> m_values;
};

inline BernoulliTable &bernoulli_table()
{
    static BernoulliTable table;
    return table;
}

} // namespace detail

// Bernoulli number B_{2j} for j >= 0.
inline Rational bernoulli_b2n(int j)
{
    if (j < 0) {
        throw std::invalid_argument("betaforge::bernoulli_b2n: negative index");
    }
    if (j == 0) {
        return 1;
    }
    return detail::bernoulli_table().b2n(j);
}

// One summand c * (q n + r)^-s of a shifted power series over n >= 0.
struct LinearForm {
    Integer q;
    Integer r;
    Integer c;
};

struct EulerMaclaurinCutoff {
    int head_terms = 0;  // N: terms summed directly
    int corrections = 0; // M: Bernoulli correction terms
};

namespace detail
{

inline double log2_of(const Integer &x)
{
    const std::int64_t bits = bit_length(x);
    if (bits <= 60) {
        return std::log2(x.convert_to<double>());
    }
    const Integer top = iabs(x) >> static_cast<unsigned>(bits - 60);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 60);
}

// Heuristic choice of (N, M) so that the remainder lands below 2^-(w+2).
// Soundness never depends on it: the exact remainder bound is always added.
inline EulerMaclaurinCutoff choose_cutoff(const std::vector<LinearForm> &forms, int s, int w)
{
    EulerMaclaurinCutoff cut;
    cut.head_terms = w / 3 + 8;
    Integer weight = 0;
    for (const auto &f : forms) {
        weight += iabs(f.c);
    }
    const double log_weight = log2_of(weight);
    const double log_2pi = std::log2(2.0 * 3.141592653589793);
    for (;;) {
        for (int m = 1; m <= 3 * cut.head_terms; ++m) {
            const double common = log_weight + 1.0 - 2.0 * m * log_2pi
                                  + (std::lgamma(static_cast<double>(s + 2 * m - 1)) - std::lgamma(static_cast<double>(s)))
                                        / std::log(2.0);
            double est = -1e300;
            for (const auto &f : forms) {
                const double log_x = log2_of(f.q * cut.head_terms + f.r);
                est = std::max(est, common + (2.0 * m - 1.0) * log2_of(f.q) - (s + 2.0 * m - 1.0) * log_x);
            }
            if (est < -(w + 8)) {
                cut.corrections = m;
                return cut;
            }
        }
        cut.head_terms *= 2;
    }
}

// Certified enclosure, at ball precision w, of
//   sum_{n >= 0} sum_i c_i (q_i n + r_i)^-s
// by Euler-Maclaurin summation: N head terms, the tail integral, half the
// first tail term, M Bernoulli corrections, and the remainder bound
//   |R| <= |B_2M|/(2M)! * sum_i |c_i| (s)_{2M-1} q_i^{2M-1} (q_i N + r_i)^-(s+2M-1).
// For s = 1 the forms must be a convergent pair c/(q n + r1) - c/(q n + r2).
inline BallReal euler_maclaurin_sum(const std::vector<LinearForm> &forms, int s, int w,
                                    std::optional<EulerMaclaurinCutoff> cutoff = std::nullopt)
{
    if (s < 1 || forms.empty()) {
        throw std::invalid_argument("betaforge::euler_maclaurin_sum: need s >= 1 and at least one form");
    }
    for (const auto &f : forms) {
        if (f.q <= 0 || f.r <= 0) {
            throw std::invalid_argument("betaforge::euler_maclaurin_sum: forms need q > 0, r > 0");
        }
    }
    if (s == 1 && (forms.size() != 2 || forms[0].c != -forms[1].c || forms[0].q != forms[1].q)) {
        throw std::invalid_argument("betaforge::euler_maclaurin_sum: s = 1 requires a cancelling pair");
    }
    const EulerMaclaurinCutoff cut = cutoff.value_or(choose_cutoff(forms, s, w));
    const auto su = static_cast<unsigned>(s);

    BallReal sum = BallReal::exact(0, w);
    for (int n = 0; n < cut.head_terms; ++n) {
        Rational row = 0;
        for (const auto &f : forms) {
            row += Rational(f.c, ipow(f.q * n + f.r, su));
        }
        sum = ball_add(sum, rational_to_ball(row, w));
    }

    // Tail integral from N to infinity.
    if (s == 1) {
        const auto &a = forms[0];
        const auto &b = forms[1];
        const Integer lo = a.q * cut.head_terms + a.r;
        const Integer hi = b.q * cut.head_terms + b.r;
        // ln(hi/lo) = 2 artanh((hi - lo)/(hi + lo))
        const BallReal log_ratio = ball_mul(atanh_ball(Rational(hi - lo, hi + lo), w), Integer(2));
        sum = ball_add(sum, ball_mul(log_ratio, Rational(a.c, a.q)));
    } else {
        Rational integral = 0;
        for (const auto &f : forms) {
            integral += Rational(f.c, f.q * (s - 1) * ipow(f.q * cut.head_terms + f.r, su - 1));
        }
        sum = ball_add(sum, rational_to_ball(integral, w));
    }

    Rational half = 0;
    for (const auto &f : forms) {
        half += Rational(f.c, 2 * ipow(f.q * cut.head_terms + f.r, su));
    }
    sum = ball_add(sum, rational_to_ball(half, w));

    for (int j = 1; j <= cut.corrections; ++j) {
        const Rational weight = bernoulli_b2n(j) / Rational(factorial(2 * j)) * Rational(rising_factorial(s, 2 * j - 1));
        Rational term = 0;
        for (const auto &f : forms) {
            term += Rational(f.c * ipow(f.q, static_cast<unsigned>(2 * j - 1)),
                             ipow(f.q * cut.head_terms + f.r, static_cast<unsigned>(s + 2 * j - 1)));
        }
        sum = ball_add(sum, rational_to_ball(weight * term, w));
    }

    const int m = std::max(cut.corrections, 1);
    const Rational weight = abs(bernoulli_b2n(m)) / Rational(factorial(2 * m)) * Rational(rising_factorial(s, 2 * m - 1));
    Rational remainder = 0;
    for (const auto &f : forms) {
        remainder += Rational(iabs(f.c) * ipow(f.q, static_cast<unsigned>(2 * m - 1)),
                              ipow(f.q * cut.head_terms + f.r, static_cast<unsigned>(s + 2 * m - 1)));
    }
    if (cut.corrections == 0) {
        // Without corrections fall back to the first-derivative bound,
        // int |f'| <= sum |c| (q N + r)^-s.
        remainder = 0;
        for (const auto &f : forms) {
            remainder += Rational(iabs(f.c), ipow(f.q * cut.head_terms + f.r, su));
        }
        return ball_add_error(sum, remainder);
    }
    return ball_add_error(sum, weight * remainder);
}

// Bits needed to keep absolute accuracy after scaling by |factor|.
inline int scale_bits(const Integer &factor)
{
    return static_cast<int>(bit_length(factor)) + 1;
}

inline Integer quarter_offset(QuarterPoint x)
{
    return x == QuarterPoint::OneQuarter ? Integer(1) : Integer(3);
}

} // namespace detail

// psi^(k)(x) = (-1)^(k+1) k! sum_{n>=0} (n + x)^-(k+1), x in {1/4, 3/4}.
inline BallReal polygamma_quarter(int k, QuarterPoint x, int precision)
{
    detail::require_precision(precision, "betaforge::polygamma_quarter");
    if (k < 1) {
        throw std::invalid_argument("betaforge::polygamma_quarter: order must be >= 1");
    }
    const int w = precision + kGuardBits;
    const Integer factor = factorial(k) * pow2(static_cast<unsigned>(2 * (k + 1)));
    const int inner = w + detail::scale_bits(factor);
    const BallReal sum = detail::euler_maclaurin_sum({{Integer(4), detail::quarter_offset(x), Integer(1)}}, k + 1, inner);
    const Integer signed_factor = (k % 2 == 1) ? factor : Integer(-factor);
    return ball_mul(sum, signed_factor).at_precision(w);
}

// psi(1/4) - psi(3/4) = -sum_{n>=0} (1/(n + 1/4) - 1/(n + 3/4)).
inline BallReal digamma_difference(int precision)
{
    detail::require_precision(precision, "betaforge::digamma_difference");
    const int w = precision + kGuardBits;
    const BallReal sum = detail::euler_maclaurin_sum(
        {{Integer(4), Integer(1), Integer(1)}, {Integer(4), Integer(3), Integer(-1)}}, 1, w + 4);
    return ball_mul(sum, Integer(-4)).at_precision(w);
}

// beta(s) = sum_{n>=0} ((4n+1)^-s - (4n+3)^-s).
inline BallReal beta_series(int s, int precision)
{
    detail::require_precision(precision, "betaforge::beta_series");
    if (s < 1) {
        throw std::invalid_argument("betaforge::beta_series: s must be >= 1");
    }
    const int w = precision + kGuardBits;
    return detail::euler_maclaurin_sum({{Integer(4), Integer(1), Integer(1)}, {Integer(4), Integer(3), Integer(-1)}}, s,
                                       w);
}

inline BallReal zeta_series(int s, int precision)
{
    detail::require_precision(precision, "betaforge::zeta_series");
    if (s < 2) {
        throw std::invalid_argument("betaforge::zeta_series: s must be >= 2");
    }
    const int w = precision + kGuardBits;
    return detail::euler_maclaurin_sum({{Integer(1), Integer(1), Integer(1)}}, s, w);
}

// sum_{k>=1} (2k-1)^-s
inline BallReal odd_denominator_sum(int s, int precision)
{
    detail::require_precision(precision, "betaforge::odd_denominator_sum");
    if (s < 2) {
        throw std::invalid_argument("betaforge::odd_denominator_sum: s must be >= 2");
    }
    const int w = precision + kGuardBits;
    return detail::euler_maclaurin_sum({{Integer(2), Integer(1), Integer(1)}}, s, w);
}

// Plain truncated sums with the classical tail bounds. Far too slow to reach
// high precision, but useful as independent low-precision enclosures.

// First `terms` terms of the alternating beta series; the first omitted term
// bounds the tail.
inline BallReal beta_partial_sum(int s, int terms, int precision)
{
    detail::require_precision(precision, "betaforge::beta_partial_sum");
    if (s < 1 || terms < 0) {
        throw std::invalid_argument("betaforge::beta_partial_sum: need s >= 1, terms >= 0");
    }
    const auto su = static_cast<unsigned>(s);
    BallReal sum = BallReal::exact(0, precision);
    for (int k = 1; k <= terms; ++k) {
        const BallReal term = rational_to_ball(Rational(1, ipow(Integer(2 * k - 1), su)), precision);
        sum = (k % 2 == 1) ? ball_add(sum, term) : ball_sub(sum, term);
    }
    return ball_add_error(sum, Rational(1, ipow(Integer(2 * terms + 1), su)));
}

// sum_{n=1}^{N-1} n^-s plus the tail sum_{n>=N} n^-s in [0, (N-1)^(1-s)/(s-1)].
inline BallReal zeta_partial_sum(int s, int cutoff, int precision)
{
    detail::require_precision(precision, "betaforge::zeta_partial_sum");
    if (s < 2 || cutoff < 2) {
        throw std::invalid_argument("betaforge::zeta_partial_sum: need s >= 2, cutoff >= 2");
    }
    const auto su = static_cast<unsigned>(s);
    BallReal sum = BallReal::exact(0, precision);
    for (int n = 1; n < cutoff; ++n) {
        sum = ball_add(sum, rational_to_ball(Rational(1, ipow(Integer(n), su)), precision));
    }
    return ball_add_nonnegative(sum, Rational(1, ipow(Integer(cutoff - 1), su - 1) * (s - 1)));
}

// (-1)^(k+1) k! [sum_{n<N} (n+x)^-(k+1) + tail], tail in [0, (N+x-1)^-k / k].
inline BallReal polygamma_partial_sum(int k, QuarterPoint x, int cutoff, int precision)
{
    detail::require_precision(precision, "betaforge::polygamma_partial_sum");
    if (k < 1 || cutoff < 1) {
        throw std::invalid_argument("betaforge::polygamma_partial_sum: need k >= 1, cutoff >= 1");
    }
    const Integer r = detail::quarter_offset(x);
    const auto ku = static_cast<unsigned>(k);
    BallReal sum = BallReal::exact(0, precision);
    for (int n = 0; n < cutoff; ++n) {
        // (n + r/4)^-(k+1) = 4^(k+1) / (4n + r)^(k+1)
        sum = ball_add(sum, rational_to_ball(Rational(pow2(2 * (ku + 1)), ipow(4 * n + r, ku + 1)), precision));
    }
    // (N + r/4 - 1)^-k / k = 4^k / ((4N + r - 4)^k k)
    sum = ball_add_nonnegative(sum, Rational(pow2(2 * ku), ipow(4 * cutoff + r - 4, ku) * k));
    const Integer f = factorial(k);
    return ball_mul(sum, (k % 2 == 1) ? f : Integer(-f));
}

} // namespace betaforge

#endif
