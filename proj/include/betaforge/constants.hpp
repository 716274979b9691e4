#ifndef BETAFORGE_CONSTANTS_HPP
#define BETAFORGE_CONSTANTS_HPP

#include <stdexcept>
#include <string>

#include <betaforge/ball_real.hpp>
#include <betaforge/integer.hpp>

namespace betaforge
{

namespace detail
{

// arctan(1/x) for integer x >= 2 at ball precision w. Alternating series
// with decreasing terms, so the first omitted term bounds the tail.
inline BallReal atan_inverse(unsigned x, int w)
{
    const Integer threshold = pow2(static_cast<unsigned>(w + 2));
    const Integer x2 = Integer(x) * x;
    BallReal sum = BallReal::exact(0, w);
    Integer power = x;
    for (unsigned k = 0;; ++k) {
        const Integer den = power * (2 * k + 1);
        if (den > threshold) {
            return ball_add_error(sum, Rational(1, den));
        }
        const BallReal term = rational_to_ball(Rational(1, den), w);
        sum = (k % 2 == 0) ? ball_add(sum, term) : ball_sub(sum, term);
        power *= x2;
    }
}

} // namespace detail

// pi = 16 arctan(1/5) - 4 arctan(1/239). The returned ball carries
// kGuardBits extra bits; its radius is far below 2^(-precision+2).
inline BallReal pi_ball(int precision)
{
    if (precision < 8) {
        throw std::invalid_argument("betaforge::pi_ball: precision below 8 bits");
    }
    const int w = precision + kGuardBits;
    return ball_sub(ball_mul(detail::atan_inverse(5, w), Integer(16)), ball_mul(detail::atan_inverse(239, w), Integer(4)));
}

// Independent enclosure of pi from the Bailey-Borwein-Plouffe series
//   pi = sum_k 16^-k (4/(8k+1) - 2/(8k+4) - 1/(8k+5) - 1/(8k+6)).
// Terms are positive and below 4/(8k+1) 16^-k, so the tail after K terms is
// at most 4/(8K+1) 16^-K * 16/15.
inline BallReal pi_ball_bbp(int precision)
{
    if (precision < 8) {
        throw std::invalid_argument("betaforge::pi_ball_bbp: precision below 8 bits");
    }
    const int w = precision + kGuardBits;
    BallReal sum = BallReal::exact(0, w);
    Integer sixteen_k = 1;
    for (int k = 0;; ++k) {
        const Rational tail = Rational(64, Integer(8 * k + 1) * sixteen_k * 15);
        if (tail * Rational(pow2(static_cast<unsigned>(w + 2))) < 1) {
            return ball_add_nonnegative(sum, tail);
        }
        const Rational term = Rational(4, Integer(8 * k + 1)) - Rational(2, Integer(8 * k + 4))
                              - Rational(1, Integer(8 * k + 5)) - Rational(1, Integer(8 * k + 6));
        sum = ball_add(sum, rational_to_ball(term / Rational(sixteen_k), w));
        sixteen_k *= 16;
    }
}

// artanh(t) = sum t^(2k+1)/(2k+1) for rational |t| <= 1/2, at ball
// precision w. Tail after K terms: |t|^(2K+1) / ((2K+1)(1 - t^2)).
inline BallReal atanh_ball(const Rational &t, int w)
{
    if (abs(t) > Rational(1, 2)) {
        throw std::invalid_argument("betaforge::atanh_ball: |t| > 1/2");
    }
    const Rational t2 = t * t;
    const Rational threshold = Rational(1, pow2(static_cast<unsigned>(w + 2)));
    BallReal sum = BallReal::exact(0, w);
    Rational power = t;
    for (int k = 0;; ++k) {
        const Rational tail = abs(power) / Rational((2 * k + 1)) / (1 - t2);
        if (tail < threshold || power == 0) {
            return ball_add_error(sum, tail);
        }
        sum = ball_add(sum, rational_to_ball(power / (2 * k + 1), w));
        power *= t2;
    }
}

// An exact value coeff * pi^power.
struct PiForm {
    Rational coeff;
    int power = 0;

    [[nodiscard]] BallReal to_ball(int precision) const
    {
        const int w = precision + kGuardBits;
        const BallReal pi_pow = ball_pow_int(pi_ball(precision), power);
        return ball_mul(pi_pow, coeff).at_precision(w);
    }

    [[nodiscard]] std::string to_string() const
    {
        return betaforge::to_string(coeff) + " * pi^" + std::to_string(power);
    }

    friend bool operator==(const PiForm &, const PiForm &) = default;
};

} // namespace betaforge

#endif
