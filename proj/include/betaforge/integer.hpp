#ifndef BETAFORGE_INTEGER_HPP
#define BETAFORGE_INTEGER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace betaforge
{

// Arbitrary-precision signed integer and normalized fraction. The rational
// type keeps den > 0 and gcd(|num|, den) = 1 after every operation, and
// represents zero as 0/1.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational &q)
{
    return boost::multiprecision::numerator(q);
}

inline Integer denominator_of(const Rational &q)
{
    return boost::multiprecision::denominator(q);
}

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::domain_error("betaforge: rational with zero denominator");
    }
    // The backend rejects negative denominators, so move the sign up.
    return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

inline Integer factorial(std::int64_t n)
{
    if (n < 0) {
        throw std::invalid_argument("betaforge::factorial: negative argument");
    }
    Integer out = 1;
    for (std::int64_t i = 2; i <= n; ++i) {
        out *= i;
    }
    return out;
}

// Multiplicative formula; every prefix product divides exactly.
inline Integer binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0) {
        throw std::invalid_argument("betaforge::binomial: negative argument");
    }
    if (k > n) {
        throw std::invalid_argument("betaforge::binomial: k > n");
    }
    if (k > n - k) {
        k = n - k;
    }
    Integer out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

// s (s+1) ... (s+m-1), with an empty product of 1.
inline Integer rising_factorial(std::int64_t s, std::int64_t m)
{
    Integer out = 1;
    for (std::int64_t i = 0; i < m; ++i) {
        out *= s + i;
    }
    return out;
}

inline Integer ipow(const Integer &base, unsigned exponent)
{
    return boost::multiprecision::pow(base, exponent);
}

inline Integer pow2(unsigned exponent)
{
    return Integer(1) << exponent;
}

inline Rational rpow(const Rational &base, int exponent)
{
    Rational out = 1;
    Rational b = exponent < 0 ? Rational(1) / base : base;
    unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    while (e != 0) {
        if (e & 1U) {
            out *= b;
        }
        b *= b;
        e >>= 1U;
    }
    return out;
}

inline Integer iabs(const Integer &x)
{
    return x < 0 ? Integer(-x) : x;
}

// Number of bits in |x|; zero has bit length 0.
inline std::int64_t bit_length(const Integer &x)
{
    if (x == 0) {
        return 0;
    }
    return static_cast<std::int64_t>(boost::multiprecision::msb(iabs(x))) + 1;
}

// floor(a / b) and ceil(a / b) for b > 0; the built-in division truncates
// toward zero.
inline Integer floor_div(const Integer &a, const Integer &b)
{
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && a < 0) {
        q -= 1;
    }
    return q;
}

inline Integer ceil_div(const Integer &a, const Integer &b)
{
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && a > 0) {
        q += 1;
    }
    return q;
}

inline std::string to_string(const Rational &q)
{
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

} // namespace betaforge

#endif
