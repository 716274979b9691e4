#ifndef BETAFORGE_COT_ENGINE_HPP
#define BETAFORGE_COT_ENGINE_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <betaforge/integer.hpp>

namespace betaforge
{

// P_k with d^k/dz^k cot(pi z) = pi^k P_k(cot(pi z)). Coefficients are dense,
// indexed by the power of c = cot(pi z).
class CotPolynomial
{
public:
    CotPolynomial(int order, std::vector<Integer> coeffs) : m_order(order), m_coeffs(std::move(coeffs))
    {
        if (order < 0) {
            throw std::invalid_argument("betaforge::CotPolynomial: negative order");
        }
        if (m_coeffs.size() != static_cast<std::size_t>(order) + 2) {
            throw std::invalid_argument("betaforge::CotPolynomial: expected order + 2 coefficients");
        }
    }

    // P_0(c) = c.
    static CotPolynomial base() { return CotPolynomial(0, {Integer(0), Integer(1)}); }

    [[nodiscard]] int order() const noexcept { return m_order; }
    [[nodiscard]] const std::vector<Integer> &coeffs() const noexcept { return m_coeffs; }
    [[nodiscard]] int degree() const noexcept { return m_order + 1; }
    [[nodiscard]] const Integer &leading() const { return m_coeffs.back(); }

    friend bool operator==(const CotPolynomial &, const CotPolynomial &) = default;

private:
    int m_order;
    std::vector<Integer> m_coeffs;
};

// p -> -(1 + c^2) p'(c) on raw coefficient vectors (index = power). This is
// the derivative map behind d/dz cot(pi z) = -pi (1 + cot^2(pi z)).
inline std::vector<Integer> cot_derivative_map(const std::vector<Integer> &p)
{
    if (p.size() <= 1) {
        return {Integer(0)};
    }
    // p' has degree size-2; multiplying by (1 + c^2) lifts it to size.
    std::vector<Integer> out(p.size() + 1, Integer(0));
    for (std::size_t j = 1; j < p.size(); ++j) {
        const Integer d = p[j] * static_cast<unsigned>(j);
        out[j - 1] -= d;
        out[j + 1] -= d;
    }
    return out;
}

inline CotPolynomial derive_next(const CotPolynomial &p)
{
    return CotPolynomial(p.order() + 1, cot_derivative_map(p.coeffs()));
}

inline CotPolynomial cot_derivative_poly(int k)
{
    if (k < 0) {
        throw std::invalid_argument("betaforge::cot_derivative_poly: negative order");
    }
    CotPolynomial p = CotPolynomial::base();
    for (int i = 0; i < k; ++i) {
        p = derive_next(p);
    }
    return p;
}

// P(1), i.e. the value at z = 1/4 where cot(pi/4) = 1.
inline Integer eval_at_one(const CotPolynomial &p)
{
    Integer sum = 0;
    for (const auto &c : p.coeffs()) {
        sum += c;
    }
    return sum;
}

} // namespace betaforge

#endif
