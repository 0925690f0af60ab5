#pragma once

// Closed forms for streak length k = 1 and the binomial reciprocal moments
// they are built from. Z_{n,p} ~ Binomial(n, p) throughout, q = 1 - p.
//
//   E[1/(1+Z)]              = (1 - q^{n+1}) / ((n+1) p)
//   E[1/(2+Z)]              = (q^{n+2} + (n+2) p - 1) / ((n+1)(n+2) p^2)
//   E[P_1 | D_1 != 0]       = p / (1 - q^{n-1}) + (p - 1)/(n - 1)
//
// The k = 1 expectation splits into the last numerator term X_{n-1}X_n / D_1,
// which conditions down to E[1/(1+Z_{n-2})] p^2 / (1 - q^{n-1}) = p/(n-1), and
// n-2 interior terms X_{j-1}X_j / D_1 that share one value by exchangeability,
// E[1/(2+Z_{n-3})] p^2 / (1 - q^{n-1}).

#include "hothand/bernoulli.hpp"
#include "hothand/errors.hpp"
#include "hothand/scalar.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

namespace hothand {

namespace formula {
inline constexpr std::string_view recip_one_plus_binomial = "E[1/(1+Z)]";
inline constexpr std::string_view recip_two_plus_binomial = "E[1/(2+Z)]";
inline constexpr std::string_view expected_hot_hand_k1 = "E[P1|D1>0] closed form";
inline constexpr std::string_view last_term_k1 = "E[X_{n-1}X_n/D1|D1>0]";
inline constexpr std::string_view interior_term_k1 = "E[X_{j-1}X_j/D1|D1>0], 2<=j<=n-1";
inline constexpr std::string_view enumeration = "enumeration";
inline constexpr std::string_view conditional_expectation = "E[N/D | D>0] from joint pmf";
} // namespace formula

template <Scalar S>
struct ExpectationValue {
    S value;
    std::string_view formula;
};

namespace detail {

inline void require_length_at_least(std::size_t n, std::size_t min, std::string_view op) {
    if (n < min) {
        throw InvalidArgument(std::string(op) + ": requires n >= " + std::to_string(min) + ", got n = " +
                              std::to_string(n));
    }
}

/// q^m + m p - 1 = sum_{i>=2} C(m,i) (-p)^i. When m p < 1 the direct form cancels
/// badly, so the alternating series is summed instead; its terms shrink by at
/// least a factor m p / 3 per step.
inline double complement_pow_plus_linear(double p, std::size_t m) {
    const double mp = static_cast<double>(m) * p;
    if (mp >= 1.0) return scalar::complement_pow(p, m) + (mp - 1.0);
    double term = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1) * p * p;
    double sum = 0.0;
    for (std::size_t i = 2; i <= m && term != 0.0; ++i) {
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        term *= -static_cast<double>(m - i) * p / static_cast<double>(i + 1);
    }
    return sum;
}

inline Rational complement_pow_plus_linear(const Rational& p, std::size_t m) {
    return Rational{scalar::complement_pow(p, m) + scalar::from_integer<Rational>(m) * p - 1};
}

} // namespace detail

/// E[1/(1 + Z)] for Z ~ Binomial(n, p), p in (0,1].
template <Scalar S>
ExpectationValue<S> recip_one_plus_binomial(std::size_t n, const BernoulliParam<S>& p) {
    p.require_positive("recip_one_plus_binomial");
    const S& pv = p.value();
    S value = scalar::one_minus_complement_pow(pv, n + 1) / (scalar::from_integer<S>(n + 1) * pv);
    return {std::move(value), formula::recip_one_plus_binomial};
}

/// E[1/(2 + Z)] for Z ~ Binomial(n, p), p in (0,1].
template <Scalar S>
ExpectationValue<S> recip_two_plus_binomial(std::size_t n, const BernoulliParam<S>& p) {
    p.require_positive("recip_two_plus_binomial");
    const S& pv = p.value();
    const S denom = scalar::from_integer<S>(n + 1) * scalar::from_integer<S>(n + 2) * pv * pv;
    S value = detail::complement_pow_plus_linear(pv, n + 2) / denom;
    return {std::move(value), formula::recip_two_plus_binomial};
}

/// Conditioning on X_{n-1} = X_n = 1:
/// E[1/(1+Z_{n-2})] * p^2 / (1 - q^{n-1}), which reduces to p/(n-1).
template <Scalar S>
ExpectationValue<S> last_term_expectation_k1(std::size_t n, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 3, "last_term_expectation_k1");
    p.require_positive("last_term_expectation_k1");
    const S& pv = p.value();
    S value = recip_one_plus_binomial(n - 2, p).value * pv * pv / scalar::one_minus_complement_pow(pv, n - 1);
    return {std::move(value), formula::last_term_k1};
}

/// Common value of the n-2 interior terms, via E[1/(2+Z_{n-3})] p^2 / (1 - q^{n-1}).
template <Scalar S>
ExpectationValue<S> interior_term_expectation_k1(std::size_t n, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 3, "interior_term_expectation_k1");
    p.require_positive("interior_term_expectation_k1");
    const S& pv = p.value();
    S value = recip_two_plus_binomial(n - 3, p).value * pv * pv / scalar::one_minus_complement_pow(pv, n - 1);
    return {std::move(value), formula::interior_term_k1};
}

/// E[P_1 | D_1 != 0] for n >= 2, p in (0,1]. At n = 2 this is p (one term, X_2 given X_1 = 1).
///
/// The exact path evaluates p/(1 - q^{n-1}) + (p-1)/(n-1) literally. The double
/// path sums the last and interior terms instead: all summands are positive, while
/// the two terms of the literal form cancel to O(p) as p -> 0.
template <Scalar S>
ExpectationValue<S> expected_hot_hand_k1(std::size_t n, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 2, "expected_hot_hand_k1");
    p.require_positive("expected_hot_hand_k1");
    const S& pv = p.value();
    if (n == 2) return {pv, formula::expected_hot_hand_k1};
    if (p.is_one()) return {S(1), formula::expected_hot_hand_k1};
    if constexpr (is_exact_v<S>) {
        const S m = scalar::from_integer<S>(n - 1);
        S value = pv / scalar::one_minus_complement_pow(pv, n - 1) + (pv - 1) / m;
        return {std::move(value), formula::expected_hot_hand_k1};
    } else {
        const double last = pv / static_cast<double>(n - 1);
        const double interior = interior_term_expectation_k1(n, p).value;
        return {last + static_cast<double>(n - 2) * interior, formula::expected_hot_hand_k1};
    }
}

/// p - E[P_1 | D_1 != 0]; strictly positive for n >= 3, zero at n = 2.
template <Scalar S>
S bias_gap_k1(std::size_t n, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 2, "bias_gap_k1");
    p.require_interior("bias_gap_k1");
    return S(p.value() - expected_hot_hand_k1(n, p).value);
}

/// (n-1) q^{n-2} < 1 + (n-2) q^{n-1}, the weighted AM-GM step that makes the gap positive.
template <Scalar S>
bool verify_amgm_inequality(std::size_t n, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 3, "verify_amgm_inequality");
    p.require_interior("verify_amgm_inequality");
    const S lhs = scalar::from_integer<S>(n - 1) * scalar::complement_pow(p.value(), n - 2);
    const S rhs = 1 + scalar::from_integer<S>(n - 2) * scalar::complement_pow(p.value(), n - 1);
    return lhs < rhs;
}

} // namespace hothand
