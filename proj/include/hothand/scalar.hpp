#pragma once

// Scalar layer. Every formula in the library is written once as a template over
// a Scalar and instantiated for `double` (fast tables) and `Rational` (exact
// identities and oracles).

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <system_error>

namespace hothand {

using Rational = mpq_class;
using BigInt = mpz_class;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

namespace scalar {

inline double ratio(double num, double den) { return num / den; }

template <Scalar S>
S ratio(std::size_t num, std::size_t den) {
    if constexpr (is_exact_v<S>) {
        Rational r{BigInt{static_cast<unsigned long>(num)}, BigInt{static_cast<unsigned long>(den)}};
        r.canonicalize();
        return r;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

template <Scalar S>
S from_integer(std::size_t v) {
    if constexpr (is_exact_v<S>) {
        return Rational{BigInt{static_cast<unsigned long>(v)}};
    } else {
        return static_cast<double>(v);
    }
}

inline BigInt pow(const BigInt& base, std::size_t m) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m));
    return out;
}

inline Rational pow(const Rational& x, std::size_t m) {
    Rational out{pow(BigInt{x.get_num()}, m), pow(BigInt{x.get_den()}, m)};
    out.canonicalize();
    return out;
}

inline double pow(double x, std::size_t m) { return std::pow(x, static_cast<double>(m)); }

/// (1 - p)^m. The double path goes through log1p to keep digits for tiny p.
inline double complement_pow(double p, std::size_t m) {
    if (m == 0) return 1.0;
    if (p == 1.0) return 0.0;
    return std::exp(static_cast<double>(m) * std::log1p(-p));
}

inline Rational complement_pow(const Rational& p, std::size_t m) {
    return pow(Rational{1 - p}, m);
}

/// 1 - (1 - p)^m without the catastrophic cancellation of the direct form.
inline double one_minus_complement_pow(double p, std::size_t m) {
    if (m == 0) return 0.0;
    if (p == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(m) * std::log1p(-p));
}

inline Rational one_minus_complement_pow(const Rational& p, std::size_t m) {
    return Rational{1 - complement_pow(p, m)};
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

/// Shortest decimal that parses back to the same double.
inline std::string to_string(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return std::to_string(x);
    return std::string(buf, end);
}

/// "a/b" in lowest terms, or "a" when the denominator is 1.
inline std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return c.get_str();
}

} // namespace scalar
} // namespace hothand
