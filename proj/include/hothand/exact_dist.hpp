#pragma once

// Exact law of (N_k, D_k) under i.i.d. Bernoulli(p) bits.
//
// Both engines work on integer-weighted paths: with p = a/b a sequence with m ones
// has weight a^m (b-a)^{n-m}, and everything is divided by b^n once at the end.
// The exact path therefore runs on big integers and only touches rationals when
// the pmf is assembled. The double path uses weights p and 1-p directly.

#include "hothand/bernoulli.hpp"
#include "hothand/closed_form.hpp"
#include "hothand/errors.hpp"
#include "hothand/scalar.hpp"
#include "hothand/sequence.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hothand {

enum class ArithmeticMode { rational, floating };

std::string_view to_string(ArithmeticMode mode);
/// "rational" or "double".
ArithmeticMode parse_arithmetic_mode(std::string_view text);

inline constexpr std::size_t max_enumeration_length = 20;

struct CountKey {
    std::size_t numerator = 0;
    std::size_t denominator = 0;

    friend auto operator<=>(const CountKey&, const CountKey&) = default;
};

/// Sparse pmf over reachable (N, D) pairs with positive mass.
template <Scalar S>
struct JointCountDistribution {
    std::size_t n;
    std::size_t k;
    BernoulliParam<S> p;
    std::map<CountKey, S> pmf;

    S total_mass() const {
        S sum = 0;
        for (const auto& [key, prob] : pmf) sum += prob;
        return sum;
    }

    S mass_at(std::size_t numerator, std::size_t denominator) const {
        const auto it = pmf.find({numerator, denominator});
        return it == pmf.end() ? S(0) : it->second;
    }

    friend bool operator==(const JointCountDistribution&, const JointCountDistribution&) = default;
};

/// Trailing run of ones, saturated at k+1. Runs longer than k+1 affect the
/// counts exactly as a run of k+1 does, so the cap loses nothing.
struct RunState {
    std::size_t run = 0;

    constexpr RunState after(bool bit, std::size_t k) const noexcept {
        return {bit ? std::min(run + 1, k + 1) : 0};
    }
};

namespace detail {

template <Scalar S>
struct PathWeights;

template <>
struct PathWeights<double> {
    using weight_type = double;
    double one;
    double zero;

    explicit PathWeights(const BernoulliParam<double>& p) : one(p.value()), zero(p.complement()) {}

    double finish(double w, std::size_t) const { return w; }
};

template <>
struct PathWeights<Rational> {
    using weight_type = BigInt;
    BigInt one;
    BigInt zero;
    BigInt den;

    explicit PathWeights(const BernoulliParam<Rational>& p)
        : one(p.value().get_num()), zero(p.value().get_den() - p.value().get_num()), den(p.value().get_den()) {}

    Rational finish(const BigInt& w, std::size_t n) const {
        Rational r{w, scalar::pow(den, n)};
        r.canonicalize();
        return r;
    }
};

template <class W>
W power_of(const W& base, std::size_t m) {
    return scalar::pow(base, m);
}

/// weight(m) = one^m zero^{n-m} for m = 0..n.
template <Scalar S>
std::vector<typename PathWeights<S>::weight_type> sequence_weights(const PathWeights<S>& w, std::size_t n) {
    using W = typename PathWeights<S>::weight_type;
    std::vector<W> out(n + 1);
    for (std::size_t m = 0; m <= n; ++m) out[m] = W(power_of(w.one, m) * power_of(w.zero, n - m));
    return out;
}

} // namespace detail

/// Brute force over all 2^n sequences. Refuses n > 20.
template <Scalar S>
JointCountDistribution<S> enumerate_joint(std::size_t n, std::size_t k, const BernoulliParam<S>& p) {
    check_streak_length(n, k);
    if (n > max_enumeration_length) {
        throw ResourceLimit("enumerate_joint: n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                            std::to_string(max_enumeration_length) + "; use dp_joint");
    }
    const std::size_t span = n - k + 1;
    // counts[(N * span + D) * (n+1) + ones]
    std::vector<std::uint64_t> counts(span * span * (n + 1), 0);
    StreakCounter counter(n, k);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        counter.reset();
        for (std::size_t i = 0; i < n; ++i) counter.push(((mask >> i) & 1U) != 0);
        const auto ones = static_cast<std::size_t>(std::popcount(mask));
        ++counts[(counter.numerator() * span + counter.denominator()) * (n + 1) + ones];
    }

    const detail::PathWeights<S> weights(p);
    const auto seq_weight = detail::sequence_weights(weights, n);
    using W = typename detail::PathWeights<S>::weight_type;

    JointCountDistribution<S> dist{n, k, p, {}};
    for (std::size_t num = 0; num < span; ++num) {
        for (std::size_t den = 0; den < span; ++den) {
            W mass = 0;
            bool hit = false;
            for (std::size_t ones = 0; ones <= n; ++ones) {
                const auto c = counts[(num * span + den) * (n + 1) + ones];
                if (c == 0 || seq_weight[ones] == 0) continue;
                mass += W(static_cast<unsigned long>(c)) * seq_weight[ones];
                hit = true;
            }
            if (hit) dist.pmf.emplace(CountKey{num, den}, weights.finish(mass, n));
        }
    }
    return dist;
}

/// Forward recursion over positions with state (trailing run, N so far, D so far).
/// O(n^2 k) states, O(1) work per state and step.
template <Scalar S>
JointCountDistribution<S> dp_joint(std::size_t n, std::size_t k, const BernoulliParam<S>& p) {
    check_streak_length(n, k);
    using W = typename detail::PathWeights<S>::weight_type;
    const detail::PathWeights<S> weights(p);
    const bool can_one = weights.one != 0;
    const bool can_zero = weights.zero != 0;

    const std::size_t span = n - k + 1; // N, D in [0, n-k]
    const std::size_t runs = k + 2;     // run in [0, k+1]
    const auto index = [span](std::size_t run, std::size_t num, std::size_t den) {
        return (run * span + num) * span + den;
    };

    std::vector<W> cur(runs * span * span), next(runs * span * span);
    std::vector<std::uint8_t> cur_live(cur.size(), 0), next_live(cur.size(), 0);
    std::vector<std::size_t> cur_list{index(0, 0, 0)}, next_list;
    cur[index(0, 0, 0)] = 1;
    cur_live[index(0, 0, 0)] = 1;

    const auto deposit = [&](std::size_t at, const W& v, const W& w) {
        if (!next_live[at]) {
            next_live[at] = 1;
            next_list.push_back(at);
            next[at] = v * w;
        } else {
            next[at] += v * w;
        }
    };

    for (std::size_t position = 1; position <= n; ++position) {
        next_list.clear();
        for (const std::size_t s : cur_list) {
            const std::size_t den = s % span;
            const std::size_t num = (s / span) % span;
            const RunState state{s / (span * span)};
            if (can_one) {
                const RunState up = state.after(true, k);
                const std::size_t d = den + ((up.run >= k && position < n) ? 1 : 0);
                const std::size_t m = num + (up.run > k ? 1 : 0);
                deposit(index(up.run, m, d), cur[s], weights.one);
            }
            if (can_zero) deposit(index(0, num, den), cur[s], weights.zero);
            cur_live[s] = 0;
        }
        std::swap(cur, next);
        std::swap(cur_live, next_live);
        std::swap(cur_list, next_list);
    }

    std::map<CountKey, W> folded;
    for (const std::size_t s : cur_list) {
        const CountKey key{(s / span) % span, s % span};
        auto [it, inserted] = folded.try_emplace(key, cur[s]);
        if (!inserted) it->second += cur[s];
    }
    JointCountDistribution<S> dist{n, k, p, {}};
    for (const auto& [key, w] : folded) dist.pmf.emplace(key, weights.finish(w, n));
    return dist;
}

/// P(D = 0).
template <Scalar S>
S prob_denominator_zero(const JointCountDistribution<S>& dist) {
    S mass = 0;
    for (const auto& [key, prob] : dist.pmf) {
        if (key.denominator == 0) mass += prob;
    }
    return mass;
}

/// E[N/D | D > 0]. Throws UndefinedConditioning when no mass has D > 0.
template <Scalar S>
ExpectationValue<S> conditional_expectation(const JointCountDistribution<S>& dist) {
    S weighted = 0;
    S mass = 0;
    for (const auto& [key, prob] : dist.pmf) {
        if (key.denominator == 0) continue;
        weighted += scalar::ratio<S>(key.numerator, key.denominator) * prob;
        mass += prob;
    }
    if (mass == 0) {
        throw UndefinedConditioning("conditional_expectation: P(D > 0) = 0 for n = " + std::to_string(dist.n) +
                                    ", k = " + std::to_string(dist.k));
    }
    return {S(weighted / mass), formula::conditional_expectation};
}

/// E[X_{j-1} X_j / (X_1 + ... + X_{n-1}) | D_1 > 0] for one numerator index j in
/// 2..n, by enumeration. n in 3..20.
template <Scalar S>
ExpectationValue<S> per_term_expectation_k1(std::size_t n, std::size_t j, const BernoulliParam<S>& p) {
    detail::require_length_at_least(n, 3, "per_term_expectation_k1");
    p.require_positive("per_term_expectation_k1");
    if (n > max_enumeration_length) {
        throw ResourceLimit("per_term_expectation_k1: n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                            std::to_string(max_enumeration_length));
    }
    if (j < 2 || j > n) {
        throw InvalidArgument("per_term_expectation_k1: index j must lie in 2..n, got j = " + std::to_string(j));
    }

    // term[D * (n+1) + ones]: sequences whose j-th term is 1/D; cond[ones]: sequences with D > 0.
    std::vector<std::uint64_t> term(n * (n + 1), 0), cond(n + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t prefix = (std::uint64_t{1} << (n - 1)) - 1;
    const std::uint64_t pair = std::uint64_t{3} << (j - 2);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto den = static_cast<std::size_t>(std::popcount(mask & prefix));
        if (den == 0) continue;
        const auto ones = static_cast<std::size_t>(std::popcount(mask));
        ++cond[ones];
        if ((mask & pair) == pair) ++term[den * (n + 1) + ones];
    }

    const detail::PathWeights<S> weights(p);
    const auto seq_weight = detail::sequence_weights(weights, n);
    S numerator = 0;
    S mass = 0;
    for (std::size_t ones = 0; ones <= n; ++ones) {
        const S w = weights.finish(seq_weight[ones], n);
        mass += scalar::from_integer<S>(cond[ones]) * w;
        for (std::size_t den = 1; den < n; ++den) {
            const auto c = term[den * (n + 1) + ones];
            if (c != 0) numerator += scalar::ratio<S>(c, den) * w;
        }
    }
    return {S(numerator / mass), formula::enumeration};
}

} // namespace hothand
