#pragma once

#include "hothand/errors.hpp"
#include "hothand/scalar.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace hothand {

/// Success probability of the i.i.d. Bernoulli model, stored exactly or as a double.
///
/// Construction only checks 0 <= p <= 1. Each operation then narrows the range it
/// accepts: the reciprocal-moment formulas take (0,1], the bias results take (0,1).
template <Scalar S>
class BernoulliParam {
public:
    explicit BernoulliParam(S p) : p_(std::move(p)) {
        if (!(p_ >= 0 && p_ <= 1)) {
            throw InvalidArgument("success probability must lie in [0,1], got " + scalar::to_string(p_));
        }
    }

    const S& value() const noexcept { return p_; }
    S complement() const { return S(1 - p_); }

    bool is_zero() const { return p_ == 0; }
    bool is_one() const { return p_ == 1; }

    /// Throws unless p in (0,1].
    void require_positive(std::string_view op) const {
        if (is_zero()) {
            throw ZeroProbabilityConditioning(std::string(op) +
                                              ": p = 0 makes the conditioning event D != 0 a null event");
        }
    }

    /// Throws unless p in (0,1).
    void require_interior(std::string_view op) const {
        require_positive(op);
        if (is_one()) throw InvalidArgument(std::string(op) + ": requires p < 1");
    }

    friend bool operator==(const BernoulliParam& a, const BernoulliParam& b) { return a.p_ == b.p_; }

private:
    S p_;
};

template <Scalar S>
BernoulliParam(S) -> BernoulliParam<S>;

/// A probability as typed by a user: "a/b" or a bare integer is exact, anything
/// with a decimal point or exponent is a double.
using ProbabilityLiteral = std::variant<Rational, double>;

ProbabilityLiteral parse_probability(std::string_view text);

bool is_exact(const ProbabilityLiteral& p);
double to_double(const ProbabilityLiteral& p);
std::string to_string(const ProbabilityLiteral& p);

} // namespace hothand
