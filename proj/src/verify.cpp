#include "hothand/verify.hpp"

#include "hothand/closed_form.hpp"
#include "hothand/exact_dist.hpp"
#include "hothand/monte_carlo.hpp"

#include <functional>
#include <sstream>

namespace hothand {

namespace {

std::vector<Rational> tenths() {
    std::vector<Rational> ps;
    for (unsigned i = 1; i <= 9; ++i) ps.push_back(scalar::ratio<Rational>(i, 10));
    return ps;
}

CheckResult check(std::string name, const std::function<std::string()>& body) {
    CheckResult r{std::move(name), false, {}};
    try {
        r.detail = body();
        r.passed = r.detail.empty();
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

template <class... Parts>
std::string describe(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

} // namespace

std::vector<CheckResult> run_verification_battery() {
    std::vector<CheckResult> out;

    out.push_back(check("k=1 closed form equals enumeration (n=2..10, p=1/10..9/10)", [] {
        for (std::size_t n = 2; n <= 10; ++n) {
            for (const auto& pv : tenths()) {
                const BernoulliParam p(pv);
                const Rational closed = expected_hot_hand_k1(n, p).value;
                const Rational enumerated = conditional_expectation(enumerate_joint(n, 1, p)).value;
                if (closed != enumerated) return describe("n=", n, " p=", pv.get_str(), " closed=", closed.get_str(),
                                                          " enumerated=", enumerated.get_str());
            }
        }
        return std::string{};
    }));

    out.push_back(check("reciprocal moment recursion p*E[1/(2+Z_n)] + q*E[1/(1+Z_n)] = E[1/(1+Z_{n+1})]", [] {
        for (std::size_t n = 0; n <= 50; ++n) {
            for (const auto& pv : tenths()) {
                const BernoulliParam p(pv);
                const Rational lhs = pv * recip_two_plus_binomial(n, p).value +
                                     p.complement() * recip_one_plus_binomial(n, p).value;
                if (lhs != recip_one_plus_binomial(n + 1, p).value) return describe("n=", n, " p=", pv.get_str());
            }
        }
        return std::string{};
    }));

    out.push_back(check("DP equals enumeration (n<=10, all k, p in {1/2,1/3,9/10})", [] {
        for (const auto& pv : {Rational(1, 2), Rational(1, 3), Rational(9, 10)}) {
            const BernoulliParam p(pv);
            for (std::size_t n = 2; n <= 10; ++n) {
                for (std::size_t k = 1; k < n; ++k) {
                    if (dp_joint(n, k, p) != enumerate_joint(n, k, p)) {
                        return describe("n=", n, " k=", k, " p=", pv.get_str());
                    }
                }
            }
        }
        return std::string{};
    }));

    out.push_back(check("k=1 bias gap positive and AM-GM holds (n=3..50, p=0.01..0.99)", [] {
        for (std::size_t n = 3; n <= 50; ++n) {
            for (unsigned i = 1; i <= 99; ++i) {
                const BernoulliParam p(i / 100.0);
                if (!(bias_gap_k1(n, p) > 0.0) || !verify_amgm_inequality(n, p)) {
                    return describe("n=", n, " p=", p.value());
                }
            }
        }
        return std::string{};
    }));

    out.push_back(check("k=1 last + (n-2) interior = expectation, matched by per-term enumeration", [] {
        for (std::size_t n = 3; n <= 10; ++n) {
            for (const auto& pv : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                const BernoulliParam p(pv);
                const Rational last = last_term_expectation_k1(n, p).value;
                const Rational interior = interior_term_expectation_k1(n, p).value;
                if (last + scalar::from_integer<Rational>(n - 2) * interior != expected_hot_hand_k1(n, p).value ||
                    per_term_expectation_k1(n, n, p).value != last ||
                    per_term_expectation_k1(n, 2, p).value != interior) {
                    return describe("n=", n, " p=", pv.get_str());
                }
            }
        }
        return std::string{};
    }));

    out.push_back(check("k in {2,3} conditional expectation below p (n=k+2..20, p=0.1..0.9)", [] {
        for (std::size_t k = 2; k <= 3; ++k) {
            for (std::size_t n = k + 2; n <= 20; ++n) {
                for (unsigned i = 1; i <= 9; ++i) {
                    const BernoulliParam p(i / 10.0);
                    const double e = conditional_expectation(dp_joint(n, k, p)).value;
                    if (!(e < p.value())) return describe("n=", n, " k=", k, " p=", p.value(), " E=", e);
                }
            }
        }
        return std::string{};
    }));

    out.push_back(check("simulation is reproducible for a fixed seed and shard count", [] {
        SimulationConfig config;
        config.n = 20;
        config.k = 2;
        config.p = 0.5;
        config.samples = 20000;
        config.seed = 7;
        config.shards = 3;
        const auto a = simulate(config);
        const auto b = simulate(config);
        if (a.estimate != b.estimate || a.std_error != b.std_error || a.accepted != b.accepted ||
            a.rejected != b.rejected) {
            return std::string("two runs differ");
        }
        return std::string{};
    }));

    return out;
}

} // namespace hothand
