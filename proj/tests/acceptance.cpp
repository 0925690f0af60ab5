// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-hothand-binary>

#include "hothand/closed_form.hpp"
#include "hothand/exact_dist.hpp"
#include "hothand/monte_carlo.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace hothand;

namespace {

Rational q(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

// --- reference sums, independent of the closed forms -----------------------

/// sum_i C(n,i) a^i (b-a)^{n-i} / (c+i) / b^n, accumulated over the common
/// denominator lcm(c..n+c) in integers.
Rational recip_moment_direct(std::size_t n, const Rational& p, unsigned c) {
    const BigInt a = p.get_num();
    const BigInt b = p.get_den();
    const BigInt qn = b - a;
    BigInt l = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        const BigInt d = static_cast<unsigned long>(c + i);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<BigInt> qpow(n + 1);
    qpow[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * qn;
    BigInt sum = 0, apow = 1, binom;
    for (std::size_t i = 0; i <= n; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), n, i);
        const BigInt share = l / static_cast<unsigned long>(c + i);
        sum += binom * apow * qpow[n - i] * share;
        apow *= a;
    }
    BigInt bn;
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
    Rational r{sum, BigInt{l * bn}};
    r.canonicalize();
    return r;
}

struct LogFactorials {
    std::vector<long double> table;
    explicit LogFactorials(std::size_t n) : table(n + 1, 0.0L) {
        for (std::size_t i = 2; i <= n; ++i) table[i] = table[i - 1] + std::log(static_cast<long double>(i));
    }
};

long double recip_moment_direct_ld(std::size_t n, long double p, unsigned c, const LogFactorials& lf) {
    if (p == 1.0L) return 1.0L / static_cast<long double>(c + n);
    const long double lp = std::log(p), lq = std::log1p(-p);
    long double sum = 0.0L;
    for (std::size_t i = 0; i <= n; ++i) {
        const long double lw = lf.table[n] - lf.table[i] - lf.table[n - i] + static_cast<long double>(i) * lp +
                               static_cast<long double>(n - i) * lq;
        sum += std::exp(lw) / static_cast<long double>(c + i);
    }
    return sum;
}

// --- criteria --------------------------------------------------------------

Outcome k1_closed_form_vs_enumeration() {
    Outcome o;
    if (conditional_expectation(enumerate_joint(3, 1, BernoulliParam(q(1, 2)))).value != q(5, 12)) {
        o.fail("smoke value n=3, p=1/2 is not 5/12");
    }
    for (std::size_t n = 2; n <= 12; ++n) {
        for (long a = 1; a <= 9; ++a) {
            const BernoulliParam p(q(a, 10));
            const Rational enumerated = conditional_expectation(enumerate_joint(n, 1, p)).value;
            const Rational closed = expected_hot_hand_k1(n, p).value;
            if (enumerated != closed) {
                o.fail("n=" + std::to_string(n) + " p=" + std::to_string(a) + "/10: " + enumerated.get_str() +
                       " vs " + closed.get_str());
            }
        }
    }
    return o;
}

Outcome reciprocal_moments_vs_direct_sums() {
    Outcome o;
    const std::array<Rational, 9> exact_grid{q(1, 1000), q(1, 100), q(1, 10), q(1, 4), q(1, 2),
                                             q(3, 4),    q(9, 10),  q(99, 100), q(1, 1)};
    for (const auto& pv : exact_grid) {
        const BernoulliParam p(pv);
        for (std::size_t n = 0; n <= 200; ++n) {
            if (recip_one_plus_binomial(n, p).value != recip_moment_direct(n, pv, 1)) {
                o.fail("E[1/(1+Z)] exact mismatch at n=" + std::to_string(n) + " p=" + pv.get_str());
            }
            if (recip_two_plus_binomial(n, p).value != recip_moment_direct(n, pv, 2)) {
                o.fail("E[1/(2+Z)] exact mismatch at n=" + std::to_string(n) + " p=" + pv.get_str());
            }
        }
    }
    const LogFactorials lf(1000);
    double worst = 0.0;
    for (const double pv : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0}) {
        const BernoulliParam p(pv);
        for (std::size_t n = 0; n <= 1000; ++n) {
            for (unsigned c : {1U, 2U}) {
                const double got = c == 1 ? recip_one_plus_binomial(n, p).value : recip_two_plus_binomial(n, p).value;
                const double want = static_cast<double>(recip_moment_direct_ld(n, pv, c, lf));
                worst = std::max(worst, std::fabs(got - want) / want);
            }
        }
    }
    if (worst > 1e-12) o.fail("double relative error " + std::to_string(worst) + " > 1e-12");
    std::ostringstream d;
    d << "max double rel err " << worst;
    if (o.passed) o.detail = d.str();
    return o;
}

Outcome dp_oracle_equivalence() {
    Outcome o;
    for (const auto& pv : {q(1, 2), q(1, 3), q(9, 10)}) {
        const BernoulliParam p(pv);
        for (std::size_t n = 2; n <= 14; ++n) {
            for (std::size_t k = 1; k < n; ++k) {
                if (dp_joint(n, k, p) != enumerate_joint(n, k, p)) {
                    o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + pv.get_str());
                }
            }
        }
    }
    return o;
}

Outcome bias_inequality() {
    Outcome o;
    constexpr double tol = 1e-12;
    for (std::size_t n = 3; n <= 50; ++n) {
        for (long i = 1; i <= 99; ++i) {
            const BernoulliParam p(static_cast<double>(i) / 100.0);
            if (!(bias_gap_k1(n, p) > 0.0)) o.fail("k=1 gap not positive at n=" + std::to_string(n));
            if (!verify_amgm_inequality(n, p)) o.fail("AM-GM false at n=" + std::to_string(n));
            const BernoulliParam pr(q(i, 100));
            if (!(bias_gap_k1(n, pr) > 0)) o.fail("exact k=1 gap not positive at n=" + std::to_string(n));
        }
    }
    double smallest = 1.0;
    for (std::size_t k = 2; k <= 3; ++k) {
        for (std::size_t n = k + 2; n <= 20; ++n) {
            for (int i = 1; i <= 9; ++i) {
                const BernoulliParam p(i / 10.0);
                const double gap = p.value() - conditional_expectation(dp_joint(n, k, p)).value;
                smallest = std::min(smallest, gap);
                if (!(gap > tol)) {
                    o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + " p=" + std::to_string(p.value()) +
                           " gap " + std::to_string(gap));
                }
            }
        }
    }
    if (o.passed) o.detail = "smallest k in {2,3} gap " + std::to_string(smallest);
    return o;
}

Outcome proof_decomposition() {
    Outcome o;
    for (std::size_t n = 3; n <= 10; ++n) {
        for (const auto& pv : {q(1, 4), q(1, 2), q(3, 4)}) {
            const BernoulliParam p(pv);
            const Rational last = last_term_expectation_k1(n, p).value;
            const Rational interior = interior_term_expectation_k1(n, p).value;
            const Rational total = expected_hot_hand_k1(n, p).value;
            const std::string at = " at n=" + std::to_string(n) + " p=" + pv.get_str();
            if (last + scalar::from_integer<Rational>(n - 2) * interior != total) o.fail("sum of terms" + at);
            if (last != pv / scalar::from_integer<Rational>(n - 1)) o.fail("last term != p/(n-1)" + at);
            for (std::size_t j = 2; j <= n; ++j) {
                const Rational term = per_term_expectation_k1(n, j, p).value;
                if (term != (j == n ? last : interior)) o.fail("per-term j=" + std::to_string(j) + at);
            }
        }
    }
    return o;
}

Outcome monte_carlo_agreement() {
    Outcome o;
    std::ostringstream detail;
    struct Case {
        std::size_t n, k;
        std::uint64_t seed;
    };
    for (const auto& c : {Case{3, 1, 42}, Case{100, 1, 43}, Case{100, 3, 44}}) {
        SimulationConfig config;
        config.n = c.n;
        config.k = c.k;
        config.p = 0.5;
        config.samples = 1000000;
        config.seed = c.seed;
        const auto r = simulate(config);

        const BernoulliParam p(0.5);
        double exact = 0.0, p_zero = 0.0;
        if (c.k == 1) {
            exact = expected_hot_hand_k1(c.n, p).value;
            p_zero = std::pow(0.5, static_cast<double>(c.n - 1));
        } else {
            const auto dist = dp_joint(c.n, c.k, p);
            exact = conditional_expectation(dist).value;
            p_zero = prob_denominator_zero(dist);
        }
        const double z = std::fabs(r.estimate - exact) / r.std_error;
        const double se = std::sqrt(p_zero * (1.0 - p_zero) / static_cast<double>(r.draws()));
        const double rej_gap = std::fabs(r.empirical_p_d_zero - p_zero);
        detail << "(" << c.n << "," << c.k << "): |est-exact|/stderr=" << z << " ";
        if (!(std::fabs(r.estimate - exact) <= 4.0 * r.std_error)) o.fail(detail.str() + "exceeds 4");
        if (!(rej_gap <= 3.0 * se)) o.fail("rejection rate off at (" + std::to_string(c.n) + "," + std::to_string(c.k) + ")");
    }
    if (o.passed) o.detail = detail.str();
    return o;
}

std::string capture(const std::string& command) {
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return "<popen failed>";
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe.get())) out.append(buf.data(), got);
    return out;
}

Outcome determinism(const std::string& bin) {
    Outcome o;
    const std::string seq_file = "acceptance_seq.txt";
    std::FILE* f = std::fopen(seq_file.c_str(), "w");
    if (f) {
        std::fputs("0111 0110 1111 0001\n", f);
        std::fclose(f);
    }
    const std::vector<std::string> commands{
        "stat " + seq_file + " -k 2",
        "closed-form -n 17 -p 3/7 --json",
        "closed-form -n 17 -p 0.3",
        "exact -n 30 -k 3 -p 2/5 --json --dump -",
        "exact -n 60 -k 2 -p 0.35 --mode double --dump -",
        "mc -n 50 -k 2 -p 0.45 --samples 50000 --seed 9",
        "mc -n 50 -k 2 -p 0.45 --samples 50000 --seed 9 --shards 3",
        "bias-table --n 3..12 --k 1..3 --p 0.1:0.9:0.1 --method dp",
        "bias-table --n 3..12 --k 1 --p 1/10:9/10:1/10 --method closed_form --format json",
        "bias-table --n 10,20 --k 1,2 --p 0.5 --method monte_carlo --samples 20000 --seed 5 --jobs 2",
        "verify",
    };
    for (const auto& c : commands) {
        const std::string full = bin + " " + c + " 2>&1";
        const auto first = capture(full);
        const auto second = capture(full);
        if (first.empty() || first != second) o.fail("output differs or is empty: " + c);
    }
    std::remove(seq_file.c_str());
    if (o.passed) o.detail = std::to_string(commands.size()) + " commands byte-identical across reruns";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-hothand>\n";
        return 2;
    }
    const std::string bin = argv[1];

    struct Criterion {
        std::string name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    constexpr double unbounded = std::numeric_limits<double>::infinity();
    const std::vector<Criterion> criteria{
        {"AC1 k=1 closed form equals exact enumeration (n=2..12, p=1/10..9/10)", 10.0, k1_closed_form_vs_enumeration},
        {"AC2 reciprocal moments match direct binomial sums (exact n<=200, double n<=1000)", 5.0, reciprocal_moments_vs_direct_sums},
        {"AC3 DP equals enumeration (n<=14, all k, p in {1/2,1/3,9/10})", 60.0, dp_oracle_equivalence},
        {"AC4 bias gap positive, AM-GM holds, k in {2,3} below p", unbounded, bias_inequality},
        {"AC5 last + (n-2) interior = expectation; per-term enumeration matches", unbounded, proof_decomposition},
        {"AC6 Monte Carlo within 4 stderr of exact; rejection rate within 3 SE", 120.0, monte_carlo_agreement},
        {"AC7 CLI output byte-identical across reruns", unbounded, [&] { return determinism(bin); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.passed && secs > c.budget_seconds) out.fail("runtime " + std::to_string(secs) + " s over budget");
        all = all && out.passed;
        std::printf("[%s] %s (%.2f s)%s%s\n", out.passed ? "PASS" : "FAIL", c.name.c_str(), secs,
                    out.detail.empty() ? "" : " - ", out.detail.c_str());
    }
    return all ? 0 : 1;
}
