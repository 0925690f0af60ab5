#include "hothand/bernoulli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hothand {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

ProbabilityLiteral parse_probability(std::string_view text) {
    const std::string_view s = trim(text);
    const auto bad = [&] { return InvalidArgument("cannot parse probability '" + std::string(text) + "'"); };
    if (s.empty()) throw bad();

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw bad();
        BigInt d{std::string(den)};
        if (d == 0) throw InvalidArgument("probability '" + std::string(text) + "' has a zero denominator");
        Rational r{BigInt{std::string(num)}, d};
        r.canonicalize();
        return r;
    }
    if (all_digits(s)) return Rational{BigInt{std::string(s)}};

    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) throw bad();
    return v;
}

bool is_exact(const ProbabilityLiteral& p) { return std::holds_alternative<Rational>(p); }

double to_double(const ProbabilityLiteral& p) {
    return std::visit([](const auto& v) { return scalar::to_double(v); }, p);
}

std::string to_string(const ProbabilityLiteral& p) {
    return std::visit([](const auto& v) { return scalar::to_string(v); }, p);
}

} // namespace hothand
