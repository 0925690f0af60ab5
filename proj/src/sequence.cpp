#include "hothand/sequence.hpp"

#include "hothand/errors.hpp"

#include <algorithm>
#include <cctype>

namespace hothand {

BinarySequence::BinarySequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw InvalidArgument("binary sequence must have length n >= 1");
    const auto bad = std::find_if(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; });
    if (bad != bits_.end()) {
        throw InvalidArgument("binary sequence entry at index " + std::to_string(bad - bits_.begin()) +
                              " is not 0 or 1");
    }
}

BinarySequence BinarySequence::from_mask(std::uint64_t mask, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
    return BinarySequence(std::move(bits));
}

std::size_t BinarySequence::ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string BinarySequence::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
}

HotHandValue HotHandValue::defined(std::size_t numerator, std::size_t denominator) {
    if (denominator == 0 || numerator > denominator) {
        throw InvalidArgument("hot hand value needs 0 <= N <= D and D > 0");
    }
    HotHandValue v;
    v.ratio_ = scalar::ratio<Rational>(numerator, denominator);
    return v;
}

std::string HotHandValue::to_string() const {
    return ratio_ ? scalar::to_string(*ratio_) : std::string("undefined (D=0)");
}

StreakCounter::StreakCounter(std::size_t n, std::size_t k) : n_(n), k_(k) { check_streak_length(n, k); }

void check_streak_length(std::size_t n, std::size_t k) {
    if (k < 1) throw InvalidArgument("streak length k must satisfy k >= 1, got k = 0");
    if (n < 2 || k > n - 1) {
        throw InvalidArgument("streak length k must satisfy k <= n - 1, got k = " + std::to_string(k) +
                              " with n = " + std::to_string(n));
    }
}

StreakCountPair count_streak_terms(const BinarySequence& x, std::size_t k) {
    StreakCounter counter(x.size(), k);
    for (const auto b : x.bits()) counter.push(b != 0);
    return counter.counts();
}

HotHandValue hot_hand_statistic(const BinarySequence& x, std::size_t k) {
    const auto c = count_streak_terms(x, k);
    if (c.denominator == 0) return HotHandValue::undefined();
    return HotHandValue::defined(c.numerator, c.denominator);
}

BinarySequence parse_sequence(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i), i);
        }
    }
    if (bits.empty()) throw ParseError("no bits found in input", text.size());
    return BinarySequence(std::move(bits));
}

} // namespace hothand
