#pragma once

#include "hothand/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hothand {

/// A realization (x_1, ..., x_n) of the Bernoulli sequence. Non-empty, every entry 0 or 1.
class BinarySequence {
public:
    explicit BinarySequence(std::vector<std::uint8_t> bits);

    /// Bits of `mask`, least significant bit first, as a length-n sequence.
    static BinarySequence from_mask(std::uint64_t mask, std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::size_t ones() const noexcept;

    std::string to_string() const;

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Numerator N_k and denominator D_k of the hot hand statistic for one sequence.
///
/// D counts the length-k all-ones windows ending at positions k..n-1,
/// N counts the length-(k+1) all-ones windows ending at positions k+1..n.
struct StreakCountPair {
    std::size_t numerator = 0;
    std::size_t denominator = 0;
    std::size_t k = 0;
    std::size_t n = 0;

    friend bool operator==(const StreakCountPair&, const StreakCountPair&) = default;
};

/// P_k(x) = N/D when D > 0, otherwise undefined. No NaN sentinel.
class HotHandValue {
public:
    static HotHandValue undefined() { return HotHandValue{}; }
    static HotHandValue defined(std::size_t numerator, std::size_t denominator);

    bool is_defined() const noexcept { return ratio_.has_value(); }
    /// Throws std::bad_optional_access when undefined.
    const Rational& ratio() const { return ratio_.value(); }

    std::string to_string() const;

private:
    HotHandValue() = default;
    std::optional<Rational> ratio_;
};

/// Streaming window counter for a sequence of known length n. Feeding the bits
/// x_1..x_n in order yields the same counts as count_streak_terms.
class StreakCounter {
public:
    StreakCounter(std::size_t n, std::size_t k);

    void push(bool bit) noexcept {
        ++position_;
        run_ = bit ? (run_ <= k_ ? run_ + 1 : run_) : 0;
        if (run_ >= k_ && position_ < n_) ++denominator_;
        if (run_ > k_) ++numerator_;
    }

    void reset() noexcept { position_ = run_ = numerator_ = denominator_ = 0; }

    std::size_t numerator() const noexcept { return numerator_; }
    std::size_t denominator() const noexcept { return denominator_; }
    StreakCountPair counts() const noexcept { return {numerator_, denominator_, k_, n_}; }

private:
    std::size_t n_;
    std::size_t k_;
    std::size_t position_ = 0;
    std::size_t run_ = 0; // trailing ones, saturated at k+1
    std::size_t numerator_ = 0;
    std::size_t denominator_ = 0;
};

/// Throws InvalidArgument unless 1 <= k <= n-1.
void check_streak_length(std::size_t n, std::size_t k);

StreakCountPair count_streak_terms(const BinarySequence& x, std::size_t k);

HotHandValue hot_hand_statistic(const BinarySequence& x, std::size_t k);

/// '0'/'1' characters with arbitrary whitespace. Throws ParseError carrying the
/// byte offset of the first foreign character.
BinarySequence parse_sequence(std::string_view text);

} // namespace hothand
