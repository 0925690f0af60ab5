#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hothand {

/// Precondition violation on an argument (streak length, sequence length, p range).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// p = 0: the event D != 0 has probability zero, so nothing can be conditioned on it.
class ZeroProbabilityConditioning : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// All mass of a distribution sits at D = 0.
class UndefinedConditioning : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Brute-force enumeration refused because 2^n would be too large.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The simulator ran out of attempts before collecting the requested number of
/// accepted draws. Carries the counts gathered so far.
class PartialResult : public std::runtime_error {
public:
    PartialResult(const std::string& what, std::uint64_t accepted, std::uint64_t rejected)
        : std::runtime_error(what), accepted_(accepted), rejected_(rejected) {}

    std::uint64_t accepted() const noexcept { return accepted_; }
    std::uint64_t rejected() const noexcept { return rejected_; }

private:
    std::uint64_t accepted_;
    std::uint64_t rejected_;
};

} // namespace hothand
