#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hothand {

/// Engine behind every draw. std::mt19937_64 is fully specified by the standard,
/// and bits are derived from its raw output (no std::*_distribution), so a seed
/// gives the same stream on every conforming platform.
inline constexpr std::string_view generator_name = "mt19937_64";

struct SimulationConfig {
    std::size_t n = 0;
    std::size_t k = 1;
    double p = 0.5;
    std::uint64_t samples = 1;          // accepted draws wanted
    std::uint64_t seed = 0;
    std::uint64_t max_attempt_factor = 1000; // attempts <= factor * samples
    unsigned shards = 1;
};

/// Throws InvalidArgument unless 1 <= k <= n-1, 0 < p < 1, samples >= 1, factor >= 1, shards >= 1.
void validate(const SimulationConfig& config);

struct SimulationResult {
    SimulationConfig config;
    double estimate = 0.0;  // mean of P_k over accepted draws
    double std_error = 0.0; // sample sd / sqrt(accepted)
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0; // draws with D_k = 0
    double empirical_p_d_zero = 0.0;

    std::uint64_t draws() const noexcept { return accepted + rejected; }
};

/// Rejection sampler for E[P_k | D_k != 0]. Draws with D_k = 0 are discarded.
///
/// Shard i runs its own generator seeded from (seed, i); shards run concurrently
/// and are merged in index order, so (config, shards) fixes the output bit for bit.
/// Throws PartialResult if a shard exhausts its attempt budget.
SimulationResult simulate(const SimulationConfig& config);

} // namespace hothand
