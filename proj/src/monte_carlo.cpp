#include "hothand/monte_carlo.hpp"

#include "hothand/errors.hpp"
#include "hothand/sequence.hpp"

#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace hothand {

namespace {

struct ShardStats {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations
    bool exhausted = false;

    void add(double x) {
        ++accepted;
        const double delta = x - mean;
        mean += delta / static_cast<double>(accepted);
        m2 += delta * (x - mean);
    }

    void merge(const ShardStats& other) {
        if (other.accepted == 0) {
            rejected += other.rejected;
            exhausted = exhausted || other.exhausted;
            return;
        }
        const double na = static_cast<double>(accepted);
        const double nb = static_cast<double>(other.accepted);
        const double total = na + nb;
        const double delta = other.mean - mean;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        accepted += other.accepted;
        rejected += other.rejected;
        exhausted = exhausted || other.exhausted;
    }
};

std::mt19937_64 shard_engine(std::uint64_t seed, unsigned shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    return std::mt19937_64(seq);
}

ShardStats run_shard(const SimulationConfig& config, unsigned shard, std::uint64_t target) {
    ShardStats stats;
    if (target == 0) return stats;
    auto engine = shard_engine(config.seed, shard);
    // bit = 1 iff the top 53 bits of a draw fall below p * 2^53
    const auto threshold = static_cast<std::uint64_t>(std::ldexp(config.p, 53));
    const std::uint64_t budget = config.max_attempt_factor * target;

    StreakCounter counter(config.n, config.k);
    for (std::uint64_t attempt = 0; attempt < budget && stats.accepted < target; ++attempt) {
        counter.reset();
        for (std::size_t i = 0; i < config.n; ++i) counter.push((engine() >> 11) < threshold);
        if (counter.denominator() == 0) {
            ++stats.rejected;
            continue;
        }
        stats.add(static_cast<double>(counter.numerator()) / static_cast<double>(counter.denominator()));
    }
    stats.exhausted = stats.accepted < target;
    return stats;
}

} // namespace

void validate(const SimulationConfig& config) {
    check_streak_length(config.n, config.k);
    if (!(config.p > 0.0 && config.p < 1.0)) {
        throw InvalidArgument("simulation requires 0 < p < 1, got p = " + std::to_string(config.p));
    }
    if (config.samples < 1) throw InvalidArgument("simulation requires samples >= 1");
    if (config.max_attempt_factor < 1) throw InvalidArgument("simulation requires max_attempt_factor >= 1");
    if (config.shards < 1) throw InvalidArgument("simulation requires shards >= 1");
}

SimulationResult simulate(const SimulationConfig& config) {
    validate(config);

    std::vector<ShardStats> shards(config.shards);
    const auto target = [&](unsigned i) {
        return config.samples / config.shards + (i < config.samples % config.shards ? 1 : 0);
    };
    if (config.shards == 1) {
        shards[0] = run_shard(config, 0, config.samples);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(config.shards);
        for (unsigned i = 0; i < config.shards; ++i) {
            workers.emplace_back([&, i] { shards[i] = run_shard(config, i, target(i)); });
        }
    }

    ShardStats total;
    for (const auto& s : shards) total.merge(s);

    if (total.exhausted) {
        throw PartialResult("attempt cap of " + std::to_string(config.max_attempt_factor) +
                                " x samples reached after " + std::to_string(total.accepted) + " accepted and " +
                                std::to_string(total.rejected) + " rejected draws; P(D != 0) is too small here",
                            total.accepted, total.rejected);
    }

    SimulationResult result;
    result.config = config;
    result.accepted = total.accepted;
    result.rejected = total.rejected;
    result.estimate = total.mean;
    result.std_error = total.accepted > 1
                           ? std::sqrt(total.m2 / static_cast<double>(total.accepted - 1)) /
                                 std::sqrt(static_cast<double>(total.accepted))
                           : 0.0;
    result.empirical_p_d_zero = static_cast<double>(total.rejected) / static_cast<double>(result.draws());
    return result;
}

} // namespace hothand
