#pragma once

#include "hothand/bernoulli.hpp"
#include "hothand/bias_table.hpp"
#include "hothand/exact_dist.hpp"
#include "hothand/monte_carlo.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hothand::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 1,      // bad arguments, parse failures, domain and resource errors
    undefined_result = 2, // the statistic is undefined (D = 0)
};

/// Entry point shared by the binary and the tests. `args` excludes the program
/// name. `mode_env` is the value of HOTHAND_MODE, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> mode_env = std::nullopt);

int cmd_stat(const std::string& path, std::size_t k, std::ostream& out, std::ostream& err);

int cmd_closed_form(std::size_t n, const std::string& p, bool json, std::ostream& out, std::ostream& err);

struct ExactOptions {
    std::size_t n = 0;
    std::size_t k = 1;
    std::string p;
    std::optional<ArithmeticMode> mode;
    std::optional<std::string> dump; // "-" for stdout
    bool oracle = false;
    bool json = false;
};

int cmd_exact(const ExactOptions& options, std::ostream& out, std::ostream& err);

int cmd_mc(const SimulationConfig& config, std::ostream& out, std::ostream& err);

struct BiasTableOptions {
    std::string n_range;
    std::string k_range = "1";
    std::string p_grid;
    std::string method = "dp";
    std::string format = "csv";
    std::optional<ArithmeticMode> mode;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::optional<std::string> output;
};

int cmd_bias_table(const BiasTableOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify(std::ostream& out, std::ostream& err);

/// "5", "3..7" (inclusive; empty when lo > hi) or "2,4,8".
std::vector<std::size_t> parse_size_range(std::string_view text);

/// Comma list of probability literals, or "lo:hi:step". An all-exact range steps
/// in exact rationals; otherwise value i is lo + i*step.
std::vector<ProbabilityLiteral> parse_probability_grid(std::string_view text);

} // namespace hothand::cli
