#pragma once

#include "hothand/bernoulli.hpp"
#include "hothand/exact_dist.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hothand {

enum class TableMethod { closed_form, dp, enumeration, monte_carlo };

std::string_view to_string(TableMethod method);
TableMethod parse_table_method(std::string_view text);

/// A value that is exact when it could be computed exactly.
using TableValue = ProbabilityLiteral;

struct BiasTableRow {
    std::size_t n = 0;
    std::size_t k = 0;
    TableValue p;
    TableValue expectation;
    TableValue bias_gap; // p - expectation
    TableMethod method = TableMethod::dp;
};

struct BiasTableRequest {
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ks;
    std::vector<ProbabilityLiteral> ps;
    TableMethod method = TableMethod::dp;
    ArithmeticMode mode = ArithmeticMode::floating;
    std::uint64_t samples = 100000; // monte_carlo only
    std::uint64_t seed = 0;         // monte_carlo only; row i uses a seed derived from (seed, i)
    unsigned jobs = 1;
};

/// One row per (n, k, p) in that nesting order; points with k > n-1 are skipped.
/// Rows are computed on up to `jobs` threads but always returned in grid order.
/// Throws InvalidArgument for closed_form with k != 1 and for rational mode with a decimal p.
std::vector<BiasTableRow> bias_table(const BiasTableRequest& request);

/// Header "n,k,p,expectation,bias_gap,method", CRLF-free RFC 4180 style. Doubles use the
/// shortest representation that reads back to the same value.
std::string to_csv(const std::vector<BiasTableRow>& rows);

/// {"columns": [...], "rows": [{...}]}; exact values are strings "a/b", doubles are numbers.
nlohmann::json to_json(const std::vector<BiasTableRow>& rows);

/// Parses the CSV emitted by to_csv. Exact cells come back as Rational, the rest as double.
std::vector<BiasTableRow> parse_csv(std::string_view text);

/// Derives the seed of grid row `index` from the table seed (splitmix64 step).
std::uint64_t row_seed(std::uint64_t seed, std::uint64_t index);

} // namespace hothand
