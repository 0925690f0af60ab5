#include "hothand/bias_table.hpp"

#include "hothand/closed_form.hpp"
#include "hothand/errors.hpp"
#include "hothand/monte_carlo.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

namespace hothand {

namespace {

struct GridPoint {
    std::size_t n;
    std::size_t k;
    ProbabilityLiteral p;
};

template <Scalar S>
S exact_expectation(TableMethod method, std::size_t n, std::size_t k, const BernoulliParam<S>& p) {
    switch (method) {
    case TableMethod::closed_form:
        return expected_hot_hand_k1(n, p).value;
    case TableMethod::dp:
        return conditional_expectation(dp_joint(n, k, p)).value;
    case TableMethod::enumeration:
        return conditional_expectation(enumerate_joint(n, k, p)).value;
    case TableMethod::monte_carlo:
        break;
    }
    throw InvalidArgument("monte_carlo has no exact expectation");
}

BiasTableRow compute_row(const BiasTableRequest& request, const GridPoint& point, std::uint64_t index) {
    BiasTableRow row;
    row.n = point.n;
    row.k = point.k;
    row.method = request.method;

    if (request.method == TableMethod::monte_carlo) {
        SimulationConfig config;
        config.n = point.n;
        config.k = point.k;
        config.p = to_double(point.p);
        config.samples = request.samples;
        config.seed = row_seed(request.seed, index);
        const auto result = simulate(config);
        row.p = config.p;
        row.expectation = result.estimate;
        row.bias_gap = config.p - result.estimate;
        return row;
    }

    if (request.mode == ArithmeticMode::rational) {
        const BernoulliParam<Rational> p(std::get<Rational>(point.p));
        Rational e = exact_expectation(request.method, point.n, point.k, p);
        row.p = p.value();
        row.bias_gap = Rational{p.value() - e};
        row.expectation = std::move(e);
    } else {
        const BernoulliParam<double> p(to_double(point.p));
        const double e = exact_expectation(request.method, point.n, point.k, p);
        row.p = p.value();
        row.expectation = e;
        row.bias_gap = p.value() - e;
    }
    return row;
}

std::string format_cell(const TableValue& v) {
    if (const auto* r = std::get_if<Rational>(&v)) return scalar::to_string(*r);
    std::string s = scalar::to_string(std::get<double>(v));
    // keep doubles distinguishable from exact integers
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

TableValue parse_cell(std::string_view cell) {
    const bool exact = !cell.empty() && cell.find_first_of(".eEn") == std::string_view::npos;
    if (exact) {
        Rational r;
        if (r.set_str(std::string(cell), 10) != 0) throw InvalidArgument("bad exact cell '" + std::string(cell) + "'");
        r.canonicalize();
        return r;
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || end != cell.data() + cell.size()) {
        throw InvalidArgument("bad numeric cell '" + std::string(cell) + "'");
    }
    return v;
}

nlohmann::json json_value(const TableValue& v) {
    if (const auto* r = std::get_if<Rational>(&v)) return scalar::to_string(*r);
    return std::get<double>(v);
}

} // namespace

std::string_view to_string(TableMethod method) {
    switch (method) {
    case TableMethod::closed_form:
        return "closed_form";
    case TableMethod::dp:
        return "dp";
    case TableMethod::enumeration:
        return "enumeration";
    case TableMethod::monte_carlo:
        return "monte_carlo";
    }
    return "unknown";
}

TableMethod parse_table_method(std::string_view text) {
    for (const auto m : {TableMethod::closed_form, TableMethod::dp, TableMethod::enumeration, TableMethod::monte_carlo}) {
        if (text == to_string(m)) return m;
    }
    throw InvalidArgument("method must be one of closed_form, dp, enumeration, monte_carlo; got '" +
                          std::string(text) + "'");
}

std::uint64_t row_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<BiasTableRow> bias_table(const BiasTableRequest& request) {
    if (request.method == TableMethod::closed_form) {
        for (const auto k : request.ks) {
            if (k != 1) throw InvalidArgument("closed_form is only available for k = 1, got k = " + std::to_string(k));
        }
    }
    if (request.mode == ArithmeticMode::rational && request.method != TableMethod::monte_carlo) {
        for (const auto& p : request.ps) {
            if (!is_exact(p)) {
                throw InvalidArgument("rational mode needs p as an a/b literal, got '" + to_string(p) + "'");
            }
        }
    }

    std::vector<GridPoint> grid;
    for (const auto n : request.ns) {
        for (const auto k : request.ks) {
            if (k < 1 || n < 2 || k > n - 1) continue;
            for (const auto& p : request.ps) grid.push_back({n, k, p});
        }
    }

    std::vector<std::optional<BiasTableRow>> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                rows[i] = compute_row(request, grid[i], i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1U, std::min<unsigned>(request.jobs, static_cast<unsigned>(grid.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }

    std::vector<BiasTableRow> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*rows[i]));
    }
    return out;
}

std::string to_csv(const std::vector<BiasTableRow>& rows) {
    std::ostringstream os;
    os << "n,k,p,expectation,bias_gap,method\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.k << ',' << format_cell(r.p) << ',' << format_cell(r.expectation) << ','
           << format_cell(r.bias_gap) << ',' << to_string(r.method) << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const std::vector<BiasTableRow>& rows) {
    nlohmann::json out_rows = nlohmann::json::array();
    for (const auto& r : rows) {
        out_rows.push_back({{"n", r.n},
                            {"k", r.k},
                            {"p", json_value(r.p)},
                            {"expectation", json_value(r.expectation)},
                            {"bias_gap", json_value(r.bias_gap)},
                            {"method", to_string(r.method)}});
    }
    return {{"columns", {"n", "k", "p", "expectation", "bias_gap", "method"}}, {"rows", std::move(out_rows)}};
}

std::vector<BiasTableRow> parse_csv(std::string_view text) {
    std::vector<BiasTableRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "n,k,p,expectation,bias_gap,method") {
        throw InvalidArgument("bias table CSV must start with the header n,k,p,expectation,bias_gap,method");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
        if (cells.size() != 6) throw InvalidArgument("bias table CSV row needs 6 cells: " + line);
        BiasTableRow row;
        row.n = std::stoull(cells[0]);
        row.k = std::stoull(cells[1]);
        row.p = parse_cell(cells[2]);
        row.expectation = parse_cell(cells[3]);
        row.bias_gap = parse_cell(cells[4]);
        row.method = parse_table_method(cells[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace hothand
