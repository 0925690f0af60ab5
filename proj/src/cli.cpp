#include "hothand/cli.hpp"

#include "hothand/closed_form.hpp"
#include "hothand/errors.hpp"
#include "hothand/json_export.hpp"
#include "hothand/sequence.hpp"
#include "hothand/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace hothand::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to `path`, or to `out` when the path is "-".
void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
    if (!path || *path == "-") {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write '" + *path + "'");
    file << text;
}

ArithmeticMode resolve_mode(const std::optional<ArithmeticMode>& requested, const ProbabilityLiteral& p) {
    const ArithmeticMode mode = requested.value_or(is_exact(p) ? ArithmeticMode::rational : ArithmeticMode::floating);
    if (mode == ArithmeticMode::rational && !is_exact(p)) {
        throw InvalidArgument("rational mode needs p as an a/b literal, got '" + to_string(p) + "'");
    }
    return mode;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const PartialResult& e) {
        err << "error: " << e.what() << " (accepted=" << e.accepted() << ", rejected=" << e.rejected() << ")\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return usage_error;
}

template <Scalar S>
int run_exact(const ExactOptions& o, const BernoulliParam<S>& p, ArithmeticMode mode, std::ostream& out) {
    const auto dist = dp_joint(o.n, o.k, p);
    const S expectation = conditional_expectation(dist).value;
    const S p_zero = prob_denominator_zero(dist);

    std::optional<bool> oracle_agrees;
    if (o.oracle) oracle_agrees = enumerate_joint(o.n, o.k, p) == dist;

    if (o.json) {
        nlohmann::json j{{"n", o.n},
                         {"k", o.k},
                         {"p", scalar::to_string(p.value())},
                         {"mode", to_string(mode)},
                         {"expectation", scalar::to_string(expectation)},
                         {"p_d_zero", scalar::to_string(p_zero)}};
        if (oracle_agrees) j["oracle_agrees"] = *oracle_agrees;
        out << j.dump(2) << '\n';
    } else {
        out << "E=" << scalar::to_string(expectation) << " P(D=0)=" << scalar::to_string(p_zero) << '\n';
        if (oracle_agrees) {
            out << (*oracle_agrees ? "oracle: enumeration agrees\n" : "oracle: enumeration DISAGREES\n");
        }
    }
    if (o.dump) emit(o.dump, to_json(dist).dump(2) + "\n", out);
    return oracle_agrees.value_or(true) ? ok : usage_error;
}

template <Scalar S>
int run_closed_form(std::size_t n, const BernoulliParam<S>& p, bool json, std::ostream& out) {
    const S e = expected_hot_hand_k1(n, p).value;
    const S gap = p.value() - e;
    const bool extension = n == 2;
    if (json) {
        nlohmann::json j{{"n", n},
                         {"p", scalar::to_string(p.value())},
                         {"expectation", scalar::to_string(e)},
                         {"bias_gap", scalar::to_string(gap)}};
        if (extension) j["note"] = "n=2 extension: the expectation reduces to p";
        out << j.dump(2) << '\n';
    } else {
        out << "E=" << scalar::to_string(e) << " bias=" << scalar::to_string(gap) << '\n';
        if (extension) out << "note: n=2 extension: the expectation reduces to p\n";
    }
    return ok;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto at = text.find(sep, start);
        parts.push_back(trim(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return parts;
}

std::size_t parse_count(std::string_view s) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
        throw InvalidArgument("expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

std::vector<std::size_t> parse_size_range(std::string_view text) {
    text = trim(text);
    std::vector<std::size_t> out;
    if (text.empty()) return out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = parse_count(trim(text.substr(0, dots)));
        const auto hi = parse_count(trim(text.substr(dots + 2)));
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    for (const auto part : split(text, ',')) out.push_back(parse_count(part));
    return out;
}

std::vector<ProbabilityLiteral> parse_probability_grid(std::string_view text) {
    text = trim(text);
    std::vector<ProbabilityLiteral> out;
    if (text.empty()) return out;
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        for (const auto part : split(text, ',')) out.push_back(parse_probability(part));
        return out;
    }
    if (parts.size() != 3) throw InvalidArgument("probability range must be lo:hi:step, got '" + std::string(text) + "'");
    const auto lo = parse_probability(parts[0]);
    const auto hi = parse_probability(parts[1]);
    const auto step = parse_probability(parts[2]);
    if (to_double(step) <= 0.0) throw InvalidArgument("probability range step must be positive");
    if (is_exact(lo) && is_exact(hi) && is_exact(step)) {
        const auto& l = std::get<Rational>(lo);
        const auto& h = std::get<Rational>(hi);
        const auto& s = std::get<Rational>(step);
        for (Rational v = l; v <= h; v += s) out.emplace_back(v);
        return out;
    }
    const double l = to_double(lo), h = to_double(hi), s = to_double(step);
    const double slack = 1e-9 * s;
    for (std::size_t i = 0;; ++i) {
        const double v = l + static_cast<double>(i) * s;
        if (v > h + slack) break;
        out.emplace_back(v);
    }
    return out;
}

int cmd_stat(const std::string& path, std::size_t k, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto seq = parse_sequence(read_file(path));
        const auto counts = count_streak_terms(seq, k);
        const auto value = hot_hand_statistic(seq, k);
        out << "N=" << counts.numerator << " D=" << counts.denominator << ' ';
        if (!value.is_defined()) {
            out << value.to_string() << '\n';
            return static_cast<int>(undefined_result);
        }
        out << "P=" << value.to_string() << '\n';
        return static_cast<int>(ok);
    });
}

int cmd_closed_form(std::size_t n, const std::string& p_text, bool json, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto literal = parse_probability(p_text);
        if (const auto* r = std::get_if<Rational>(&literal)) return run_closed_form(n, BernoulliParam(*r), json, out);
        return run_closed_form(n, BernoulliParam(std::get<double>(literal)), json, out);
    });
}

int cmd_exact(const ExactOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto literal = parse_probability(options.p);
        const auto mode = resolve_mode(options.mode, literal);
        if (options.oracle && options.n > max_enumeration_length) {
            throw ResourceLimit("--oracle enumerates 2^n sequences and is limited to n <= " +
                                std::to_string(max_enumeration_length));
        }
        if (mode == ArithmeticMode::rational) {
            return run_exact(options, BernoulliParam(std::get<Rational>(literal)), mode, out);
        }
        return run_exact(options, BernoulliParam(to_double(literal)), mode, out);
    });
}

int cmd_mc(const SimulationConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        out << to_json(simulate(config)).dump(2) << '\n';
        return static_cast<int>(ok);
    });
}

int cmd_bias_table(const BiasTableOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        BiasTableRequest request;
        request.ns = parse_size_range(options.n_range);
        request.ks = parse_size_range(options.k_range);
        request.ps = parse_probability_grid(options.p_grid);
        request.method = parse_table_method(options.method);
        request.samples = options.samples;
        request.seed = options.seed;
        request.jobs = options.jobs;
        const bool all_exact = std::all_of(request.ps.begin(), request.ps.end(),
                                           [](const ProbabilityLiteral& p) { return is_exact(p); });
        request.mode = options.mode.value_or(all_exact && request.method != TableMethod::monte_carlo
                                                 ? ArithmeticMode::rational
                                                 : ArithmeticMode::floating);
        if (options.format != "csv" && options.format != "json") {
            throw InvalidArgument("format must be csv or json, got '" + options.format + "'");
        }
        const auto rows = bias_table(request);
        emit(options.output, options.format == "csv" ? to_csv(rows) : to_json(rows).dump(2) + "\n", out);
        return static_cast<int>(ok);
    });
}

int cmd_verify(std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        bool all = true;
        for (const auto& c : run_verification_battery()) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name;
            if (!c.passed) out << ": " << c.detail;
            out << '\n';
            all = all && c.passed;
        }
        return static_cast<int>(all ? ok : usage_error);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> mode_env) {
    CLI::App app{"Hot hand statistic: streak counts, closed forms, exact distributions and simulation", "hothand"};
    app.require_subcommand(1);

    std::optional<ArithmeticMode> env_mode;
    std::string mode_text;
    const auto mode_option = [&](CLI::App* sub) {
        sub->add_option("--mode", mode_text, "Arithmetic: rational or double (default: HOTHAND_MODE, else by p literal)")
            ->check(CLI::IsMember({"rational", "double"}));
    };

    std::string stat_path;
    std::size_t stat_k = 1;
    auto* stat = app.add_subcommand("stat", "Counts N, D and the statistic for a sequence file");
    stat->add_option("file", stat_path, "File of '0'/'1' characters")->required();
    stat->add_option("-k,--k", stat_k, "Streak length");

    std::size_t cf_n = 0;
    std::string cf_p;
    bool cf_json = false;
    auto* closed = app.add_subcommand("closed-form", "k = 1 expectation and bias gap in closed form");
    closed->add_option("-n,--n", cf_n, "Sequence length (>= 2)")->required();
    closed->add_option("-p,--p", cf_p, "Success probability, a/b for exact output")->required();
    closed->add_flag("--json", cf_json, "Emit JSON");

    ExactOptions ex;
    std::string ex_dump;
    auto* exact = app.add_subcommand("exact", "Exact conditional expectation via the run-length DP");
    exact->add_option("-n,--n", ex.n, "Sequence length")->required();
    exact->add_option("-k,--k", ex.k, "Streak length");
    exact->add_option("-p,--p", ex.p, "Success probability")->required();
    mode_option(exact);
    auto* dump_opt = exact->add_option("--dump", ex_dump, "Write the joint (N, D) pmf as JSON to this path ('-' = stdout)");
    exact->add_flag("--oracle", ex.oracle, "Cross-check against brute-force enumeration (n <= 20)");
    exact->add_flag("--json", ex.json, "Emit JSON");

    SimulationConfig mc_config;
    mc_config.samples = 1000000;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate by rejection sampling");
    mc->add_option("-n,--n", mc_config.n, "Sequence length")->required();
    mc->add_option("-k,--k", mc_config.k, "Streak length");
    mc->add_option("-p,--p", mc_config.p, "Success probability in (0,1)")->required();
    mc->add_option("--samples", mc_config.samples, "Accepted draws");
    mc->add_option("--seed", mc_config.seed, "Generator seed");
    mc->add_option("--shards", mc_config.shards, "Concurrent shards (output depends on seed and shard count)");
    mc->add_option("--max-attempt-factor", mc_config.max_attempt_factor, "Attempt cap as a multiple of samples");

    BiasTableOptions bt;
    auto* table = app.add_subcommand("bias-table", "Grid of expectations and bias gaps as CSV or JSON");
    table->add_option("--n", bt.n_range, "Lengths: 5, 3..10 or 3,5,8")->required();
    table->add_option("--k", bt.k_range, "Streak lengths, same syntax");
    table->add_option("--p", bt.p_grid, "Probabilities: comma list or lo:hi:step")->required();
    table->add_option("--method", bt.method, "closed_form, dp, enumeration or monte_carlo");
    table->add_option("--format", bt.format, "csv or json");
    mode_option(table);
    table->add_option("--samples", bt.samples, "Accepted draws per row (monte_carlo)");
    table->add_option("--seed", bt.seed, "Base seed (monte_carlo)");
    table->add_option("--jobs", bt.jobs, "Rows computed concurrently");
    std::string bt_output;
    auto* output_opt = table->add_option("-o,--output", bt_output, "Write to this path instead of stdout");

    auto* verify = app.add_subcommand("verify", "Run the built-in invariant battery");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (mode_env && !mode_env->empty()) env_mode = parse_arithmetic_mode(*mode_env);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    std::optional<ArithmeticMode> mode = env_mode;
    if (!mode_text.empty()) mode = parse_arithmetic_mode(mode_text);

    if (stat->parsed()) return cmd_stat(stat_path, stat_k, out, err);
    if (closed->parsed()) return cmd_closed_form(cf_n, cf_p, cf_json, out, err);
    if (exact->parsed()) {
        ex.mode = mode;
        if (dump_opt->count() > 0) ex.dump = ex_dump;
        return cmd_exact(ex, out, err);
    }
    if (mc->parsed()) return cmd_mc(mc_config, out, err);
    if (table->parsed()) {
        bt.mode = mode;
        if (output_opt->count() > 0) bt.output = bt_output;
        return cmd_bias_table(bt, out, err);
    }
    if (verify->parsed()) return cmd_verify(out, err);
    return usage_error;
}

} // namespace hothand::cli
