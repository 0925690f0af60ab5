#include "hothand/json_export.hpp"

namespace hothand {

nlohmann::json to_json(const JointCountDistribution<Rational>& dist) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, prob] : dist.pmf) {
        entries.push_back({{"N", key.numerator},
                           {"D", key.denominator},
                           {"prob_num", prob.get_num().get_str()},
                           {"prob_den", prob.get_den().get_str()}});
    }
    return {{"n", dist.n},
            {"k", dist.k},
            {"p", scalar::to_string(dist.p.value())},
            {"mode", to_string(ArithmeticMode::rational)},
            {"entries", std::move(entries)}};
}

nlohmann::json to_json(const JointCountDistribution<double>& dist) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, prob] : dist.pmf) {
        entries.push_back({{"N", key.numerator}, {"D", key.denominator}, {"prob_float", prob}});
    }
    return {{"n", dist.n},
            {"k", dist.k},
            {"p", dist.p.value()},
            {"mode", to_string(ArithmeticMode::floating)},
            {"entries", std::move(entries)}};
}

nlohmann::json to_json(const SimulationResult& result) {
    const auto& c = result.config;
    return {{"config",
             {{"n", c.n},
              {"k", c.k},
              {"p", c.p},
              {"samples", c.samples},
              {"seed", c.seed},
              {"max_attempt_factor", c.max_attempt_factor},
              {"shards", c.shards}}},
            {"estimate", result.estimate},
            {"stderr", result.std_error},
            {"accepted", result.accepted},
            {"rejected", result.rejected},
            {"empirical_p_d_zero", result.empirical_p_d_zero},
            {"generator_name", generator_name}};
}

} // namespace hothand
