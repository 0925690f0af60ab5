#pragma once

#include "hothand/exact_dist.hpp"
#include "hothand/monte_carlo.hpp"

#include <json.hpp>

namespace hothand {

/// {n, k, p, mode, entries: [{N, D, prob_num, prob_den}]}. Big integers are
/// written as decimal strings so no precision is lost.
nlohmann::json to_json(const JointCountDistribution<Rational>& dist);

/// {n, k, p, mode, entries: [{N, D, prob_float}]}.
nlohmann::json to_json(const JointCountDistribution<double>& dist);

/// {config, estimate, stderr, accepted, rejected, empirical_p_d_zero, generator_name}.
nlohmann::json to_json(const SimulationResult& result);

} // namespace hothand
