#pragma once

#include <json.hpp>

#include <cmath>
#include <string>

#include "gausscircle/claims.hpp"

namespace gausscircle::testing {

inline const nlohmann::json& goldens() {
    static const nlohmann::json g = claims::load_goldens(GAUSSCIRCLE_TEST_GOLDENS);
    return g;
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

}  // namespace gausscircle::testing
