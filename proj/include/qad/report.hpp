#pragma once

#include <string>

#include <json.hpp>

#include "qad/analysis.hpp"
#include "qad/engine.hpp"

namespace qad {

// One full run: simulation result, classical oracle, observed errors, error
// bounds and cost estimate, assembled for output.
struct RunReport {
    RunResult result;
    DualNumber oracle;
    double observed_value_error = 0.0;
    double observed_deriv_error = 0.0;
    ErrorReport errors;
    CostReport cost;

    nlohmann::json to_json() const;  // {"result":..., "error_analysis":..., ...}
    std::string to_text() const;
};

RunReport run_with_analysis(const CompGraph& g, const RunConfig& cfg);

}  // namespace qad
