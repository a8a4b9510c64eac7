#include "qad/report.hpp"

#include <cmath>
#include <sstream>

namespace qad {

RunReport run_with_analysis(const CompGraph& g, const RunConfig& cfg) {
    RunReport rep;
    rep.result = run(g, cfg);
    rep.oracle = oracle_eval(g, cfg.x0);
    rep.observed_value_error = std::abs(rep.result.value - rep.oracle.v);
    rep.observed_deriv_error = std::abs(rep.result.derivative - rep.oracle.d);
    rep.errors = error_bounds(g, cfg.x0, cfg.format);
    rep.cost = cost_estimate(g);
    return rep;
}

nlohmann::json RunReport::to_json() const {
    return {{"result", result.to_json()},
            {"oracle", {{"value", oracle.v}, {"derivative", oracle.d}}},
            {"observed_value_error", observed_value_error},
            {"observed_deriv_error", observed_deriv_error},
            {"error_analysis", errors.to_json()},
            {"cost", cost.to_json()}};
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os.precision(15);
    os << "value            " << result.value << "\n";
    os << "derivative       " << result.derivative << "\n";
    os << "oracle value     " << oracle.v << "\n";
    os << "oracle deriv     " << oracle.d << "\n";
    os << "value error      " << observed_value_error << " (bound " << errors.bound_value << ")\n";
    os << "deriv error      " << observed_deriv_error << " (bound " << errors.bound_deriv << ")\n";
    if (errors.singularity_warning)
        os << "warning          sensitivity above " << errors.sensitivity_threshold << "\n";
    os << "gates           ";
    for (const auto& [kind, count] : result.gate_counts) os << " " << kind << "=" << count;
    os << "\n";
    os << "ancilla used     " << result.ancilla_used << "\n";
    os << "cost             sum=" << cost.cost_sum << " bound=r*c_max=" << cost.r << "*"
       << cost.c_max << "=" << cost.cost_bound << "\n";
    return os.str();
}

}  // namespace qad
