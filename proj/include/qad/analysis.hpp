#pragma once

#include <vector>

#include <json.hpp>

#include "qad/fixed_point.hpp"
#include "qad/graph.hpp"

namespace qad {

struct DualNumber {
    double v = 0.0;
    double d = 0.0;
};

/// Exact (double-precision) forward-mode sweep; no fixed-point truncation.
DualNumber oracle_eval(const CompGraph& g, double x0);

/// Per-node (value, derivative) of the exact sweep, one entry per node.
std::vector<DualNumber> oracle_eval_trace(const CompGraph& g, double x0);

/// Classical twin of the register pipeline: the same recurrence with
/// truncate_to applied to every node output. Bit-exact reference for the
/// engine.
DualNumber oracle_fixed(const CompGraph& g, double x0, FixedPointFormat fmt);

std::vector<DualNumber> oracle_fixed_trace(const CompGraph& g, double x0, FixedPointFormat fmt);

// First-order truncation-error bounds: per-node eps/delta assignments, the
// sensitivities of the final value (F) and derivative (G) to them, and the
// assembled upper bounds.
struct ErrorReport {
    std::vector<double> eps;          // per node, eps[0] = input encoding residual
    std::vector<double> delta;        // per node, delta[0] = 0 (initial derivative is exact)
    std::vector<double> f_sens;       // |dF/d eps_k| at zero perturbation
    std::vector<double> g_sens_eps;   // |dG/d eps_k|
    std::vector<double> g_sens_delta; // |dG/d delta_k|
    double bound_value = 0.0;
    double bound_deriv = 0.0;
    bool singularity_warning = false;
    double sensitivity_threshold = 0.0;

    nlohmann::json to_json() const;
};

ErrorReport error_bounds(const CompGraph& g, double x0, FixedPointFormat fmt,
                         double sensitivity_threshold = 1e3);

/// The bound on one reciprocal-circuit truncation: (2 + log2 b) / 2^b.
double reciprocal_truncation_bound(int frac_bits);

struct CostReport {
    long cost_sum = 0;    // sum of per-node gate costs
    long cost_bound = 0;  // r * c_max, the uniform bound
    int r = 0;
    long c_max = 0;

    nlohmann::json to_json() const;
};

CostReport cost_estimate(const CompGraph& g);

}  // namespace qad
