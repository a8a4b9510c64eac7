#include "qad/analysis.hpp"

#include <cmath>
#include <map>

#include "qad/primitives.hpp"

namespace qad {

namespace {

using Node = CompGraph::Node;

double second_deriv(const std::string& name, double x) {
    if (name == "exp") return std::exp(x);
    if (name == "log") return -1.0 / (x * x);
    if (name == "sqrt") return -0.25 / (x * std::sqrt(x));
    if (name == "sin") return -std::sin(x);
    if (name == "cos") return -std::cos(x);
    if (name == "tan") {
        double c = std::cos(x);
        return 2.0 * std::tan(x) / (c * c);
    }
    if (name == "asin") return x / std::pow(1.0 - x * x, 1.5);
    if (name == "atan") return -2.0 * x / ((1.0 + x * x) * (1.0 + x * x));
    throw Error("no second derivative for primitive: " + name);
}

// Forward sweep shared by both oracles; `trunc` is identity for oracle_eval.
template <typename Trunc>
std::vector<DualNumber> sweep(const CompGraph& g, double x0, Trunc trunc) {
    std::vector<DualNumber> out(g.nodes.size());
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        const Node& n = g.nodes[k];
        switch (n.kind) {
            case Node::Kind::Input:
                out[k] = {trunc(x0), 1.0};
                break;
            case Node::Kind::Const:
                out[k] = {trunc(n.literal), 0.0};
                break;
            case Node::Kind::Primitive: {
                const DualNumber& in = out[n.preds[0]];
                const Primitive& p = primitive(n.op);
                if (!p.domain(in.v))
                    throw DomainError("node s_" + std::to_string(k) + " (" + n.op + "): argument " +
                                      std::to_string(in.v) + " outside domain");
                out[k] = {trunc(p.eval(in.v)), trunc(p.deriv(in.v) * in.d)};
                break;
            }
            case Node::Kind::Arith: {
                if (n.op == "plus") {
                    const DualNumber &a = out[n.preds[0]], &b = out[n.preds[1]];
                    out[k] = {trunc(a.v + b.v), trunc(a.d + b.d)};
                } else if (n.op == "times") {
                    const DualNumber &a = out[n.preds[0]], &b = out[n.preds[1]];
                    out[k] = {trunc(a.v * b.v), trunc(a.d * b.v + a.v * b.d)};
                } else if (n.op == "minus") {
                    const DualNumber& a = out[n.preds[0]];
                    out[k] = {trunc(-a.v), trunc(-a.d)};
                } else if (n.op == "reciprocal") {
                    const DualNumber& a = out[n.preds[0]];
                    if (a.v == 0.0)
                        throw DomainError("node s_" + std::to_string(k) + ": reciprocal of zero");
                    out[k] = {trunc(1.0 / a.v), trunc(-a.d / (a.v * a.v))};
                } else {
                    throw Error("unknown arithmetic op: " + n.op);
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<DualNumber> oracle_eval_trace(const CompGraph& g, double x0) {
    return sweep(g, x0, [](double x) { return x; });
}

DualNumber oracle_eval(const CompGraph& g, double x0) { return oracle_eval_trace(g, x0).back(); }

std::vector<DualNumber> oracle_fixed_trace(const CompGraph& g, double x0, FixedPointFormat fmt) {
    return sweep(g, x0, [fmt](double x) { return truncate_to(x, fmt); });
}

DualNumber oracle_fixed(const CompGraph& g, double x0, FixedPointFormat fmt) {
    return oracle_fixed_trace(g, x0, fmt).back();
}

double reciprocal_truncation_bound(int frac_bits) {
    if (frac_bits < 1) return 1.0;
    return (2.0 + std::log2(static_cast<double>(frac_bits))) * std::ldexp(1.0, -frac_bits);
}

namespace {

// Adjoint accumulation over the doubled (value, derivative) system. Seeded
// with bar_v/bar_d on the final node; on return bar_v[k] is the sensitivity
// of the seed quantity to an additive perturbation of node k's value output,
// bar_d[k] to its derivative output.
struct Adjoint {
    std::vector<double> bar_v, bar_d;
};

Adjoint reverse_sweep(const CompGraph& g, const std::vector<DualNumber>& vals, double seed_v,
                      double seed_d) {
    const int n = static_cast<int>(g.nodes.size());
    Adjoint a;
    a.bar_v.assign(n, 0.0);
    a.bar_d.assign(n, 0.0);
    a.bar_v[n - 1] = seed_v;
    a.bar_d[n - 1] = seed_d;
    for (int k = n - 1; k >= 0; --k) {
        const Node& node = g.nodes[k];
        const double bv = a.bar_v[k], bd = a.bar_d[k];
        if (node.kind == Node::Kind::Primitive) {
            const int p = node.preds[0];
            const double x = vals[p].v, dx = vals[p].d;
            const double fp = primitive(node.op).deriv(x);
            const double fpp = second_deriv(node.op, x);
            a.bar_v[p] += bv * fp + bd * fpp * dx;
            a.bar_d[p] += bd * fp;
        } else if (node.kind == Node::Kind::Arith) {
            if (node.op == "plus") {
                for (int p : node.preds) {
                    a.bar_v[p] += bv;
                    a.bar_d[p] += bd;
                }
            } else if (node.op == "minus") {
                const int p = node.preds[0];
                a.bar_v[p] -= bv;
                a.bar_d[p] -= bd;
            } else if (node.op == "times") {
                const int p = node.preds[0], q = node.preds[1];
                a.bar_v[p] += bv * vals[q].v + bd * vals[q].d;
                a.bar_d[p] += bd * vals[q].v;
                a.bar_v[q] += bv * vals[p].v + bd * vals[p].d;
                a.bar_d[q] += bd * vals[p].v;
            } else if (node.op == "reciprocal") {
                const int p = node.preds[0];
                const double x = vals[p].v, dx = vals[p].d;
                a.bar_v[p] += bv * (-1.0 / (x * x)) + bd * (2.0 * dx / (x * x * x));
                a.bar_d[p] += bd * (-1.0 / (x * x));
            }
        }
    }
    return a;
}

// Per-node truncation magnitudes. Values take one ULP except through the
// reciprocal circuit; derivatives take the reciprocal-circuit bound whenever
// the derivative formula is computed through a reciprocal. Negation is exact.
void assign_eps_delta(const CompGraph& g, double x0, FixedPointFormat fmt, std::vector<double>& eps,
                      std::vector<double>& delta) {
    const double ulp = fmt.resolution();
    const double recip = reciprocal_truncation_bound(fmt.frac_bits);
    const int n = static_cast<int>(g.nodes.size());
    eps.assign(n, 0.0);
    delta.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const Node& node = g.nodes[k];
        switch (node.kind) {
            case Node::Kind::Input:
                eps[k] = x0 - truncate_to(x0, fmt);  // actual encoding residual
                break;
            case Node::Kind::Const:
                eps[k] = node.literal - truncate_to(node.literal, fmt);
                break;
            case Node::Kind::Primitive: {
                eps[k] = ulp;
                const bool recip_deriv = node.op == "log" || node.op == "sqrt" ||
                                         node.op == "tan" || node.op == "asin" ||
                                         node.op == "atan";
                delta[k] = recip_deriv ? recip : ulp;
                break;
            }
            case Node::Kind::Arith:
                if (node.op == "minus") break;  // exact two's-complement negation
                if (node.op == "reciprocal") {
                    eps[k] = recip;
                    delta[k] = recip;
                } else {
                    eps[k] = ulp;
                    delta[k] = ulp;
                }
                break;
        }
    }
}

}  // namespace

ErrorReport error_bounds(const CompGraph& g, double x0, FixedPointFormat fmt,
                         double sensitivity_threshold) {
    const std::vector<DualNumber> vals = oracle_eval_trace(g, x0);
    const int n = static_cast<int>(g.nodes.size());

    ErrorReport rep;
    rep.sensitivity_threshold = sensitivity_threshold;
    assign_eps_delta(g, x0, fmt, rep.eps, rep.delta);

    // F: value-only adjoint. The derivative outputs never feed a value, so a
    // zero derivative seed isolates the value chain.
    Adjoint fa = reverse_sweep(g, vals, 1.0, 0.0);
    // G: derivative adjoint over the doubled system.
    Adjoint ga = reverse_sweep(g, vals, 0.0, 1.0);

    rep.f_sens.resize(n);
    rep.g_sens_eps.resize(n);
    rep.g_sens_delta.resize(n);
    for (int k = 0; k < n; ++k) {
        rep.f_sens[k] = std::abs(fa.bar_v[k]);
        rep.g_sens_eps[k] = std::abs(ga.bar_v[k]);
        rep.g_sens_delta[k] = std::abs(ga.bar_d[k]);
        rep.bound_value += rep.f_sens[k] * std::abs(rep.eps[k]);
        rep.bound_deriv += rep.g_sens_eps[k] * std::abs(rep.eps[k]) +
                           rep.g_sens_delta[k] * std::abs(rep.delta[k]);
        if (rep.f_sens[k] > sensitivity_threshold || rep.g_sens_eps[k] > sensitivity_threshold ||
            rep.g_sens_delta[k] > sensitivity_threshold)
            rep.singularity_warning = true;
    }
    return rep;
}

nlohmann::json ErrorReport::to_json() const {
    return {{"eps", eps},
            {"delta", delta},
            {"f_sens", f_sens},
            {"g_sens_eps", g_sens_eps},
            {"g_sens_delta", g_sens_delta},
            {"bound_value", bound_value},
            {"bound_deriv", bound_deriv},
            {"singularity_warning", singularity_warning},
            {"sensitivity_threshold", sensitivity_threshold}};
}

CostReport cost_estimate(const CompGraph& g) {
    CostReport rep;
    rep.r = g.r();
    for (const Node& node : g.nodes) {
        long cost = 0;
        switch (node.kind) {
            case Node::Kind::Input: continue;
            case Node::Kind::Const: cost = 1; break;  // one encode
            case Node::Kind::Primitive: cost = primitive(node.op).gate_cost; break;
            case Node::Kind::Arith: cost = arithmetic_gate_cost(node.op); break;
        }
        rep.cost_sum += cost;
        rep.c_max = std::max(rep.c_max, cost);
    }
    rep.cost_bound = static_cast<long>(rep.r) * rep.c_max;
    return rep;
}

nlohmann::json CostReport::to_json() const {
    return {{"cost_sum", cost_sum}, {"cost_bound", cost_bound}, {"r", r}, {"c_max", c_max}};
}

}  // namespace qad
