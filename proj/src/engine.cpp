#include "qad/engine.hpp"



namespace qad {

namespace {

using Node = CompGraph::Node;

[[noreturn]] void rethrow_with_node(const CompGraph& g, int k) {
    const std::string where = "node " + g.node_label(k) + ": ";
    try {
        throw;
    } catch (const DomainError& e) {
        throw DomainError(where + e.what());
    } catch (const OverflowError& e) {
        throw OverflowError(where + e.what());
    } catch (const AncillaExhaustedError& e) {
        throw AncillaExhaustedError(where + e.what());
    }
}

struct Walker {
    const CompGraph& g;
    const RunConfig& cfg;
    RegisterMachine machine;
    std::vector<std::optional<ValderState>> states;
    std::vector<int> remaining_uses;
    int retired = 0;

    Walker(const CompGraph& graph, const RunConfig& config, long ancilla_budget)
        : g(graph), cfg(config), machine(ancilla_budget, config.trace_enabled) {
        states.resize(g.nodes.size());
        remaining_uses.assign(g.nodes.size(), 0);
        for (const Node& n : g.nodes)
            for (int p : n.preds) remaining_uses[p]++;
    }

    // Hands a consumable valder state for predecessor p: a Transfer copy while
    // other consumers remain, the original (retiring its slot) on last use.
    ValderState consume(int p) {
        ValderState& s = *states[p];
        if (--remaining_uses[p] > 0) return fanout_valder(s, machine);
        ValderState taken = s;
        states[p].reset();
        return taken;
    }

    void retire(const ValderState&) { retired += 3; }  // dropped without reset

    void reset_zero(ValderState& s) {
        if (cfg.reset_mode == ResetMode::Swap)
            machine.reset_swap(s.zero_reg);
        else
            machine.reset_hybrid(s.zero_reg);
    }

    void step(int k) {
        const Node& n = g.nodes[k];
        switch (n.kind) {
            case Node::Kind::Input: {
                ValderState s = make_valder(machine, cfg.x0, 1.0, cfg.format);
                // The initial derivative register must hold 1 exactly.
                if (valder_deriv(machine, s) != 1.0)
                    throw OverflowError("format cannot represent the initial derivative 1");
                states[k] = s;
                break;
            }
            case Node::Kind::Const:
                states[k] = make_valder(machine, n.literal, 0.0, cfg.format);
                break;
            case Node::Kind::Primitive: {
                // Block B: Transfer, AD(f), Reset.
                ValderState s = consume(n.preds[0]);
                machine.apply_transfer(s.val_reg, s.zero_reg);
                ad_apply(primitive(n.op), s, machine);
                reset_zero(s);
                states[k] = s;
                break;
            }
            case Node::Kind::Arith: {
                if (n.op == "minus") {
                    ValderState s = consume(n.preds[0]);
                    states[k] = ad_minus(s, machine);
                } else if (n.op == "reciprocal") {
                    ValderState s = consume(n.preds[0]);
                    states[k] = ad_reciprocal(s, machine);
                } else {
                    ValderState a = consume(n.preds[0]);
                    ValderState b = consume(n.preds[1]);
                    states[k] =
                        n.op == "plus" ? ad_plus(a, b, machine) : ad_times(a, b, machine);
                    retire(a);
                    retire(b);
                }
                break;
            }
        }
    }
};

}  // namespace

ValderState fanout_valder(const ValderState& s, RegisterMachine& m) {
    const int n = s.format.total_bits();
    ValderState copy;
    copy.format = s.format;
    copy.val_reg = m.alloc_register(n, std::string(n, '0'));
    copy.zero_reg = m.alloc_register(n, std::string(n, '0'));
    copy.der_reg = m.alloc_register(n, std::string(n, '0'));
    m.apply_transfer(s.val_reg, copy.val_reg);
    m.apply_transfer(s.zero_reg, copy.zero_reg);
    m.apply_transfer(s.der_reg, copy.der_reg);
    return copy;
}

RunResult run(const CompGraph& g, const RunConfig& cfg) {
    const SizingPlan plan = size_plan(g, cfg.format, cfg.reset_mode);
    Walker w(g, cfg, plan.ancilla_budget);

    RunResult res;
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) {
        try {
            w.step(k);
        } catch (const Error&) {
            rethrow_with_node(g, k);
        }
        if (g.nodes[k].kind != Node::Kind::Input) {
            // Decode before any later node consumes this state's registers.
            const ValderState& s = *w.states[k];
            res.per_node.push_back(
                {k, valder_value(w.machine, s), valder_deriv(w.machine, s)});
        }
    }

    const ValderState& final_state = *w.states.back();
    res.value = valder_value(w.machine, final_state);
    res.derivative = valder_deriv(w.machine, final_state);
    res.gate_counts = w.machine.gate_counts();
    res.ancilla_used = w.machine.ancilla_used();
    res.registers_retired = w.retired;
    if (cfg.trace_enabled) res.trace_jsonl = w.machine.trace_jsonl();
    return res;
}

nlohmann::json RunResult::to_json() const {
    nlohmann::json per;
    for (const NodeValue& nv : per_node)
        per.push_back({{"node", nv.node}, {"v", nv.v}, {"d", nv.d}});
    if (per.is_null()) per = nlohmann::json::array();
    return {{"value", value},
            {"derivative", derivative},
            {"gate_counts", gate_counts},
            {"ancilla_used", ancilla_used},
            {"registers_retired", registers_retired},
            {"per_node", per}};
}

}  // namespace qad
