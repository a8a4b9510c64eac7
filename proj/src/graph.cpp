#include "qad/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace qad {

namespace {

struct Builder {
    CompGraph g;
    int input_node = -1;

    int add(CompGraph::Node n) {
        g.nodes.push_back(std::move(n));
        return static_cast<int>(g.nodes.size()) - 1;
    }

    int lower(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Var:
                return input_node;  // fan-out, not duplication
            case Expr::Kind::Literal:
                return add({CompGraph::Node::Kind::Const, "", e->literal, {}});
            case Expr::Kind::Unary: {
                int a = lower(e->args[0]);
                if (e->op == "neg")
                    return add({CompGraph::Node::Kind::Arith, "minus", 0.0, {a}});
                if (e->op == "reciprocal")
                    return add({CompGraph::Node::Kind::Arith, "reciprocal", 0.0, {a}});
                return add({CompGraph::Node::Kind::Primitive, e->op, 0.0, {a}});
            }
            case Expr::Kind::Binary: {
                int a = lower(e->args[0]);
                int b = lower(e->args[1]);
                return add({CompGraph::Node::Kind::Arith, e->op, 0.0, {a, b}});
            }
        }
        throw Error("unreachable expression kind");
    }
};

}  // namespace

int CompGraph::primitive_node_count() const {
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(),
                      [](const Node& n) { return n.kind == Node::Kind::Primitive; }));
}

std::string CompGraph::node_label(int k) const {
    const Node& n = nodes[k];
    std::ostringstream os;
    os << "s_" << k;
    switch (n.kind) {
        case Node::Kind::Input: os << " = x"; break;
        case Node::Kind::Const: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n.literal);
            os << " = " << buf;
            break;
        }
        case Node::Kind::Primitive:
        case Node::Kind::Arith: {
            os << " = " << n.op << "(";
            for (std::size_t i = 0; i < n.preds.size(); ++i)
                os << (i ? ", " : "") << "s_" << n.preds[i];
            os << ")";
            break;
        }
    }
    return os.str();
}

CompGraph build_graph(const ExprPtr& e) {
    Builder b;
    b.input_node = b.add({CompGraph::Node::Kind::Input, "", 0.0, {}});
    b.lower(e);
    return b.g;
}

SizingPlan size_plan(const CompGraph& g, FixedPointFormat fmt, ResetMode mode) {
    SizingPlan plan;
    plan.format = fmt;
    plan.expected_resets = g.primitive_node_count();
    plan.ancilla_budget =
        mode == ResetMode::Swap ? static_cast<long>(plan.expected_resets) * fmt.total_bits() : 0;

    // Liveness walk over the topological order: a node's valder registers stay
    // live until its last consumer runs.
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> uses(n, 0);
    for (const auto& node : g.nodes)
        for (int p : node.preds) uses[p]++;
    std::vector<bool> live(n, false);
    int live_count = 0, peak = 0;
    for (int k = 0; k < n; ++k) {
        live[k] = true;
        ++live_count;
        peak = std::max(peak, live_count);
        for (int p : g.nodes[k].preds) {
            if (--uses[p] == 0 && live[p]) {
                live[p] = false;
                --live_count;
            }
        }
    }
    plan.register_count = 3 * peak;
    return plan;
}

std::string to_dot(const CompGraph& g) {
    std::ostringstream os;
    os << "digraph comp_graph {\n";
    os << "  rankdir=BT;\n";
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k)
        os << "  n" << k << " [label=\"" << g.node_label(k) << "\"];\n";
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k)
        for (int p : g.nodes[k].preds) os << "  n" << p << " -> n" << k << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace qad
