#pragma once

#include <string>
#include <vector>

#include "qad/expr.hpp"
#include "qad/fixed_point.hpp"

namespace qad {

enum class ResetMode { Swap, Hybrid };

// Computational graph: one input node for x (shared by all uses), one node
// per primitive or arithmetic operation, in topological order.
struct CompGraph {
    struct Node {
        enum class Kind { Input, Const, Primitive, Arith };
        Kind kind;
        std::string op;          // Primitive: exp..atan; Arith: plus|minus|times|reciprocal
        double literal = 0.0;    // Const
        std::vector<int> preds;  // indices of predecessor nodes, all < this node
    };

    std::vector<Node> nodes;

    /// Nodes beyond the input: node count minus one.
    int r() const { return static_cast<int>(nodes.size()) - 1; }

    int primitive_node_count() const;
    std::string node_label(int k) const;  // "s_k = op(...)"
};

CompGraph build_graph(const ExprPtr& e);

struct SizingPlan {
    FixedPointFormat format;
    long ancilla_budget = 0;  // (expected resets) * total_bits in swap mode, 0 hybrid
    int register_count = 0;   // 3 * peak simultaneously-live valder states
    int expected_resets = 0;  // one per primitive node
};

SizingPlan size_plan(const CompGraph& g, FixedPointFormat fmt, ResetMode mode);

/// DOT export with s_k node labels.
std::string to_dot(const CompGraph& g);

}  // namespace qad
