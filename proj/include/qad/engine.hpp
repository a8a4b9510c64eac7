#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qad/graph.hpp"
#include "qad/primitives.hpp"
#include "qad/register_machine.hpp"

namespace qad {

struct RunConfig {
    double x0 = 0.0;
    FixedPointFormat format;
    ResetMode reset_mode = ResetMode::Hybrid;
    bool trace_enabled = false;
};

struct RunResult {
    double value = 0.0;
    double derivative = 0.0;
    std::map<std::string, long> gate_counts;
    long ancilla_used = 0;
    int registers_retired = 0;  // predecessor registers dropped un-reset at binary nodes

    struct NodeValue {
        int node;
        double v;
        double d;
    };
    std::vector<NodeValue> per_node;  // one entry per non-input node, topological order

    std::optional<std::string> trace_jsonl;

    nlohmann::json to_json() const;
};

/// Algorithm walk: |x0>|0>|1> in, Transfer -> AD(f) -> Reset per primitive
/// node, the valder arithmetic operators for arithmetic nodes, strict
/// topological order. Errors carry the offending node id.
RunResult run(const CompGraph& g, const RunConfig& cfg);

/// Copies a valder state onto three fresh registers via Transfer; the
/// original is left intact. 3 x width CNOTs.
ValderState fanout_valder(const ValderState& s, RegisterMachine& m);

}  // namespace qad
