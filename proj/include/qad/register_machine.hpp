#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qad/fixed_point.hpp"

namespace qad {

struct RegisterId {
    int index = -1;
    bool operator==(const RegisterId&) const = default;
};

enum class GateKind { X, CNOT, SWAP, Measure, PrimBlock };

const char* gate_kind_name(GateKind k);

struct GateEvent {
    GateKind kind;
    std::vector<std::string> operands;  // register ids ("r3") or qubit coords ("r3[1]")
    nlohmann::json detail;              // PrimBlock: {"name":..., "gate_cost":...}

    nlohmann::json to_json() const;
};

// Named qubit registers restricted to computational basis states. Bit strings
// are MSB-first; every operation is deterministic.
class RegisterMachine {
public:
    explicit RegisterMachine(long ancilla_pool = 0, bool trace_enabled = false);

    RegisterId alloc_register(int width, const std::string& init);
    RegisterId alloc_register(const FixedPointValue& v);

    /// CNOT fan-out of src onto dst. dst must be all-zeros and at least as
    /// wide as src; counts one CNOT per source qubit.
    void apply_transfer(RegisterId src, RegisterId dst);

    /// Fully quantum reset: swap every qubit with a fresh ancilla.
    void reset_swap(RegisterId target);

    /// Hybrid reset: per qubit measure into a classical bit, apply X, apply X
    /// again iff the bit read 0. Returns the measured bit-string.
    std::string reset_hybrid(RegisterId target);

    /// Opaque fixed-point block: `compute` maps the listed registers' current
    /// bit-strings to their new bit-strings. Counted as one PRIM_BLOCK with
    /// the declared gate cost.
    using BitMap = std::function<std::vector<std::string>(const std::vector<std::string>&)>;
    void apply_prim_block(const std::string& name, const std::vector<RegisterId>& regs,
                          const BitMap& compute, long gate_cost);

    // Register access
    int width(RegisterId id) const;
    const std::string& bits(RegisterId id) const;
    bool is_zero(RegisterId id) const;
    FixedPointValue value(RegisterId id, FixedPointFormat fmt) const;

    // Accounting
    long ancilla_pool() const { return ancilla_pool_; }
    long ancilla_used() const { return ancilla_used_; }
    const std::map<std::string, long>& gate_counts() const { return gate_counts_; }
    const std::map<int, std::string>& classical_bits() const { return classical_bits_; }
    const std::vector<GateEvent>& trace() const { return trace_; }
    bool trace_enabled() const { return trace_enabled_; }

    /// One GateEvent per line as JSON.
    std::string trace_jsonl() const;

private:
    struct Register {
        int width;
        std::string bits;
    };
    const Register& reg(RegisterId id) const;
    Register& reg(RegisterId id);
    void record(GateKind kind, std::vector<std::string> operands, nlohmann::json detail = {});

    std::vector<Register> registers_;
    std::map<int, std::string> classical_bits_;
    long ancilla_pool_ = 0;
    long ancilla_used_ = 0;
    std::map<std::string, long> gate_counts_;
    bool trace_enabled_ = false;
    std::vector<GateEvent> trace_;
};

}  // namespace qad
