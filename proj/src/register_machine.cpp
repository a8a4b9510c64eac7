#include "qad/register_machine.hpp"

#include <algorithm>
#include <sstream>

namespace qad {

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::SWAP: return "SWAP";
        case GateKind::Measure: return "MEASURE";
        case GateKind::PrimBlock: return "PRIM_BLOCK";
    }
    return "?";
}

nlohmann::json GateEvent::to_json() const {
    return {{"kind", gate_kind_name(kind)}, {"operands", operands}, {"detail", detail}};
}

RegisterMachine::RegisterMachine(long ancilla_pool, bool trace_enabled)
    : ancilla_pool_(ancilla_pool), trace_enabled_(trace_enabled) {}

const RegisterMachine::Register& RegisterMachine::reg(RegisterId id) const {
    if (id.index < 0 || id.index >= static_cast<int>(registers_.size()))
        throw Error("unknown register id r" + std::to_string(id.index));
    return registers_[id.index];
}

RegisterMachine::Register& RegisterMachine::reg(RegisterId id) {
    return const_cast<Register&>(static_cast<const RegisterMachine*>(this)->reg(id));
}

void RegisterMachine::record(GateKind kind, std::vector<std::string> operands,
                             nlohmann::json detail) {
    gate_counts_[gate_kind_name(kind)]++;
    if (trace_enabled_) trace_.push_back(GateEvent{kind, std::move(operands), std::move(detail)});
}

RegisterId RegisterMachine::alloc_register(int width, const std::string& init) {
    if (width < 1) throw Error("register width must be >= 1");
    if (static_cast<int>(init.size()) != width)
        throw Error("init bit-string length " + std::to_string(init.size()) +
                    " does not match register width " + std::to_string(width));
    if (init.find_first_not_of("01") != std::string::npos)
        throw Error("init bit-string must be binary: " + init);
    registers_.push_back(Register{width, init});
    return RegisterId{static_cast<int>(registers_.size()) - 1};
}

RegisterId RegisterMachine::alloc_register(const FixedPointValue& v) {
    std::string s = v.to_bit_string();
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    return alloc_register(v.format.total_bits(), s);
}

int RegisterMachine::width(RegisterId id) const { return reg(id).width; }

const std::string& RegisterMachine::bits(RegisterId id) const { return reg(id).bits; }

bool RegisterMachine::is_zero(RegisterId id) const {
    return reg(id).bits.find('1') == std::string::npos;
}

FixedPointValue RegisterMachine::value(RegisterId id, FixedPointFormat fmt) const {
    const Register& r = reg(id);
    if (r.width != fmt.total_bits())
        throw Error("register width " + std::to_string(r.width) + " does not match format width " +
                    std::to_string(fmt.total_bits()));
    FixedPointValue v;
    v.format = fmt;
    for (char c : r.bits) v.bits = (v.bits << 1) | (c == '1' ? 1 : 0);
    return v;
}

void RegisterMachine::apply_transfer(RegisterId src, RegisterId dst) {
    Register& s = reg(src);
    Register& d = reg(dst);
    if (d.width < s.width)
        throw WidthError("transfer target r" + std::to_string(dst.index) + " (width " +
                         std::to_string(d.width) + ") narrower than source (width " +
                         std::to_string(s.width) + ")");
    if (!is_zero(dst))
        throw ResetRequiredError("transfer target r" + std::to_string(dst.index) +
                                 " is not all-zeros: " + d.bits);
    // Low src-width qubits of dst receive the copy; dst is MSB-first.
    const int off = d.width - s.width;
    for (int i = 0; i < s.width; ++i) {
        d.bits[off + i] = s.bits[i];  // CNOT onto a 0 target
        record(GateKind::CNOT, {"r" + std::to_string(src.index) + "[" + std::to_string(i) + "]",
                                "r" + std::to_string(dst.index) + "[" + std::to_string(off + i) + "]"});
    }
}

void RegisterMachine::reset_swap(RegisterId target) {
    Register& t = reg(target);
    if (ancilla_pool_ < t.width)
        throw AncillaExhaustedError("swap-reset needs " + std::to_string(t.width) +
                                    " ancilla qubits, " + std::to_string(ancilla_pool_) +
                                    " available");
    for (int i = 0; i < t.width; ++i) {
        t.bits[i] = '0';  // swapped-out qubit is retired, not recycled
        record(GateKind::SWAP, {"r" + std::to_string(target.index) + "[" + std::to_string(i) + "]",
                                "ancilla"});
    }
    ancilla_pool_ -= t.width;
    ancilla_used_ += t.width;
}

std::string RegisterMachine::reset_hybrid(RegisterId target) {
    Register& t = reg(target);
    std::string measured = t.bits;
    for (int i = 0; i < t.width; ++i) {
        const std::string q = "r" + std::to_string(target.index) + "[" + std::to_string(i) + "]";
        // Basis state: the measurement outcome is the stored bit with certainty.
        record(GateKind::Measure, {q}, {{"result", std::string(1, t.bits[i])}});
        t.bits[i] = t.bits[i] == '1' ? '0' : '1';
        record(GateKind::X, {q});
        if (measured[i] == '0') {
            t.bits[i] = t.bits[i] == '1' ? '0' : '1';
            record(GateKind::X, {q});
        }
    }
    classical_bits_[target.index] = measured;
    return measured;
}

void RegisterMachine::apply_prim_block(const std::string& name,
                                       const std::vector<RegisterId>& regs, const BitMap& compute,
                                       long gate_cost) {
    std::vector<std::string> in;
    std::vector<std::string> operands;
    in.reserve(regs.size());
    for (RegisterId id : regs) {
        in.push_back(reg(id).bits);
        operands.push_back("r" + std::to_string(id.index));
    }
    std::vector<std::string> out = compute(in);
    if (out.size() != regs.size()) throw Error("prim block '" + name + "' output arity mismatch");
    for (std::size_t i = 0; i < regs.size(); ++i) {
        Register& r = reg(regs[i]);
        if (static_cast<int>(out[i].size()) != r.width)
            throw Error("prim block '" + name + "' output width mismatch on operand " +
                        std::to_string(i));
        r.bits = out[i];
    }
    record(GateKind::PrimBlock, std::move(operands), {{"name", name}, {"gate_cost", gate_cost}});
}

std::string RegisterMachine::trace_jsonl() const {
    std::ostringstream os;
    for (const GateEvent& e : trace_) os << e.to_json().dump() << "\n";
    return os.str();
}

}  // namespace qad
