#include "qad/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qad {

namespace {

constexpr long kArithCost = 1;
constexpr long kTranscendentalCost = 10;

std::map<std::string, Primitive> make_catalogue() {
    auto always = [](double) { return true; };
    std::map<std::string, Primitive> t;
    t["exp"] = {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
                always, kTranscendentalCost};
    t["log"] = {"log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
                [](double x) { return x > 0.0; }, kTranscendentalCost};
    t["sqrt"] = {"sqrt", [](double x) { return std::sqrt(x); },
                 [](double x) { return 0.5 / std::sqrt(x); }, [](double x) { return x > 0.0; },
                 kTranscendentalCost};
    t["sin"] = {"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
                always, kTranscendentalCost};
    t["cos"] = {"cos", [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
                always, kTranscendentalCost};
    t["tan"] = {"tan", [](double x) { return std::tan(x); },
                [](double x) { double c = std::cos(x); return 1.0 / (c * c); },
                [](double x) { return std::cos(x) != 0.0; }, kTranscendentalCost};
    t["asin"] = {"asin", [](double x) { return std::asin(x); },
                 [](double x) { return 1.0 / std::sqrt(1.0 - x * x); },
                 [](double x) { return x > -1.0 && x < 1.0; }, kTranscendentalCost};
    t["atan"] = {"atan", [](double x) { return std::atan(x); },
                 [](double x) { return 1.0 / (1.0 + x * x); }, always, kTranscendentalCost};
    t["reciprocal"] = {"reciprocal", [](double x) { return 1.0 / x; },
                       [](double x) { return -1.0 / (x * x); },
                       [](double x) { return x != 0.0; }, kArithCost};
    t["minus"] = {"minus", [](double x) { return -x; }, [](double) { return -1.0; }, always,
                  kArithCost};
    return t;
}

std::map<std::string, Primitive>& catalogue() {
    static std::map<std::string, Primitive> t = make_catalogue();
    return t;
}

std::map<std::string, long>& arith_costs() {
    static std::map<std::string, long> c = {{"plus", kArithCost}, {"times", kArithCost}};
    return c;
}

std::string raw_bits(const FixedPointValue& v) {
    std::string s = v.to_bit_string();
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    return s;
}

}  // namespace

const Primitive& primitive(const std::string& name) {
    auto it = catalogue().find(name);
    if (it == catalogue().end()) throw Error("unknown primitive: " + name);
    return it->second;
}

bool is_primitive(const std::string& name) { return catalogue().count(name) > 0; }

std::vector<std::string> primitive_names() {
    std::vector<std::string> names;
    for (const auto& [name, p] : catalogue()) names.push_back(name);
    return names;
}

void set_gate_cost(const std::string& name, long cost) {
    if (cost <= 0) throw Error("gate cost must be positive");
    if (auto it = catalogue().find(name); it != catalogue().end()) {
        it->second.gate_cost = cost;
        return;
    }
    if (auto it = arith_costs().find(name); it != arith_costs().end()) {
        it->second = cost;
        return;
    }
    throw Error("unknown primitive or operation: " + name);
}

void load_gate_costs(const nlohmann::json& config) {
    for (auto it = config.begin(); it != config.end(); ++it)
        set_gate_cost(it.key(), it.value().get<long>());
}

long arithmetic_gate_cost(const std::string& op_name) {
    if (auto it = arith_costs().find(op_name); it != arith_costs().end()) return it->second;
    if (op_name == "minus" || op_name == "reciprocal") return primitive(op_name).gate_cost;
    throw Error("unknown arithmetic operation: " + op_name);
}

ValderState make_valder(RegisterMachine& m, double v, double d, FixedPointFormat fmt) {
    ValderState s;
    s.format = fmt;
    s.val_reg = m.alloc_register(encode(v, fmt));
    s.zero_reg = m.alloc_register(fmt.total_bits(), std::string(fmt.total_bits(), '0'));
    s.der_reg = m.alloc_register(encode(d, fmt));
    return s;
}

double valder_value(const RegisterMachine& m, const ValderState& s) {
    return decode(m.value(s.val_reg, s.format));
}

double valder_deriv(const RegisterMachine& m, const ValderState& s) {
    return decode(m.value(s.der_reg, s.format));
}

void ad_apply(const Primitive& p, ValderState& s, RegisterMachine& m) {
    const FixedPointFormat fmt = s.format;
    const double a = decode(m.value(s.val_reg, fmt));
    const double b = decode(m.value(s.zero_reg, fmt));
    if (!p.domain(a))
        throw DomainError("argument " + std::to_string(a) + " outside domain of " + p.name);
    if (!p.domain(b))
        throw DomainError("argument " + std::to_string(b) + " outside domain of " + p.name);

    // The f(x)f' multigate: f(a) into the first register, f'(b) into the second.
    const double fprime = p.deriv(b);
    m.apply_prim_block(
        p.name, {s.val_reg, s.zero_reg},
        [&](const std::vector<std::string>&) -> std::vector<std::string> {
            return {raw_bits(encode(p.eval(a), fmt)), raw_bits(encode(fprime, fmt))};
        },
        p.gate_cost);

    // Product operator: the block consumes the multigate's extended-precision
    // derivative output, so the product sees exactly one truncation.
    const double c = decode(m.value(s.der_reg, fmt));
    m.apply_prim_block(
        "times", {s.zero_reg, s.der_reg},
        [&](const std::vector<std::string>& in) -> std::vector<std::string> {
            return {in[0], raw_bits(encode(c * fprime, fmt))};
        },
        arithmetic_gate_cost("times"));
}

ValderState ad_plus(const ValderState& s1, const ValderState& s2, RegisterMachine& m) {
    const FixedPointFormat fmt = s1.format;
    if (s2.format != fmt) throw Error("ad_plus operands have different formats");
    ValderState out = make_valder(m, 0.0, 0.0, fmt);
    const double v = decode(m.value(s1.val_reg, fmt)) + decode(m.value(s2.val_reg, fmt));
    const double d = decode(m.value(s1.der_reg, fmt)) + decode(m.value(s2.der_reg, fmt));
    m.apply_prim_block(
        "plus", {s1.val_reg, s1.der_reg, s2.val_reg, s2.der_reg, out.val_reg, out.der_reg},
        [&](const std::vector<std::string>& in) -> std::vector<std::string> {
            return {in[0], in[1], in[2], in[3], raw_bits(encode(v, fmt)), raw_bits(encode(d, fmt))};
        },
        arithmetic_gate_cost("plus"));
    return out;
}

ValderState ad_minus(const ValderState& s, RegisterMachine& m) {
    const FixedPointFormat fmt = s.format;
    const double v = decode(m.value(s.val_reg, fmt));
    const double d = decode(m.value(s.der_reg, fmt));
    // Exact two's-complement negation; only -min overflows.
    m.apply_prim_block(
        "minus", {s.val_reg, s.der_reg},
        [&](const std::vector<std::string>&) -> std::vector<std::string> {
            return {raw_bits(encode(-v, fmt)), raw_bits(encode(-d, fmt))};
        },
        arithmetic_gate_cost("minus"));
    return s;
}

ValderState ad_times(const ValderState& s1, const ValderState& s2, RegisterMachine& m) {
    const FixedPointFormat fmt = s1.format;
    if (s2.format != fmt) throw Error("ad_times operands have different formats");
    const double v1 = decode(m.value(s1.val_reg, fmt));
    const double d1 = decode(m.value(s1.der_reg, fmt));
    const double v2 = decode(m.value(s2.val_reg, fmt));
    const double d2 = decode(m.value(s2.der_reg, fmt));
    ValderState out = make_valder(m, 0.0, 0.0, fmt);
    // Products accumulate at double width; one truncation per output register.
    const double v = v1 * v2;
    const double d = d1 * v2 + v1 * d2;
    m.apply_prim_block(
        "times", {s1.val_reg, s1.der_reg, s2.val_reg, s2.der_reg, out.val_reg, out.der_reg},
        [&](const std::vector<std::string>& in) -> std::vector<std::string> {
            return {in[0], in[1], in[2], in[3], raw_bits(encode(v, fmt)), raw_bits(encode(d, fmt))};
        },
        arithmetic_gate_cost("times"));
    return out;
}

ValderState ad_reciprocal(const ValderState& s, RegisterMachine& m) {
    const FixedPointFormat fmt = s.format;
    const double v = decode(m.value(s.val_reg, fmt));
    const double d = decode(m.value(s.der_reg, fmt));
    if (v == 0.0) throw DomainError("reciprocal of zero");
    m.apply_prim_block(
        "reciprocal", {s.val_reg, s.der_reg},
        [&](const std::vector<std::string>&) -> std::vector<std::string> {
            return {raw_bits(encode(1.0 / v, fmt)), raw_bits(encode(-d / (v * v), fmt))};
        },
        arithmetic_gate_cost("reciprocal"));
    return s;
}

}  // namespace qad
