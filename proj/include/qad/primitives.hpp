#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qad/fixed_point.hpp"
#include "qad/register_machine.hpp"

namespace qad {

struct Primitive {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<bool(double)> domain;
    long gate_cost;
};

/// The catalogue: exp, log, sqrt, sin, cos, tan, asin, atan, reciprocal, minus.
const Primitive& primitive(const std::string& name);
bool is_primitive(const std::string& name);
std::vector<std::string> primitive_names();

/// Override gate costs, e.g. from a JSON config {"log": 42, "times": 2}.
void set_gate_cost(const std::string& name, long cost);
void load_gate_costs(const nlohmann::json& config);
long arithmetic_gate_cost(const std::string& op_name);  // plus, minus, times, reciprocal

// The three-register |v> (x) |0> (x) |d> state inside a RegisterMachine.
struct ValderState {
    RegisterId val_reg, zero_reg, der_reg;
    FixedPointFormat format;
};

/// Allocates a fresh valder state holding (encode(v), 0, encode(d)).
ValderState make_valder(RegisterMachine& m, double v, double d, FixedPointFormat fmt);

double valder_value(const RegisterMachine& m, const ValderState& s);
double valder_deriv(const RegisterMachine& m, const ValderState& s);

/// Three-register map |a>|b>|c> -> |f(a)>|f'(b)>|c*f'(b)>, each output
/// truncated to the state's format. Expects zero_reg to hold the Transfer
/// copy of val_reg. Two PRIM_BLOCK events: the f(x)f' multigate, then the
/// product operator.
void ad_apply(const Primitive& p, ValderState& s, RegisterMachine& m);

ValderState ad_plus(const ValderState& s1, const ValderState& s2, RegisterMachine& m);
ValderState ad_minus(const ValderState& s, RegisterMachine& m);
ValderState ad_times(const ValderState& s1, const ValderState& s2, RegisterMachine& m);
ValderState ad_reciprocal(const ValderState& s, RegisterMachine& m);

}  // namespace qad
