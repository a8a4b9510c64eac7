#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qad/errors.hpp"

namespace qad {

// Single-variable expression AST, already lowered to the operator catalogue:
// binary minus becomes plus(a, neg(b)) and division becomes
// times(a, reciprocal(b)) at parse time.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Var, Literal, Unary, Binary };

    Kind kind;
    double literal = 0.0;       // Kind::Literal
    std::string op;             // Unary: neg|reciprocal|exp|log|sqrt|sin|cos|tan|asin|atan
                                // Binary: plus|times
    std::vector<ExprPtr> args;

    static ExprPtr var();
    static ExprPtr lit(double v);
    static ExprPtr unary(std::string op, ExprPtr a);
    static ExprPtr binary(std::string op, ExprPtr a, ExprPtr b);
};

/// Recursive-descent parser over the usual infix grammar. No power operator:
/// write x*x. Throws ParseError with position and expected-token set.
ExprPtr parse(const std::string& text);

/// Deterministic printer; parse(print(e)) reproduces e on canonical ASTs.
std::string print(const ExprPtr& e);

}  // namespace qad
