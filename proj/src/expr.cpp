#include "qad/expr.hpp"

#include <cctype>
#include <cstdio>
#include <set>

namespace qad {

ExprPtr Expr::var() {
    Expr e;
    e.kind = Kind::Var;
    return std::make_shared<Expr>(std::move(e));
}

ExprPtr Expr::lit(double v) {
    Expr e;
    e.kind = Kind::Literal;
    e.literal = v;
    return std::make_shared<Expr>(std::move(e));
}

ExprPtr Expr::unary(std::string op, ExprPtr a) {
    Expr e;
    e.kind = Kind::Unary;
    e.op = std::move(op);
    e.args = {std::move(a)};
    return std::make_shared<Expr>(std::move(e));
}

ExprPtr Expr::binary(std::string op, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Kind::Binary;
    e.op = std::move(op);
    e.args = {std::move(a), std::move(b)};
    return std::make_shared<Expr>(std::move(e));
}

namespace {

const std::set<std::string> kFunctions = {"exp",  "log",  "sqrt", "sin",        "cos", "tan",
                                          "asin", "atan", "neg",  "reciprocal", "arcsin",
                                          "arctan"};

std::string canonical_fn(const std::string& name) {
    if (name == "arcsin") return "asin";
    if (name == "arctan") return "atan";
    return name;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ExprPtr parse_all() {
        ExprPtr e = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": expected " +
                             expected,
                         pos_, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    // expression := term (('+'|'-') term)*
    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            if (accept('+')) {
                e = Expr::binary("plus", e, term());
            } else if (accept('-')) {
                e = Expr::binary("plus", e, Expr::unary("neg", term()));
            } else {
                return e;
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (peek('*')) {
                std::size_t save = pos_;
                ++pos_;
                if (peek('*')) {
                    pos_ = save;
                    fail("a single '*' (no power operator; write x*x)");
                }
                e = Expr::binary("times", e, factor());
            } else if (accept('/')) {
                e = Expr::binary("times", e, Expr::unary("reciprocal", factor()));
            } else {
                return e;
            }
        }
    }

    // factor := '-' factor | primary; unary minus binds tighter than binary ops
    ExprPtr factor() {
        if (accept('-')) return Expr::unary("neg", factor());
        return primary();
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("a number, 'x', a function call, or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string ident;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ident.push_back(text_[pos_++]);
            if (ident == "x") return Expr::var();
            if (kFunctions.count(ident)) {
                expect('(');
                ExprPtr arg = expression();
                expect(')');
                return Expr::unary(canonical_fn(ident), arg);
            }
            pos_ -= ident.size();
            fail("'x' or a known function name, got '" + ident + "'");
        }
        if (c == '^') fail("no power operator (write x*x)");
        fail("a number, 'x', a function call, or '('");
    }

    ExprPtr number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;  // 'e' was not an exponent
            }
        }
        if (pos_ == start) fail("a number");
        return Expr::lit(std::stod(text_.substr(start, pos_ - start)));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

std::string print_literal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

std::string print(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Var: return "x";
        case Expr::Kind::Literal: return print_literal(e->literal);
        case Expr::Kind::Unary:
            if (e->op == "neg") return "-(" + print(e->args[0]) + ")";
            return e->op + "(" + print(e->args[0]) + ")";
        case Expr::Kind::Binary: {
            const char* sym = e->op == "plus" ? " + " : " * ";
            return "(" + print(e->args[0]) + sym + print(e->args[1]) + ")";
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace qad
