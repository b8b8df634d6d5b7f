#pragma once

// Real expressions over the four chart coordinates, for metric components
// given in chart files. Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | var | func '(' expr ')' | '(' expr ')'
//   func   := sqrt | exp | log | sin | cos | sinh | cosh | abs
//
// Variables are x y z t (also x1 .. x4).

#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace axrel::genrel {

class Expr {
public:
    enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Exp, Log, Sin, Cos, Sinh, Cosh, Abs, Sign };

    Expr() : Expr(0.0) {}
    Expr(double v);  // NOLINT(google-explicit-constructor)
    static Expr var(int index);
    static Expr unary(Op op, Expr a);
    static Expr binary(Op op, Expr a, Expr b);

    /// Throws SyntaxError.
    static Expr parse(std::string_view text);

    Op op() const;
    double eval(const std::array<double, 4>& x) const;
    /// Symbolic partial derivative in coordinate `index`, lightly simplified.
    Expr derivative(int index) const;
    bool is_constant() const;
    /// Re-parseable; parse(to_string()) has the same to_string().
    std::string to_string() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

}  // namespace axrel::genrel
