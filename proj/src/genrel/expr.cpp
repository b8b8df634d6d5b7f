#include "axrel/genrel/expr.hpp"

#include "axrel/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace axrel::genrel {

struct Expr::Node {
    Op op;
    double value = 0;
    int var = 0;
    std::vector<Expr> args;
};

namespace {

struct Func {
    const char* name;
    Expr::Op op;
};

constexpr Func kFuncs[] = {{"sqrt", Expr::Op::Sqrt}, {"exp", Expr::Op::Exp},   {"log", Expr::Op::Log},
                           {"sin", Expr::Op::Sin},   {"cos", Expr::Op::Cos},   {"sinh", Expr::Op::Sinh},
                           {"cosh", Expr::Op::Cosh}, {"abs", Expr::Op::Abs},   {"sign", Expr::Op::Sign}};

const char* func_name(Expr::Op op) {
    for (const auto& f : kFuncs)
        if (f.op == op) return f.name;
    return nullptr;
}

double apply(Expr::Op op, double a) {
    switch (op) {
        case Expr::Op::Neg: return -a;
        case Expr::Op::Sqrt: return std::sqrt(a);
        case Expr::Op::Exp: return std::exp(a);
        case Expr::Op::Log: return std::log(a);
        case Expr::Op::Sin: return std::sin(a);
        case Expr::Op::Cos: return std::cos(a);
        case Expr::Op::Sinh: return std::sinh(a);
        case Expr::Op::Cosh: return std::cosh(a);
        case Expr::Op::Abs: return std::abs(a);
        case Expr::Op::Sign: return a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0);
        default: return NAN;
    }
}

double apply(Expr::Op op, double a, double b) {
    switch (op) {
        case Expr::Op::Add: return a + b;
        case Expr::Op::Sub: return a - b;
        case Expr::Op::Mul: return a * b;
        case Expr::Op::Div: return a / b;
        case Expr::Op::Pow: return std::pow(a, b);
        default: return NAN;
    }
}

std::string number(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

int prec(const Expr& e) {
    switch (e.op()) {
        case Expr::Op::Add:
        case Expr::Op::Sub: return 1;
        case Expr::Op::Mul:
        case Expr::Op::Div: return 2;
        case Expr::Op::Neg: return 3;
        case Expr::Op::Pow: return 4;
        case Expr::Op::Num: return e.eval({}) < 0 ? 3 : 5;
        default: return 5;
    }
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        SourcePos p;
        p.offset = i_;
        p.column = i_ + 1;
        throw SyntaxError(p, msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (eat('+')) e = Expr::binary(Expr::Op::Add, e, term());
            else if (eat('-')) e = Expr::binary(Expr::Op::Sub, e, term());
            else return e;
        }
    }
    Expr term() {
        Expr e = unary();
        for (;;) {
            if (eat('*')) e = Expr::binary(Expr::Op::Mul, e, unary());
            else if (eat('/')) e = Expr::binary(Expr::Op::Div, e, unary());
            else return e;
        }
    }
    Expr unary() {
        if (eat('-')) return Expr::unary(Expr::Op::Neg, unary());
        return power();
    }
    Expr power() {
        Expr base = atom();
        if (eat('^')) return Expr::binary(Expr::Op::Pow, base, unary());
        return base;
    }
    Expr atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[i_];
        if (eat('(')) {
            Expr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
            if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
                std::size_t save = i_++;
                if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
                if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                } else {
                    i_ = save;
                }
            }
            double v = 0;
            auto r = std::from_chars(s_.data() + start, s_.data() + i_, v);
            if (r.ec != std::errc() || r.ptr != s_.data() + i_) {
                i_ = start;
                fail("bad number");
            }
            return Expr(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
            std::string_view w = s_.substr(start, i_ - start);
            static const char* vars[] = {"x", "y", "z", "t"};
            for (int k = 0; k < 4; ++k) {
                if (w == vars[k] || w == "x" + std::to_string(k + 1)) return Expr::var(k);
            }
            for (const auto& f : kFuncs) {
                if (w == f.name) {
                    if (!eat('(')) fail("expected '(' after " + std::string(w));
                    Expr a = expr();
                    if (!eat(')')) fail("expected ')'");
                    return Expr::unary(f.op, a);
                }
            }
            i_ = start;
            fail("unknown name '" + std::string(w) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

Expr::Expr(double v) : n_(std::make_shared<const Node>(Node{Op::Num, v, 0, {}})) {}

Expr Expr::var(int index) { return Expr(std::make_shared<const Node>(Node{Op::Var, 0, index, {}})); }

Expr Expr::unary(Op op, Expr a) {
    if (a.is_constant()) return Expr(apply(op, a.n_->value));
    if (op == Op::Neg && a.op() == Op::Neg) return a.n_->args[0];
    return Expr(std::make_shared<const Node>(Node{op, 0, 0, {std::move(a)}}));
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    if (a.is_constant() && b.is_constant()) return Expr(apply(op, a.n_->value, b.n_->value));
    auto is = [](const Expr& e, double v) { return e.is_constant() && e.n_->value == v; };
    switch (op) {
        case Op::Add:
            if (is(a, 0)) return b;
            if (is(b, 0)) return a;
            break;
        case Op::Sub:
            if (is(b, 0)) return a;
            if (is(a, 0)) return unary(Op::Neg, b);
            break;
        case Op::Mul:
            if (is(a, 0) || is(b, 0)) return Expr(0.0);
            if (is(a, 1)) return b;
            if (is(b, 1)) return a;
            break;
        case Op::Div:
            if (is(b, 1)) return a;
            if (is(a, 0)) return Expr(0.0);
            break;
        case Op::Pow:
            if (is(b, 1)) return a;
            if (is(b, 0)) return Expr(1.0);
            break;
        default: break;
    }
    return Expr(std::make_shared<const Node>(Node{op, 0, 0, {std::move(a), std::move(b)}}));
}

Expr Expr::parse(std::string_view text) { return Parser(text).run(); }

Expr::Op Expr::op() const { return n_->op; }

bool Expr::is_constant() const { return n_->op == Op::Num; }

double Expr::eval(const std::array<double, 4>& x) const {
    const Node& n = *n_;
    switch (n.op) {
        case Op::Num: return n.value;
        case Op::Var: return x[n.var];
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: return apply(n.op, n.args[0].eval(x), n.args[1].eval(x));
        default: return apply(n.op, n.args[0].eval(x));
    }
}

Expr Expr::derivative(int index) const {
    const Node& n = *n_;
    auto B = [](Op op, Expr a, Expr b) { return binary(op, std::move(a), std::move(b)); };
    auto U = [](Op op, Expr a) { return unary(op, std::move(a)); };
    if (n.op == Op::Num) return Expr(0.0);
    if (n.op == Op::Var) return Expr(n.var == index ? 1.0 : 0.0);
    const Expr& a = n.args[0];
    Expr da = a.derivative(index);
    switch (n.op) {
        case Op::Add: return B(Op::Add, da, n.args[1].derivative(index));
        case Op::Sub: return B(Op::Sub, da, n.args[1].derivative(index));
        case Op::Mul: {
            const Expr& b = n.args[1];
            return B(Op::Add, B(Op::Mul, da, b), B(Op::Mul, a, b.derivative(index)));
        }
        case Op::Div: {
            const Expr& b = n.args[1];
            return B(Op::Div, B(Op::Sub, B(Op::Mul, da, b), B(Op::Mul, a, b.derivative(index))), B(Op::Pow, b, 2.0));
        }
        case Op::Pow: {
            const Expr& b = n.args[1];
            if (b.is_constant())
                return B(Op::Mul, B(Op::Mul, b, B(Op::Pow, a, b.n_->value - 1)), da);
            Expr inner = B(Op::Add, B(Op::Mul, b.derivative(index), U(Op::Log, a)), B(Op::Div, B(Op::Mul, b, da), a));
            return B(Op::Mul, *this, inner);
        }
        case Op::Neg: return U(Op::Neg, da);
        case Op::Sqrt: return B(Op::Div, da, B(Op::Mul, 2.0, *this));
        case Op::Exp: return B(Op::Mul, *this, da);
        case Op::Log: return B(Op::Div, da, a);
        case Op::Sin: return B(Op::Mul, U(Op::Cos, a), da);
        case Op::Cos: return U(Op::Neg, B(Op::Mul, U(Op::Sin, a), da));
        case Op::Sinh: return B(Op::Mul, U(Op::Cosh, a), da);
        case Op::Cosh: return B(Op::Mul, U(Op::Sinh, a), da);
        case Op::Abs: return B(Op::Mul, U(Op::Sign, a), da);
        default: return Expr(0.0);  // sign: zero away from its jump
    }
}

std::string Expr::to_string() const {
    const Node& n = *n_;
    auto wrap = [](const Expr& e, bool paren) { return paren ? "(" + e.to_string() + ")" : e.to_string(); };
    auto sym = [](Op op) {
        switch (op) {
            case Op::Add: return " + ";
            case Op::Sub: return " - ";
            case Op::Mul: return "*";
            case Op::Div: return "/";
            default: return "^";
        }
    };
    switch (n.op) {
        case Op::Num: return number(n.value);
        case Op::Var: {
            static const char* vars[] = {"x", "y", "z", "t"};
            return vars[n.var];
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            int p = prec(*this);
            return wrap(n.args[0], prec(n.args[0]) < p) + sym(n.op) + wrap(n.args[1], prec(n.args[1]) <= p);
        }
        case Op::Pow: return wrap(n.args[0], prec(n.args[0]) < 5) + "^" + wrap(n.args[1], prec(n.args[1]) < 3);
        case Op::Neg: return "-" + wrap(n.args[0], prec(n.args[0]) < 3);
        default: return std::string(func_name(n.op)) + "(" + n.args[0].to_string() + ")";
    }
}

}  // namespace axrel::genrel
