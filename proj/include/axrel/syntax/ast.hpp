#pragma once

// Abstract syntax of the two-sorted language {B, IB, Ph, Q, +, *, <, W}.
//
// Terms and formulas are immutable trees shared through shared_ptr. Besides
// the primitive symbols the AST carries definitional sugar that
// expand_definitions removes: the predicates Ob and IOb, the constants 0 and 1,
// numerals n >= 2, subtraction, unary minus and squaring.

#include "axrel/errors.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace axrel::syntax {

enum class Sort { Body, Quantity };

const char* sort_name(Sort s);

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
    enum class Kind { Var, Zero, One, Numeral, Add, Mul, Sub, Neg, Square };

    Kind kind = Kind::Var;
    std::string name;          // Var
    Sort sort = Sort::Quantity;  // Var; every other kind is quantity-sorted
    unsigned long numeral = 0;  // Numeral
    TermPtr lhs;               // Add, Mul, Sub, Neg, Square
    TermPtr rhs;               // Add, Mul, Sub
    SourcePos pos;

    Sort term_sort() const { return kind == Kind::Var ? sort : Sort::Quantity; }
    bool is_primitive_kind() const {
        return kind == Kind::Var || kind == Kind::Add || kind == Kind::Mul;
    }
};

struct Formula {
    enum class Kind {
        IB, Ph, Ob, IOb,  // unary body predicates
        W,                // worldview relation, 6-ary, sort profile B B Q Q Q Q
        Eq, Lt,           // equality (either sort) and order (quantities)
        Not, And, Or, Implies, Iff,
        Forall, Exists
    };

    Kind kind = Kind::Eq;
    std::vector<TermPtr> args;  // atoms
    FormulaPtr lhs;             // Not, binary connectives, quantifier body
    FormulaPtr rhs;             // binary connectives
    std::string var;            // quantifiers
    Sort var_sort = Sort::Quantity;
    SourcePos pos;

    bool is_atom() const { return kind <= Kind::Lt; }
    bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
    bool is_binary() const {
        return kind == Kind::And || kind == Kind::Or || kind == Kind::Implies || kind == Kind::Iff;
    }
};

// Term builders
TermPtr var(std::string name, Sort sort = Sort::Quantity);
TermPtr zero();
TermPtr one();
TermPtr numeral(unsigned long n);
TermPtr add(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);
TermPtr neg(TermPtr a);
TermPtr square(TermPtr a);

// Formula builders
FormulaPtr pred(Formula::Kind k, TermPtr body);
FormulaPtr ib(TermPtr b);
FormulaPtr ph(TermPtr b);
FormulaPtr ob(TermPtr b);
FormulaPtr iob(TermPtr b);
FormulaPtr w(TermPtr o, TermPtr b, TermPtr x1, TermPtr x2, TermPtr x3, TermPtr x4);
FormulaPtr w(TermPtr o, TermPtr b, const std::vector<TermPtr>& coords);
FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr lt(TermPtr a, TermPtr b);
FormulaPtr le(TermPtr a, TermPtr b);  // a < b | a = b
FormulaPtr lnot(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(std::string v, Sort s, FormulaPtr body);
FormulaPtr exists(std::string v, Sort s, FormulaPtr body);
FormulaPtr land_all(const std::vector<FormulaPtr>& parts);

struct FreeVar {
    std::string name;
    Sort sort;
    friend auto operator<=>(const FreeVar&, const FreeVar&) = default;
};

/// Free variables in first-occurrence order.
std::vector<FreeVar> free_vars(const FormulaPtr& f);
std::vector<FreeVar> free_vars(const TermPtr& t);
bool is_sentence(const FormulaPtr& f);
/// Every variable name occurring in f, bound or free.
std::set<std::string> all_names(const FormulaPtr& f);
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

/// Structural equality modulo renaming of bound variables; free variables
/// compare by name and sort.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
bool alpha_equal(const TermPtr& a, const TermPtr& b);

/// Capture-avoiding substitution of a term for a free variable.
FormulaPtr substitute(const FormulaPtr& f, const std::string& name, const TermPtr& t);
TermPtr substitute(const TermPtr& in, const std::string& name, const TermPtr& t);

/// Well-sortedness check; throws SortError at the first violation.
void check_sorts(const FormulaPtr& f);

/// Number of nodes, for budget heuristics and tests.
std::size_t formula_size(const FormulaPtr& f);

}  // namespace axrel::syntax
