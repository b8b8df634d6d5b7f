#include "axrel/syntax/ast.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace axrel::syntax {

const char* sort_name(Sort s) { return s == Sort::Body ? "B" : "Q"; }

namespace {

TermPtr make_term(Term t) { return std::make_shared<const Term>(std::move(t)); }
FormulaPtr make_formula(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

TermPtr binary_term(Term::Kind k, TermPtr a, TermPtr b) {
    Term t;
    t.kind = k;
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return make_term(std::move(t));
}

FormulaPtr connective(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = k;
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return make_formula(std::move(f));
}

FormulaPtr atom(Formula::Kind k, std::vector<TermPtr> args) {
    Formula f;
    f.kind = k;
    f.args = std::move(args);
    return make_formula(std::move(f));
}

}  // namespace

TermPtr var(std::string name, Sort sort) {
    Term t;
    t.kind = Term::Kind::Var;
    t.name = std::move(name);
    t.sort = sort;
    return make_term(std::move(t));
}

TermPtr zero() {
    Term t;
    t.kind = Term::Kind::Zero;
    return make_term(std::move(t));
}

TermPtr one() {
    Term t;
    t.kind = Term::Kind::One;
    return make_term(std::move(t));
}

TermPtr numeral(unsigned long n) {
    if (n == 0) return zero();
    if (n == 1) return one();
    Term t;
    t.kind = Term::Kind::Numeral;
    t.numeral = n;
    return make_term(std::move(t));
}

TermPtr add(TermPtr a, TermPtr b) { return binary_term(Term::Kind::Add, std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return binary_term(Term::Kind::Mul, std::move(a), std::move(b)); }
TermPtr sub(TermPtr a, TermPtr b) { return binary_term(Term::Kind::Sub, std::move(a), std::move(b)); }
TermPtr neg(TermPtr a) { return binary_term(Term::Kind::Neg, std::move(a), nullptr); }
TermPtr square(TermPtr a) { return binary_term(Term::Kind::Square, std::move(a), nullptr); }

FormulaPtr pred(Formula::Kind k, TermPtr body) { return atom(k, {std::move(body)}); }
FormulaPtr ib(TermPtr b) { return pred(Formula::Kind::IB, std::move(b)); }
FormulaPtr ph(TermPtr b) { return pred(Formula::Kind::Ph, std::move(b)); }
FormulaPtr ob(TermPtr b) { return pred(Formula::Kind::Ob, std::move(b)); }
FormulaPtr iob(TermPtr b) { return pred(Formula::Kind::IOb, std::move(b)); }

FormulaPtr w(TermPtr o, TermPtr b, TermPtr x1, TermPtr x2, TermPtr x3, TermPtr x4) {
    return atom(Formula::Kind::W,
                {std::move(o), std::move(b), std::move(x1), std::move(x2), std::move(x3), std::move(x4)});
}

FormulaPtr w(TermPtr o, TermPtr b, const std::vector<TermPtr>& coords) {
    if (coords.size() != 4) throw Error("W needs exactly four coordinate terms");
    return w(std::move(o), std::move(b), coords[0], coords[1], coords[2], coords[3]);
}

FormulaPtr eq(TermPtr a, TermPtr b) { return atom(Formula::Kind::Eq, {std::move(a), std::move(b)}); }
FormulaPtr lt(TermPtr a, TermPtr b) { return atom(Formula::Kind::Lt, {std::move(a), std::move(b)}); }
FormulaPtr le(TermPtr a, TermPtr b) { return lor(lt(a, b), eq(a, b)); }

FormulaPtr lnot(FormulaPtr a) { return connective(Formula::Kind::Not, std::move(a), nullptr); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return connective(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return connective(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
    return connective(Formula::Kind::Implies, std::move(a), std::move(b));
}
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return connective(Formula::Kind::Iff, std::move(a), std::move(b)); }

FormulaPtr forall(std::string v, Sort s, FormulaPtr body) {
    Formula f;
    f.kind = Formula::Kind::Forall;
    f.var = std::move(v);
    f.var_sort = s;
    f.lhs = std::move(body);
    return make_formula(std::move(f));
}

FormulaPtr exists(std::string v, Sort s, FormulaPtr body) {
    Formula f;
    f.kind = Formula::Kind::Exists;
    f.var = std::move(v);
    f.var_sort = s;
    f.lhs = std::move(body);
    return make_formula(std::move(f));
}

FormulaPtr land_all(const std::vector<FormulaPtr>& parts) {
    if (parts.empty()) throw Error("empty conjunction");
    FormulaPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
    return acc;
}

// ---------------------------------------------------------------- variables

namespace {

void collect_free(const TermPtr& t, std::vector<std::string>& bound, std::vector<FreeVar>& out) {
    if (!t) return;
    if (t->kind == Term::Kind::Var) {
        if (std::find(bound.begin(), bound.end(), t->name) != bound.end()) return;
        FreeVar fv{t->name, t->sort};
        if (std::find(out.begin(), out.end(), fv) == out.end()) out.push_back(fv);
        return;
    }
    collect_free(t->lhs, bound, out);
    collect_free(t->rhs, bound, out);
}

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound, std::vector<FreeVar>& out) {
    if (!f) return;
    if (f->is_atom()) {
        for (const auto& a : f->args) collect_free(a, bound, out);
        return;
    }
    if (f->is_quantifier()) {
        bound.push_back(f->var);
        collect_free(f->lhs, bound, out);
        bound.pop_back();
        return;
    }
    collect_free(f->lhs, bound, out);
    collect_free(f->rhs, bound, out);
}

void collect_names(const TermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind == Term::Kind::Var) out.insert(t->name);
    collect_names(t->lhs, out);
    collect_names(t->rhs, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f) return;
    for (const auto& a : f->args) collect_names(a, out);
    if (f->is_quantifier()) out.insert(f->var);
    collect_names(f->lhs, out);
    collect_names(f->rhs, out);
}

}  // namespace

std::vector<FreeVar> free_vars(const FormulaPtr& f) {
    std::vector<std::string> bound;
    std::vector<FreeVar> out;
    collect_free(f, bound, out);
    return out;
}

std::vector<FreeVar> free_vars(const TermPtr& t) {
    std::vector<std::string> bound;
    std::vector<FreeVar> out;
    collect_free(t, bound, out);
    return out;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

std::set<std::string> all_names(const FormulaPtr& f) {
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (unsigned i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

// ---------------------------------------------------------- alpha-equality

namespace {

using BindStack = std::vector<std::pair<std::string, std::string>>;

// Index of the innermost binder of `name`, or -1 when free.
long binder_index(const BindStack& s, const std::string& name, bool left) {
    for (long i = static_cast<long>(s.size()) - 1; i >= 0; --i) {
        const auto& p = s[static_cast<std::size_t>(i)];
        if ((left ? p.first : p.second) == name) return i;
    }
    return -1;
}

bool alpha_term(const TermPtr& a, const TermPtr& b, const BindStack& s) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Term::Kind::Var: {
            if (a->sort != b->sort) return false;
            long ia = binder_index(s, a->name, true);
            long ib = binder_index(s, b->name, false);
            if (ia != ib) return false;
            return ia >= 0 || a->name == b->name;
        }
        case Term::Kind::Zero:
        case Term::Kind::One: return true;
        case Term::Kind::Numeral: return a->numeral == b->numeral;
        default: return alpha_term(a->lhs, b->lhs, s) && alpha_term(a->rhs, b->rhs, s);
    }
}

bool alpha_formula(const FormulaPtr& a, const FormulaPtr& b, BindStack& s) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    if (a->is_atom()) {
        if (a->args.size() != b->args.size()) return false;
        for (std::size_t i = 0; i < a->args.size(); ++i)
            if (!alpha_term(a->args[i], b->args[i], s)) return false;
        return true;
    }
    if (a->is_quantifier()) {
        if (a->var_sort != b->var_sort) return false;
        s.emplace_back(a->var, b->var);
        bool r = alpha_formula(a->lhs, b->lhs, s);
        s.pop_back();
        return r;
    }
    return alpha_formula(a->lhs, b->lhs, s) && alpha_formula(a->rhs, b->rhs, s);
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    BindStack s;
    return alpha_formula(a, b, s);
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) { return alpha_term(a, b, {}); }

// ------------------------------------------------------------ substitution

TermPtr substitute(const TermPtr& in, const std::string& name, const TermPtr& t) {
    if (!in) return in;
    if (in->kind == Term::Kind::Var) return in->name == name ? t : in;
    if (!in->lhs) return in;
    TermPtr l = substitute(in->lhs, name, t);
    TermPtr r = in->rhs ? substitute(in->rhs, name, t) : nullptr;
    if (l == in->lhs && r == in->rhs) return in;
    Term copy = *in;
    copy.lhs = l;
    copy.rhs = r;
    return std::make_shared<const Term>(std::move(copy));
}

namespace {

FormulaPtr subst_rec(const FormulaPtr& f, const std::string& name, const TermPtr& t,
                     const std::set<std::string>& t_names) {
    if (f->is_atom()) {
        bool changed = false;
        std::vector<TermPtr> args;
        args.reserve(f->args.size());
        for (const auto& a : f->args) {
            args.push_back(substitute(a, name, t));
            changed |= args.back() != a;
        }
        if (!changed) return f;
        Formula copy = *f;
        copy.args = std::move(args);
        return std::make_shared<const Formula>(std::move(copy));
    }
    if (f->is_quantifier()) {
        if (f->var == name) return f;
        auto fv = free_vars(f->lhs);
        bool occurs = std::any_of(fv.begin(), fv.end(), [&](const FreeVar& v) { return v.name == name; });
        if (!occurs) return f;
        Formula copy = *f;
        if (t_names.count(f->var)) {
            // rename the binder apart before descending
            std::set<std::string> taken = all_names(f);
            taken.insert(t_names.begin(), t_names.end());
            taken.insert(name);
            std::string fresh = fresh_name(f->var, taken);
            copy.lhs = subst_rec(f->lhs, f->var, var(fresh, f->var_sort), {fresh});
            copy.var = fresh;
        }
        copy.lhs = subst_rec(copy.lhs, name, t, t_names);
        return std::make_shared<const Formula>(std::move(copy));
    }
    FormulaPtr l = subst_rec(f->lhs, name, t, t_names);
    FormulaPtr r = f->rhs ? subst_rec(f->rhs, name, t, t_names) : nullptr;
    if (l == f->lhs && r == f->rhs) return f;
    Formula copy = *f;
    copy.lhs = l;
    copy.rhs = r;
    return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& name, const TermPtr& t) {
    std::set<std::string> t_names;
    for (const auto& v : free_vars(t)) t_names.insert(v.name);
    return subst_rec(f, name, t, t_names);
}

// -------------------------------------------------------------------- sorts

namespace {

void expect_sort(const TermPtr& t, Sort want, const char* what) {
    Sort got = t->term_sort();
    if (got != want) throw SortError(t->pos, sort_name(want), sort_name(got), what);
}

void check_term(const TermPtr& t, const std::map<std::string, std::vector<Sort>>& scope) {
    if (t->kind == Term::Kind::Var) {
        auto it = scope.find(t->name);
        if (it != scope.end() && !it->second.empty() && it->second.back() != t->sort)
            throw SortError(t->pos, sort_name(it->second.back()), sort_name(t->sort),
                            "variable '" + t->name + "'");
        return;
    }
    if (t->lhs) {
        expect_sort(t->lhs, Sort::Quantity, "operand of a quantity operation");
        check_term(t->lhs, scope);
    }
    if (t->rhs) {
        expect_sort(t->rhs, Sort::Quantity, "operand of a quantity operation");
        check_term(t->rhs, scope);
    }
}

void check_formula(const FormulaPtr& f, std::map<std::string, std::vector<Sort>>& scope) {
    using K = Formula::Kind;
    switch (f->kind) {
        case K::IB:
        case K::Ph:
        case K::Ob:
        case K::IOb:
            if (f->args.size() != 1) throw SortError(f->pos, "1 argument", std::to_string(f->args.size()), "arity");
            expect_sort(f->args[0], Sort::Body, "predicate argument");
            check_term(f->args[0], scope);
            return;
        case K::W:
            if (f->args.size() != 6) throw SortError(f->pos, "6 arguments", std::to_string(f->args.size()), "W arity");
            for (std::size_t i = 0; i < 6; ++i) {
                expect_sort(f->args[i], i < 2 ? Sort::Body : Sort::Quantity, "argument of W");
                check_term(f->args[i], scope);
            }
            return;
        case K::Eq:
            check_term(f->args[0], scope);
            check_term(f->args[1], scope);
            expect_sort(f->args[1], f->args[0]->term_sort(), "right side of '='");
            return;
        case K::Lt:
            for (const auto& a : f->args) {
                expect_sort(a, Sort::Quantity, "operand of '<'");
                check_term(a, scope);
            }
            return;
        case K::Forall:
        case K::Exists:
            scope[f->var].push_back(f->var_sort);
            check_formula(f->lhs, scope);
            scope[f->var].pop_back();
            return;
        default:
            check_formula(f->lhs, scope);
            if (f->rhs) check_formula(f->rhs, scope);
    }
}

std::size_t term_size(const TermPtr& t) {
    if (!t) return 0;
    return 1 + term_size(t->lhs) + term_size(t->rhs);
}

}  // namespace

void check_sorts(const FormulaPtr& f) {
    std::map<std::string, std::vector<Sort>> scope;
    check_formula(f, scope);
}

std::size_t formula_size(const FormulaPtr& f) {
    if (!f) return 0;
    std::size_t n = 1;
    for (const auto& a : f->args) n += term_size(a);
    return n + formula_size(f->lhs) + formula_size(f->rhs);
}

}  // namespace axrel::syntax
