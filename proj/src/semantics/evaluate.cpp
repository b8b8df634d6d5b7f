#include "axrel/semantics/evaluate.hpp"

#include "axrel/errors.hpp"
#include "axrel/util/rng.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace axrel {

using namespace syntax;
using FK = Formula::Kind;
using TK = Term::Kind;

// --------------------------------------------------------------------------
// Family members

Body family_photon(const Coord4& through, const Vec3& direction) {
    Coord4 p = through - through[3] * Coord4(direction, 1);
    return photon_body("photon[" + p.space().to_string() + " + t" + direction.to_string() + "]", p, direction);
}

Body family_inertial(const Coord4& through, const Vec3& velocity) {
    Coord4 p = through - through[3] * Coord4(velocity, 1);
    return inertial_body("inertial[" + p.space().to_string() + " + t" + velocity.to_string() + "]", p, velocity);
}

namespace {

const std::vector<Vec3>& generic_directions() {
    static const std::vector<Vec3> dirs = [] {
        auto q = [](long n, long d) { return ExactReal::rational(n, d); };
        return std::vector<Vec3>{
            Vec3(1, 0, 0),           Vec3(0, 1, 0),           Vec3(0, 0, 1),           Vec3(-1, 0, 0),
            Vec3(0, -1, 0),          Vec3(0, 0, -1),          Vec3(q(3, 5), q(4, 5), 0), Vec3(0, q(3, 5), q(4, 5)),
            Vec3(q(4, 5), 0, q(3, 5)), Vec3(q(-3, 5), 0, q(4, 5)), Vec3(q(2, 3), q(1, 3), q(2, 3)),
            Vec3(q(-2, 3), q(2, 3), q(1, 3)), Vec3(q(1, 3), q(-2, 3), q(2, 3)), Vec3(q(6, 7), q(2, 7), q(3, 7)),
            Vec3(q(-2, 7), q(6, 7), q(3, 7)), Vec3(q(3, 7), q(-6, 7), q(2, 7))};
    }();
    return dirs;
}

// --------------------------------------------------------------------------
// Univariate polynomials over the field, low degree

using Poly = std::vector<ExactReal>;  // c0 + c1 y + c2 y^2 + ...

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly pconst(const ExactReal& c) {
    Poly p{c};
    trim(p);
    return p;
}

Poly padd(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly pscale(const ExactReal& c, const Poly& a) {
    Poly r;
    for (const auto& x : a) r.push_back(c * x);
    trim(r);
    return r;
}

Poly psub(const Poly& a, const Poly& b) { return padd(a, pscale(ExactReal(-1), b)); }

Poly pmul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

/// Real roots of p; nullopt when p is not solvable in closed form here.
std::optional<std::vector<ExactReal>> roots(Poly p) {
    trim(p);
    std::vector<ExactReal> out;
    // factor out powers of y
    std::size_t low = 0;
    while (low < p.size() && p[low].is_zero()) ++low;
    if (low > 0 && low < p.size()) {
        out.push_back(ExactReal(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(low));
    }
    if (p.size() <= 1) return out;
    if (p.size() == 2) {
        out.push_back(-p[0] / p[1]);
        return out;
    }
    if (p.size() == 3) {
        ExactReal disc = p[1] * p[1] - ExactReal(4) * p[2] * p[0];
        if (disc < 0) return out;
        ExactReal r = sqrt(disc);
        ExactReal den = ExactReal(2) * p[2];
        out.push_back((-p[1] - r) / den);
        if (!r.is_zero()) out.push_back((-p[1] + r) / den);
        return out;
    }
    return std::nullopt;
}

struct Exhausted {};

struct Res {
    Truth t = Truth::Unknown;
    bool exact = false;
    std::vector<Binding> ev;
};

Res exact_res(bool b) { return {truth(b), true, {}}; }

void append(std::vector<Binding>& to, const std::vector<Binding>& from) { to.insert(to.end(), from.begin(), from.end()); }

struct ChainVar {
    std::string name;
    Sort sort;
};

class Evaluator {
public:
    Evaluator(const Structure& s, const Budget& b) : s_(s), budget_(b) {
        for (const auto& body : s.bodies()) named_.push_back(std::make_shared<Body>(body));
        pool_base_ = {ExactReal(0), ExactReal(1), ExactReal(-1), ExactReal::rational(1, 2), ExactReal::rational(-1, 2)};
        for (const auto& c : s.constants()) add_unique(pool_base_, c);
    }

    Assignment a;
    BudgetReport rep;
    bool numeric = false;

    void index(const FormulaPtr& f) {
        if (!f) return;
        if (f->is_quantifier() && !site_.count(f.get())) site_[f.get()] = site_.size();
        index(f->lhs);
        index(f->rhs);
    }

    Res eval(const FormulaPtr& f) {
        switch (f->kind) {
            case FK::Not: {
                Res r = eval(f->lhs);
                r.t = truth_not(r.t);
                return r;
            }
            case FK::And: return conj(f->lhs, f->rhs);
            case FK::Or: return disj(f->lhs, f->rhs, false);
            case FK::Implies: return disj(f->lhs, f->rhs, true);
            case FK::Iff: {
                Res l = eval(f->lhs), r = eval(f->rhs);
                Res out;
                if (l.t == Truth::Unknown || r.t == Truth::Unknown) return out;
                out.t = truth(l.t == r.t);
                out.exact = l.exact && r.exact;
                out.ev = l.ev;
                append(out.ev, r.ev);
                return out;
            }
            case FK::Forall:
            case FK::Exists: return quantifier(f);
            default: return atom(f);
        }
    }

    ExactReal qval(const TermPtr& t) const {
        switch (t->kind) {
            case TK::Var: {
                const Value* v = a.find(t->name);
                if (!v) throw UnboundVariable("variable '" + t->name + "' is unbound");
                if (!std::holds_alternative<ExactReal>(*v)) throw SortError(t->pos, "Q", "B", "'" + t->name + "'");
                return std::get<ExactReal>(*v);
            }
            case TK::Zero: return ExactReal(0);
            case TK::One: return ExactReal(1);
            case TK::Numeral: return ExactReal(static_cast<long>(t->numeral));
            case TK::Add: return qval(t->lhs) + qval(t->rhs);
            case TK::Mul: return qval(t->lhs) * qval(t->rhs);
            case TK::Sub: return qval(t->lhs) - qval(t->rhs);
            case TK::Neg: return -qval(t->lhs);
            case TK::Square: {
                ExactReal x = qval(t->lhs);
                return x * x;
            }
        }
        return ExactReal();
    }

    /// Truth pattern of phi over the cells of t; nullopt when not decided.
    std::optional<DefinableSet> set_of(const FormulaPtr& phi, const std::string& t) {
        Scan sc;
        std::set<std::string> bound{t};
        scan_critical(phi, bound, sc);
        if (!sc.solvable || !cell_complete(t, phi, bound)) return std::nullopt;
        DefinableSet out;
        out.critical = sc.critical;
        sort_unique(out.critical);
        std::vector<ExactReal> pts = cells(out.critical);
        std::vector<bool> in;
        for (const auto& p : pts) {
            a.bind(t, p);
            Res r = eval(phi);
            a.pop();
            if (r.t == Truth::Unknown || !r.exact) return std::nullopt;
            in.push_back(r.t == Truth::True);
        }
        // cells alternate: below, c0, (c0,c1), c1, ..., cn, above
        for (std::size_t i = pts.size(); i-- > 0;) {
            if (!in[i]) continue;
            out.nonempty = true;
            if (i + 1 == pts.size() && !out.critical.empty()) break;  // unbounded above
            if (out.critical.empty()) break;                           // everything
            out.bounded_above = true;
            if (i % 2 == 1) {
                out.sup = pts[i];
                out.attained = true;
            } else {
                out.sup = pts[i + 1];
                out.attained = in[i + 1];
            }
            break;
        }
        return out;
    }

private:
    const Structure& s_;
    Budget budget_;
    std::vector<BodyRef> named_;
    std::vector<ExactReal> pool_base_;
    std::map<const Formula*, std::size_t> site_;

    static void add_unique(std::vector<ExactReal>& v, const ExactReal& x) {
        for (const auto& y : v)
            if (y == x) return;
        v.push_back(x);
    }

    void step() {
        if (++rep.steps > budget_.max_steps) {
            rep.exhausted = true;
            throw Exhausted{};
        }
    }

    BodyRef bval(const TermPtr& t) const {
        const Value* v = a.find(t->name);
        if (!v) throw UnboundVariable("variable '" + t->name + "' is unbound");
        if (!std::holds_alternative<BodyRef>(*v)) throw SortError(t->pos, "B", "Q", "'" + t->name + "'");
        return std::get<BodyRef>(*v);
    }

    Res conj(const FormulaPtr& l, const FormulaPtr& r) {
        Res a1 = eval(l);
        if (a1.t == Truth::False && a1.exact) return a1;
        Res b1 = eval(r);
        if (b1.t == Truth::False && b1.exact) return b1;
        if (a1.t == Truth::False) return a1;
        if (b1.t == Truth::False) return b1;
        Res out;
        if (a1.t == Truth::Unknown || b1.t == Truth::Unknown) return out;
        out.t = Truth::True;
        out.exact = a1.exact && b1.exact;
        out.ev = a1.ev;
        append(out.ev, b1.ev);
        return out;
    }

    /// l | r, or !l | r for implications.
    Res disj(const FormulaPtr& l, const FormulaPtr& r, bool negate_left) {
        Res a1 = eval(l);
        if (negate_left) a1.t = truth_not(a1.t);
        if (a1.t == Truth::True && a1.exact) return a1;
        Res b1 = eval(r);
        if (b1.t == Truth::True && b1.exact) return b1;
        if (a1.t == Truth::True) return a1;
        if (b1.t == Truth::True) return b1;
        Res out;
        if (a1.t == Truth::Unknown || b1.t == Truth::Unknown) return out;
        out.t = Truth::False;
        out.exact = a1.exact && b1.exact;
        out.ev = a1.ev;
        append(out.ev, b1.ev);
        return out;
    }

    Res atom(const FormulaPtr& f) {
        step();
        switch (f->kind) {
            case FK::IB: return exact_res(bval(f->args[0])->inertial);
            case FK::Ph: return exact_res(bval(f->args[0])->photon);
            case FK::Ob: return exact_res(is_named_observer(*bval(f->args[0])));
            case FK::IOb: {
                BodyRef b = bval(f->args[0]);
                return exact_res(is_named_observer(*b) && s_.is_inertial_observer(b->id));
            }
            case FK::W: {
                BodyRef o = bval(f->args[0]);
                BodyRef b = bval(f->args[1]);
                if (!is_named_observer(*o)) return exact_res(false);
                Coord4 x(qval(f->args[2]), qval(f->args[3]), qval(f->args[4]), qval(f->args[5]));
                Truth t = s_.holds_W(o->id, *b, x);
                bool exact = std::holds_alternative<AffineChart>(*s_.chart(o->id)) && b->worldline.is_exact();
                if (!exact) numeric = true;
                return {t, exact, {}};
            }
            case FK::Eq:
                if (f->args[0]->term_sort() == Sort::Body) return exact_res(bval(f->args[0])->id == bval(f->args[1])->id);
                return exact_res(qval(f->args[0]) == qval(f->args[1]));
            case FK::Lt: return exact_res(qval(f->args[0]) < qval(f->args[1]));
            default: break;
        }
        throw Error("not an atom");
    }

    /// Synthesized family members never carry charts.
    bool is_named_observer(const Body& b) const { return s_.find(b.id) && s_.is_observer(b.id); }

    // ---------------------------------------------------------------- scope

    /// Whether `name` is unbound at this point of the traversal.
    bool unbound(const std::string& name, const std::set<std::string>& bound) const {
        return bound.count(name) || !a.find(name);
    }

    void unbound_vars(const TermPtr& t, const std::set<std::string>& bound, std::set<std::string>& out) const {
        if (!t) return;
        if (t->kind == TK::Var) {
            if (unbound(t->name, bound)) out.insert(t->name);
            return;
        }
        unbound_vars(t->lhs, bound, out);
        unbound_vars(t->rhs, bound, out);
    }

    std::optional<Poly> poly(const TermPtr& t, const std::string& y, const std::set<std::string>& bound) const {
        switch (t->kind) {
            case TK::Var:
                if (t->name == y) return Poly{ExactReal(0), ExactReal(1)};
                if (unbound(t->name, bound)) return std::nullopt;
                return pconst(qval(t));
            case TK::Zero: return Poly{};
            case TK::One: return pconst(ExactReal(1));
            case TK::Numeral: return pconst(ExactReal(static_cast<long>(t->numeral)));
            case TK::Neg: {
                auto p = poly(t->lhs, y, bound);
                if (!p) return p;
                return pscale(ExactReal(-1), *p);
            }
            case TK::Square: {
                auto p = poly(t->lhs, y, bound);
                if (!p) return p;
                return pmul(*p, *p);
            }
            default: break;
        }
        auto l = poly(t->lhs, y, bound);
        auto r = poly(t->rhs, y, bound);
        if (!l || !r) return std::nullopt;
        if (t->kind == TK::Add) return padd(*l, *r);
        if (t->kind == TK::Sub) return psub(*l, *r);
        return pmul(*l, *r);
    }

    /// Polynomials whose roots bound the cells on which W(o,b,x(y)) is
    /// constant; nullopt when not available in closed form.
    std::optional<std::vector<Poly>> w_polys(const BodyRef& o, const BodyRef& b, const std::array<Poly, 4>& x) const {
        std::vector<Poly> out;
        if (!is_named_observer(*o)) return out;  // constantly false
        const auto* ch = std::get_if<AffineChart>(s_.chart(o->id));
        if (!ch || !b->worldline.is_exact()) return std::nullopt;
        if (ch->domain) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (ch->domain->lo[i]) out.push_back(psub(x[i], pconst(*ch->domain->lo[i])));
                if (ch->domain->hi[i]) out.push_back(psub(x[i], pconst(*ch->domain->hi[i])));
            }
        }
        std::array<Poly, 4> r;
        const Matrix4& m = ch->to_reference.linear();
        for (std::size_t i = 0; i < 4; ++i) {
            r[i] = pconst(ch->to_reference.translation()[i]);
            for (std::size_t j = 0; j < 4; ++j) r[i] = padd(r[i], pscale(m(i, j), x[j]));
        }
        const Worldline& w = b->worldline;
        if (w.t_lo()) out.push_back(psub(r[3], pconst(*w.t_lo())));
        if (w.t_hi()) out.push_back(psub(r[3], pconst(*w.t_hi())));
        auto line = [&](const Coord4& p, const Vec3& v) {
            for (std::size_t i = 0; i < 3; ++i)
                out.push_back(psub(psub(r[i], pconst(p[i])), pscale(v[i], psub(r[3], pconst(p[3])))));
        };
        if (auto* l = std::get_if<InertialLine>(&w.data())) {
            line(l->point, l->velocity);
        } else if (auto* p = std::get_if<PhotonLine>(&w.data())) {
            line(p->point, p->direction);
        } else if (auto* pw = std::get_if<PiecewiseInertial>(&w.data())) {
            for (std::size_t k = 0; k + 1 < pw->events.size(); ++k) {
                const Coord4& e0 = pw->events[k];
                const Coord4& e1 = pw->events[k + 1];
                Vec3 v = (ExactReal(1) / (e1[3] - e0[3])) * (e1.space() - e0.space());
                line(e0, v);
                out.push_back(psub(r[3], pconst(e0[3])));
                out.push_back(psub(r[3], pconst(e1[3])));
            }
        } else if (auto* h = std::get_if<HyperbolicLine>(&w.data())) {
            std::array<Poly, 3> d;
            for (std::size_t i = 0; i < 3; ++i) d[i] = psub(r[i], pconst(h->center[i]));
            Poly along;
            for (std::size_t i = 0; i < 3; ++i) along = padd(along, pscale(h->direction[i], d[i]));
            for (std::size_t i = 0; i < 3; ++i) out.push_back(psub(d[i], pscale(h->direction[i], along)));
            Poly dt = psub(r[3], pconst(h->t_center));
            out.push_back(psub(psub(pmul(along, along), pconst(h->rho * h->rho)), pmul(dt, dt)));
            out.push_back(along);
        }
        return out;
    }

    struct Scan {
        std::vector<ExactReal> critical;
        bool solvable = true;  // every single-variable atom could be solved
    };

    /// Roots of every atom with exactly one unbound quantity variable.
    void scan_critical(const FormulaPtr& f, std::set<std::string>& bound, Scan& sc) const {
        if (f->is_quantifier()) {
            bool fresh = bound.insert(f->var).second;
            scan_critical(f->lhs, bound, sc);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            scan_critical(f->lhs, bound, sc);
            if (f->rhs) scan_critical(f->rhs, bound, sc);
            return;
        }
        if (f->kind == FK::Eq || f->kind == FK::Lt) {
            if (f->args[0]->term_sort() == Sort::Body) return;
            std::set<std::string> vars;
            unbound_vars(f->args[0], bound, vars);
            unbound_vars(f->args[1], bound, vars);
            if (vars.size() != 1) return;
            const std::string& y = *vars.begin();
            auto l = poly(f->args[0], y, bound), r = poly(f->args[1], y, bound);
            auto rs = roots(psub(*l, *r));
            if (!rs) {
                sc.solvable = false;
                return;
            }
            for (auto& x : *rs) add_unique(sc.critical, x);
            return;
        }
        if (f->kind == FK::W) {
            if (unbound(f->args[0]->name, bound) || unbound(f->args[1]->name, bound)) return;
            std::set<std::string> vars;
            for (std::size_t i = 2; i < 6; ++i) unbound_vars(f->args[i], bound, vars);
            if (vars.size() != 1) return;
            const std::string& y = *vars.begin();
            std::array<Poly, 4> x;
            for (std::size_t i = 0; i < 4; ++i) x[i] = *poly(f->args[i + 2], y, bound);
            auto ps = w_polys(bval(f->args[0]), bval(f->args[1]), x);
            if (!ps) {
                sc.solvable = false;
                return;
            }
            for (const auto& p : *ps) {
                auto rs = roots(p);
                if (!rs) {
                    sc.solvable = false;
                    return;
                }
                for (auto& v : *rs) add_unique(sc.critical, v);
            }
        }
    }

    static bool bare_var(const TermPtr& t) { return t->kind == TK::Var; }

    /// Unbound quantity variables of an atom; bodies count when unbound.
    std::set<std::string> atom_unbound(const FormulaPtr& f, const std::set<std::string>& bound) const {
        std::set<std::string> vars;
        for (const auto& t : f->args) unbound_vars(t, bound, vars);
        return vars;
    }

    /// Every atom mentioning x is a solvable atom in x alone, or a bare
    /// comparison with a variable y bound inside whose atoms are themselves
    /// of those two forms (relative to x).
    bool cell_complete(const std::string& x, const FormulaPtr& scope, const std::set<std::string>& chain_rest) const {
        std::set<std::string> partners;
        std::set<std::string> bound = chain_rest;
        bool ok = true;
        check_var(x, scope, bound, false, x, partners, ok);
        if (!ok) return false;
        for (const auto& y : partners) {
            std::set<std::string> b2 = chain_rest;
            std::set<std::string> dummy;
            check_partner(y, x, scope, b2, false, ok);
            if (!ok) return false;
        }
        return true;
    }

    void check_var(const std::string& x, const FormulaPtr& f, std::set<std::string>& bound, bool shadowed,
                   const std::string& target, std::set<std::string>& partners, bool& ok) const {
        if (!ok) return;
        if (f->is_quantifier()) {
            bool sh = shadowed || f->var == target;
            bool fresh = bound.insert(f->var).second;
            check_var(x, f->lhs, bound, sh, target, partners, ok);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            check_var(x, f->lhs, bound, shadowed, target, partners, ok);
            if (f->rhs) check_var(x, f->rhs, bound, shadowed, target, partners, ok);
            return;
        }
        if (shadowed) return;
        auto vars = atom_unbound(f, bound);
        if (!vars.count(x)) return;
        if (vars.size() == 1) {
            if (f->kind == FK::W || f->kind == FK::Eq || f->kind == FK::Lt) return;  // solvability checked by the scan
            ok = false;
            return;
        }
        if ((f->kind == FK::Eq || f->kind == FK::Lt) && vars.size() == 2 && bare_var(f->args[0]) && bare_var(f->args[1]) &&
            f->args[0]->term_sort() == Sort::Quantity) {
            const std::string& y = f->args[0]->name == x ? f->args[1]->name : f->args[0]->name;
            partners.insert(y);
            return;
        }
        ok = false;
    }

    void check_partner(const std::string& y, const std::string& x, const FormulaPtr& f, std::set<std::string>& bound,
                       bool inside, bool& ok) const {
        if (!ok) return;
        if (f->is_quantifier()) {
            bool in = inside || f->var == y;
            bool fresh = bound.insert(f->var).second;
            check_partner(y, x, f->lhs, bound, in, ok);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            check_partner(y, x, f->lhs, bound, inside, ok);
            if (f->rhs) check_partner(y, x, f->rhs, bound, inside, ok);
            return;
        }
        if (!inside) return;
        auto vars = atom_unbound(f, bound);
        if (!vars.count(y)) return;
        if (vars.size() == 1) return;
        if ((f->kind == FK::Eq || f->kind == FK::Lt) && vars.size() == 2 && vars.count(x) && bare_var(f->args[0]) &&
            bare_var(f->args[1]))
            return;
        ok = false;
    }

    // ------------------------------------------------------------- bodies

    struct BodyScan {
        bool observer_only = true;  // never in a W body position (other than its own)
        bool determined = true;     // every W body position at a known event
        std::vector<Coord4> events;
        std::vector<BodyRef> equal_to;  // assigned bodies it is compared with
    };

    void scan_body(const std::string& b, const FormulaPtr& f, std::set<std::string>& bound, bool shadowed,
                   BodyScan& sc) const {
        if (f->is_quantifier()) {
            bool sh = shadowed || f->var == b;
            bool fresh = bound.insert(f->var).second;
            scan_body(b, f->lhs, bound, sh, sc);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            scan_body(b, f->lhs, bound, shadowed, sc);
            if (f->rhs) scan_body(b, f->rhs, bound, shadowed, sc);
            return;
        }
        if (shadowed) return;
        auto mentions = [&](const TermPtr& t) { return t->kind == TK::Var && t->name == b; };
        if (f->kind == FK::Eq && f->args[0]->term_sort() == Sort::Body) {
            for (std::size_t i = 0; i < 2; ++i) {
                if (!mentions(f->args[i])) continue;
                const TermPtr& other = f->args[1 - i];
                if (mentions(other)) continue;
                if (unbound(other->name, bound)) {
                    sc.determined = false;
                } else {
                    sc.equal_to.push_back(bval(other));
                }
            }
            return;
        }
        if (f->kind != FK::W || !mentions(f->args[1]) || mentions(f->args[0])) return;
        sc.observer_only = false;
        const TermPtr& o = f->args[0];
        std::set<std::string> vars;
        for (std::size_t i = 2; i < 6; ++i) unbound_vars(f->args[i], bound, vars);
        if (unbound(o->name, bound) || !vars.empty()) {
            sc.determined = false;
            return;
        }
        BodyRef ob = bval(o);
        if (!is_named_observer(*ob)) return;  // atom is false for every body
        const auto* ch = std::get_if<AffineChart>(s_.chart(ob->id));
        if (!ch) {
            sc.determined = false;
            return;
        }
        Coord4 x(qval(f->args[2]), qval(f->args[3]), qval(f->args[4]), qval(f->args[5]));
        if (ch->domain && !ch->domain->contains(x)) return;
        Coord4 r = ch->to_reference(x);
        for (const auto& e : sc.events)
            if (e == r) return;
        sc.events.push_back(r);
    }

    static bool on_any(const Body& b, const std::vector<Coord4>& events, std::size_t skip1, std::size_t skip2) {
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (i == skip1 || i == skip2) continue;
            if (b.worldline.contains(events[i]) == Truth::True) return true;
        }
        return false;
    }

    /// Family lines realizing every membership pattern over the events.
    bool family_patterns(const std::vector<Coord4>& ev, std::vector<BodyRef>& out) const {
        bool ph = s_.photon_family(), in = s_.inertial_family();
        const std::size_t none = static_cast<std::size_t>(-1);
        bool ok = true;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            for (std::size_t j = i + 1; j < ev.size(); ++j) {
                Coord4 d = ev[j] - ev[i];
                if (d[3].is_zero()) continue;
                Vec3 w = (ExactReal(1) / d[3]) * d.space();
                ExactReal w2 = w.norm2();
                if (w2 == 1 && ph) out.push_back(std::make_shared<Body>(family_photon(ev[i], w)));
                if (w2 < 1 && in) out.push_back(std::make_shared<Body>(family_inertial(ev[i], w)));
            }
        }
        for (std::size_t i = 0; i < ev.size(); ++i) {
            if (ph) {
                bool found = false;
                for (const auto& d : generic_directions()) {
                    Body b = family_photon(ev[i], d);
                    if (on_any(b, ev, i, none)) continue;
                    out.push_back(std::make_shared<Body>(std::move(b)));
                    found = true;
                    break;
                }
                ok = ok && found;
            }
            if (in) {
                bool found = false;
                for (const auto& d : generic_directions()) {
                    Body b = family_inertial(ev[i], ExactReal::rational(1, 2) * d);
                    if (on_any(b, ev, i, none)) continue;
                    out.push_back(std::make_shared<Body>(std::move(b)));
                    found = true;
                    break;
                }
                ok = ok && found;
            }
        }
        // lines missing every event
        ExactReal far(1);
        for (const auto& e : ev)
            for (std::size_t k = 0; k < 4; ++k) far += abs(e[k]);
        if (ph) out.push_back(std::make_shared<Body>(family_photon(Coord4(far, far, far, 0), Vec3(1, 0, 0))));
        if (in) out.push_back(std::make_shared<Body>(family_inertial(Coord4(far, far, far, 0), Vec3(0, 0, 0))));
        return ok;
    }

    std::vector<BodyRef> body_candidates(const std::string& b, const FormulaPtr& scope,
                                         const std::set<std::string>& chain_rest, std::size_t site, bool& complete) {
        BodyScan sc;
        std::set<std::string> bound = chain_rest;
        scan_body(b, scope, bound, false, sc);
        std::vector<BodyRef> out = named_;
        for (const auto& e : sc.equal_to)
            if (!s_.find(e->id)) out.push_back(e);
        bool ph = s_.photon_family(), in = s_.inertial_family();
        if (!ph && !in) {
            complete = true;  // a finite domain is enumerated completely
            return out;
        }
        if (sc.observer_only) {
            if (ph) out.push_back(std::make_shared<Body>(family_photon(Coord4(), Vec3(1, 0, 0))));
            if (in) out.push_back(std::make_shared<Body>(family_inertial(Coord4(), Vec3(0, 0, 0))));
            complete = sc.determined;
            return out;
        }
        ++rep.solver_calls;
        bool pattern_ok = family_patterns(sc.events, out);
        complete = sc.determined && pattern_ok;
        if (!complete) {
            // sampled extra members through seeded events
            Rng rng(budget_.seed, "bodies" + std::to_string(site));
            for (std::size_t k = 0; k < budget_.samples; ++k) {
                Coord4 through = sc.events.empty()
                                     ? Coord4(rng.rational(5, 12), rng.rational(5, 12), rng.rational(5, 12), 0)
                                     : sc.events[k % sc.events.size()];
                const Vec3& d = generic_directions()[rng.uniform(0, static_cast<long>(generic_directions().size()) - 1)];
                if (ph && (k % 2 == 0 || !in)) {
                    out.push_back(std::make_shared<Body>(family_photon(through, d)));
                } else {
                    out.push_back(std::make_shared<Body>(family_inertial(through, rng.rational_in(0, 1, 12) * d)));
                }
                ++rep.samples;
            }
        }
        // dedupe by id, keep first
        std::vector<BodyRef> uniq;
        std::set<std::string> seen;
        for (auto& x : out)
            if (seen.insert(x->id).second) uniq.push_back(std::move(x));
        return uniq;
    }

    // ----------------------------------------------------------- quantities

    std::vector<ExactReal> pool(std::size_t site, std::size_t n) {
        std::vector<ExactReal> out = pool_base_;
        Rng rng(budget_.seed, "pool" + std::to_string(site));
        for (std::size_t k = 0; k < n; ++k) {
            if (k % 2 == 0)
                add_unique(out, rng.rational(10, 12));
            else
                add_unique(out, rng.rational(1, 1'000'000));
        }
        return out;
    }

    static void sort_unique(std::vector<ExactReal>& v) {
        std::sort(v.begin(), v.end(), [](const ExactReal& x, const ExactReal& y) { return x < y; });
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    static std::vector<ExactReal> cells(std::vector<ExactReal> c) {
        sort_unique(c);
        if (c.empty()) return {ExactReal(0)};
        std::vector<ExactReal> out;
        out.push_back(c.front() - ExactReal(1));
        for (std::size_t i = 0; i < c.size(); ++i) {
            out.push_back(c[i]);
            if (i + 1 < c.size()) out.push_back((c[i] + c[i + 1]) / ExactReal(2));
        }
        out.push_back(c.back() + ExactReal(1));
        return out;
    }

    std::vector<ExactReal> scalar_candidates(const std::string& x, const FormulaPtr& scope,
                                             const std::set<std::string>& chain_rest, std::size_t site, bool& complete) {
        Scan sc;
        std::set<std::string> bound = chain_rest;
        ++rep.solver_calls;
        scan_critical(scope, bound, sc);
        std::vector<ExactReal> out = cells(sc.critical);
        complete = sc.solvable && cell_complete(x, scope, chain_rest);
        if (!complete) {
            std::set<std::string> others = chain_rest;
            others.erase(x);
            std::set<std::string> b2 = chain_rest;
            scan_pinned(x, scope, b2, others, false, out);
            for (auto& p : pool(site, budget_.samples)) add_unique(out, p);
            rep.samples += budget_.samples;
        }
        return out;
    }

    /// Roots in x of atoms that also mention later variables of the same
    /// block, with those set to small corner values.
    void scan_pinned(const std::string& x, const FormulaPtr& f, std::set<std::string>& bound,
                     const std::set<std::string>& others, bool shadowed, std::vector<ExactReal>& out) {
        if (f->is_quantifier()) {
            bool sh = shadowed || f->var == x || others.count(f->var);
            bool fresh = bound.insert(f->var).second;
            scan_pinned(x, f->lhs, bound, others, sh, out);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            scan_pinned(x, f->lhs, bound, others, shadowed, out);
            if (f->rhs) scan_pinned(x, f->rhs, bound, others, shadowed, out);
            return;
        }
        if (shadowed || (f->kind != FK::Eq && f->kind != FK::Lt) || f->args[0]->term_sort() == Sort::Body) return;
        auto vars = atom_unbound(f, bound);
        if (!vars.count(x) || vars.size() < 2 || vars.size() > 3) return;
        std::vector<std::string> rest;
        for (const auto& v : vars) {
            if (v == x) continue;
            if (!others.count(v)) return;
            rest.push_back(v);
        }
        std::set<std::string> b2 = bound;
        for (const auto& v : rest) b2.erase(v);
        const std::size_t corners = std::min<std::size_t>(5, pool_base_.size());
        std::vector<std::size_t> idx(rest.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < rest.size(); ++i) a.bind(rest[i], pool_base_[idx[i]]);
            auto l = poly(f->args[0], x, b2), r = poly(f->args[1], x, b2);
            for (std::size_t i = 0; i < rest.size(); ++i) a.pop();
            if (l && r)
                if (auto rs = roots(psub(*l, *r)))
                    for (auto& v : *rs) add_unique(out, v);
            std::size_t i = 0;
            for (; i < idx.size(); ++i) {
                if (++idx[i] < corners) break;
                idx[i] = 0;
            }
            if (i == idx.size()) break;
        }
    }

    /// W atoms whose four coordinate arguments are exactly the given variables.
    void find_w_groups(const FormulaPtr& f, const std::vector<std::string>& vars, std::vector<FormulaPtr>& out,
                       bool shadowed) const {
        if (f->is_quantifier()) {
            bool sh = shadowed || std::find(vars.begin(), vars.end(), f->var) != vars.end();
            find_w_groups(f->lhs, vars, out, sh);
            return;
        }
        if (!f->is_atom()) {
            find_w_groups(f->lhs, vars, out, shadowed);
            if (f->rhs) find_w_groups(f->rhs, vars, out, shadowed);
            return;
        }
        if (shadowed || f->kind != FK::W) return;
        for (std::size_t i = 0; i < 4; ++i)
            if (!bare_var(f->args[i + 2]) || f->args[i + 2]->name != vars[i]) return;
        out.push_back(f);
    }

    /// Known events: W atoms with assigned observer and determined coordinates.
    void known_points(const FormulaPtr& f, std::set<std::string>& bound,
                      std::vector<std::pair<std::string, Coord4>>& out) const {
        if (f->is_quantifier()) {
            bool fresh = bound.insert(f->var).second;
            known_points(f->lhs, bound, out);
            if (fresh) bound.erase(f->var);
            return;
        }
        if (!f->is_atom()) {
            known_points(f->lhs, bound, out);
            if (f->rhs) known_points(f->rhs, bound, out);
            return;
        }
        if (f->kind != FK::W || unbound(f->args[0]->name, bound)) return;
        std::set<std::string> vars;
        for (std::size_t i = 2; i < 6; ++i) unbound_vars(f->args[i], bound, vars);
        if (!vars.empty()) return;
        BodyRef o = bval(f->args[0]);
        if (!is_named_observer(*o)) return;
        Coord4 x(qval(f->args[2]), qval(f->args[3]), qval(f->args[4]), qval(f->args[5]));
        for (const auto& [n, p] : out)
            if (n == o->id && p == x) return;
        out.push_back({o->id, x});
    }

    std::optional<Coord4> map_point(const std::string& from, const std::string& to, const Coord4& x) const {
        const auto* a1 = std::get_if<AffineChart>(s_.chart(from));
        const auto* a2 = std::get_if<AffineChart>(s_.chart(to));
        if (!a1 || !a2) return std::nullopt;
        if (a1->domain && !a1->domain->contains(x)) return std::nullopt;
        Coord4 y = a2->to_observer(a1->to_reference(x));
        if (a2->domain && !a2->domain->contains(y)) return std::nullopt;
        return y;
    }

    /// A conjunct  A b . W(o,b,p) <-> W(o2,b,vars)  (either orientation) with
    /// p known and seen by o forces vars to the corresponding event: with a
    /// family on, distinct events are told apart by some family member. The
    /// result is empty when that event lies outside o2's domain.
    std::optional<std::vector<Coord4>> forced(const FormulaPtr& f, const std::vector<std::string>& vars,
                                              const std::set<std::string>& bound) const {
        if (f->kind == FK::And) {
            if (auto r = forced(f->lhs, vars, bound)) return r;
            return forced(f->rhs, vars, bound);
        }
        if (f->kind != FK::Forall || f->var_sort != Sort::Body) return std::nullopt;
        if (!s_.photon_family() && !s_.inertial_family()) return std::nullopt;
        const FormulaPtr& g = f->lhs;
        if (g->kind != FK::Iff || g->lhs->kind != FK::W || g->rhs->kind != FK::W) return std::nullopt;
        for (int side = 0; side < 2; ++side) {
            const FormulaPtr& known = side == 0 ? g->lhs : g->rhs;
            const FormulaPtr& target = side == 0 ? g->rhs : g->lhs;
            if (known->args[1]->name != f->var || target->args[1]->name != f->var) continue;
            bool match = true;
            for (std::size_t i = 0; i < 4; ++i)
                match = match && bare_var(target->args[i + 2]) && target->args[i + 2]->name == vars[i];
            if (!match) continue;
            std::set<std::string> b2 = bound;
            b2.insert(vars.begin(), vars.end());
            b2.insert(f->var);
            std::set<std::string> uv;
            for (std::size_t i = 2; i < 6; ++i) unbound_vars(known->args[i], b2, uv);
            if (!uv.empty() || unbound(known->args[0]->name, b2) || unbound(target->args[0]->name, b2)) continue;
            BodyRef o = bval(known->args[0]), o2 = bval(target->args[0]);
            if (!is_named_observer(*o) || !is_named_observer(*o2)) continue;
            const auto* a1 = std::get_if<AffineChart>(s_.chart(o->id));
            const auto* a2 = std::get_if<AffineChart>(s_.chart(o2->id));
            if (!a1 || !a2) continue;
            Coord4 x(qval(known->args[2]), qval(known->args[3]), qval(known->args[4]), qval(known->args[5]));
            if (a1->domain && !a1->domain->contains(x)) continue;
            Coord4 y = a2->to_observer(a1->to_reference(x));
            if (a2->domain && !a2->domain->contains(y)) return std::vector<Coord4>{};
            return std::vector<Coord4>{y};
        }
        return std::nullopt;
    }

    std::vector<Coord4> tuple_candidates(FK kind, const std::vector<std::string>& vars, const FormulaPtr& scope,
                                         const std::set<std::string>& chain_rest, std::size_t site, bool& complete) {
        ++rep.solver_calls;
        std::set<std::string> bound = chain_rest;
        bound.insert(vars.begin(), vars.end());
        // forced by an event-correspondence conjunct
        const FormulaPtr& guard = kind == FK::Exists ? scope : (scope->kind == FK::Implies ? scope->lhs : nullptr);
        if (guard) {
            if (auto y = forced(guard, vars, chain_rest)) {
                complete = true;
                return *y;
            }
        }
        complete = false;
        std::vector<Coord4> out;
        auto add = [&](const Coord4& c) {
            for (const auto& e : out)
                if (e == c) return;
            out.push_back(c);
        };
        std::vector<FormulaPtr> groups;
        find_w_groups(scope, vars, groups, false);
        std::vector<std::pair<std::string, Coord4>> known;
        std::set<std::string> kb = bound;
        known_points(scope, kb, known);
        std::vector<ExactReal> times = pool(site, 4);
        for (const auto& g : groups) {
            if (unbound(g->args[0]->name, bound)) continue;
            BodyRef o = bval(g->args[0]);
            if (!is_named_observer(*o) || !std::holds_alternative<AffineChart>(*s_.chart(o->id))) continue;
            // corresponding events of the known points
            for (const auto& [from, p] : known)
                if (auto y = map_point(from, o->id, p)) add(*y);
            if (!unbound(g->args[1]->name, bound)) {
                // points on the given body's worldline
                BodyRef b = bval(g->args[1]);
                for (const auto& t : times) {
                    auto r = b->worldline.at_time(t);
                    if (!r) continue;
                    if (auto y = s_.from_reference(o->id, *r)) add(*y);
                }
            } else {
                // points on family lines through the known events
                for (const auto& [from, p] : known) {
                    if (!std::holds_alternative<AffineChart>(*s_.chart(from))) continue;
                    auto r = s_.to_reference(from, p);
                    if (!r) continue;
                    for (std::size_t k = 0; k < 7; ++k) {
                        const Vec3& d = generic_directions()[k];
                        for (const ExactReal& sgn : {ExactReal(1), ExactReal(-2)}) {
                            if (s_.photon_family())
                                if (auto y = s_.from_reference(o->id, *r + sgn * Coord4(d, 1))) add(*y);
                            if (s_.inertial_family())
                                if (auto y = s_.from_reference(o->id, *r + sgn * Coord4(ExactReal::rational(1, 2) * d, 1)))
                                    add(*y);
                        }
                    }
                }
            }
        }
        add(Coord4());
        add(Coord4(0, 0, 0, 1));
        add(Coord4(1, 0, 0, 0));
        std::vector<ExactReal> vals = pool(site, budget_.samples);
        Rng rng(budget_.seed, "tuples" + std::to_string(site));
        for (std::size_t k = 0; k < budget_.samples; ++k) {
            auto pick = [&]() { return vals[rng.uniform(0, static_cast<long>(vals.size()) - 1)]; };
            add(Coord4(pick(), pick(), pick(), pick()));
        }
        rep.samples += budget_.samples;
        return out;
    }

    // --------------------------------------------------------- quantifiers

    Res quantifier(const FormulaPtr& f) {
        std::vector<ChainVar> chain;
        FormulaPtr body = f;
        while (body->kind == f->kind) {
            chain.push_back({body->var, body->var_sort});
            body = body->lhs;
        }
        return chain_step(f->kind, chain, 0, body, site_.count(f.get()) ? site_.at(f.get()) : 0);
    }

    Res chain_step(FK kind, const std::vector<ChainVar>& chain, std::size_t i, const FormulaPtr& body, std::size_t site) {
        if (i == chain.size()) return eval(body);
        std::set<std::string> rest;
        for (std::size_t k = i; k < chain.size(); ++k) rest.insert(chain[k].name);
        // scope seen by the variables still to bind: the rest of the chain
        // is folded into `rest`

        bool is_all = kind == FK::Forall;
        Res first_weak, out;
        bool have_weak = false, all_exact = true, saw_unknown = false;
        auto consider = [&](std::vector<Binding> bind, std::size_t next, bool& stop) {
            for (auto& bnd : bind) a.bind(bnd.name, bnd.value);
            Res r;
            try {
                r = chain_step(kind, chain, next, body, site * 31 + next);
            } catch (...) {
                for (std::size_t k = 0; k < bind.size(); ++k) a.pop();
                throw;
            }
            for (std::size_t k = 0; k < bind.size(); ++k) a.pop();
            Truth decisive = is_all ? Truth::False : Truth::True;
            if (r.t == decisive) {
                std::vector<Binding> ev = bind;
                append(ev, r.ev);
                if (r.exact) {
                    out = {decisive, true, std::move(ev)};
                    stop = true;
                    return;
                }
                if (!have_weak) {
                    first_weak = {decisive, false, std::move(ev)};
                    have_weak = true;
                }
            } else if (r.t == Truth::Unknown) {
                saw_unknown = true;
            } else if (!r.exact) {
                all_exact = false;
            }
        };

        bool complete = false;
        bool stop = false;
        const ChainVar& v = chain[i];
        if (v.sort == Sort::Body) {
            auto cands = body_candidates(v.name, body, rest, site, complete);
            for (const auto& c : cands) {
                consider({{v.name, c}}, i + 1, stop);
                if (stop) return out;
            }
        } else {
            std::vector<std::string> group;
            if (i + 3 < chain.size()) {
                bool all_q = true;
                for (std::size_t k = i; k < i + 4; ++k) {
                    all_q = all_q && chain[k].sort == Sort::Quantity;
                    group.push_back(chain[k].name);
                }
                std::vector<FormulaPtr> gs;
                if (all_q) find_w_groups(body, group, gs, false);
                if (!all_q || gs.empty()) group.clear();
            }
            if (!group.empty()) {
                std::set<std::string> after;
                for (std::size_t k = i + 4; k < chain.size(); ++k) after.insert(chain[k].name);
                auto cands = tuple_candidates(kind, group, body, after, site, complete);
                for (const auto& c : cands) {
                    std::vector<Binding> bind;
                    for (std::size_t k = 0; k < 4; ++k) bind.push_back({group[k], c[k]});
                    consider(std::move(bind), i + 4, stop);
                    if (stop) return out;
                }
            } else {
                std::set<std::string> after;
                for (std::size_t k = i + 1; k < chain.size(); ++k) after.insert(chain[k].name);
                // the variable itself is unbound during the scan
                std::set<std::string> scan_bound = after;
                scan_bound.insert(v.name);
                auto cands = scalar_candidates(v.name, body, scan_bound, site, complete);
                for (const auto& c : cands) {
                    consider({{v.name, c}}, i + 1, stop);
                    if (stop) return out;
                }
            }
        }
        if (have_weak) return first_weak;
        if (saw_unknown) return Res{};
        Truth t = is_all ? Truth::True : Truth::False;
        return {t, complete && all_exact, {}};
    }
};

void check_bindings(const FormulaPtr& f, const Assignment& a) {
    for (const auto& fv : free_vars(f)) {
        const Value* v = a.find(fv.name);
        if (!v) throw UnboundVariable("free variable '" + fv.name + "' has no value");
        bool body = std::holds_alternative<BodyRef>(*v);
        if (body != (fv.sort == Sort::Body))
            throw SortError(SourcePos{}, sort_name(fv.sort), body ? "B" : "Q", "binding of '" + fv.name + "'");
    }
}

}  // namespace

ExactReal eval_term(const TermPtr& t, const Assignment& a) {
    static const Structure empty;
    Evaluator e(empty, Budget{});
    e.a = a;
    return e.qval(t);
}

Verdict evaluate(const Structure& s, const FormulaPtr& f, const Assignment& a, const Budget& b) {
    check_sorts(f);
    check_bindings(f, a);
    Evaluator e(s, b);
    e.a = a;
    e.index(f);
    Res r;
    try {
        r = e.eval(f);
    } catch (const Exhausted&) {
        Verdict v = unknown("step budget of " + std::to_string(b.max_steps) + " exhausted");
        v.budget = e.rep;
        return v;
    }
    Verdict v;
    Basis basis = e.numeric ? Basis::Numeric : (r.exact ? Basis::Decided : Basis::Sampled);
    if (r.t == Truth::True) {
        v = holds(basis);
        v.evidence = std::move(r.ev);
    } else if (r.t == Truth::False && r.exact) {
        v = fails(basis, std::move(r.ev));
    } else if (r.t == Truth::False) {
        v = unknown("no witness found within the sampling budget");
        v.evidence = std::move(r.ev);
    } else {
        v = unknown(e.numeric ? "numeric membership inside the tolerance band" : "undecided");
    }
    v.budget = e.rep;
    return v;
}

std::optional<DefinableSet> definable_set(const Structure& s, const FormulaPtr& phi, const std::string& t,
                                          const Assignment& a, const Budget& b) {
    check_sorts(phi);
    Evaluator e(s, b);
    e.a = a;
    e.index(phi);
    try {
        return e.set_of(phi, t);
    } catch (const Exhausted&) {
        return std::nullopt;
    }
}

Verdict recheck(const Structure& s, const FormulaPtr& f, const Verdict& v, const Budget& b) {
    FormulaPtr body = f;
    Assignment a;
    std::set<std::string> used;
    while (body->is_quantifier() && body->kind == f->kind) {
        bool found = false;
        for (const auto& e : v.evidence) {
            if (e.name == body->var && !used.count(e.name)) {
                a.bind(e.name, e.value);
                used.insert(e.name);
                found = true;
                break;
            }
        }
        if (!found) break;
        body = body->lhs;
    }
    return evaluate(s, body, a, b);
}

namespace {

std::optional<std::pair<Coord4, Coord4>> reference_pair(const Structure& s, const std::string& o, const Coord4& x,
                                                        const Coord4& x2) {
    const auto* ch = std::get_if<AffineChart>(s.chart(o));
    if (!ch) return std::nullopt;
    auto r1 = s.to_reference(o, x), r2 = s.to_reference(o, x2);
    if (!r1 || !r2) return std::nullopt;
    return std::make_pair(*r1, *r2);
}

}  // namespace

std::optional<Body> witness_photon(const Structure& s, const std::string& o, const Coord4& x, const Coord4& x2) {
    if (!s.photon_family()) return std::nullopt;
    auto rp = reference_pair(s, o, x, x2);
    if (!rp) return std::nullopt;
    auto [r1, r2] = *rp;
    if (r1 == r2) {
        const auto& ch = std::get<AffineChart>(*s.chart(o));
        Coord4 d = ch.to_reference.linear() * Coord4(1, 0, 0, 1);
        return family_photon(r1, (ExactReal(1) / d[3]) * d.space());
    }
    if (!mu(r1, r2).is_zero()) return std::nullopt;
    Coord4 d = r2 - r1;
    return family_photon(r1, (ExactReal(1) / d[3]) * d.space());
}

std::optional<Body> witness_inertial(const Structure& s, const std::string& o, const Coord4& x, const Coord4& x2) {
    if (!s.inertial_family()) return std::nullopt;
    auto rp = reference_pair(s, o, x, x2);
    if (!rp) return std::nullopt;
    auto [r1, r2] = *rp;
    if (!(mu(r1, r2) < 0)) return std::nullopt;
    Coord4 d = r2 - r1;
    return family_inertial(r1, (ExactReal(1) / d[3]) * d.space());
}

}  // namespace axrel
