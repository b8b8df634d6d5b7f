#include "axrel/syntax/corpus.hpp"

#include <array>
#include <map>
#include <sstream>

namespace axrel::syntax {

namespace {

// ------------------------------------------------------ text construction

// Coordinates of a 4-vector named `v` with decoration `mark`: x1' .. x4'.
std::string c(const std::string& v, int i, const std::string& mark = "") {
    return v + std::to_string(i) + mark;
}

std::string coords(const std::string& v, const std::string& mark = "") {
    return c(v, 1, mark) + "," + c(v, 2, mark) + "," + c(v, 3, mark) + "," + c(v, 4, mark);
}

std::string binders(const std::string& v, const std::string& mark = "") {
    return c(v, 1, mark) + ":Q " + c(v, 2, mark) + ":Q " + c(v, 3, mark) + ":Q " + c(v, 4, mark) + ":Q";
}

std::string sq_diff(const std::string& a, const std::string& b) { return "(" + a + " - " + b + ")^2"; }

// Squared Euclidean distance over the first `n` coordinates.
std::string dist2(const std::string& a, const std::string& am, const std::string& b, const std::string& bm,
                  int n = 4) {
    std::string out;
    for (int i = 1; i <= n; ++i) {
        if (i > 1) out += " + ";
        out += sq_diff(c(a, i, am), c(b, i, bm));
    }
    return out;
}

// The same events: A b . W(o,b,a) <-> W(o2,b,b)
std::string same_event(const std::string& o, const std::string& a, const std::string& am, const std::string& o2,
                       const std::string& b, const std::string& bm) {
    return "(A b:B . W(" + o + ",b," + coords(a, am) + ") <-> W(" + o2 + ",b," + coords(b, bm) + "))";
}

// |lhs| <= e * |scale| written as !(e*e*scale2 < lhs2) with squared operands.
std::string within(const std::string& scale2, const std::string& err2) {
    return "!(e*e*(" + scale2 + ") < " + err2 + ")";
}

FormulaPtr p(const std::string& text) {
    FormulaPtr f = parse(text);
    check_sorts(f);
    if (!is_sentence(f)) throw Error("corpus formula is not a sentence: " + text);
    return f;
}

NamedFormula ax(const std::string& name, const std::string& text) {
    return NamedFormula{NamedFormula::Role::Axiom, name, p(text)};
}

Axiom single(const std::string& name, const std::string& text, bool reconstruction = false,
             std::string note = "") {
    return Axiom{name, {ax(name, text)}, reconstruction, std::move(note)};
}

// ------------------------------------------------------------------ axioms

Axiom ax_field() {
    Axiom a;
    a.name = "AxField";
    a.note = "ordered field axioms";
    const std::pair<const char*, const char*> list[] = {
        {"AxField.add_assoc", "A x:Q y:Q z:Q . (x + y) + z = x + (y + z)"},
        {"AxField.add_comm", "A x:Q y:Q . x + y = y + x"},
        {"AxField.add_zero", "E z:Q . A x:Q . z + x = x"},
        {"AxField.add_inverse", "A x:Q . E y:Q . x + y = 0"},
        {"AxField.mul_assoc", "A x:Q y:Q z:Q . (x*y)*z = x*(y*z)"},
        {"AxField.mul_comm", "A x:Q y:Q . x*y = y*x"},
        {"AxField.mul_one", "E u:Q . !(u = 0) & A x:Q . u*x = x"},
        {"AxField.mul_inverse", "A x:Q . !(x = 0) -> E y:Q . x*y = 1"},
        {"AxField.distrib", "A x:Q y:Q z:Q . x*(y + z) = x*y + x*z"},
        {"AxField.lt_irrefl", "A x:Q . !(x < x)"},
        {"AxField.lt_trans", "A x:Q y:Q z:Q . x < y & y < z -> x < z"},
        {"AxField.lt_total", "A x:Q y:Q . x < y | x = y | y < x"},
        {"AxField.lt_add", "A x:Q y:Q z:Q . x < y -> x + z < y + z"},
        {"AxField.lt_mul", "A x:Q y:Q . 0 < x & 0 < y -> 0 < x*y"},
    };
    for (const auto& [name, text] : list) a.formulas.push_back(ax(name, text));
    return a;
}

Axiom ax_self() {
    return single("AxSelf", "A o:B " + binders("x") + " . IOb(o) -> (W(o,o," + coords("x") +
                                ") <-> x1 = 0 & x2 = 0 & x3 = 0)");
}

Axiom ax_ph() {
    return single("AxPh", "A o:B " + binders("x") + " " + binders("x", "'") +
                              " . IOb(o) -> ((E p:B . Ph(p) & W(o,p," + coords("x") + ") & W(o,p," +
                              coords("x", "'") + ")) <-> " + dist2("x", "", "x", "'", 3) + " = " +
                              sq_diff("x4", "x4'") + ")");
}

Axiom ax_ev() {
    return single("AxEv", "A o:B o':B " + binders("x") + " . IOb(o) & IOb(o') -> E " + binders("x", "'") +
                              " . A b:B . W(o,b," + coords("x") + ") <-> W(o',b," + coords("x", "'") + ")");
}

std::string axsymd_text(bool literal) {
    std::string rhs = literal ? "(x1' - x2')^2 + (y1' - y2')^2 + (z1' - z2')^2"
                              : dist2("x", "'", "y", "'", 3);
    return "A o:B o':B " + binders("x") + " " + binders("x", "'") + " " + binders("y") + " " +
           binders("y", "'") + " . IOb(o) & IOb(o') & x4 = y4 & x4' = y4' & " +
           same_event("o", "x", "", "o'", "x", "'") + " & " + same_event("o", "y", "", "o'", "y", "'") +
           " -> " + dist2("x", "", "y", "", 3) + " = " + rhs;
}

Axiom ax_symd() {
    return single("AxSymd", axsymd_text(false), false,
                  "right-hand side is the primed spatial distance of x' and y'; the displayed form is "
                  "available as axsymd_literal()");
}

// AxCmv: wherever m sees itself, some inertial k agrees with m to first order
// around that event, i.e. the worldview transformation from m to k has the
// identity as derivative up to the translation fixed by the event.
Axiom ax_cmv() {
    std::string err2;
    for (int i = 1; i <= 4; ++i) {
        if (i > 1) err2 += " + ";
        err2 += "((" + c("w", i) + " - " + c("z", i) + ") - (" + c("y", i) + " - " + c("x", i) + "))^2";
    }
    std::string text = "A m:B " + binders("x") + " . W(m,m," + coords("x") + ") -> E k:B . IOb(k) & E " +
                       binders("z") + " . " + same_event("m", "x", "", "k", "z", "") +
                       " & A e:Q . 0 < e -> E d:Q . 0 < d & A " + binders("y") + " " + binders("w") + " . " +
                       same_event("m", "y", "", "k", "w", "") + " & " + dist2("y", "", "x", "") +
                       " < d*d -> " + within(dist2("y", "", "x", ""), err2);
    return single("AxCmv", text, true,
                  "epsilon-delta form: near each self-coordinatized event the transformation to a "
                  "co-moving inertial observer differs from a translation by o(|y - x|)");
}

Axiom ax_self_minus() {
    return single("AxSelf-", "A o:B " + binders("x") + " . W(o,o," + coords("x") + ") -> x1 = 0 & x2 = 0 & x3 = 0");
}

Axiom ax_ev_minus() {
    std::string part1 = "(A o:B o':B " + binders("x", "'") + " . Ob(o) & W(o',o," + coords("x", "'") +
                        ") -> E " + binders("x") + " . " + same_event("o", "x", "", "o'", "x", "'") + ")";
    std::string part2 = "(A o:B o':B " + binders("x") + " " + binders("x", "'") + " . Ob(o) & Ob(o') & (E b:B . W(o,b," +
                        coords("x") + ")) & " + same_event("o", "x", "", "o'", "x", "'") +
                        " -> E d:Q . 0 < d & A " + binders("y", "'") + " . " + dist2("y", "'", "x", "'") +
                        " < d*d -> E " + binders("y") + " . " + same_event("o", "y", "", "o'", "y", "'") + ")";
    return single("AxEv-", part1 + " & " + part2, true,
                  "(1) observers coordinatize the events where others see them; (2) a delta-ball "
                  "around a shared event in o' coordinates is coordinatized by o");
}

Axiom ax_ph_minus() {
    std::string sp = dist2("y", "", "x", "", 3);
    std::string t2 = sq_diff("y4", "x4");
    std::string part1 = "(A o:B p:B " + binders("x") + " . Ob(o) & Ph(p) & W(o,o," + coords("x") + ") & W(o,p," +
                        coords("x") + ") -> A e:Q . 0 < e -> E d:Q . 0 < d & A " + binders("y") + " . W(o,p," +
                        coords("y") + ") & " + dist2("y", "", "x", "") + " < d*d -> " +
                        within("(" + t2 + ")^2", "(" + sp + " - " + t2 + ")^2") + ")";
    std::string dev;
    for (int i = 1; i <= 3; ++i) {
        if (i > 1) dev += " + ";
        dev += "(" + c("y", i) + " - " + c("x", i) + " - v" + std::to_string(i) + "*(y4 - x4))^2";
    }
    std::string part2 = "(A o:B " + binders("x") + " v1:Q v2:Q v3:Q . Ob(o) & W(o,o," + coords("x") +
                        ") & v1*v1 + v2*v2 + v3*v3 = 1 -> E p:B . Ph(p) & W(o,p," + coords("x") +
                        ") & A e:Q . 0 < e -> E d:Q . 0 < d & A " + binders("y") + " . W(o,p," + coords("y") +
                        ") & " + dist2("y", "", "x", "") + " < d*d -> " + within(t2, dev) + ")";
    return single("AxPh-", part1 + " & " + part2, true,
                  "photons through an event on o's worldline have instantaneous speed 1 there, and o "
                  "can send one in every unit direction v");
}

Axiom ax_symt_minus() {
    std::string text =
        "A o:B o':B " + binders("x") + " " + binders("x", "'") + " . Ob(o) & Ob(o') & W(o,o," + coords("x") +
        ") & W(o,o'," + coords("x") + ") & " + same_event("o", "x", "", "o'", "x", "'") +
        " -> E r:Q . 0 < r & A e:Q . 0 < e -> E d:Q . 0 < d & (A " + binders("y") + " " + binders("y", "'") +
        " . W(o,o'," + coords("y") + ") & " + same_event("o", "y", "", "o'", "y", "'") + " & " +
        dist2("y", "", "x", "") + " < d*d -> " + within(sq_diff("y4", "x4"), "((y4' - x4') - r*(y4 - x4))^2") +
        ") & (A " + binders("z") + " " + binders("z", "'") + " . W(o',o," + coords("z", "'") + ") & " +
        same_event("o", "z", "", "o'", "z", "'") + " & " + dist2("z", "'", "x", "'") + " < d*d -> " +
        within(sq_diff("z4'", "x4'"), "((z4 - x4) - r*(z4' - x4'))^2") + ")";
    return single("AxSymt-", text, true,
                  "at a meeting event each observer sees the other's clock run at the same rate r");
}

// Multi-indices alpha over 4 coordinates with 1 <= |alpha| <= n.
void multi_indices(int n, std::vector<std::array<int, 4>>& out) {
    std::array<int, 4> a{};
    for (a[0] = 0; a[0] <= n; ++a[0])
        for (a[1] = 0; a[0] + a[1] <= n; ++a[1])
            for (a[2] = 0; a[0] + a[1] + a[2] <= n; ++a[2])
                for (a[3] = 0; a[0] + a[1] + a[2] + a[3] <= n; ++a[3])
                    if (a[0] + a[1] + a[2] + a[3] >= 1) out.push_back(a);
}

Axiom ax_diff(int n) {
    std::vector<std::array<int, 4>> alphas;
    multi_indices(n, alphas);
    auto coef = [](int j, const std::array<int, 4>& a) {
        return "c" + std::to_string(j) + "_" + std::to_string(a[0]) + std::to_string(a[1]) + std::to_string(a[2]) +
               std::to_string(a[3]);
    };
    std::string coef_binders;
    for (int j = 1; j <= 4; ++j)
        for (const auto& a : alphas) coef_binders += " " + coef(j, a) + ":Q";
    std::string err2;
    for (int j = 1; j <= 4; ++j) {
        std::string poly = c("x", j, "'");
        for (const auto& a : alphas) {
            std::string mono = coef(j, a);
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < a[i]; ++k) mono += "*(" + c("y", i + 1) + " - " + c("x", i + 1) + ")";
            poly += " + " + mono;
        }
        if (j > 1) err2 += " + ";
        err2 += "(" + c("y", j, "'") + " - (" + poly + "))^2";
    }
    std::string d2 = dist2("y", "", "x", "");
    std::string scale = "(" + d2 + ")";
    for (int k = 1; k < n; ++k) scale += "*(" + d2 + ")";
    std::string name = "AxDiff" + std::to_string(n);
    std::string text = "A o:B o':B " + binders("x") + " " + binders("x", "'") +
                       " . Ob(o) & Ob(o') & (E b:B . W(o,b," + coords("x") + ")) & " +
                       same_event("o", "x", "", "o'", "x", "'") + " -> E" + coef_binders +
                       " . A e:Q . 0 < e -> E d:Q . 0 < d & A " + binders("y") + " " + binders("y", "'") + " . " +
                       same_event("o", "y", "", "o'", "y", "'") + " & " + d2 + " < d*d -> " +
                       "!(e*e*" + scale + " < " + err2 + ")";
    return single(name, text, true,
                  "order-n Taylor expansion with Peano remainder at every coordinatized event");
}

Theory spec_rel() {
    Theory t;
    t.name = "SpecRel";
    t.axioms = {ax_field(), ax_self(), ax_ph(), ax_ev(), ax_symd()};
    return t;
}

SchemaGenerator ind_schema() {
    return SchemaGenerator{"IND", [](const FormulaPtr& phi, const std::string& v) {
                               return instantiate_ind(phi, v.empty() ? std::nullopt : std::optional<std::string>(v));
                           }};
}

}  // namespace

const Axiom* Theory::find(std::string_view axiom) const {
    for (const auto& a : axioms)
        if (a.name == axiom) return &a;
    return nullptr;
}

bool Theory::has_schema(std::string_view schema) const {
    for (const auto& s : schemas)
        if (s.name == schema) return true;
    return false;
}

std::vector<NamedFormula> Theory::sentences() const {
    std::vector<NamedFormula> out;
    for (const auto& a : axioms) out.insert(out.end(), a.formulas.begin(), a.formulas.end());
    return out;
}

Theory axiom_corpus(std::string_view name) {
    if (name == "SpecRel") return spec_rel();
    if (name == "AccRelMinus" || name == "AccRel") {
        Theory t = spec_rel();
        t.name = std::string(name);
        t.axioms.push_back(ax_cmv());
        if (name == "AccRel") t.schemas.push_back(ind_schema());
        return t;
    }
    auto parse_n = [&](std::string_view digits) -> int {
        if (digits.empty() || digits.size() > 2) return -1;
        int n = 0;
        for (char ch : digits) {
            if (ch < '0' || ch > '9') return -1;
            n = n * 10 + (ch - '0');
        }
        return n >= 1 ? n : -1;
    };
    int n = -1;
    if (name.substr(0, 7) == "GenRel(" && name.size() > 8 && name.back() == ')')
        n = parse_n(name.substr(7, name.size() - 8));
    else if (name.substr(0, 6) == "GenRel" && name.size() > 6)
        n = parse_n(name.substr(6));
    if (n >= 1) {
        Theory t;
        t.name = "GenRel(" + std::to_string(n) + ")";
        t.axioms = {ax_field(), ax_self_minus(), ax_ph_minus(), ax_ev_minus(), ax_symt_minus(), ax_diff(n)};
        t.schemas.push_back(ind_schema());
        return t;
    }
    throw UnknownTheory("unknown theory '" + std::string(name) +
                        "' (known: SpecRel, AccRelMinus, AccRel, GenRel(n))");
}

FormulaPtr axsymd_literal() {
    FormulaPtr f = parse(axsymd_text(true));
    check_sorts(f);
    return f;
}

std::vector<NamedFormula> theorem_corpus() {
    std::string hyp = "IOb(m) & IOb(k) & Ph(p) & W(m,k," + coords("x") + ") & W(m,p," + coords("x") + ") & W(m,k," +
                      coords("y") + ") & W(m,p,y1,y2,y3,t)";
    std::string lead = "A m:B k:B p:B " + binders("x") + " " + binders("y") + " t:Q . ";
    std::vector<NamedFormula> out;
    out.push_back({NamedFormula::Role::Theorem, "NoFTL.literal", p(lead + hyp + " -> t < y4")});
    out.push_back({NamedFormula::Role::Theorem, "NoFTL", p(lead + hyp + " & x4 < y4 -> t < y4")});
    std::string mu = dist2("x", "", "y", "", 3) + " - " + sq_diff("x4", "y4");
    std::string mu2 = dist2("x", "'", "y", "'", 3) + " - " + sq_diff("x4'", "y4'");
    out.push_back({NamedFormula::Role::Theorem, "MuInvariance",
                   p("A o:B o':B " + binders("x") + " " + binders("x", "'") + " " + binders("y") + " " +
                     binders("y", "'") + " . IOb(o) & IOb(o') & " + same_event("o", "x", "", "o'", "x", "'") +
                     " & " + same_event("o", "y", "", "o'", "y", "'") + " -> " + mu + " = " + mu2)});
    return out;
}

FormulaPtr theorem(std::string_view name) {
    for (auto& t : theorem_corpus())
        if (t.name == name) return t.formula;
    throw UnknownAxiom("unknown theorem '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------- IND

FormulaPtr instantiate_ind(const FormulaPtr& phi, std::optional<std::string> distinguished) {
    auto fv = free_vars(phi);
    std::string t;
    if (distinguished) {
        bool found = false;
        for (const auto& v : fv) {
            if (v.name != *distinguished) continue;
            if (v.sort != Sort::Quantity)
                throw NotQuantityVariable("'" + v.name + "' is body-sorted; IND needs a quantity variable");
            found = true;
        }
        if (!found) throw NotQuantityVariable("'" + *distinguished + "' is not a free variable of the formula");
        t = *distinguished;
    } else {
        std::vector<std::string> qs;
        for (const auto& v : fv)
            if (v.sort == Sort::Quantity) qs.push_back(v.name);
        bool has_t = false;
        for (const auto& q : qs) has_t |= q == "t";
        if (has_t)
            t = "t";
        else if (qs.size() == 1)
            t = qs.front();
        else
            throw NotQuantityVariable("cannot choose the distinguished quantity variable; name it explicitly");
    }

    std::set<std::string> taken = all_names(phi);
    taken.insert(t);
    std::string u = fresh_name("u", taken);
    taken.insert(u);
    std::string s = fresh_name("s", taken);
    taken.insert(s);
    std::string s2 = fresh_name("s'", taken);

    auto tv = var(t);
    auto bounded_by = [&](const std::string& b) { return forall(t, Sort::Quantity, implies(phi, le(tv, var(b)))); };
    FormulaPtr nonempty = exists(t, Sort::Quantity, phi);
    FormulaPtr bounded = exists(u, Sort::Quantity, bounded_by(u));
    FormulaPtr least = forall(s2, Sort::Quantity, implies(bounded_by(s2), le(var(s), var(s2))));
    FormulaPtr sup = exists(s, Sort::Quantity, land(bounded_by(s), least));
    FormulaPtr out = implies(land(nonempty, bounded), sup);
    for (auto it = fv.rbegin(); it != fv.rend(); ++it)
        if (it->name != t) out = forall(it->name, it->sort, out);
    return out;
}

// -------------------------------------------------------------- expansion

namespace {

struct AtomDefs {
    std::set<std::string>& taken;
    std::vector<std::pair<std::string, FormulaPtr>> defs;
    std::string zero, one;

    std::string fresh(const std::string& base) {
        std::string n = fresh_name(base, taken);
        taken.insert(n);
        return n;
    }

    TermPtr zero_var() {
        if (zero.empty()) {
            zero = fresh("z");
            std::string x = fresh("x");
            defs.emplace_back(zero, forall(x, Sort::Quantity, eq(add(var(zero), var(x)), var(x))));
        }
        return var(zero);
    }

    TermPtr one_var() {
        if (one.empty()) {
            one = fresh("u");
            std::string x = fresh("x");
            defs.emplace_back(one, forall(x, Sort::Quantity, eq(mul(var(one), var(x)), var(x))));
        }
        return var(one);
    }

    TermPtr lower(const TermPtr& t) {
        switch (t->kind) {
            case Term::Kind::Var: return t;
            case Term::Kind::Zero: return zero_var();
            case Term::Kind::One: return one_var();
            case Term::Kind::Numeral: {
                TermPtr u = one_var();
                TermPtr acc = u;
                for (unsigned long i = 1; i < t->numeral; ++i) acc = add(acc, u);
                return acc;
            }
            case Term::Kind::Add: return add(lower(t->lhs), lower(t->rhs));
            case Term::Kind::Mul: return mul(lower(t->lhs), lower(t->rhs));
            case Term::Kind::Square: {
                TermPtr a = lower(t->lhs);
                return mul(a, a);
            }
            case Term::Kind::Sub: {
                TermPtr a = lower(t->lhs);
                TermPtr b = lower(t->rhs);
                std::string d = fresh("d");
                defs.emplace_back(d, eq(add(b, var(d)), a));
                return var(d);
            }
            case Term::Kind::Neg: {
                TermPtr a = lower(t->lhs);
                TermPtr z = zero_var();
                std::string d = fresh("d");
                defs.emplace_back(d, eq(add(a, var(d)), z));
                return var(d);
            }
        }
        return t;
    }
};

bool term_defined(const TermPtr& t) {
    if (!t) return false;
    if (!t->is_primitive_kind()) return true;
    return term_defined(t->lhs) || term_defined(t->rhs);
}

FormulaPtr expand_rec(const FormulaPtr& f, std::set<std::string>& taken) {
    using K = Formula::Kind;
    if (f->kind == K::Ob) {
        std::string b = fresh_name("b", taken);
        taken.insert(b);
        std::vector<std::string> xs;
        for (int i = 1; i <= 4; ++i) {
            xs.push_back(fresh_name("x" + std::to_string(i), taken));
            taken.insert(xs.back());
        }
        FormulaPtr g = w(f->args[0], var(b, Sort::Body), var(xs[0]), var(xs[1]), var(xs[2]), var(xs[3]));
        for (int i = 3; i >= 0; --i) g = exists(xs[static_cast<std::size_t>(i)], Sort::Quantity, g);
        return exists(b, Sort::Body, g);
    }
    if (f->kind == K::IOb) return land(ib(f->args[0]), expand_rec(ob(f->args[0]), taken));
    if (f->is_atom()) {
        bool any = false;
        for (const auto& a : f->args) any |= term_defined(a);
        if (!any) return f;
        AtomDefs d{taken, {}, {}, {}};
        Formula copy = *f;
        for (auto& a : copy.args) a = d.lower(a);
        FormulaPtr body = std::make_shared<const Formula>(std::move(copy));
        std::vector<FormulaPtr> parts;
        for (const auto& def : d.defs) parts.push_back(def.second);
        parts.push_back(body);
        FormulaPtr g = land_all(parts);
        for (auto it = d.defs.rbegin(); it != d.defs.rend(); ++it) g = exists(it->first, Sort::Quantity, g);
        return g;
    }
    if (f->is_quantifier()) {
        FormulaPtr body = expand_rec(f->lhs, taken);
        if (body == f->lhs) return f;
        Formula copy = *f;
        copy.lhs = body;
        return std::make_shared<const Formula>(std::move(copy));
    }
    FormulaPtr l = expand_rec(f->lhs, taken);
    FormulaPtr r = f->rhs ? expand_rec(f->rhs, taken) : nullptr;
    if (l == f->lhs && r == f->rhs) return f;
    Formula copy = *f;
    copy.lhs = l;
    copy.rhs = r;
    return std::make_shared<const Formula>(std::move(copy));
}

}  // namespace

FormulaPtr expand_definitions(const FormulaPtr& f) {
    std::set<std::string> taken = all_names(f);
    return expand_rec(f, taken);
}

bool uses_defined_symbols(const FormulaPtr& f) {
    if (!f) return false;
    if (f->kind == Formula::Kind::Ob || f->kind == Formula::Kind::IOb) return true;
    for (const auto& a : f->args)
        if (term_defined(a)) return true;
    return uses_defined_symbols(f->lhs) || uses_defined_symbols(f->rhs);
}

}  // namespace axrel::syntax
