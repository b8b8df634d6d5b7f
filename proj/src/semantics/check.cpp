#include "axrel/semantics/check.hpp"

#include "axrel/errors.hpp"
#include "axrel/kinematics/kinematics.hpp"
#include "axrel/util/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace axrel {

using namespace syntax;

namespace {

ExactReal q(long n, long d = 1) { return ExactReal::rational(n, d); }

BodyRef ref(const Structure& s, const std::string& id) { return std::make_shared<Body>(s.body(id)); }

void bind_coords(std::vector<Binding>& ev, const std::string& prefix, const std::string& suffix, const Coord4& x) {
    for (std::size_t i = 0; i < 4; ++i) ev.push_back({prefix + std::to_string(i + 1) + suffix, x[i]});
}

/// Affine chart without a domain, or null.
const AffineChart* plain_affine(const Structure& s, const std::string& o) {
    const auto* a = std::get_if<AffineChart>(s.chart(o));
    return a && !a->domain ? a : nullptr;
}

std::vector<std::string> inertial_observers(const Structure& s) {
    std::vector<std::string> out;
    for (const auto& o : s.observers())
        if (s.is_inertial_observer(o)) out.push_back(o);
    return out;
}

bool straight_unbounded(const Body& b) {
    const Worldline& w = b.worldline;
    bool straight = std::holds_alternative<InertialLine>(w.data()) || std::holds_alternative<PhotonLine>(w.data());
    return straight && !w.t_lo() && !w.t_hi();
}

const std::vector<Vec3>& null_directions() {
    static const std::vector<Vec3> dirs{Vec3(1, 0, 0),         Vec3(0, 1, 0),         Vec3(0, 0, 1),
                                        Vec3(-1, 0, 0),        Vec3(0, -1, 0),        Vec3(0, 0, -1),
                                        Vec3(q(3, 5), q(4, 5), 0), Vec3(0, q(3, 5), q(4, 5)), Vec3(q(4, 5), 0, q(3, 5)),
                                        Vec3(q(2, 3), q(1, 3), q(2, 3))};
    return dirs;
}

ExactReal form(const Matrix4& m, const Coord4& a, const Coord4& b) {
    ExactReal r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (!m(i, j).is_zero()) r += a[i] * m(i, j) * b[j];
    return r;
}

// ------------------------------------------------------------ verifiers

/// o's worldline is the time axis of its own chart. With `both_ways` false
/// only the inclusion W(o,o,x) -> x on the axis is needed, and every
/// observer counts, not just inertial ones.
std::optional<Verdict> certify_self(const Structure& s, bool both_ways) {
    std::vector<std::string> obs = both_ways ? inertial_observers(s) : s.observers();
    for (const auto& o : obs) {
        const Body& body = s.body(o);
        if (!plain_affine(s, o) || !straight_unbounded(body)) return std::nullopt;
        auto line = line_in_chart(s, o, body);
        if (!line) return std::nullopt;
        if (line->point.space().is_zero() && line->direction.space().is_zero()) continue;
        Coord4 x = line->point.space().is_zero() ? line->point + line->direction : line->point;
        std::vector<Binding> ev{{"o", ref(s, o)}};
        bind_coords(ev, "x", "", x);
        return fails(Basis::Certified, std::move(ev), "'" + o + "' is off the time axis of its own chart");
    }
    return holds(Basis::Certified, "every observer's worldline is the time axis of its chart");
}

std::optional<Verdict> certify_ph(const Structure& s) {
    if (!s.photon_family()) return std::nullopt;
    for (const auto& o : inertial_observers(s)) {
        const AffineChart* a = plain_affine(s, o);
        if (!a) return std::nullopt;
        const Matrix4& l = a->to_reference.linear();
        Matrix4 m = l.transpose() * Matrix4::eta() * l;
        ExactReal c = m(0, 0);
        bool conformal = !c.is_zero();
        for (std::size_t i = 0; i < 4 && conformal; ++i)
            for (std::size_t j = 0; j < 4 && conformal; ++j)
                conformal = m(i, j) == c * Matrix4::eta()(i, j);
        if (conformal) continue;
        // a difference vector null for exactly one of the two forms
        std::optional<Coord4> bad;
        for (const auto& d : null_directions()) {
            Coord4 v(d, 1);
            if (!form(m, v, v).is_zero()) {
                bad = v;
                break;
            }
            // m-null vectors (d, s): m33 s^2 + 2 b s + c0 = 0
            ExactReal b, c0;
            for (std::size_t i = 0; i < 3; ++i) {
                b += m(i, 3) * d[i];
                for (std::size_t j = 0; j < 3; ++j) c0 += d[i] * m(i, j) * d[j];
            }
            std::vector<ExactReal> ss;
            if (m(3, 3).is_zero()) {
                if (!b.is_zero()) ss.push_back(-c0 / (ExactReal(2) * b));
            } else {
                ExactReal disc = b * b - m(3, 3) * c0;
                if (!(disc < 0)) {
                    ss.push_back((-b + sqrt(disc)) / m(3, 3));
                    ss.push_back((-b - sqrt(disc)) / m(3, 3));
                }
            }
            for (const auto& t : ss) {
                Coord4 w(d, t);
                if (!mu(Coord4(), w).is_zero()) {
                    bad = w;
                    break;
                }
            }
            if (bad) break;
        }
        if (!bad) return std::nullopt;
        std::vector<Binding> ev{{"o", ref(s, o)}};
        bind_coords(ev, "x", "", Coord4());
        bind_coords(ev, "x", "'", *bad);
        return fails(Basis::Certified, std::move(ev),
                     "chart of '" + o + "' does not preserve the light cone");
    }
    return holds(Basis::Certified, "observer charts are conformal to eta: light cones are preserved");
}

std::optional<Verdict> certify_ev(const Structure& s) {
    for (const auto& o : inertial_observers(s))
        if (!plain_affine(s, o)) return std::nullopt;
    return holds(Basis::Certified, "affine bijective charts: every event is seen by every observer");
}

void null_space_row(const ExactReal& r0, const ExactReal& r1, const ExactReal& r2, std::vector<Coord4>& out) {
    if (r0.is_zero() && r1.is_zero() && r2.is_zero()) {
        out = {Coord4(1, 0, 0, 0), Coord4(0, 1, 0, 0), Coord4(0, 0, 1, 0)};
    } else if (!r0.is_zero()) {
        out = {Coord4(-r1, r0, 0, 0), Coord4(-r2, 0, r0, 0)};
    } else if (!r1.is_zero()) {
        out = {Coord4(1, 0, 0, 0), Coord4(0, -r2, r1, 0)};
    } else {
        out = {Coord4(1, 0, 0, 0), Coord4(0, 1, 0, 0)};
    }
}

std::optional<Verdict> certify_symd(const Structure& s) {
    if (!s.photon_family() && !s.inertial_family()) return std::nullopt;
    auto obs = inertial_observers(s);
    for (const auto& o : obs)
        if (!plain_affine(s, o)) return std::nullopt;
    for (const auto& o : obs) {
        for (const auto& o2 : obs) {
            AffineMap w = plain_affine(s, o2)->to_observer.compose(plain_affine(s, o)->to_reference);
            const Matrix4& a = w.linear();
            // simultaneous for o: d4 = 0; for o2: (A d)4 = 0
            std::vector<Coord4> basis;
            null_space_row(a(3, 0), a(3, 1), a(3, 2), basis);
            auto bil = [&](const Coord4& u, const Coord4& v) {
                Coord4 au = a * u, av = a * v;
                return u.space().dot(v.space()) - au.space().dot(av.space());
            };
            std::optional<Coord4> bad;
            for (std::size_t i = 0; i < basis.size() && !bad; ++i) {
                if (!bil(basis[i], basis[i]).is_zero()) bad = basis[i];
                for (std::size_t j = i + 1; j < basis.size() && !bad; ++j)
                    if (!bil(basis[i], basis[j]).is_zero()) bad = basis[i] + basis[j];
            }
            if (!bad) continue;
            std::vector<Binding> ev{{"o", ref(s, o)}, {"o'", ref(s, o2)}};
            bind_coords(ev, "x", "", Coord4());
            bind_coords(ev, "x", "'", w(Coord4()));
            bind_coords(ev, "y", "", *bad);
            bind_coords(ev, "y", "'", w(*bad));
            return fails(Basis::Certified, std::move(ev), "'" + o + "' and '" + o2 + "' disagree on a simultaneous distance");
        }
    }
    return holds(Basis::Certified, "worldview maps preserve distances between simultaneous events");
}

std::optional<Verdict> certify_cmv(const Structure& s) {
    for (const auto& o : s.observers())
        if (!s.is_inertial_observer(o)) return std::nullopt;
    return holds(Basis::Certified, "every observer is inertial and co-moves with itself");
}

/// Minus-axioms of GenRel in a structure whose observers are all inertial
/// with domain-free Poincare charts: every chart is a smooth (affine)
/// diffeomorphism onto the reference chart, so the local axioms follow from
/// their global counterparts.
std::optional<Verdict> certify_flat(const Structure& s, const std::string& axiom) {
    if (!s.photon_family() || !s.inertial_family()) return std::nullopt;
    for (const auto& o : s.observers()) {
        const AffineChart* a = plain_affine(s, o);
        if (!s.is_inertial_observer(o) || !a || !a->is_poincare() || !straight_unbounded(s.body(o))) return std::nullopt;
    }
    return holds(Basis::Certified, axiom + ": all charts are domain-free Poincare maps");
}

std::optional<Verdict> certified(const Structure& s, const std::string& axiom) {
    if (axiom == "AxSelf") return certify_self(s, true);
    if (axiom == "AxSelf-") return certify_self(s, false);
    if (axiom == "AxPh") return certify_ph(s);
    if (axiom == "AxEv") return certify_ev(s);
    if (axiom == "AxSymd") return certify_symd(s);
    if (axiom == "AxCmv") return certify_cmv(s);
    if (axiom == "AxPh-" || axiom == "AxEv-" || axiom == "AxSymt-" || axiom.rfind("AxDiff", 0) == 0)
        return certify_flat(s, axiom);
    return std::nullopt;
}

const Axiom* find_axiom(std::string_view name, Theory& holder) {
    for (const char* t : {"SpecRel", "AccRel"}) {
        holder = axiom_corpus(t);
        if (const Axiom* a = holder.find(name)) return a;
    }
    std::string n = "1";
    if (name.rfind("AxDiff", 0) == 0 && name.size() > 6) n = std::string(name.substr(6));
    try {
        holder = axiom_corpus("GenRel(" + n + ")");
    } catch (const Error&) {
        return nullptr;
    }
    return holder.find(name);
}

FormulaPtr p(const std::string& text) { return parse(text, {{"o", Sort::Body}, {"k", Sort::Body}}); }

std::vector<Value> body_values(const Structure& s) {
    std::vector<Value> out;
    for (const auto& b : s.bodies()) out.push_back(std::make_shared<Body>(b));
    if (s.photon_family()) out.push_back(std::make_shared<Body>(family_photon(Coord4(), Vec3(1, 0, 0))));
    if (s.inertial_family()) out.push_back(std::make_shared<Body>(family_inertial(Coord4(), Vec3(0, 0, 0))));
    return out;
}

bool body_position_param(const FormulaPtr& f, const std::set<std::string>& params) {
    if (!f) return false;
    if (f->kind == Formula::Kind::W) return params.count(f->args[1]->name) && f->args[1]->name != f->args[0]->name;
    return body_position_param(f->lhs, params) || body_position_param(f->rhs, params);
}

}  // namespace

Verdict check_sentence(const Structure& s, const NamedFormula& f, const Budget& b) {
    if (auto v = certified(s, f.name)) return *v;
    return evaluate(s, f.formula, {}, b);
}

Verdict check_axiom(const Structure& s, std::string_view axiom, const Budget& b) {
    if (axiom == "IND") {
        std::size_t n = 0;
        for (const auto& inst : ind_battery()) {
            Verdict v = check_ind(s, inst, b);
            if (!v.holds()) {
                v.note = inst.name + ": " + v.note;
                return v;
            }
            ++n;
        }
        return holds(Basis::Decided, std::to_string(n) + " instances, suprema exact");
    }
    Theory holder;
    const Axiom* a = find_axiom(axiom, holder);
    if (!a) throw UnknownAxiom("unknown axiom '" + std::string(axiom) + "'");
    if (a->name == "AxField") {
        BudgetReport total;
        for (const auto& f : a->formulas) {
            Verdict v = evaluate(s, f.formula, {}, b);
            total.samples += v.budget.samples;
            total.solver_calls += v.budget.solver_calls;
            total.steps += v.budget.steps;
            if (v.fails()) {
                v.note = f.name + ": " + v.note;
                return v;
            }
        }
        Verdict v = holds(Basis::Certified, "ordered field of the exact reals; sentences also sampled");
        v.budget = total;
        return v;
    }
    return check_sentence(s, a->formulas.front(), b);
}

std::vector<IndInstance> ind_battery() {
    std::vector<std::pair<std::string, std::string>> src{
        {"sqrt2", "t*t < 2"},
        {"sqrt2.closed", "t*t < 2 | t*t = 2"},
        {"unit", "0 < t & t < 1"},
        {"between.roots", "(t - 1)*(t - 3) < 0"},
        {"sqrt3.points", "t*t = 3"},
        {"half.sqrt2", "2*t*t < 1"},
        {"cut", "t*t < 2 & t < 1"},
        {"union", "t*t < 2 | 3 < t & t < 4"},
        {"golden", "t*t + t < 1"},
        {"point", "t = 5"},
        {"annulus", "t*t < 4 & !(t*t < 1)"},
        {"shell", "1 < t*t & t*t < 9"},
        {"window", "a < t & t < a + 1"},
        {"own.clock", "W(o,o,0,0,0,t) & t < 3"},
        {"own.clock.sqrt2", "W(o,o,0,0,0,t) & t*t < 2"},
        {"position", "W(o,k,t,0,0,1)"},
        {"meeting", "W(o,k,0,0,0,t) & 0 < t & t < 5"},
        {"position.or.unit", "W(o,k,t,0,0,2) | t*t < 1"},
        {"clock.squared", "W(o,o,0,0,0,t*t) & t < 2"},
        {"off.axis", "!W(o,o,t,0,0,1) & t*t < 1"},
    };
    std::vector<IndInstance> out;
    for (const auto& [name, text] : src) out.push_back({name, p(text), "t"});
    return out;
}

Verdict check_ind(const Structure& s, const IndInstance& inst, const Budget& b) {
    std::vector<FreeVar> params;
    for (const auto& fv : free_vars(inst.phi))
        if (fv.name != inst.t) params.push_back(fv);
    std::set<std::string> body_params;
    std::vector<std::vector<Value>> domains;
    bool sampled = false;
    for (const auto& fv : params) {
        if (fv.sort == Sort::Body) {
            body_params.insert(fv.name);
            domains.push_back(body_values(s));
        } else {
            std::vector<Value> vals{ExactReal(0), ExactReal(1), ExactReal(-1), q(1, 2)};
            Rng rng(b.seed, "ind." + inst.name + "." + fv.name);
            for (std::size_t k = 0; k < b.samples; ++k) vals.push_back(rng.rational(10, 12));
            domains.push_back(std::move(vals));
            sampled = true;
        }
    }
    if (!body_params.empty() && (s.photon_family() || s.inertial_family()) && body_position_param(inst.phi, body_params))
        sampled = true;

    auto ub = [&](const std::string& bound) {
        return forall(inst.t, Sort::Quantity, implies(inst.phi, le(var(inst.t), var(bound))));
    };
    FormulaPtr least = forall("s'", Sort::Quantity, implies(ub("s'"), le(var("s"), var("s'"))));
    FormulaPtr conclusion = land(ub("s"), least);

    BudgetReport total;
    std::size_t nonempty = 0, assignments = 0;
    std::vector<Binding> first;
    std::vector<std::string> sups;
    std::vector<std::size_t> idx(domains.size(), 0);
    while (true) {
        Assignment a;
        for (std::size_t i = 0; i < params.size(); ++i) a.bind(params[i].name, domains[i][idx[i]]);
        ++assignments;
        auto set = definable_set(s, inst.phi, inst.t, a, b);
        ++total.solver_calls;
        if (!set) return unknown("set of " + inst.t + " is not decided for " + a.key());
        if (set->nonempty && set->bounded_above) {
            ++nonempty;
            a.bind("s", *set->sup);
            Verdict c = evaluate(s, conclusion, a, b);
            total.steps += c.budget.steps;
            if (!c.holds() || c.basis == Basis::Sampled) {
                std::vector<Binding> ev = a.bindings();
                return c.holds() ? unknown("supremum " + set->sup->to_string() + " not confirmed exactly")
                                 : fails(Basis::Decided, ev, "no least upper bound at " + a.key());
            }
            std::string sup = set->sup->to_string();
            if (std::find(sups.begin(), sups.end(), sup) == sups.end()) sups.push_back(sup);
            if (first.empty()) first = a.bindings();
        }
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < domains[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    std::string note = std::to_string(nonempty) + " of " + std::to_string(assignments) +
                       " assignments bounded and nonempty; suprema";
    for (std::size_t i = 0; i < sups.size() && i < 6; ++i) note += " " + sups[i];
    if (sups.size() > 6) note += " ...";
    if (sups.empty()) note += " none (vacuous)";
    Verdict v = holds(sampled ? Basis::Sampled : Basis::Decided, note);
    v.evidence = first;
    v.budget = total;
    v.budget.samples = assignments;
    return v;
}

bool TheoryReport::all_hold() const {
    return std::all_of(records.begin(), records.end(), [](const AxiomRecord& r) { return r.verdict.holds(); });
}

TheoryReport check_theory(const Structure& s, const Theory& t, const Budget& b) {
    TheoryReport r{t.name, s.name(), b, {}};
    for (const auto& a : t.axioms) {
        if (a.name == "AxField") {
            r.records.push_back({a.name, check_axiom(s, a.name, b)});
            continue;
        }
        for (const auto& f : a.formulas) r.records.push_back({f.name, check_sentence(s, f, b)});
    }
    if (t.has_schema("IND"))
        for (const auto& inst : ind_battery()) r.records.push_back({"IND[" + inst.name + "]", check_ind(s, inst, b)});
    return r;
}

std::string TheoryReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "axrel-report/1";
    j["theory"] = theory;
    j["model"] = model;
    j["seed"] = budget.seed;
    j["samples"] = budget.samples;
    j["max_steps"] = budget.max_steps;
    j["all_hold"] = all_hold();
    auto& arr = j["axioms"] = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
        const Verdict& v = rec.verdict;
        nlohmann::ordered_json e;
        e["name"] = rec.name;
        e["outcome"] = outcome_name(v.outcome);
        e["basis"] = v.outcome == Outcome::Unknown ? nullptr : nlohmann::ordered_json(basis_name(v.basis));
        auto& ev = e["evidence"] = nlohmann::ordered_json::array();
        for (const auto& bnd : v.evidence) ev.push_back({{"name", bnd.name}, {"value", value_string(bnd.value)}});
        e["note"] = v.note;
        e["budget"] = {{"samples", v.budget.samples},
                       {"solver_calls", v.budget.solver_calls},
                       {"steps", v.budget.steps},
                       {"exhausted", v.budget.exhausted}};
        if (v.tolerance) e["tolerance"] = *v.tolerance;
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string TheoryReport::to_text() const {
    std::size_t w = 5;
    for (const auto& r : records) w = std::max(w, r.name.size());
    std::ostringstream os;
    os << theory << " on " << (model.empty() ? "<model>" : model) << " (seed " << budget.seed << ", samples "
       << budget.samples << ")\n";
    os << std::left << std::setw(static_cast<int>(w) + 2) << "axiom" << std::setw(20) << "verdict" << "notes\n";
    for (const auto& r : records) {
        os << std::setw(static_cast<int>(w) + 2) << r.name << std::setw(20) << r.verdict.label() << r.verdict.note;
        if (r.verdict.fails()) {
            os << " [";
            for (std::size_t i = 0; i < r.verdict.evidence.size(); ++i)
                os << (i ? " " : "") << r.verdict.evidence[i].name << "=" << value_string(r.verdict.evidence[i].value);
            os << "]";
        }
        os << "\n";
    }
    bool failed = std::any_of(records.begin(), records.end(), [](const AxiomRecord& r) { return r.verdict.fails(); });
    os << (all_hold() ? "all axioms hold" : failed ? "some axioms fail" : "some axioms are undecided") << "\n";
    return os.str();
}

}  // namespace axrel
