#include "axrel/model/structure.hpp"

#include "axrel/errors.hpp"

#include <cmath>

namespace axrel {

bool DomainBox::contains(const Coord4& x) const {
    for (std::size_t i = 0; i < 4; ++i) {
        if (lo[i] && !(*lo[i] < x[i])) return false;
        if (hi[i] && !(x[i] < *hi[i])) return false;
    }
    return true;
}

bool DomainBox::contains(const std::array<double, 4>& x) const {
    for (std::size_t i = 0; i < 4; ++i) {
        if (lo[i] && !(lo[i]->to_double() < x[i])) return false;
        if (hi[i] && !(x[i] < hi[i]->to_double())) return false;
    }
    return true;
}

AffineChart::AffineChart(AffineMap to_obs, std::optional<DomainBox> dom)
    : to_observer(std::move(to_obs)), to_reference(to_observer.inverse()), domain(std::move(dom)) {}

AffineChart::AffineChart(const ObserverParams& p)
    : to_observer(observer_chart(p.velocity, p.quaternion, p.origin).affine()),
      to_reference(to_observer.inverse()),
      params(p) {}

SmoothChart rindler_chart(const ExactReal& g) {
    if (!(g > 0)) throw InvalidConfig("Rindler chart needs g > 0");
    double gd = g.to_double();
    double r0 = 1.0 / gd;
    SmoothChart c;
    c.to_reference = [gd, r0](const std::array<double, 4>& o) {
        double radius = r0 + o[0];
        return std::array<double, 4>{radius * std::cosh(gd * o[3]), o[1], o[2], radius * std::sinh(gd * o[3])};
    };
    c.to_observer = [gd, r0](const std::array<double, 4>& r) {
        double radius = std::sqrt(r[0] * r[0] - r[3] * r[3]);
        return std::array<double, 4>{radius - r0, r[1], r[2], std::atanh(r[3] / r[0]) / gd};
    };
    c.order = 1000;  // analytic
    c.lo[0] = -r0;
    c.tolerance = 1e-9;
    c.descriptor = "{\"kind\":\"rindler\",\"g\":\"" + g.to_string() + "\"}";
    return c;
}

Worldline rindler_worldline(const ExactReal& g, const ExactReal& xi) {
    ExactReal rho = ExactReal(1) / g + xi;
    return Worldline::hyperbolic(Vec3(0, 0, 0), ExactReal(0), Vec3(1, 0, 0), rho);
}

std::string EventContent::describe() const {
    std::string out = "{";
    for (std::size_t i = 0; i < named.size(); ++i) out += (i ? ", " : "") + named[i];
    if (photons) out += std::string(named.empty() ? "" : ", ") + "<all photons through the event>";
    if (inertial) out += std::string(named.empty() && !photons ? "" : ", ") + "<all inertial bodies through the event>";
    return out + "}";
}

void Structure::add_body(Body b) {
    if (index_.count(b.id)) throw Error("duplicate body '" + b.id + "'");
    index_[b.id] = bodies_.size();
    bodies_.push_back(std::move(b));
}

void Structure::set_chart(const std::string& observer, Chart chart) {
    if (!index_.count(observer)) throw Error("chart for unknown body '" + observer + "'");
    charts_.insert_or_assign(observer, std::move(chart));
}

void Structure::set_families(bool photons, bool inertial) {
    photon_family_ = photons;
    inertial_family_ = inertial;
}

const Body* Structure::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &bodies_[it->second];
}

const Body& Structure::body(const std::string& id) const {
    const Body* b = find(id);
    if (!b) throw Error("unknown body '" + id + "'");
    return *b;
}

bool Structure::is_inertial_observer(const std::string& id) const {
    const Body* b = find(id);
    return b && b->inertial && is_observer(id);
}

std::vector<std::string> Structure::observers() const {
    std::vector<std::string> out;
    for (const auto& b : bodies_)
        if (charts_.count(b.id)) out.push_back(b.id);
    return out;
}

const Chart* Structure::chart(const std::string& observer) const {
    auto it = charts_.find(observer);
    return it == charts_.end() ? nullptr : &it->second;
}

bool Structure::all_affine() const {
    for (const auto& [_, c] : charts_)
        if (!std::holds_alternative<AffineChart>(c)) return false;
    return true;
}

Truth Structure::holds_W(const std::string& observer, const Body& b, const Coord4& x) const {
    const Chart* c = chart(observer);
    if (!c) throw NotAnObserver("'" + observer + "' is not an observer");
    if (auto* a = std::get_if<AffineChart>(c)) {
        if (a->domain && !a->domain->contains(x)) return Truth::False;
        return b.worldline.contains(a->to_reference(x));
    }
    const auto& s = std::get<SmoothChart>(*c);
    auto xd = x.to_double();
    for (std::size_t i = 0; i < 4; ++i)
        if (!(s.lo[i] < xd[i] && xd[i] < s.hi[i])) return Truth::False;
    double tol = s.tolerance;
    if (auto* sm = std::get_if<SmoothNumeric>(&b.worldline.data())) tol = std::max(tol, sm->tolerance);
    return b.worldline.contains_numeric(s.to_reference(xd), tol);
}

Truth Structure::holds_W(const std::string& observer, const std::string& body_id, const Coord4& x) const {
    return holds_W(observer, body(body_id), x);
}

std::optional<Coord4> Structure::to_reference(const std::string& observer, const Coord4& x) const {
    const Chart* c = chart(observer);
    if (!c) throw NotAnObserver("'" + observer + "' is not an observer");
    auto* a = std::get_if<AffineChart>(c);
    if (!a) throw Error("chart of '" + observer + "' is not affine");
    if (a->domain && !a->domain->contains(x)) return std::nullopt;
    return a->to_reference(x);
}

std::optional<Coord4> Structure::from_reference(const std::string& observer, const Coord4& r) const {
    const Chart* c = chart(observer);
    if (!c) throw NotAnObserver("'" + observer + "' is not an observer");
    auto* a = std::get_if<AffineChart>(c);
    if (!a) throw Error("chart of '" + observer + "' is not affine");
    Coord4 x = a->to_observer(r);
    if (a->domain && !a->domain->contains(x)) return std::nullopt;
    return x;
}

EventContent Structure::event_at(const std::string& observer, const Coord4& x) const {
    EventContent out;
    for (const auto& b : bodies_)
        if (holds_W(observer, b, x) == Truth::True) out.named.push_back(b.id);
    bool in_domain = true;
    const Chart* c = chart(observer);
    if (auto* a = std::get_if<AffineChart>(c)) in_domain = !a->domain || a->domain->contains(x);
    out.photons = photon_family_ && in_domain;
    out.inertial = inertial_family_ && in_domain;
    return out;
}

Coord4 Structure::event_correspondence(const std::string& o, const std::string& o2, const Coord4& x) const {
    std::optional<Coord4> r = to_reference(o, x);
    if (!r) throw Error("location " + x.to_string() + " is outside the chart of '" + o + "'");
    std::optional<Coord4> y = from_reference(o2, *r);
    if (!y) throw Error("event is outside the chart of '" + o2 + "'");
    return *y;
}

Structure standard_minkowski(const std::vector<ObserverSpec>& observers) {
    Structure s("minkowski");
    s.set_families(true, true);
    for (const auto& spec : observers) {
        if (spec.velocity.norm2() >= 1)
            throw SuperluminalObserver("observer '" + spec.name + "' would move at speed " +
                                       sqrt(spec.velocity.norm2()).to_string());
        s.add_body(inertial_body(spec.name, spec.origin, spec.velocity));
        s.set_chart(spec.name, AffineChart(ObserverParams{spec.velocity, spec.quaternion, spec.origin}));
    }
    return s;
}

Structure reference_minkowski() {
    std::vector<ObserverSpec> specs;
    specs.push_back({"rest", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4()});
    specs.push_back({"boost_x", Vec3(ExactReal::rational(3, 5), 0, 0), {1, 0, 0, 0}, Coord4()});
    specs.push_back({"boost_y", Vec3(0, ExactReal::rational(4, 5), 0), {1, 0, 0, 0}, Coord4()});
    specs.push_back({"rotated", Vec3(ExactReal::rational(1, 3), ExactReal::rational(-1, 4), ExactReal::rational(1, 5)),
                     {2, 1, -1, 3}, Coord4(1, -2, ExactReal::rational(1, 2), 3)});
    Structure s = standard_minkowski(specs);
    s.add_constant(ExactReal::rational(3, 5));
    s.add_constant(ExactReal::rational(4, 5));
    return s;
}

Structure galilean_model(const std::vector<ObserverSpec>& observers) {
    Structure s("galilean");
    s.set_families(true, true);
    for (const auto& spec : observers) {
        s.add_body(inertial_body(spec.name, spec.origin, spec.velocity));
        // x' = R (x - a - v (t - a4)), t' = t - a4
        Matrix4 l = Matrix4::identity();
        for (std::size_t i = 0; i < 3; ++i) l(i, 3) = -spec.velocity[i];
        Matrix4 m = rotation(spec.quaternion) * l;
        Coord4 shift = m * spec.origin;
        s.set_chart(spec.name, AffineChart(AffineMap(m, ExactReal(-1) * shift)));
    }
    return s;
}

}  // namespace axrel
