#include "axrel/model/worldline.hpp"

#include "axrel/errors.hpp"

#include <cmath>

namespace axrel {

Truth truth_not(Truth a) {
    if (a == Truth::Unknown) return a;
    return a == Truth::True ? Truth::False : Truth::True;
}

Truth truth_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}

Truth truth_or(Truth a, Truth b) { return truth_not(truth_and(truth_not(a), truth_not(b))); }

const char* truth_name(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "unknown";
    }
}

Worldline Worldline::inertial(Coord4 point, Vec3 velocity) {
    if (velocity.norm2() >= 1)
        throw SuperluminalVelocity("inertial speed " + sqrt(velocity.norm2()).to_string() + " is not below 1");
    return Worldline(InertialLine{std::move(point), std::move(velocity)});
}

Worldline Worldline::inertial_unchecked(QuarantineKey, Coord4 point, Vec3 velocity) {
    return Worldline(InertialLine{std::move(point), std::move(velocity)});
}

Worldline Worldline::photon(Coord4 point, Vec3 direction) {
    if (direction.norm2() != 1) throw InvalidWorldline("photon direction must have length exactly 1");
    return Worldline(PhotonLine{std::move(point), std::move(direction)});
}

Worldline Worldline::piecewise(std::vector<Coord4> events) {
    if (events.size() < 2) throw InvalidWorldline("a piecewise worldline needs at least two events");
    for (std::size_t i = 1; i < events.size(); ++i)
        if (!(events[i - 1].time() < events[i].time()))
            throw InvalidWorldline("breakpoint times must increase strictly");
    return Worldline(PiecewiseInertial{std::move(events)});
}

Worldline Worldline::hyperbolic(Vec3 center, ExactReal t_center, Vec3 direction, ExactReal rho) {
    if (!(rho > 0)) throw InvalidWorldline("hyperbolic worldline needs rho > 0");
    if (direction.norm2() != 1) throw InvalidWorldline("acceleration direction must have length exactly 1");
    return Worldline(HyperbolicLine{std::move(center), std::move(t_center), std::move(direction), std::move(rho)});
}

Worldline Worldline::smooth(SmoothNumeric curve) {
    if (curve.order < 1) throw InvalidWorldline("declared differentiability order must be at least 1");
    if (!curve.position) throw InvalidWorldline("smooth worldline without a position function");
    if (!(curve.t_min < curve.t_max)) throw InvalidWorldline("smooth worldline with empty domain");
    return Worldline(std::move(curve));
}

Worldline Worldline::with_domain(std::optional<ExactReal> lo, std::optional<ExactReal> hi) const {
    if (lo && hi && *hi < *lo) throw InvalidWorldline("empty worldline domain");
    Worldline w = *this;
    w.lo_ = std::move(lo);
    w.hi_ = std::move(hi);
    return w;
}

const char* Worldline::kind_name() const {
    switch (data_.index()) {
        case 0: return "inertial";
        case 1: return "photon";
        case 2: return "piecewise";
        case 3: return "hyperbolic";
        default: return "smooth";
    }
}

bool Worldline::in_domain(const ExactReal& t) const {
    if (lo_ && t < *lo_) return false;
    if (hi_ && t > *hi_) return false;
    if (auto* p = std::get_if<PiecewiseInertial>(&data_))
        return !(t < p->events.front().time()) && !(t > p->events.back().time());
    if (auto* s = std::get_if<SmoothNumeric>(&data_)) {
        double d = t.to_double();
        return d >= s->t_min && d <= s->t_max;
    }
    return true;
}

std::optional<Coord4> Worldline::at_time(const ExactReal& t) const {
    if (!in_domain(t)) return std::nullopt;
    if (auto* l = std::get_if<InertialLine>(&data_)) {
        ExactReal s = t - l->point.time();
        return Coord4(l->point.space() + s * l->velocity, t);
    }
    if (auto* p = std::get_if<PhotonLine>(&data_)) {
        ExactReal s = t - p->point.time();
        return Coord4(p->point.space() + s * p->direction, t);
    }
    if (auto* w = std::get_if<PiecewiseInertial>(&data_)) {
        const auto& ev = w->events;
        for (std::size_t i = 1; i < ev.size(); ++i) {
            if (t > ev[i].time()) continue;
            const Coord4& a = ev[i - 1];
            const Coord4& b = ev[i];
            if (t == b.time()) return b;
            ExactReal f = (t - a.time()) / (b.time() - a.time());
            return Coord4(a.space() + f * (b.space() - a.space()), t);
        }
        return std::nullopt;
    }
    if (auto* h = std::get_if<HyperbolicLine>(&data_)) {
        ExactReal dt = t - h->t_center;
        return Coord4(h->center + sqrt(h->rho * h->rho + dt * dt) * h->direction, t);
    }
    return std::nullopt;
}

std::optional<std::array<double, 3>> Worldline::at_time_numeric(double t) const {
    if (auto* s = std::get_if<SmoothNumeric>(&data_)) {
        if (t < s->t_min || t > s->t_max) return std::nullopt;
        if (lo_ && t < lo_->to_double()) return std::nullopt;
        if (hi_ && t > hi_->to_double()) return std::nullopt;
        return s->position(t);
    }
    if (lo_ && t < lo_->to_double()) return std::nullopt;
    if (hi_ && t > hi_->to_double()) return std::nullopt;
    auto space_at = [](const Coord4& p, const Vec3& v, double tt) {
        auto pd = p.to_double();
        double s = tt - pd[3];
        return std::array<double, 3>{pd[0] + s * v[0].to_double(), pd[1] + s * v[1].to_double(),
                                     pd[2] + s * v[2].to_double()};
    };
    if (auto* l = std::get_if<InertialLine>(&data_)) return space_at(l->point, l->velocity, t);
    if (auto* p = std::get_if<PhotonLine>(&data_)) return space_at(p->point, p->direction, t);
    if (auto* w = std::get_if<PiecewiseInertial>(&data_)) {
        const auto& ev = w->events;
        if (t < ev.front().time().to_double() || t > ev.back().time().to_double()) return std::nullopt;
        for (std::size_t i = 1; i < ev.size(); ++i) {
            auto a = ev[i - 1].to_double();
            auto b = ev[i].to_double();
            if (t > b[3] && i + 1 < ev.size()) continue;
            double f = (t - a[3]) / (b[3] - a[3]);
            return std::array<double, 3>{a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]), a[2] + f * (b[2] - a[2])};
        }
        return std::nullopt;
    }
    const auto& h = std::get<HyperbolicLine>(data_);
    double dt = t - h.t_center.to_double();
    double rho = h.rho.to_double();
    double r = std::sqrt(rho * rho + dt * dt);
    return std::array<double, 3>{h.center[0].to_double() + r * h.direction[0].to_double(),
                                 h.center[1].to_double() + r * h.direction[1].to_double(),
                                 h.center[2].to_double() + r * h.direction[2].to_double()};
}

Truth Worldline::contains(const Coord4& x) const {
    if (auto* s = std::get_if<SmoothNumeric>(&data_)) return contains_numeric(x.to_double(), s->tolerance);
    std::optional<Coord4> p = at_time(x.time());
    return truth(p && *p == x);
}

Truth Worldline::contains_numeric(const std::array<double, 4>& x, double tol) const {
    auto p = at_time_numeric(x[3]);
    if (!p) {
        // just outside the domain: undecided only within tolerance of an end
        double lo = -INFINITY, hi = INFINITY;
        if (auto* s = std::get_if<SmoothNumeric>(&data_)) {
            lo = s->t_min;
            hi = s->t_max;
        }
        if (lo_) lo = std::max(lo, lo_->to_double());
        if (hi_) hi = std::min(hi, hi_->to_double());
        if (auto* w = std::get_if<PiecewiseInertial>(&data_)) {
            lo = std::max(lo, w->events.front().time().to_double());
            hi = std::min(hi, w->events.back().time().to_double());
        }
        bool near = std::abs(x[3] - lo) <= 10 * tol || std::abs(x[3] - hi) <= 10 * tol;
        return near ? Truth::Unknown : Truth::False;
    }
    double d2 = 0;
    for (std::size_t i = 0; i < 3; ++i) d2 += ((*p)[i] - x[i]) * ((*p)[i] - x[i]);
    double d = std::sqrt(d2);
    if (d <= tol) return Truth::True;
    if (d > 10 * tol) return Truth::False;
    return Truth::Unknown;
}

Body::Body(std::string id_, bool inertial_, bool photon_, Worldline wl)
    : id(std::move(id_)), inertial(inertial_), photon(photon_), worldline(std::move(wl)) {
    if (id.empty()) throw InvalidWorldline("body without a name");
    if (photon && !std::holds_alternative<PhotonLine>(worldline.data()))
        throw InvalidWorldline("photon '" + id + "' must travel a photon line");
    if (inertial && !std::holds_alternative<InertialLine>(worldline.data()))
        throw InvalidWorldline("inertial body '" + id + "' must travel an inertial line");
    if (inertial && photon) throw InvalidWorldline("'" + id + "' cannot be both inertial and a photon");
}

Body inertial_body(std::string id, Coord4 point, Vec3 velocity) {
    return Body(std::move(id), true, false, Worldline::inertial(std::move(point), std::move(velocity)));
}

Body photon_body(std::string id, Coord4 point, Vec3 direction) {
    return Body(std::move(id), false, true, Worldline::photon(std::move(point), std::move(direction)));
}

Body plain_body(std::string id, Worldline wl) { return Body(std::move(id), false, false, std::move(wl)); }

std::vector<Body> cloud(const std::string& prefix, const InertialLine& base, const std::vector<Vec3>& offsets) {
    std::vector<Body> out;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        Coord4 p(base.point.space() + offsets[i], base.point.time());
        out.push_back(inertial_body(prefix + std::to_string(i), p, base.velocity));
    }
    return out;
}

}  // namespace axrel
