#include "axrel/accel/accel.hpp"

#include "axrel/errors.hpp"
#include "axrel/model/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

namespace axrel {

using nlohmann::json;

bool is_exact(const ProperTime& p) { return std::holds_alternative<ExactReal>(p); }

double to_double(const ProperTime& p) {
    if (auto* e = std::get_if<ExactReal>(&p)) return e->to_double();
    return std::get<ApproxReal>(p).midpoint();
}

std::string to_string(const ProperTime& p) {
    if (auto* e = std::get_if<ExactReal>(&p)) return e->to_string();
    return std::get<ApproxReal>(p).to_string();
}

ProperTime operator+(const ProperTime& a, const ProperTime& b) {
    if (is_exact(a) && is_exact(b)) return std::get<ExactReal>(a) + std::get<ExactReal>(b);
    auto enclose = [](const ProperTime& p) {
        if (auto* e = std::get_if<ExactReal>(&p)) return e->approx();
        return std::get<ApproxReal>(p);
    };
    return enclose(a) + enclose(b);
}

namespace {

void need_domain(const Worldline& w, const ExactReal& t0, const ExactReal& t1) {
    if (t1 < t0) throw DomainError("proper time: t0 > t1");
    if (!w.in_domain(t0) || !w.in_domain(t1))
        throw DomainError("proper time: [" + t0.to_string() + ", " + t1.to_string() + "] leaves the worldline's domain");
}

// dt * sqrt(1 - |ds/dt|^2) = sqrt(dt^2 - |ds|^2), for a straight piece
ExactReal straight(const Vec3& ds, const ExactReal& dt) {
    ExactReal q = dt * dt - ds.norm2();
    if (!(q > 0)) throw SuperluminalSegment("segment at speed >= 1");
    return q.sqrt();
}

std::array<double, 3> velocity_numeric(const SmoothNumeric& s, double t) {
    double h = 1e-6 * std::max(1.0, std::abs(t));
    double a = std::max(s.t_min, t - h), b = std::min(s.t_max, t + h);
    auto pa = s.position(a), pb = s.position(b);
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = (pb[i] - pa[i]) / (b - a);
    return v;
}

double rate_numeric(const SmoothNumeric& s, double t) {
    auto v = velocity_numeric(s, t);
    double q = 1 - (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(q > 0)) throw SuperluminalSegment("numeric worldline reaches speed >= 1 at t = " + std::to_string(t));
    return std::sqrt(q);
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth, double& err) {
    double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * eps) {
        err += std::abs(delta) / 15;
        return left + right + delta / 15;
    }
    return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1, err) +
           simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1, err);
}

}  // namespace

ProperTime proper_time(const Worldline& w, const ExactReal& t0, const ExactReal& t1) {
    need_domain(w, t0, t1);
    const auto& d = w.data();
    if (t0 == t1 && !std::holds_alternative<PiecewiseInertial>(d)) return ExactReal(0);
    if (auto* l = std::get_if<InertialLine>(&d)) return straight((t1 - t0) * l->velocity, t1 - t0);
    if (std::holds_alternative<PhotonLine>(d)) throw SuperluminalSegment("photon worldline has no proper time");
    if (auto* p = std::get_if<PiecewiseInertial>(&d)) {
        ExactReal total;
        for (std::size_t k = 0; k + 1 < p->events.size(); ++k) {
            const Coord4& a = p->events[k];
            const Coord4& b = p->events[k + 1];
            ExactReal lo = std::max(t0, a.time()), hi = std::min(t1, b.time());
            ExactReal dt = b.time() - a.time();
            // the speed check covers every piece, even ones outside [t0, t1]
            ExactReal whole = straight(b.space() - a.space(), dt);
            if (!(lo < hi)) continue;
            total += (hi - lo) / dt * whole;
        }
        return total;
    }
    if (auto* h = std::get_if<HyperbolicLine>(&d)) {
        long double rho = h->rho.to_double();
        long double a = (t0 - h->t_center).to_double(), b = (t1 - h->t_center).to_double();
        long double tau = rho * (std::asinh(b / rho) - std::asinh(a / rho));
        double value = static_cast<double>(tau);
        return ApproxReal::from_double(value, 1e-12 * (1 + std::abs(value)));
    }
    const auto& s = std::get<SmoothNumeric>(d);
    double a = t0.to_double(), b = t1.to_double();
    auto f = [&](double t) { return rate_numeric(s, t); };
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    double err = 0;
    double value = simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 1e-10 * (b - a), 40, err);
    return ApproxReal::from_double(value, err + s.tolerance * (b - a));
}

Comoving comoving_inertial(const Worldline& w, const ExactReal& t) {
    if (!w.in_domain(t)) throw DomainError("comoving observer: t = " + t.to_string() + " outside the worldline's domain");
    const auto& d = w.data();
    if (auto* l = std::get_if<InertialLine>(&d)) return {l->velocity, *w.at_time(t), true};
    if (std::holds_alternative<PhotonLine>(d)) throw SuperluminalSegment("photons have no co-moving inertial observer");
    if (auto* p = std::get_if<PiecewiseInertial>(&d)) {
        const auto& ev = p->events;
        auto vel = [&](std::size_t k) {
            ExactReal dt = ev[k + 1].time() - ev[k].time();
            return (ExactReal(1) / dt) * (ev[k + 1].space() - ev[k].space());
        };
        for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
            if (t < ev[k + 1].time() || k + 2 == ev.size()) {
                Vec3 v = vel(k);
                if (t == ev[k].time() && k > 0 && !(vel(k - 1) == v))
                    throw NotDifferentiable("velocity changes at t = " + t.to_string());
                return {v, *w.at_time(t), true};
            }
        }
    }
    if (auto* h = std::get_if<HyperbolicLine>(&d)) {
        ExactReal dt = t - h->t_center;
        ExactReal root = (h->rho * h->rho + dt * dt).sqrt();
        return {(dt / root) * h->direction, Coord4(h->center + root * h->direction, t), true};
    }
    const auto& s = std::get<SmoothNumeric>(d);
    double td = t.to_double();
    auto v = velocity_numeric(s, td);
    auto x = s.position(td);
    return {Vec3(from_double(v[0]), from_double(v[1]), from_double(v[2])),
            Coord4(from_double(x[0]), from_double(x[1]), from_double(x[2]), t), false};
}

std::vector<ExactReal> default_ladder() {
    std::vector<ExactReal> out;
    for (long k = 3; k <= 12; ++k) out.push_back(ExactReal::rational(1, 1L << k));
    return out;
}

namespace {

using D4 = std::array<double, 4>;
using J4 = std::array<std::array<double, 4>, 4>;

BodyRef comoving_body(const Comoving& c) {
    return std::make_shared<const Body>(inertial_body("comoving", c.event, c.velocity));
}

Verdict axcmv_affine(const Structure& s, const std::string& o, const AffineChart& c, const Coord4& x0) {
    if (c.domain && !c.domain->contains(x0))
        throw DomainError("(0,0,0," + x0.time().to_string() + ") is outside the chart of " + o);
    Coord4 r0 = c.to_reference(x0);
    const Body& ob = s.body(o);
    if (ob.worldline.contains(r0) != Truth::True)
        throw DomainError(o + " is not at its spatial origin at time " + x0.time().to_string());
    Comoving cm = comoving_inertial(ob.worldline, r0.time());
    const Matrix4& j = c.to_reference.linear();
    if (!is_lorentz(j) || !(j(3, 3) > 0)) {
        Verdict v = fails(Basis::Decided, {{"k", comoving_body(cm)}}, "tangent map of the chart is not an orthochronous Lorentz map");
        return v;
    }
    // the time axis has to follow the worldline
    Vec3 axis(j(0, 3) / j(3, 3), j(1, 3) / j(3, 3), j(2, 3) / j(3, 3));
    if (!(axis == cm.velocity))
        return fails(Basis::Decided, {{"k", comoving_body(cm)}}, "chart time axis does not follow the worldline");
    Verdict v = holds(Basis::Decided, "affine Lorentz chart: its own co-moving inertial chart");
    v.evidence.push_back({"k", comoving_body(cm)});
    return v;
}

D4 add(const D4& a, const D4& b, double s) {
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
}

bool inside(const SmoothChart& c, const D4& x) {
    for (int i = 0; i < 4; ++i)
        if (!(x[i] > c.lo[i] && x[i] < c.hi[i])) return false;
    return true;
}

J4 jacobian(const SmoothChart& c, const D4& x, double h, int side) {
    J4 j{};
    for (int col = 0; col < 4; ++col) {
        D4 e{};
        e[col] = 1;
        auto column = [&](double step) {
            D4 a = side > 0 ? x : add(x, e, -step);
            D4 b = side < 0 ? x : add(x, e, step);
            auto fa = c.to_reference(a), fb = c.to_reference(b);
            double width = side == 0 ? 2 * step : step;
            D4 out{};
            for (int r = 0; r < 4; ++r) out[r] = (fb[r] - fa[r]) / width;
            return out;
        };
        D4 d1 = column(h), d2 = column(h / 2);
        for (int r = 0; r < 4; ++r) j[r][col] = side == 0 ? (4 * d2[r] - d1[r]) / 3 : 2 * d2[r] - d1[r];
    }
    return j;
}

Verdict axcmv_smooth(const Structure& s, const std::string& o, const SmoothChart& c, const ExactReal& t,
                     const std::vector<ExactReal>& ladder, const AxcmvOptions& opt) {
    D4 x0{0, 0, 0, t.to_double()};
    if (!inside(c, x0)) throw DomainError("(0,0,0," + t.to_string() + ") is outside the chart of " + o);
    D4 r0 = c.to_reference(x0);
    const Body& ob = s.body(o);
    if (ob.worldline.contains_numeric(r0, c.tolerance) != Truth::True)
        throw DomainError(o + " is not at its spatial origin at time " + t.to_string());

    J4 jp = jacobian(c, x0, 1e-5, +1), jm = jacobian(c, x0, 1e-5, -1);
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k)
            if (std::abs(jp[r][k] - jm[r][k]) > 1e-3 * (1 + std::abs(jp[r][k])))
                throw NotDifferentiable("chart of " + o + " has a kink at (0,0,0," + t.to_string() + ")");
    J4 j = jacobian(c, x0, 1e-4, 0);

    Comoving cm = comoving_inertial(ob.worldline, from_double(r0[3]));
    auto body = comoving_body(cm);
    const double eta[4] = {1, 1, 1, -1};
    double lorentz_dev = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double g = 0;
            for (int r = 0; r < 4; ++r) g += j[r][a] * eta[r] * j[r][b];
            lorentz_dev = std::max(lorentz_dev, std::abs(g - (a == b ? eta[a] : 0)));
        }
    if (lorentz_dev > 1e-7 || !(j[3][3] > 0)) {
        Verdict v = fails(Basis::Numeric, {{"k", body}}, "tangent map is not a Lorentz map (deviation " + std::to_string(lorentz_dev) + ")");
        v.tolerance = 1e-7;
        return v;
    }
    for (int i = 0; i < 3; ++i)
        if (std::abs(j[i][3] / j[3][3] - cm.velocity[i].to_double()) > 1e-6)
            return fails(Basis::Numeric, {{"k", body}}, "chart time axis does not follow the worldline");

    std::vector<D4> dirs;
    for (int i = 0; i < 4; ++i) {
        D4 e{};
        e[i] = 1;
        dirs.push_back(e);
        e[i] = -1;
        dirs.push_back(e);
    }
    dirs.push_back({0.5, 0.5, 0.5, 0.5});
    dirs.push_back({-0.5, 0.5, -0.5, 0.5});

    std::vector<double> logd, logr;
    double worst = 0;
    for (const auto& rung : ladder) {
        double d = rung.to_double();
        double res = 0;
        for (const auto& u : dirs) {
            D4 x = add(x0, u, d);
            if (!inside(c, x)) continue;
            D4 fx = c.to_reference(x);
            for (int r = 0; r < 4; ++r) {
                double lin = r0[r];
                for (int k = 0; k < 4; ++k) lin += j[r][k] * d * u[k];
                res = std::max(res, std::abs(fx[r] - lin));
            }
        }
        worst = std::max(worst, res);
        if (res > std::pow(d, opt.exponent)) {
            Verdict v = fails(Basis::Numeric, {{"k", body}},
                              "residual " + std::to_string(res) + " exceeds |d|^" + std::to_string(opt.exponent) + " at d = " + rung.to_string());
            v.tolerance = res;
            return v;
        }
        if (res > 1e-11) {
            logd.push_back(std::log(d));
            logr.push_back(std::log(res / d));
        }
    }
    std::string note = "agrees to first order with the co-moving inertial chart";
    if (logd.size() >= 3) {
        double n = static_cast<double>(logd.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < logd.size(); ++i) {
            sx += logd[i];
            sy += logr[i];
            sxx += logd[i] * logd[i];
            sxy += logd[i] * logr[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if (slope < opt.min_slope) {
            Verdict v = fails(Basis::Numeric, {{"k", body}}, "residual ratio does not shrink linearly (slope " + std::to_string(slope) + ")");
            v.tolerance = worst;
            return v;
        }
        note += " (slope " + std::to_string(slope).substr(0, 5) + ")";
    } else {
        note += " (residuals at rounding level)";
    }
    Verdict v = holds(Basis::Numeric, note);
    v.evidence.push_back({"k", body});
    v.tolerance = worst;
    return v;
}

}  // namespace

Verdict check_axcmv(const Structure& s, const std::string& o, const ExactReal& t, const std::vector<ExactReal>& ladder,
                    const AxcmvOptions& opt) {
    const Chart* c = s.chart(o);
    if (!c) throw NotAnObserver("'" + o + "' has no chart");
    Coord4 x0(0, 0, 0, t);
    if (auto* a = std::get_if<AffineChart>(c)) return axcmv_affine(s, o, *a, x0);
    return axcmv_smooth(s, o, std::get<SmoothChart>(*c), t, ladder, opt);
}

namespace {

bool changes_velocity(const Worldline& w, const ExactReal& t0, const ExactReal& t1) {
    const auto& d = w.data();
    if (std::holds_alternative<InertialLine>(d) || std::holds_alternative<PhotonLine>(d)) return false;
    if (auto* p = std::get_if<PiecewiseInertial>(&d)) {
        for (std::size_t k = 1; k + 1 < p->events.size(); ++k) {
            const ExactReal& tk = p->events[k].time();
            if (!(t0 < tk && tk < t1)) continue;
            try {
                comoving_inertial(w, tk);
            } catch (const NotDifferentiable&) {
                return true;
            }
        }
        return false;
    }
    return true;
}

bool passes(const Worldline& w, const Coord4& e) { return w.contains(e) == Truth::True; }

}  // namespace

TwinResult twin_paradox(const AcceleratedScenario& sc) {
    if (!sc.home.inertial) throw NotInertialObserver("home '" + sc.home.id + "' is not inertial");
    if (!(sc.departure.time() < sc.reunion.time())) throw NoReunion("departure is not before the reunion");
    for (const Body* b : {&sc.home, &sc.traveler})
        if (!passes(b->worldline, sc.departure) || !passes(b->worldline, sc.reunion))
            throw NoReunion("'" + b->id + "' does not pass both meeting events");
    TwinResult r;
    r.home = proper_time(sc.home.worldline, sc.departure.time(), sc.reunion.time());
    r.traveler = proper_time(sc.traveler.worldline, sc.departure.time(), sc.reunion.time());
    r.accelerated = changes_velocity(sc.traveler.worldline, sc.departure.time(), sc.reunion.time());
    return r;
}

AcceleratedScenario round_trip(const ExactReal& v, const ExactReal& duration) {
    if (!(v * v < 1)) throw SuperluminalVelocity("round trip needs |v| < 1");
    if (!(duration > 0)) throw InvalidConfig("round trip needs a positive duration");
    ExactReal half = duration / 2;
    Coord4 dep(0, 0, 0, 0), turn(v * half, 0, 0, half), reu(0, 0, 0, duration);
    return {"round-trip v=" + v.to_string(), inertial_body("home", dep, Vec3()),
            plain_body("traveler", Worldline::piecewise({dep, turn, reu})), dep, reu};
}

AcceleratedScenario galaxy_journey(const ExactReal& distance, const ExactReal& subjective) {
    if (!(distance > 0) || !(subjective > 0)) throw InvalidConfig("galaxy journey needs positive distance and time");
    // one leg lasts sqrt(L^2 + tau^2) at home, tau on board
    ExactReal leg = (distance * distance + subjective * subjective).sqrt();
    Coord4 dep(0, 0, 0, 0), turn(distance, 0, 0, leg), reu(0, 0, 0, 2 * leg);
    return {"galaxy L=" + distance.to_string(), inertial_body("home", dep, Vec3()),
            plain_body("traveler", Worldline::piecewise({dep, turn, reu})), dep, reu};
}

namespace {

Coord4 direction_of(const Vec3& v) { return Coord4(v, ExactReal(1)); }

Vec3 velocity_after(const PoincareMap& w, const Vec3& v) {
    Coord4 d = w.lorentz() * direction_of(v);
    return (ExactReal(1) / d.time()) * d.space();
}

}  // namespace

Worldline transform(const Worldline& line, const PoincareMap& w) {
    if (!w.orthochronous()) throw Error("transform needs an orthochronous map");
    const auto& d = line.data();
    std::optional<ExactReal> lo, hi;
    auto image_time = [&](const std::optional<ExactReal>& t) -> std::optional<ExactReal> {
        if (!t) return std::nullopt;
        auto p = line.at_time(*t);
        return w(*p).time();
    };
    Worldline out = line;
    if (auto* l = std::get_if<InertialLine>(&d)) {
        out = Worldline::inertial(w(l->point), velocity_after(w, l->velocity));
    } else if (auto* p = std::get_if<PhotonLine>(&d)) {
        out = Worldline::photon(w(p->point), velocity_after(w, p->direction));
    } else if (auto* pw = std::get_if<PiecewiseInertial>(&d)) {
        std::vector<Coord4> ev;
        for (const auto& e : pw->events) ev.push_back(w(e));
        out = Worldline::piecewise(std::move(ev));
    } else if (auto* h = std::get_if<HyperbolicLine>(&d)) {
        // only maps that keep time slices (rotations and translations) keep
        // the hyperbola in this form
        const Matrix4& l = w.lorentz();
        if (!(l(3, 3) == 1)) throw Error("hyperbolic worldlines transform under rotations and translations only");
        Coord4 c = w(Coord4(h->center, h->t_center));
        Coord4 dir = l * Coord4(h->direction, ExactReal(0));
        out = Worldline::hyperbolic(c.space(), c.time(), dir.space(), h->rho);
    } else {
        throw Error("numeric worldlines cannot be transformed");
    }
    return out.with_domain(image_time(line.t_lo()), image_time(line.t_hi()));
}

AcceleratedScenario rechart(const AcceleratedScenario& sc, const PoincareMap& w) {
    Body home(sc.home.id, sc.home.inertial, sc.home.photon, transform(sc.home.worldline, w));
    Body trav(sc.traveler.id, sc.traveler.inertial, sc.traveler.photon, transform(sc.traveler.worldline, w));
    return {sc.name, std::move(home), std::move(trav), w(sc.departure), w(sc.reunion)};
}

Worldline random_competitor(Rng& rng, const Coord4& from, const Coord4& to) {
    Coord4 delta = to - from;
    if (!(delta.time() > 0) || !(mu(from, to) < 0)) throw InvalidConfig("competitor endpoints are not timelike separated");
    Vec3 vel = (ExactReal(1) / delta.time()) * delta.space();
    double s0 = std::sqrt(vel.norm2().to_double());
    for (int attempt = 0; attempt < 64; ++attempt) {
        long n = rng.uniform(1, 3);
        std::vector<ExactReal> fr;
        for (long i = 0; i < n; ++i) fr.push_back(rng.rational_in(ExactReal(0), ExactReal(1), 24));
        std::sort(fr.begin(), fr.end());
        if (std::adjacent_find(fr.begin(), fr.end()) != fr.end()) continue;
        double gap = std::min(fr.front().to_double(), 1 - fr.back().to_double());
        for (std::size_t i = 1; i < fr.size(); ++i) gap = std::min(gap, (fr[i] - fr[i - 1]).to_double());
        // offsets below this keep every piece slower than light
        double bound = 0.9 * (1 - s0) * gap * delta.time().to_double() / (2 * std::sqrt(3.0));
        ExactReal scale = from_double(bound);
        std::vector<Coord4> ev{from};
        bool moved = false;
        for (const auto& f : fr) {
            Vec3 off(rng.rational(1, 16), rng.rational(1, 16), rng.rational(1, 16));
            moved = moved || !off.is_zero();
            ev.push_back(Coord4(from.space() + (f * delta.time()) * vel + scale * off, from.time() + f * delta.time()));
        }
        ev.push_back(to);
        if (!moved || scale.is_zero()) continue;
        bool slow = true;
        for (std::size_t k = 0; slow && k + 1 < ev.size(); ++k) slow = mu(ev[k], ev[k + 1]) < 0;
        if (slow) return Worldline::piecewise(std::move(ev));
    }
    throw ConfigurationUnrealizable("no sub-light competitor found");
}

CompetitorSweep maximal_aging_sweep(const Coord4& from, const Coord4& to, std::size_t count, std::uint64_t seed) {
    Rng rng(seed, "competitor");
    CompetitorSweep out;
    out.inertial = (-mu(from, to)).sqrt();
    for (std::size_t i = 0; i < count; ++i) {
        Worldline w = random_competitor(rng, from, to);
        ExactReal tau = std::get<ExactReal>(proper_time(w, from.time(), to.time()));
        ++out.competitors;
        if (!(tau < out.inertial)) ++out.not_shorter;
    }
    return out;
}

namespace {

void need_ship(const ShipConfig& cfg) {
    if (cfg.g < 0) throw InvalidConfig("ship needs g >= 0");
    if (!(cfg.h > 0)) throw InvalidConfig("ship needs h > 0");
}

}  // namespace

ExactReal gtd_clock_ratio(const ShipConfig& cfg) {
    need_ship(cfg);
    if (cfg.g.is_zero()) return ExactReal(1);
    const auto rear = std::get<HyperbolicLine>(rindler_worldline(cfg.g, ExactReal(0)).data());
    const auto nose = std::get<HyperbolicLine>(rindler_worldline(cfg.g, cfg.h).data());
    // a simultaneity line of the ship is a ray from the common center; between
    // two of them each clock runs through the same rapidity, so proper times
    // scale with the radius
    return nose.rho / rear.rho;
}

Structure rindler_ship(const ShipConfig& cfg) {
    need_ship(cfg);
    if (!(cfg.g > 0)) throw InvalidConfig("Rindler ship needs g > 0");
    Structure s("rindler-ship g=" + cfg.g.to_string() + " h=" + cfg.h.to_string());
    s.add_body(inertial_body("home", Coord4(), Vec3()));
    s.add_body(plain_body("rear", rindler_worldline(cfg.g, ExactReal(0))));
    s.add_body(plain_body("nose", rindler_worldline(cfg.g, cfg.h)));
    s.set_chart("home", AffineChart(AffineMap()));
    s.set_chart("rear", rindler_chart(cfg.g));
    s.set_families(true, true);
    return s;
}

namespace {

ExactReal lit(const json& j, const char* what) {
    if (j.is_string()) return ExactReal::parse(j.get<std::string>());
    if (j.is_number_integer()) return ExactReal(j.get<long>());
    throw FormatError(std::string(what) + ": expected a field literal string");
}

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("scenario: missing key '") + key + "'");
    return j.at(key);
}

Coord4 event(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) throw FormatError(std::string(what) + ": expected an array of 4 literals");
    return Coord4(lit(j[0], what), lit(j[1], what), lit(j[2], what), lit(j[3], what));
}

Body body(const json& j, const char* role) {
    std::string id = j.contains("id") ? need(j, "id").get<std::string>() : std::string(role);
    Worldline w = parse_worldline(need(j, "worldline").dump());
    bool inertial = std::holds_alternative<InertialLine>(w.data());
    bool photon = std::holds_alternative<PhotonLine>(w.data());
    return Body(id, inertial, photon, std::move(w));
}

json event_json(const Coord4& c) {
    json a = json::array();
    for (int i = 0; i < 4; ++i) a.push_back(c[i].to_string());
    return a;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("scenario: expected an object");
    if (j.contains("format") && j["format"] != "axrel-scenario/1")
        throw FormatError("scenario: unsupported format " + j["format"].dump());
    ScenarioFile out;
    try {
        if (j.contains("twin")) {
            const json& t = j["twin"];
            AcceleratedScenario sc{j.value("name", std::string("scenario")), body(need(t, "home"), "home"),
                                   body(need(t, "traveler"), "traveler"), event(need(t, "departure"), "departure"),
                                   event(need(t, "reunion"), "reunion")};
            out.twin = std::move(sc);
        }
        if (j.contains("ship")) {
            const json& s = j["ship"];
            out.ship = ShipConfig{lit(need(s, "g"), "g"), lit(need(s, "h"), "h")};
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    }
    if (!out.twin && !out.ship) throw FormatError("scenario: needs a 'twin' or a 'ship' section");
    return out;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open scenario '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string print_scenario(const AcceleratedScenario& sc) {
    nlohmann::ordered_json j;
    j["format"] = "axrel-scenario/1";
    j["name"] = sc.name;
    auto b = [](const Body& x) {
        nlohmann::ordered_json o;
        o["id"] = x.id;
        o["worldline"] = nlohmann::ordered_json::parse(print_worldline(x.worldline));
        return o;
    };
    j["twin"]["home"] = b(sc.home);
    j["twin"]["traveler"] = b(sc.traveler);
    j["twin"]["departure"] = event_json(sc.departure);
    j["twin"]["reunion"] = event_json(sc.reunion);
    return j.dump(2) + "\n";
}

std::string trajectory_csv(const Worldline& w, const ExactReal& t0, const ExactReal& t1, std::size_t steps) {
    if (steps == 0) throw InvalidConfig("trajectory needs at least one step");
    need_domain(w, t0, t1);
    std::ostringstream out;
    out << "t,x,y,z,vx,vy,vz,tau\n";
    auto num = [](double d) {
        std::ostringstream s;
        s.precision(12);
        s << d;
        return s.str();
    };
    for (std::size_t i = 0; i <= steps; ++i) {
        ExactReal t = t0 + (t1 - t0) * ExactReal::rational(static_cast<long>(i), static_cast<long>(steps));
        Comoving c;
        try {
            c = comoving_inertial(w, t);
        } catch (const NotDifferentiable&) {
            // at a turn, report the outgoing velocity
            ExactReal eps = (t1 - t0) * ExactReal::rational(1, 1000000);
            c = comoving_inertial(w, t + eps);
            c.event = w.at_time(t).value();
        }
        out << num(t.to_double());
        for (int k = 0; k < 3; ++k) out << ',' << num(c.event[k].to_double());
        for (int k = 0; k < 3; ++k) out << ',' << num(c.velocity[k].to_double());
        out << ',' << num(to_double(proper_time(w, t0, t))) << '\n';
    }
    return out.str();
}

}  // namespace axrel
