#include "axrel/kinematics/kinematics.hpp"

#include "axrel/errors.hpp"

namespace axrel {

namespace {

const AffineChart& inertial_affine(const Structure& s, const std::string& o) {
    if (!s.is_inertial_observer(o)) throw NotInertialObserver("'" + o + "' is not an inertial observer");
    const auto* a = std::get_if<AffineChart>(s.chart(o));
    if (!a || a->domain || !a->is_poincare())
        throw NotInertialObserver("chart of '" + o + "' is not a Poincare map");
    return *a;
}

Coord4 e4() { return Coord4(0, 0, 0, 1); }

BodyRef ref(const Structure& s, const std::string& id) { return std::make_shared<Body>(s.body(id)); }

enum class PassKind { Never, Always, At };
struct Pass {
    PassKind kind = PassKind::Never;
    ExactReal time;
};

/// When does the chart line reach spatial location `loc`?
Pass pass_time(const ChartLine& l, const Vec3& loc) {
    std::optional<ExactReal> s;
    for (std::size_t i = 0; i < 3; ++i) {
        ExactReal gap = loc[i] - l.point[i];
        if (l.direction[i].is_zero()) {
            if (!gap.is_zero()) return {};
            continue;
        }
        ExactReal si = gap / l.direction[i];
        if (s && *s != si) return {};
        s = si;
    }
    if (!s) return {PassKind::Always, ExactReal()};
    return {PassKind::At, l.point[3] + *s};
}

}  // namespace

PoincareMap worldview_transform(const Structure& s, const std::string& o, const std::string& o2) {
    const AffineChart& a = inertial_affine(s, o);
    const AffineChart& b = inertial_affine(s, o2);
    AffineMap m = b.to_observer.compose(a.to_reference);
    return PoincareMap(m.linear(), m.translation());
}

ExactReal velocity_addition(const ExactReal& u, const ExactReal& v) {
    if (abs(u) >= 1 || abs(v) >= 1) throw SuperluminalVelocity("velocities must be below 1 in magnitude");
    return (u + v) / (ExactReal(1) + u * v);
}

EffectReport effects_between(const PoincareMap& w, const ExactReal& ship_length) {
    if (!(ship_length > 0)) throw InvalidConfig("ship length must be positive");
    if (!w.orthochronous()) throw Error("worldview transformation reverses time");
    PoincareMap inv = w.inverse();
    // the ship's rear is the target observer's origin; U is its m-velocity 4-vector
    Coord4 u = inv.lorentz() * e4();
    Coord4 back = w.lorentz() * e4();  // the source observer, as the ship sees it
    EffectReport r;
    r.ship_length = ship_length;
    r.v = sqrt(u.space().norm2()) / u[3];
    r.time_dilation = ExactReal(1) / u[3];

    Vec3 nose_dir(1, 0, 0);
    if (!back.space().is_zero()) nose_dir = (ExactReal(-1) / sqrt(back.space().norm2())) * back.space();
    Coord4 rear0 = inv(Coord4());
    Coord4 nose0 = inv(Coord4(ship_length * nose_dir, 0));
    // nose clock reading at the event simultaneous (for m) with the rear at 0
    ExactReal tau = (rear0[3] - nose0[3]) / u[3];
    Coord4 nose = nose0 + tau * u;
    r.length_contraction = sqrt((nose.space() - rear0.space()).norm2()) / ship_length;
    r.clock_asynchrony = -tau;
    return r;
}

EffectReport effects(const ExactReal& v, const ExactReal& ship_length) {
    if (abs(v) >= 1) throw SuperluminalVelocity("speed " + abs(v).to_string() + " is not below 1");
    return effects_between(boost(Vec3(v, 0, 0)), ship_length);
}

std::string effects_csv(const std::vector<EffectReport>& rows) {
    std::string out = "v,dilation,contraction,asynchrony\n";
    for (const auto& r : rows)
        out += r.v.to_string() + "," + r.time_dilation.to_string() + "," + r.length_contraction.to_string() + "," +
               r.clock_asynchrony.to_string() + "\n";
    return out;
}

std::optional<ChartLine> line_in_chart(const Structure& s, const std::string& observer, const Body& b) {
    const auto* a = std::get_if<AffineChart>(s.chart(observer));
    if (!a) return std::nullopt;
    Coord4 point, dir;
    if (auto* l = std::get_if<InertialLine>(&b.worldline.data())) {
        point = l->point;
        dir = Coord4(l->velocity, 1);
    } else if (auto* p = std::get_if<PhotonLine>(&b.worldline.data())) {
        point = p->point;
        dir = Coord4(p->direction, 1);
    } else {
        return std::nullopt;
    }
    Coord4 q = a->to_observer(point);
    Coord4 d = a->to_observer.linear() * dir;
    if (d[3].is_zero()) return std::nullopt;
    return ChartLine{q, (ExactReal(1) / d[3]) * d};
}

Verdict check_noftl(const Structure& s, const std::string& m, const std::string& k, const std::string& p,
                    const Vec3& from, const Vec3& to) {
    if (!s.is_inertial_observer(m)) throw NotInertialObserver("'" + m + "' is not an inertial observer");
    if (!s.is_inertial_observer(k)) throw NotInertialObserver("'" + k + "' is not an inertial observer");
    const Body& pb = s.body(p);
    if (!pb.photon) throw ConfigurationUnrealizable("'" + p + "' is not a photon");
    if (from == to) throw ConfigurationUnrealizable("the two locations coincide");
    auto kl = line_in_chart(s, m, s.body(k));
    auto pl = line_in_chart(s, m, pb);
    if (!kl || !pl) throw ConfigurationUnrealizable("worldlines are not straight in the chart of '" + m + "'");

    Pass kx = pass_time(*kl, from), ky = pass_time(*kl, to);
    if (kx.kind != PassKind::At || ky.kind != PassKind::At)
        throw ConfigurationUnrealizable("'" + k + "' does not pass both locations");
    Pass px = pass_time(*pl, from), py = pass_time(*pl, to);
    if (px.kind != PassKind::At || py.kind != PassKind::At)
        throw ConfigurationUnrealizable("'" + p + "' does not pass both locations");
    if (px.time != kx.time) throw ConfigurationUnrealizable("'" + k + "' and '" + p + "' do not meet at the first location");
    if (!(kx.time < ky.time)) throw ConfigurationUnrealizable("'" + k + "' reaches the second location first");

    Coord4 x(from, kx.time), y(to, ky.time), arrival(to, py.time);
    // the configuration must be witnessed by W itself, domains included
    if (s.holds_W(m, k, x) != Truth::True || s.holds_W(m, p, x) != Truth::True ||
        s.holds_W(m, k, y) != Truth::True || s.holds_W(m, p, arrival) != Truth::True)
        throw ConfigurationUnrealizable("events fall outside a worldline domain");

    std::vector<Binding> ev{{"m", ref(s, m)}, {"k", ref(s, k)}, {"p", ref(s, p)}};
    const char* xs[] = {"x1", "x2", "x3", "x4"};
    const char* ys[] = {"y1", "y2", "y3", "y4"};
    for (std::size_t i = 0; i < 4; ++i) ev.push_back({xs[i], x[i]});
    for (std::size_t i = 0; i < 4; ++i) ev.push_back({ys[i], y[i]});
    ev.push_back({"t", py.time});
    std::string note = "photon arrives at t = " + py.time.to_string() + ", '" + k + "' at y4 = " + y[3].to_string();
    Verdict v = py.time < y[3] ? holds(Basis::Decided, note) : fails(Basis::Decided, {}, note);
    v.evidence = std::move(ev);
    return v;
}

bool check_mu_invariance(const PoincareMap& w, const Coord4& x, const Coord4& y) {
    return mu(w(x), w(y)) == mu(x, y);
}

Vec3 random_rational_direction(Rng& rng) {
    Matrix4 r = rotation(random_quaternion(rng));
    return Vec3(r(0, 0), r(1, 0), r(2, 0));
}

Vec3 random_velocity(Rng& rng, bool rational_gamma) {
    Vec3 n = random_rational_direction(rng);
    if (rational_gamma) {
        // speed 2a / (1 + a^2) has gamma (1 + a^2) / (1 - a^2)
        ExactReal a = rng.rational_in(ExactReal(0), ExactReal(1), 12);
        return (ExactReal(2) * a / (ExactReal(1) + a * a)) * n;
    }
    ExactReal speed = rng.rational_in(ExactReal(0), ExactReal(1), 40);
    return speed * n;
}

std::array<long, 4> random_quaternion(Rng& rng) {
    std::array<long, 4> q{};
    do {
        for (auto& c : q) c = rng.uniform(-4, 4);
    } while (q == std::array<long, 4>{0, 0, 0, 0});
    return q;
}

Coord4 random_event(Rng& rng, long bound) {
    return Coord4(rng.rational(bound, 12), rng.rational(bound, 12), rng.rational(bound, 12), rng.rational(bound, 12));
}

PoincareMap random_poincare(Rng& rng, bool rational_gamma) {
    Vec3 v = random_velocity(rng, rational_gamma);
    PoincareMap rot(rotation(random_quaternion(rng)), Coord4());
    PoincareMap shift(Matrix4::identity(), random_event(rng));
    return rot.compose(boost(v)).compose(shift);
}

NoftlCase random_noftl_case(Rng& rng) {
    ObserverSpec ms{"m", random_velocity(rng, true), random_quaternion(rng), random_event(rng)};
    PoincareMap to_ref = observer_chart(ms.velocity, ms.quaternion, ms.origin).inverse();

    // the k trip and the photon, chosen in m's coordinates
    Coord4 x = random_event(rng);
    Vec3 n = random_rational_direction(rng);
    ExactReal dist = rng.rational_in(ExactReal::rational(1, 10), ExactReal(10), 12);
    ExactReal speed = rng.rational_in(ExactReal(0), ExactReal(1), 20);
    Coord4 y = x + Coord4(dist * n, dist / speed);

    Coord4 kd = to_ref.lorentz() * Coord4(speed * n, 1);
    Coord4 pd = to_ref.lorentz() * Coord4(n, 1);
    Coord4 start = to_ref(x);
    ObserverSpec ks{"k", (ExactReal(1) / kd[3]) * kd.space(), random_quaternion(rng), start};

    NoftlCase c{standard_minkowski({ms, ks}), "m", "k", "p", x.space(), y.space()};
    c.model.add_body(photon_body("p", start, (ExactReal(1) / pd[3]) * pd.space()));
    return c;
}

SweepSummary noftl_sweep(std::size_t count, std::uint64_t seed) {
    Rng rng(seed, "noftl");
    SweepSummary out;
    for (std::size_t i = 0; i < count; ++i) {
        NoftlCase c = random_noftl_case(rng);
        Verdict v = check_noftl(c.model, c.m, c.k, c.p, c.from, c.to);
        ++out.cases;
        if (!v.holds()) {
            ++out.violations;
            if (out.failures.size() < 5) out.failures.push_back("case " + std::to_string(i) + ": " + v.note);
        }
    }
    return out;
}

SweepSummary mu_invariance_sweep(std::size_t maps, std::size_t pairs, std::uint64_t seed) {
    Rng rng(seed, "mu");
    SweepSummary out;
    for (std::size_t i = 0; i < maps; ++i) {
        PoincareMap w = random_poincare(rng, i % 2 == 0);
        bool lorentz = is_lorentz(w.lorentz());
        for (std::size_t j = 0; j < pairs; ++j) {
            Coord4 x = random_event(rng), y = random_event(rng);
            ++out.cases;
            if (!lorentz || !check_mu_invariance(w, x, y)) {
                ++out.violations;
                if (out.failures.size() < 5)
                    out.failures.push_back("map " + std::to_string(i) + ", pair " + std::to_string(j));
            }
        }
    }
    return out;
}

}  // namespace axrel
