#include "axrel/genrel/genrel.hpp"

#include "axrel/errors.hpp"
#include "axrel/util/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace axrel::genrel {

bool Box::contains(const Vec4& x) const {
    for (int i = 0; i < 4; ++i) {
        if (lo_closed[i] ? x[i] < lo[i] : !(x[i] > lo[i])) return false;
        if (hi_closed[i] ? x[i] > hi[i] : !(x[i] < hi[i])) return false;
    }
    return true;
}

namespace {

const Mat4& eta() {
    static const Mat4 m = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
    return m;
}

Vec4 axis(int i) {
    Vec4 e = Vec4::Zero();
    e[i] = 1;
    return e;
}

std::array<double, 4> arr(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

std::array<Expr, 16> diag_exprs(const std::array<Expr, 4>& d) {
    std::array<Expr, 16> out;
    for (int i = 0; i < 4; ++i) out[i * 4 + i] = d[i];
    return out;
}

void need_inside(const MetricChart& c, const Vec4& p) {
    if (!c.domain.contains(p)) throw LeftDomain("point outside the chart '" + c.name + "'");
}

std::vector<Binding> point_evidence(const Vec4& p, const char* prefix = "x") {
    std::vector<Binding> out;
    for (int i = 0; i < 4; ++i) out.push_back({prefix + std::to_string(i + 1), from_double(p[i])});
    return out;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

}  // namespace

MetricChart flat_chart() {
    MetricChart c;
    c.name = "flat";
    c.order = 1000;
    c.g = [](const Vec4&) { return eta(); };
    c.dg = [](const Vec4&) {
        std::array<Mat4, 4> z;
        for (auto& m : z) m.setZero();
        return z;
    };
    c.components = diag_exprs({Expr(1.0), Expr(1.0), Expr(1.0), Expr(-1.0)});
    return c;
}

MetricChart rindler_metric_chart() {
    MetricChart c = expression_chart("rindler", diag_exprs({Expr(1.0), Expr(1.0), Expr(1.0), Expr::parse("-x^2")}), Box{}, 1000);
    c.domain.lo[0] = 0;
    return c;
}

MetricChart expression_chart(std::string name, const std::array<Expr, 16>& g, Box domain, int order) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (g[i * 4 + j].to_string() != g[j * 4 + i].to_string())
                throw DegenerateMetric("metric of '" + name + "' is not symmetric");
    auto comps = std::make_shared<const std::array<Expr, 16>>(g);
    auto parts = std::make_shared<std::array<std::array<Expr, 16>, 4>>();
    for (int k = 0; k < 4; ++k)
        for (int e = 0; e < 16; ++e) (*parts)[k][e] = g[e].derivative(k);
    MetricChart c;
    c.name = std::move(name);
    c.domain = domain;
    c.order = order;
    c.components = g;
    c.g = [comps](const Vec4& x) {
        Mat4 m;
        auto a = arr(x);
        for (int e = 0; e < 16; ++e) m(e / 4, e % 4) = (*comps)[e].eval(a);
        return m;
    };
    c.dg = [parts](const Vec4& x) {
        std::array<Mat4, 4> out;
        auto a = arr(x);
        for (int k = 0; k < 4; ++k)
            for (int e = 0; e < 16; ++e) out[k](e / 4, e % 4) = (*parts)[k][e].eval(a);
        return out;
    };
    return c;
}

MetricChart pullback(const MetricChart& c, std::function<Vec4(const Vec4&)> phi, Box domain, int order) {
    MetricChart out;
    out.name = c.name + "*";
    out.domain = domain;
    out.order = std::min(order, c.order);
    auto base = c.g;
    out.g = [base, phi](const Vec4& y) {
        Mat4 j;
        const double h = 1e-3;
        for (int k = 0; k < 4; ++k) {
            Vec4 e = axis(k);
            Vec4 d1 = (phi(y + h * e) - phi(y - h * e)) / (2 * h);
            Vec4 d2 = (phi(y + h / 2 * e) - phi(y - h / 2 * e)) / h;
            j.col(k) = (4 * d2 - d1) / 3;
        }
        return Mat4(j.transpose() * base(phi(y)) * j);
    };
    return out;
}

std::array<Mat4, 4> metric_partials(const MetricChart& c, const Vec4& x, double h) {
    if (c.dg) return c.dg(x);
    std::array<Mat4, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = (c.g(x + h * axis(k)) - c.g(x - h * axis(k))) / (2 * h);
    return out;
}

std::array<Mat4, 4> christoffel(const MetricChart& c, const Vec4& x, double h) {
    Mat4 inv = c.g(x).inverse();
    auto d = metric_partials(c, x, h);
    std::array<Mat4, 4> gamma;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc) {
                double s = 0;
                for (int dd = 0; dd < 4; ++dd) s += inv(a, dd) * (d[b](dd, cc) + d[cc](dd, b) - d[dd](b, cc));
                gamma[a](b, cc) = s / 2;
            }
    return gamma;
}

Mat4 normal_frame(const MetricChart& c, const Vec4& p) {
    need_inside(c, p);
    Mat4 g = c.g(p);
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Mat4> eig(g);
    const Vec4& lam = eig.eigenvalues();
    int negative = 0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(lam[i]) <= 1e-12 * scale) throw DegenerateMetric("metric has a zero eigenvalue at the point");
        negative += lam[i] < 0;
    }
    if (negative != 1) throw DegenerateMetric("metric signature is not (+,+,+,-) at the point");

    auto ip = [&](const Vec4& a, const Vec4& b) { return a.dot(g * b); };
    Mat4 m;
    bool ok = true;
    const int order[4] = {3, 0, 1, 2};
    for (int n = 0; n < 4 && ok; ++n) {
        int idx = order[n];
        Vec4 v = axis(idx);
        for (int k = 0; k < n; ++k) {
            int col = order[k];
            v -= eta()(col, col) * ip(v, m.col(col)) * m.col(col);
        }
        double n2 = ip(v, v);
        bool want_negative = idx == 3;
        if (std::abs(n2) < 1e-8 * scale || (n2 < 0) != want_negative) {
            ok = false;
            break;
        }
        m.col(idx) = v / std::sqrt(std::abs(n2));
    }
    if (!ok) {
        // ordered eigenbasis: spatial columns by increasing eigenvalue
        int col = 0;
        for (int i = 0; i < 4; ++i) {
            Vec4 v = eig.eigenvectors().col(i) / std::sqrt(std::abs(lam[i]));
            if (lam[i] < 0) {
                if (v[3] < 0) v = -v;
                m.col(3) = v;
            } else {
                Eigen::Index big;
                v.cwiseAbs().maxCoeff(&big);
                if (v[big] < 0) v = -v;
                m.col(col++) = v;
            }
        }
    }
    return m;
}

namespace {

Vec4 unit_direction(Rng& rng) {
    for (;;) {
        Vec4 v(2 * rng.unit() - 1, 2 * rng.unit() - 1, 2 * rng.unit() - 1, 0);
        double n = v.norm();
        if (n > 1e-3 && n <= 1) return v / n;
    }
}

std::vector<Vec4> directions(const Sampling& s, const char* site) {
    std::vector<Vec4> out;
    for (int i = 0; i < 3; ++i) {
        out.push_back(axis(i));
        out.push_back(-axis(i));
    }
    Rng rng(s.seed, site);
    while (out.size() < std::max<std::size_t>(s.samples, 6)) out.push_back(unit_direction(rng));
    return out;
}

}  // namespace

Verdict check_axph_minus(const MetricChart& c, const Vec4& p, const Sampling& s) {
    Mat4 m = normal_frame(c, p);
    Mat4 g = c.g(p);
    if (g == eta()) {
        Verdict v = holds(Basis::Decided, "g = eta at the point: null vectors are the unit light cone");
        v.tolerance = 0;
        return v;
    }
    Mat4 inv = m.inverse();
    double worst = 0;
    Vec4 worst_dir = Vec4::Zero();
    for (const Vec4& d : directions(s, "axph-")) {
        // a photon sent in frame direction d
        Vec4 n = d;
        n[3] = 1;
        Vec4 v = m * n;
        double dev = std::abs(v.dot(g * v)) / v.squaredNorm();
        // null vectors over chart direction d, read in the frame
        double a = g(3, 3), b = 0, cc = 0;
        for (int i = 0; i < 3; ++i) {
            b += 2 * g(i, 3) * d[i];
            for (int j = 0; j < 3; ++j) cc += d[i] * g(i, j) * d[j];
        }
        double disc = b * b - 4 * a * cc;
        if (disc < 0) {
            dev = INFINITY;
        } else {
            for (double sign : {-1.0, 1.0}) {
                Vec4 w = d;
                w[3] = (-b + sign * std::sqrt(disc)) / (2 * a);
                Vec4 f = inv * w;
                double sp = f.head<3>().norm(), tp = std::abs(f[3]);
                dev = std::max(dev, std::abs(sp - tp) / std::max(tp, 1e-300));
            }
        }
        if (dev > worst) {
            worst = dev;
            worst_dir = d;
        }
    }
    if (worst > s.tolerance) {
        std::vector<Binding> ev;
        for (int i = 0; i < 3; ++i) ev.push_back({"d" + std::to_string(i + 1), from_double(worst_dir[i])});
        Verdict v = fails(Basis::Numeric, std::move(ev), "null cone deviates by " + fmt(worst) + " in the normal frame");
        v.tolerance = s.tolerance;
        return v;
    }
    Verdict v = holds(Basis::Numeric, "max null-cone deviation " + fmt(worst) + " over " + std::to_string(std::max<std::size_t>(s.samples, 6)) + " directions");
    v.tolerance = s.tolerance;
    return v;
}

double metric_rate(const Mat4& g, const Vec4& observer, const Vec4& observed) {
    double a = -observer.dot(g * observer), b = -observed.dot(g * observed);
    double gamma = -observer.dot(g * observed) / std::sqrt(a * b);
    return 1 / gamma;
}

namespace {

Vec4 tangent(const ChartCurve& c, double t) {
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (c.at(t + h) - c.at(t - h)) / (2 * h);
}

}  // namespace

Verdict check_axsymt_minus(const MetricChart& c, const ChartCurve& a, const ChartCurve& b, double t,
                           const RateOracle& rate, const Sampling& s) {
    Vec4 pa = a.at(t), pb = b.at(t);
    if ((pa - pb).cwiseAbs().maxCoeff() > 1e-9 * (1 + pa.cwiseAbs().maxCoeff()))
        throw NoMeeting("'" + a.name + "' and '" + b.name + "' do not meet at t = " + std::to_string(t));
    need_inside(c, pa);
    Mat4 g = c.g(pa);
    Vec4 ua = tangent(a, t), ub = tangent(b, t);
    if (!(ua.dot(g * ua) < 0)) throw NotTimelike("'" + a.name + "' is not timelike at the meeting");
    if (!(ub.dot(g * ub) < 0)) throw NotTimelike("'" + b.name + "' is not timelike at the meeting");
    double ab = rate(g, ua, ub), ba = rate(g, ub, ua);
    std::vector<Binding> ev{{"rate12", from_double(ab)}, {"rate21", from_double(ba)}};
    // tangents come from differences of the curves
    double tol = std::max(s.tolerance, 1e-8);
    Verdict v = std::abs(ab - ba) <= tol ? holds(Basis::Numeric, "both clocks run at rate " + fmt(ab))
                                         : fails(Basis::Numeric, {}, "rates differ: " + fmt(ab) + " vs " + fmt(ba));
    v.evidence = std::move(ev);
    v.tolerance = tol;
    return v;
}

ObserverView inertial_view(std::string name, const PoincareMap& w) {
    auto to_d = [](const Matrix4& m) {
        Mat4 out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out(i, j) = m(i, j).to_double();
        return out;
    };
    auto vec = [](const Coord4& c) { return Vec4(c[0].to_double(), c[1].to_double(), c[2].to_double(), c[3].to_double()); };
    Mat4 l = to_d(w.lorentz());
    Vec4 a = vec(w.translation());
    PoincareMap inv = w.inverse();
    Mat4 li = to_d(inv.lorentz());
    Vec4 ai = vec(inv.translation());
    ObserverView o;
    o.name = name;
    o.to_observer = [l, a](const Vec4& x) { return Vec4(l * x + a); };
    o.to_chart = [li, ai](const Vec4& y) { return Vec4(li * y + ai); };
    // chart time along the preimage of the time axis is affine in the
    // observer's time
    Vec4 dir = li.col(3);
    o.self = {name, [dir, ai](double t) { return Vec4(ai + (t - ai[3]) / dir[3] * dir); }};
    return o;
}

namespace {

std::vector<double> self_times(const Sampling& s) {
    std::vector<double> out;
    std::size_t n = std::max<std::size_t>(s.samples, 2);
    for (std::size_t i = 0; i < n; ++i) out.push_back(-2 + 4.0 * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

// sample points of a box: seeded interior points plus one on each closed face
std::vector<Vec4> box_samples(const Box& b, const Sampling& s, const std::string& site) {
    Vec4 lo, hi, mid;
    for (int i = 0; i < 4; ++i) {
        lo[i] = std::isfinite(b.lo[i]) ? b.lo[i] : (std::isfinite(b.hi[i]) ? b.hi[i] - 4 : -2);
        hi[i] = std::isfinite(b.hi[i]) ? b.hi[i] : lo[i] + 4;
        mid[i] = (lo[i] + hi[i]) / 2;
    }
    std::vector<Vec4> out;
    for (int i = 0; i < 4; ++i) {
        if (b.lo_closed[i]) {
            Vec4 p = mid;
            p[i] = b.lo[i];
            out.push_back(p);
        }
        if (b.hi_closed[i]) {
            Vec4 p = mid;
            p[i] = b.hi[i];
            out.push_back(p);
        }
    }
    out.push_back(mid);
    Rng rng(s.seed, site);
    while (out.size() < s.samples) {
        Vec4 p;
        for (int i = 0; i < 4; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * (0.001 + 0.998 * rng.unit());
        out.push_back(p);
    }
    return out;
}

bool open_at(const Box& b, const Vec4& p) {
    for (int k = 1; k <= 30; ++k) {
        double r = std::ldexp(1.0, -k);
        bool ball = true;
        for (int i = 0; i < 4 && ball; ++i) ball = b.contains(p + r * axis(i)) && b.contains(p - r * axis(i));
        if (ball) return true;
    }
    return false;
}

}  // namespace

Verdict check_axself_minus(const MetricChart& c, const ObserverView& o, const Sampling& s) {
    std::size_t seen = 0;
    double worst = 0;
    for (double t : self_times(s)) {
        Vec4 q = o.self.at(t);
        if (!c.domain.contains(q)) continue;
        Vec4 y = o.to_observer(q);
        if (!o.domain.contains(y)) continue;
        ++seen;
        double off = y.head<3>().cwiseAbs().maxCoeff();
        worst = std::max(worst, off);
        if (off > s.tolerance * (1 + std::abs(y[3]))) {
            Verdict v = fails(Basis::Sampled, point_evidence(y), o.name + " sees itself off its time axis");
            v.tolerance = s.tolerance;
            return v;
        }
    }
    if (seen == 0) return unknown("no self-observation of " + o.name + " inside its domain");
    Verdict v = holds(Basis::Sampled, std::to_string(seen) + " self points on the time axis (max offset " + fmt(worst) + ")");
    v.tolerance = s.tolerance;
    return v;
}

Verdict check_axev_minus(const MetricChart& c, const std::vector<ObserverView>& observers, const Sampling& s) {
    std::size_t probes = 0;
    for (const auto& o : observers) {
        for (const Vec4& p : box_samples(o.domain, s, "axev-" + o.name)) {
            if (!o.domain.contains(p)) continue;
            ++probes;
            if (!open_at(o.domain, p)) {
                Verdict v = fails(Basis::Sampled, point_evidence(p), "domain of " + o.name + " is not open at the point");
                v.tolerance = s.tolerance;
                return v;
            }
            Vec4 q = o.to_chart(p);
            if (!c.domain.contains(q)) continue;
            auto round_trip = [&](const ObserverView& k, const Vec4& y) {
                return (k.to_chart(y) - q).cwiseAbs().maxCoeff() <= s.tolerance * (1 + q.cwiseAbs().maxCoeff());
            };
            if (!round_trip(o, p)) {
                Verdict v = fails(Basis::Sampled, point_evidence(p), "chart of " + o.name + " does not invert");
                v.tolerance = s.tolerance;
                return v;
            }
            for (const auto& k : observers) {
                if (&k == &o) continue;
                Vec4 y = k.to_observer(q);
                if (k.domain.contains(y) && !round_trip(k, y)) {
                    Verdict v = fails(Basis::Sampled, point_evidence(p), k.name + " does not coordinatize an event " + o.name + " sees");
                    v.tolerance = s.tolerance;
                    return v;
                }
            }
        }
    }
    if (probes == 0) return unknown("no domain points sampled");
    Verdict v = holds(Basis::Sampled, std::to_string(probes) + " domain points: open, observations close up");
    v.tolerance = s.tolerance;
    return v;
}

namespace {

std::vector<Vec4> probe_grid(const Box& b) {
    std::array<std::vector<double>, 4> vals;
    for (int i = 0; i < 4; ++i) {
        double c = 0;
        if (std::isfinite(b.lo[i]) && std::isfinite(b.hi[i])) c = (b.lo[i] + b.hi[i]) / 2;
        else if (std::isfinite(b.lo[i])) c = b.lo[i] + 1;
        else if (std::isfinite(b.hi[i])) c = b.hi[i] - 1;
        for (double d : {-0.5, 0.0, 0.5}) {
            double v = c + d;
            if (v - 0.05 > b.lo[i] && v + 0.05 < b.hi[i]) vals[i].push_back(v);
        }
        if (vals[i].empty()) vals[i].push_back(c);
    }
    std::vector<Vec4> out;
    for (double a : vals[0])
        for (double b2 : vals[1])
            for (double c2 : vals[2])
                for (double d : vals[3]) out.push_back(Vec4(a, b2, c2, d));
    return out;
}

}  // namespace

Verdict check_axdiff(const MetricChart& c, int n, const Sampling& s) {
    if (n < 1) throw Error("AxDiff needs n >= 1");
    if (c.order < n)
        return unknown("declared order " + std::to_string(c.order) + " of '" + c.name + "' is below " + std::to_string(n));
    int top = std::min(n, 3);
    auto grid = probe_grid(c.domain);
    for (const Vec4& p : grid) {
        for (int k = 0; k < 4; ++k) {
            Vec4 e = axis(k);
            auto f = [&](double h) { return c.g(p + h * e); };
            Mat4 f0 = f(0);
            auto fail_at = [&](int order, int i, int j) {
                Verdict v = fails(Basis::Numeric, point_evidence(p),
                                  "order-" + std::to_string(order) + " difference quotients of g" + std::to_string(i + 1) +
                                      std::to_string(j + 1) + " in x" + std::to_string(k + 1) + " do not converge");
                v.tolerance = 1e-2;
                return v;
            };
            // first order: one-sided quotients have to meet
            Mat4 jump1 = ((f(1e-3) - f0) - (f0 - f(-1e-3))) / 1e-3;
            Mat4 jump2 = ((f(1e-4) - f0) - (f0 - f(-1e-4))) / 1e-4;
            Mat4 central = (f(1e-4) - f(-1e-4)) / 2e-4;
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j)
                    if (std::abs(jump2(i, j)) > 1e-6 * (1 + std::abs(central(i, j))) &&
                        std::abs(jump2(i, j)) > 0.5 * std::abs(jump1(i, j)))
                        return fail_at(1, i, j);
            for (int order = 2; order <= top; ++order) {
                // forward and backward k-th differences, and the central one
                auto side = [&](double h) -> Mat4 {
                    Mat4 fw = Mat4::Zero(), bw = Mat4::Zero();
                    double binom = 1;
                    for (int i = 0; i <= order; ++i) {
                        double sgn = (order - i) % 2 ? -1 : 1;
                        fw += sgn * binom * f(i * h);
                        bw += sgn * binom * f((i - order) * h);
                        binom = binom * (order - i) / (i + 1);
                    }
                    return (fw - bw) / std::pow(h, order);
                };
                auto central = [&](double h) -> Mat4 {
                    if (order == 2) return (f(h) - 2 * f0 + f(-h)) / (h * h);
                    return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h);
                };
                Mat4 j1 = side(4e-2), j2 = side(1e-2);
                Mat4 a = central(1e-2), b = central(5e-3);
                for (int i = 0; i < 4; ++i)
                    for (int j = i; j < 4; ++j) {
                        double scale = 1 + std::abs(b(i, j));
                        if (std::abs(a(i, j) - b(i, j)) > 1e-2 * scale) return fail_at(order, i, j);
                        if (std::abs(j2(i, j)) > 1e-4 * scale && std::abs(j2(i, j)) > 0.5 * std::abs(j1(i, j)))
                            return fail_at(order, i, j);
                    }
            }
        }
    }
    Verdict v = holds(Basis::Numeric, "declared order " + std::to_string(c.order) + "; quotients up to order " + std::to_string(top) +
                                          " converge on " + std::to_string(grid.size()) + " probes");
    v.tolerance = 1e-2;
    (void)s;
    return v;
}

namespace {

struct State {
    Vec4 x, u;
};

struct OutsideChart {};

State rhs(const MetricChart& c, const State& y, double fd) {
    if (!c.domain.contains(y.x)) throw OutsideChart{};
    auto gamma = christoffel(c, y.x, fd);
    Vec4 a;
    for (int i = 0; i < 4; ++i) a[i] = -y.u.dot(gamma[i] * y.u);
    return {y.u, a};
}

State rk4(const MetricChart& c, const State& y, double h, double fd) {
    auto step = [](const State& s, const State& k, double w) { return State{s.x + w * k.x, s.u + w * k.u}; };
    State k1 = rhs(c, y, fd);
    State k2 = rhs(c, step(y, k1, h / 2), fd);
    State k3 = rhs(c, step(y, k2, h / 2), fd);
    State k4 = rhs(c, step(y, k3, h), fd);
    State out{y.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x), y.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u)};
    if (!c.domain.contains(out.x)) throw OutsideChart{};
    return out;
}

}  // namespace

GeodesicResult geodesic(const MetricChart& c, const Vec4& x0, const Vec4& u0, const GeodesicOptions& opt) {
    need_inside(c, x0);
    double q = u0.dot(c.g(x0) * u0);
    if (!(q < 0)) throw NotTimelike("initial tangent is not timelike (g(u,u) = " + fmt(q) + ")");
    State y{x0, opt.normalize ? Vec4(u0 / std::sqrt(-q)) : u0};
    double q0 = y.u.dot(c.g(x0) * y.u);
    GeodesicResult r;
    r.s.push_back(0);
    r.x.push_back(y.x);
    r.u.push_back(y.u);
    double s = 0, h = opt.step;
    while (s < opt.span && r.steps < opt.max_steps) {
        double step = std::min(h, opt.span - s);
        State full, half;
        try {
            full = rk4(c, y, step, opt.fd_step);
            half = rk4(c, rk4(c, y, step / 2, opt.fd_step), step / 2, opt.fd_step);
        } catch (const OutsideChart&) {
            if (step / 2 >= opt.min_step) {
                h = step / 2;
                ++r.halvings;
                continue;
            }
            r.truncated = true;
            break;
        }
        double err = (full.x - half.x).cwiseAbs().maxCoeff();
        if (err > opt.tolerance && step / 2 >= opt.min_step) {
            h = step / 2;
            ++r.halvings;
            continue;
        }
        y = half;
        s += step;
        ++r.steps;
        r.s.push_back(s);
        r.x.push_back(y.x);
        r.u.push_back(y.u);
        r.drift = std::max(r.drift, std::abs(y.u.dot(c.g(y.x) * y.u) - q0));
        if (err < opt.tolerance / 32 && h < opt.step) h = std::min(opt.step, 2 * h);
    }
    if (s < opt.span) r.truncated = true;
    return r;
}

Vec4 GeodesicResult::position(double at) const {
    if (s.empty()) throw Error("empty geodesic");
    if (at <= s.front()) return x.front();
    if (at >= s.back()) return x.back();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), at) - s.begin()) - 1;
    double h = s[k + 1] - s[k], w = (at - s[k]) / h;
    double h00 = 2 * w * w * w - 3 * w * w + 1, h10 = w * w * w - 2 * w * w + w;
    double h01 = -2 * w * w * w + 3 * w * w, h11 = w * w * w - w * w;
    return h00 * x[k] + h10 * h * u[k] + h01 * x[k + 1] + h11 * h * u[k + 1];
}

std::string geodesic_csv(const MetricChart& c, const GeodesicResult& r) {
    std::ostringstream out;
    out.precision(12);
    out << "s,x,y,z,t,guu\n";
    for (std::size_t i = 0; i < r.s.size(); ++i) {
        out << r.s[i];
        for (int k = 0; k < 4; ++k) out << ',' << r.x[i][k];
        out << ',' << r.u[i].dot(c.g(r.x[i]) * r.u[i]) << '\n';
    }
    return out.str();
}

Vec4 rindler_to_minkowski(const Vec4& p) {
    return Vec4(p[0] * std::cosh(p[3]), p[1], p[2], p[0] * std::sinh(p[3]));
}

// ---- chart files

namespace {

using nlohmann::json;

Expr expr_of(const json& j) {
    if (j.is_number()) return Expr(j.get<double>());
    if (j.is_string()) return Expr::parse(j.get<std::string>());
    throw FormatError("chart: metric entries are expressions or numbers");
}

nlohmann::ordered_json bound(double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); }

}  // namespace

MetricChart parse_chart(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("chart: ") + e.what());
    }
    // scenario files carry the chart under "chart"
    if (j.is_object() && j.contains("chart") && !j.contains("metric")) j = j["chart"];
    if (!j.is_object() || !j.contains("metric")) throw FormatError("chart: missing 'metric'");
    if (j.contains("format") && j["format"] != "axrel-chart/1") throw FormatError("chart: unsupported format " + j["format"].dump());
    try {
        std::array<Expr, 16> g;
        const json& m = j["metric"];
        if (m.is_object() && m.contains("diag")) {
            const json& d = m["diag"];
            if (!d.is_array() || d.size() != 4) throw FormatError("chart: 'diag' needs 4 entries");
            for (int i = 0; i < 4; ++i) g[i * 4 + i] = expr_of(d[i]);
        } else if (m.is_array() && m.size() == 4) {
            for (int i = 0; i < 4; ++i) {
                if (!m[i].is_array() || m[i].size() != 4) throw FormatError("chart: metric rows need 4 entries");
                for (int k = 0; k < 4; ++k) g[i * 4 + k] = expr_of(m[i][k]);
            }
        } else {
            throw FormatError("chart: 'metric' is {\"diag\": [...]} or a 4x4 array");
        }
        Box box;
        if (j.contains("domain")) {
            const json& d = j["domain"];
            auto read = [&](const char* key, std::array<double, 4>& out) {
                if (!d.contains(key)) return;
                const json& a = d[key];
                if (!a.is_array() || a.size() != 4) throw FormatError(std::string("chart: domain.") + key + " needs 4 entries");
                for (int i = 0; i < 4; ++i)
                    if (!a[i].is_null()) out[i] = a[i].get<double>();
            };
            auto flags = [&](const char* key, std::array<bool, 4>& out) {
                if (!d.contains(key)) return;
                const json& a = d[key];
                if (!a.is_array() || a.size() != 4) throw FormatError(std::string("chart: domain.") + key + " needs 4 entries");
                for (int i = 0; i < 4; ++i) out[i] = a[i].get<bool>();
            };
            read("lo", box.lo);
            read("hi", box.hi);
            flags("closed_lo", box.lo_closed);
            flags("closed_hi", box.hi_closed);
        }
        return expression_chart(j.value("name", std::string("chart")), g, box, j.value("order", 1000));
    } catch (const json::exception& e) {
        throw FormatError(std::string("chart: ") + e.what());
    }
}

MetricChart load_chart(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open chart '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_chart(ss.str());
}

std::string print_chart(const MetricChart& c) {
    if (!c.components) throw FormatError("chart '" + c.name + "' has no textual form");
    const auto& g = *c.components;
    nlohmann::ordered_json j;
    j["format"] = "axrel-chart/1";
    j["name"] = c.name;
    nlohmann::ordered_json d;
    d["lo"] = nlohmann::ordered_json::array();
    d["hi"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        d["lo"].push_back(bound(c.domain.lo[i]));
        d["hi"].push_back(bound(c.domain.hi[i]));
    }
    d["closed_lo"] = c.domain.lo_closed;
    d["closed_hi"] = c.domain.hi_closed;
    j["domain"] = d;
    j["order"] = c.order;
    bool diagonal = true;
    for (int e = 0; e < 16; ++e)
        if (e / 4 != e % 4 && !(g[e].is_constant() && g[e].eval({}) == 0)) diagonal = false;
    if (diagonal) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (int i = 0; i < 4; ++i) a.push_back(g[i * 4 + i].to_string());
        j["metric"]["diag"] = a;
    } else {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < 4; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < 4; ++k) row.push_back(g[i * 4 + k].to_string());
            rows.push_back(row);
        }
        j["metric"] = rows;
    }
    return j.dump(2) + "\n";
}

}  // namespace axrel::genrel
