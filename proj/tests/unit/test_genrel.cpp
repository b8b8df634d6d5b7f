#include "doctest.h"

#include "axrel/errors.hpp"
#include "axrel/genrel/genrel.hpp"
#include "axrel/kinematics/kinematics.hpp"

#include <cmath>

using namespace axrel;
using namespace axrel::genrel;

namespace {

Mat4 eta4() { return Eigen::Vector4d(1, 1, 1, -1).asDiagonal(); }

MetricChart constant_chart(const Mat4& g) {
    MetricChart c;
    c.name = "constant";
    c.order = 1000;
    c.g = [g](const Vec4&) { return g; };
    return c;
}

double frame_error(const MetricChart& c, const Vec4& p) {
    Mat4 m = normal_frame(c, p);
    return (m.transpose() * c.g(p) * m - eta4()).cwiseAbs().maxCoeff();
}

ChartCurve moving(std::string name, double v) {
    return {std::move(name), [v](double t) { return Vec4(v * t, 0, 0, t); }};
}

}  // namespace

TEST_CASE("expressions") {
    Expr e = Expr::parse("-x^2 + 3*sin(t)/y - 2^-1");
    CHECK(e.eval({2, 1, 0, 0}) == doctest::Approx(-4.5));
    CHECK(Expr::parse(e.to_string()).to_string() == e.to_string());
    for (const char* text : {"x1*x4", "-(x + y)^3", "sqrt(1 + x^2)", "a - (b - c)", "x - (y - z)", "x/(y*z)", "(-x)^2",
                             "exp(-t)*cosh(x)", "abs(t)", "x^y^2", "1e-05*x"}) {
        if (std::string(text) == "a - (b - c)") {
            CHECK_THROWS_AS(Expr::parse(text), SyntaxError);
            continue;
        }
        Expr a = Expr::parse(text);
        CHECK_MESSAGE(Expr::parse(a.to_string()).to_string() == a.to_string(), text);
        std::array<double, 4> p{0.7, 1.3, -0.4, 0.2};
        CHECK(Expr::parse(a.to_string()).eval(p) == doctest::Approx(a.eval(p)));
    }
    CHECK(Expr::parse("x - (y - z)").eval({1, 2, 3, 0}) == 2);
    CHECK_THROWS_AS(Expr::parse("x +"), SyntaxError);
    CHECK_THROWS_AS(Expr::parse("foo(x)"), SyntaxError);
    CHECK_THROWS_AS(Expr::parse("(x"), SyntaxError);

    // symbolic derivatives against central differences
    for (const char* text : {"x^2*sin(t)", "sqrt(1 + x*y)", "exp(x)/(1 + t^2)", "x^y", "log(1 + x^2)*cosh(z)"}) {
        Expr a = Expr::parse(text);
        std::array<double, 4> p{0.6, 0.8, 0.3, -0.5};
        for (int k = 0; k < 4; ++k) {
            auto q = p, r = p;
            q[k] += 1e-6;
            r[k] -= 1e-6;
            double fd = (a.eval(q) - a.eval(r)) / 2e-6;
            CHECK_MESSAGE(a.derivative(k).eval(p) == doctest::Approx(fd).epsilon(1e-6), text);
        }
    }
}

TEST_CASE("normal frames") {
    CHECK(normal_frame(flat_chart(), Vec4(1, 2, 3, 4)) == Mat4::Identity());
    MetricChart r = rindler_metric_chart();
    Mat4 m = normal_frame(r, Vec4(2, 0, 0, 0));
    Mat4 want = Eigen::Vector4d(1, 1, 1, 0.5).asDiagonal();
    CHECK((m - want).cwiseAbs().maxCoeff() < 1e-15);

    Mat4 g = eta4();
    g(0, 3) = g(3, 0) = 0.5;
    g(1, 2) = g(2, 1) = 0.3;
    CHECK(frame_error(constant_chart(g), Vec4::Zero()) < 1e-9);
    // time axis spacelike: the eigenbasis takes over
    Mat4 swapped = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
    CHECK(frame_error(constant_chart(swapped), Vec4::Zero()) < 1e-9);
    Mat4 null_axis = Mat4::Zero();
    null_axis(0, 3) = null_axis(3, 0) = 1;
    null_axis(1, 1) = null_axis(2, 2) = 1;
    CHECK(frame_error(constant_chart(null_axis), Vec4::Zero()) < 1e-9);

    CHECK_THROWS_AS(normal_frame(constant_chart(Eigen::Vector4d(1, 1, 0, -1).asDiagonal()), Vec4::Zero()), DegenerateMetric);
    CHECK_THROWS_AS(normal_frame(constant_chart(Eigen::Vector4d(1, 1, -1, -1).asDiagonal()), Vec4::Zero()), DegenerateMetric);
    CHECK_THROWS_AS(normal_frame(r, Vec4(-1, 0, 0, 0)), LeftDomain);
}

TEST_CASE("photons in the normal frame") {
    Verdict flat = check_axph_minus(flat_chart(), Vec4(0, 0, 0, 0));
    CHECK(flat.holds());
    CHECK(flat.basis == Basis::Decided);
    MetricChart r = rindler_metric_chart();
    for (double x : {1.0, 0.25, 3.0}) {
        Verdict v = check_axph_minus(r, Vec4(x, 0, 0, 0.7));
        CHECK_MESSAGE(v.holds(), v.note);
        REQUIRE(v.tolerance);
        CHECK(*v.tolerance <= 1e-9);
    }
    // a chart with a tilted cone passes too: the frame absorbs it
    Mat4 g = eta4();
    g(0, 3) = g(3, 0) = 0.4;
    CHECK(check_axph_minus(constant_chart(g), Vec4::Zero()).holds());
    CHECK_THROWS_AS(check_axph_minus(constant_chart(Eigen::Vector4d(1, 1, -1, -1).asDiagonal()), Vec4::Zero()), DegenerateMetric);
}

TEST_CASE("clock symmetry at a meeting") {
    MetricChart f = flat_chart();
    Verdict same = check_axsymt_minus(f, moving("a", 0), moving("b", 0), 0);
    CHECK(same.holds());
    Verdict v = check_axsymt_minus(f, moving("a", 0), moving("b", 0.6), 0);
    CHECK(v.holds());
    // the same number as the special-relativistic dilation factor
    EffectReport e = effects(ExactReal::rational(3, 5));
    CHECK(std::get<ExactReal>(v.evidence[0].value).to_double() == doctest::Approx(e.time_dilation.to_double()).epsilon(1e-9));
    CHECK(std::get<ExactReal>(v.evidence[1].value).to_double() == doctest::Approx(0.8).epsilon(1e-9));

    RateOracle lopsided = [](const Mat4& g, const Vec4& a, const Vec4& b) { return metric_rate(g, a, b) * (1 + a[0]); };
    CHECK(check_axsymt_minus(f, moving("a", 0), moving("b", 0.6), 0, lopsided).fails());

    ChartCurve late{"late", [](double t) { return Vec4(1, 0, 0, t); }};
    CHECK_THROWS_AS(check_axsymt_minus(f, moving("a", 0), late, 0), NoMeeting);
    CHECK_THROWS_AS(check_axsymt_minus(f, moving("a", 0), moving("b", 2), 0), NotTimelike);

    // static observers of the Rindler chart at the same place
    MetricChart r = rindler_metric_chart();
    ChartCurve s1{"s1", [](double t) { return Vec4(1, 0, 0, t); }};
    ChartCurve s2{"s2", [](double t) { return Vec4(1 + 0.3 * std::sin(t), 0, 0, t); }};
    CHECK(check_axsymt_minus(r, s1, s2, 0).holds());
}

TEST_CASE("self and event axioms on observer charts") {
    MetricChart f = flat_chart();
    ObserverView rest = inertial_view("rest", PoincareMap());
    ObserverView moving_obs = inertial_view("boosted", observer_chart(Vec3(ExactReal::rational(3, 5), 0, 0), {1, 0, 1, 0}, Coord4(1, 0, 0, 2)));
    CHECK(check_axself_minus(f, rest).holds());
    CHECK(check_axself_minus(f, moving_obs).holds());
    CHECK(check_axev_minus(f, {rest, moving_obs}).holds());

    ObserverView displaced = rest;
    displaced.to_observer = [](const Vec4& x) { return Vec4(x + Vec4(1, 0, 0, 0)); };
    displaced.to_chart = [](const Vec4& y) { return Vec4(y - Vec4(1, 0, 0, 0)); };
    CHECK(check_axself_minus(f, displaced).fails());

    ObserverView half_open = rest;
    half_open.domain.lo[3] = 0;
    half_open.domain.lo_closed[3] = true;
    Verdict v = check_axev_minus(f, {rest, half_open});
    CHECK(v.fails());
    CHECK(std::get<ExactReal>(v.evidence[3].value) == 0);
    half_open.domain.lo_closed[3] = false;
    CHECK(check_axev_minus(f, {rest, half_open}).holds());

    ObserverView broken = rest;
    broken.to_chart = [](const Vec4& y) { return Vec4(2 * y); };
    CHECK(check_axev_minus(f, {rest, broken}).fails());
}

TEST_CASE("differentiability probes") {
    CHECK(check_axdiff(flat_chart(), 3).holds());
    CHECK(check_axdiff(rindler_metric_chart(), 3).holds());
    Box all;
    std::array<Expr, 16> g;
    g[0] = g[5] = g[10] = Expr(1.0);
    g[15] = Expr::parse("-(1 + abs(t))^2");
    MetricChart kink = expression_chart("kink", g, all, 1000);
    Verdict v = check_axdiff(kink, 1);
    CHECK(v.fails());
    CHECK(std::get<ExactReal>(v.evidence[3].value) == 0);
    // C^1 but not C^2
    g[15] = Expr::parse("-(2 + t*abs(t))");
    MetricChart c1 = expression_chart("c1", g, all, 1000);
    CHECK(check_axdiff(c1, 1).holds());
    CHECK(check_axdiff(c1, 2).fails());
    MetricChart low = rindler_metric_chart();
    low.order = 2;
    CHECK(check_axdiff(low, 3).outcome == Outcome::Unknown);
}

TEST_CASE("geodesics") {
    MetricChart f = flat_chart();
    Vec4 u(0.3, 0, 0, 1);
    GeodesicResult line = geodesic(f, Vec4::Zero(), u);
    CHECK_FALSE(line.truncated);
    CHECK(line.drift < 1e-12);
    Vec4 unit = u / std::sqrt(1 - 0.09);
    CHECK((line.x.back() - unit).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(geodesic(f, Vec4::Zero(), Vec4(1, 0, 0, 0.5)), NotTimelike);

    MetricChart r = rindler_metric_chart();
    CHECK_THROWS_AS(geodesic(r, Vec4(-1, 0, 0, 0), Vec4(0, 0, 0, 1)), LeftDomain);
    // starts clear of the horizon x = 0 for the unit span
    const std::pair<Vec4, Vec4> starts[] = {{Vec4(1, 0, 0, 0.2), Vec4(0.3, 0.2, 0, 1)},
                                            {Vec4(2, 0, 0, 0), Vec4(0, 0, 0, 1)},
                                            {Vec4(1.5, 0, 0, -0.3), Vec4(-0.2, 0, 0.1, 0.8)}};
    for (const auto& [x0, u0] : starts) {
        GeodesicResult g = geodesic(r, x0, u0);
        REQUIRE_FALSE(g.truncated);
        CHECK(g.drift <= 1e-6);
        // straight in Minkowski coordinates: F(s) = F(x0) + s DF(x0) u
        Vec4 un = u0 / std::sqrt(-(u0.dot(r.g(x0) * u0)));
        Vec4 f0 = rindler_to_minkowski(x0);
        Vec4 v0(un[0] * std::cosh(x0[3]) + x0[0] * un[3] * std::sinh(x0[3]), un[1], un[2],
                un[0] * std::sinh(x0[3]) + x0[0] * un[3] * std::cosh(x0[3]));
        double dev = 0;
        for (std::size_t i = 0; i < g.s.size(); ++i)
            dev = std::max(dev, (rindler_to_minkowski(g.x[i]) - (f0 + g.s[i] * v0)).cwiseAbs().maxCoeff());
        CHECK(dev <= 1e-6);
        CHECK((g.position(0.5) - g.x[0]).norm() > 0);
    }
    // heading for the horizon x = 0, reached at finite proper time
    GeodesicResult fall = geodesic(r, Vec4(1, 0, 0, 0), Vec4(-0.8, 0, 0, 1), {.span = 10});
    CHECK(fall.truncated);
    CHECK(fall.s.back() < 10);
}

TEST_CASE("verdicts survive a change of coordinates") {
    auto phi = [](const Vec4& y) { return Vec4(y[0] + 0.1 * y[1] * y[1], y[1], y[2], y[3] + 0.1 * std::sin(y[0])); };
    Box box;
    MetricChart f = pullback(flat_chart(), phi, box, 1000);
    auto rphi = [](const Vec4& y) { return Vec4(y[0] * (1 + 0.05 * y[2] * y[2]), y[1], y[2], y[3] + 0.1 * y[1]); };
    Box rbox;
    rbox.lo[0] = 0;
    MetricChart r = pullback(rindler_metric_chart(), rphi, rbox, 1000);
    for (const MetricChart* c : {&f, &r}) {
        for (Vec4 p : {Vec4(1, 0.5, -0.5, 0), Vec4(2, -1, 0.3, 1)}) {
            Verdict v = check_axph_minus(*c, p);
            CHECK_MESSAGE(v.holds(), std::string(c->name + ": " + v.note));
            CHECK(frame_error(*c, p) < 1e-9);
        }
        CHECK(check_axdiff(*c, 3).holds());
        GeodesicResult g = geodesic(*c, Vec4(1, 0.2, 0, 0), Vec4(0.1, 0, 0, 1));
        CHECK_FALSE(g.truncated);
        CHECK(g.drift <= 1e-6);
    }
    // the flat pullback geodesic is a straight line after phi
    GeodesicResult g = geodesic(f, Vec4(1, 0.2, 0, 0), Vec4(0.1, 0.3, 0, 1));
    Vec4 a = phi(g.x.front()), b = phi(g.x.back()), mid = phi(g.position(g.s.back() / 2));
    CHECK(((a + b) / 2 - mid).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("chart files") {
    MetricChart r = rindler_metric_chart();
    std::string text = print_chart(r);
    MetricChart back = parse_chart(text);
    CHECK(print_chart(back) == text);
    CHECK(back.g(Vec4(3, 0, 0, 0))(3, 3) == -9);
    CHECK_FALSE(back.domain.contains(Vec4(0, 0, 0, 0)));

    std::string full = R"({"format":"axrel-chart/1","name":"tilt","order":4,
        "metric":[["1","0","0","x/4"],["0","1","0","0"],["0","0","1","0"],["x/4","0","0","-1"]]})";
    MetricChart tilt = parse_chart(full);
    CHECK(tilt.order == 4);
    CHECK(tilt.g(Vec4(2, 0, 0, 0))(0, 3) == 0.5);
    CHECK(parse_chart(print_chart(tilt)).g(Vec4(2, 0, 0, 0))(3, 0) == 0.5);
    CHECK_THROWS_AS(parse_chart(R"({"metric":[["1","0","0","x"],["0","1","0","0"],["0","0","1","0"],["0","0","0","-1"]]})"), DegenerateMetric);
    CHECK_THROWS_AS(parse_chart(R"({"metric":{"diag":["1","1","1"]}})"), FormatError);
    CHECK_THROWS_AS(parse_chart(R"({"metric":{"diag":["1","1","1","-q"]}})"), SyntaxError);
    CHECK_THROWS_AS(print_chart(pullback(r, [](const Vec4& y) { return y; }, r.domain, 1)), FormatError);
    // the chart inside a scenario file
    MetricChart inner = parse_chart(R"({"format":"axrel-scenario/1","chart":{"metric":{"diag":["1","1","1","-x^2"]}}})");
    CHECK(inner.g(Vec4(2, 0, 0, 0))(3, 3) == -4);
}
