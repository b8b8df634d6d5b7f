#include "doctest.h"

#include "axrel/errors.hpp"
#include "axrel/kinematics/lorentz.hpp"
#include "axrel/model/io.hpp"
#include "axrel/model/structure.hpp"
#include "quarantine.hpp"

using namespace axrel;

namespace {

ExactReal q(long n, long d = 1) { return ExactReal::rational(n, d); }

Structure rest_and_boost() {
    return standard_minkowski({{"rest", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4()},
                               {"k", Vec3(q(3, 5), 0, 0), {1, 0, 0, 0}, Coord4()}});
}

}  // namespace

TEST_CASE("lorentz layer") {
    PoincareMap b = boost(Vec3(q(3, 5), 0, 0));
    // oracle: gamma = 1/sqrt(1 - 9/25) = 5/4; t' = gamma (t - v x), x' = gamma (x - v t)
    CHECK(b.lorentz()(3, 3) == q(5, 4));
    CHECK(b(Coord4(q(3, 5), 0, 0, 1)) == Coord4(0, 0, 0, q(4, 5)));
    CHECK(is_lorentz(b.lorentz()));
    CHECK(b.orthochronous());
    CHECK(boost(Vec3(0, 0, 0)) == PoincareMap());
    CHECK_THROWS_AS(boost(Vec3(1, 0, 0)), SuperluminalVelocity);
    CHECK_THROWS_AS(boost(Vec3(q(3, 5), q(4, 5), q(1, 10))), SuperluminalVelocity);

    // irrational gamma: v = (1/3, -1/4, 1/5)
    PoincareMap c = observer_chart(Vec3(q(1, 3), q(-1, 4), q(1, 5)), {2, 1, -1, 3}, Coord4(1, -2, q(1, 2), 3));
    CHECK(is_lorentz(c.lorentz()));
    CHECK(c.compose(c.inverse()) == PoincareMap());
    CHECK(c.inverse().compose(c) == PoincareMap());
    CHECK(c(Coord4(1, -2, q(1, 2), 3)) == Coord4());
    Matrix4 r = rotation({2, 1, -1, 3});
    CHECK(r.transpose() * r == Matrix4::identity());
    CHECK(r.determinant() == 1);
    CHECK_THROWS_AS(PoincareMap(rotation({1, 0, 0, 0}) * Matrix4::eta() * Matrix4::eta() * [] {
                                    Matrix4 m = Matrix4::identity();
                                    m(0, 3) = 1;
                                    return m;
                                }(),
                                Coord4()),
                    Error);

    // generic affine inverse
    Matrix4 g = Matrix4::identity();
    g(0, 3) = q(-1, 2);
    g(1, 0) = 3;
    AffineMap a(g, Coord4(1, 2, 3, 4));
    CHECK(a.compose(a.inverse()).is_identity());
}

TEST_CASE("mu") {
    CHECK(mu(Coord4(), Coord4(1, 0, 0, 1)) == 0);
    CHECK(mu(Coord4(), Coord4(0, 0, 0, 1)) == -1);
    CHECK(mu(Coord4(1, 2, 3, 0), Coord4(4, 6, 3, 5)) == 0);  // 9 + 16 + 0 - 25
}

TEST_CASE("standard minkowski") {
    Structure one = standard_minkowski({{"o", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4()}});
    const auto& chart = std::get<AffineChart>(*one.chart("o"));
    CHECK(chart.to_observer.is_identity());
    for (long t : {-3L, 0L, 7L}) CHECK(one.holds_W("o", "o", Coord4(0, 0, 0, t)) == Truth::True);
    CHECK(one.holds_W("o", "o", Coord4(1, 0, 0, 0)) == Truth::False);

    Structure s = rest_and_boost();
    const auto& kc = std::get<AffineChart>(*s.chart("k"));
    CHECK(kc.to_observer.linear()(3, 3) == q(5, 4));
    CHECK(kc.is_poincare());
    // mu preserved by the second chart
    Coord4 x(1, 2, 0, 5), y(-1, q(1, 2), 3, q(7, 3));
    CHECK(mu(kc.to_observer(x), kc.to_observer(y)) == mu(x, y));

    CHECK_THROWS_AS(standard_minkowski({{"c", Vec3(1, 0, 0), {1, 0, 0, 0}, Coord4()}}), SuperluminalObserver);
    CHECK(s.photon_family());
    CHECK(s.inertial_family());
    CHECK(s.is_inertial_observer("k"));
}

TEST_CASE("holds_W and events") {
    Structure s = rest_and_boost();
    s.add_body(photon_body("p", Coord4(), Vec3(1, 0, 0)));
    CHECK(s.holds_W("rest", "rest", Coord4(0, 0, 0, 7)) == Truth::True);
    CHECK(s.holds_W("rest", "p", Coord4(2, 0, 0, 2)) == Truth::True);
    CHECK(s.holds_W("rest", "p", Coord4(2, 0, 0, 3)) == Truth::False);
    CHECK_THROWS_AS(s.holds_W("p", "rest", Coord4()), NotAnObserver);
    // the boosted observer sees itself on its time axis
    CHECK(s.holds_W("k", "k", Coord4(0, 0, 0, q(4, 5))) == Truth::True);

    // crossing lines: a at rest at x = 3, b leaving the origin at 3/5
    Structure c = standard_minkowski({{"o", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4()}});
    c.add_body(inertial_body("a", Coord4(3, 0, 0, 0), Vec3(0, 0, 0)));
    c.add_body(inertial_body("b", Coord4(), Vec3(q(3, 5), 0, 0)));
    // intersection: 3 = (3/5) t -> t = 5
    auto ev = c.event_at("o", Coord4(3, 0, 0, 5));
    REQUIRE(ev.named.size() == 2);
    CHECK(ev.named[0] == "a");
    CHECK(ev.named[1] == "b");
    CHECK(ev.photons);
    CHECK(c.event_at("o", Coord4(1, 1, 1, 0)).named.empty());
    auto origin = c.event_at("o", Coord4());
    CHECK(std::find(origin.named.begin(), origin.named.end(), "o") != origin.named.end());
}

TEST_CASE("event correspondence") {
    Structure s = rest_and_boost();
    Coord4 x(q(3, 5), 0, 0, 1);
    CHECK(s.event_correspondence("rest", "rest", x) == x);
    CHECK(s.event_correspondence("rest", "k", x) == Coord4(0, 0, 0, q(4, 5)));
    CHECK(s.event_correspondence("k", "rest", Coord4(0, 0, 0, q(4, 5))) == x);

    Structure t = standard_minkowski({{"o", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4()},
                                      {"o2", Vec3(0, 0, 0), {1, 0, 0, 0}, Coord4(-1, -2, -3, -4)}});
    CHECK(t.event_correspondence("o", "o2", Coord4(5, 5, 5, 5)) == Coord4(6, 7, 8, 9));

    // event content is the same for corresponding locations
    Structure r = reference_minkowski();
    r.add_body(inertial_body("a", Coord4(3, 0, 0, 0), Vec3(0, 0, 0)));
    r.add_body(inertial_body("b", Coord4(), Vec3(q(3, 5), 0, 0)));
    for (const auto& o : r.observers()) {
        Coord4 x2 = r.event_correspondence("rest", o, Coord4(3, 0, 0, 5));
        auto e1 = r.event_at("rest", Coord4(3, 0, 0, 5));
        auto e2 = r.event_at(o, x2);
        CHECK(e1.named == e2.named);
    }
}

TEST_CASE("worldlines") {
    CHECK_THROWS_AS(Worldline::inertial(Coord4(), Vec3(1, 0, 0)), SuperluminalVelocity);
    CHECK_THROWS_AS(Worldline::photon(Coord4(), Vec3(1, 1, 0)), InvalidWorldline);
    CHECK_NOTHROW(Worldline::photon(Coord4(), Vec3(q(3, 5), q(4, 5), 0)));
    CHECK_THROWS_AS(Worldline::piecewise({Coord4(), Coord4(1, 0, 0, 0)}), InvalidWorldline);
    CHECK_THROWS_AS(Body("x", true, false, Worldline::photon(Coord4(), Vec3(1, 0, 0))), InvalidWorldline);

    Worldline trip = Worldline::piecewise({Coord4(), Coord4(3, 0, 0, 5), Coord4(0, 0, 0, 10)});
    CHECK(trip.contains(Coord4(q(3, 2), 0, 0, q(5, 2))) == Truth::True);
    CHECK(trip.contains(Coord4(3, 0, 0, 5)) == Truth::True);
    CHECK(trip.contains(Coord4(0, 0, 0, 11)) == Truth::False);
    CHECK(*trip.at_time(8) == Coord4(q(6, 5), 0, 0, 8));

    Worldline h = Worldline::hyperbolic(Vec3(0, 0, 0), 0, Vec3(1, 0, 0), 1);
    // x^2 - t^2 = 1: (5/4, 3/4)
    CHECK(h.contains(Coord4(q(5, 4), 0, 0, q(3, 4))) == Truth::True);
    CHECK(h.contains(Coord4(q(-5, 4), 0, 0, q(3, 4))) == Truth::False);
    CHECK(*h.at_time(q(3, 4)) == Coord4(q(5, 4), 0, 0, q(3, 4)));

    SmoothNumeric curve;
    curve.position = [](double t) { return std::array<double, 3>{std::sqrt(1 + t * t), 0, 0}; };
    curve.t_min = -2;
    curve.t_max = 2;
    curve.tolerance = 1e-9;
    Worldline sm = Worldline::smooth(curve);
    CHECK(sm.contains(Coord4(q(5, 4), 0, 0, q(3, 4))) == Truth::True);
    CHECK(sm.contains(Coord4(2, 0, 0, q(3, 4))) == Truth::False);
    CHECK(sm.contains_numeric({1.25 + 3e-9, 0, 0, 0.75}, 1e-9) == Truth::Unknown);
    CHECK(sm.contains(Coord4(1, 0, 0, 5)) == Truth::False);

    Worldline bounded = Worldline::inertial(Coord4(), Vec3(0, 0, 0)).with_domain(ExactReal(0), ExactReal(1));
    CHECK(bounded.contains(Coord4(0, 0, 0, 2)) == Truth::False);
    CHECK(bounded.contains(Coord4(0, 0, 0, q(1, 2))) == Truth::True);

    auto cl = cloud("ship", InertialLine{Coord4(), Vec3(q(3, 5), 0, 0)}, {Vec3(0, 0, 0), Vec3(1, 0, 0)});
    REQUIRE(cl.size() == 2);
    CHECK(cl[1].worldline.contains(Coord4(q(8, 5), 0, 0, 1)) == Truth::True);
}

TEST_CASE("rindler chart") {
    Structure s("ship");
    s.add_body(plain_body("rear", rindler_worldline(1, 0)));
    s.add_body(plain_body("nose", rindler_worldline(1, q(1, 2))));
    s.set_chart("rear", rindler_chart(1));
    for (double T : {-1.0, 0.0, 0.5, 2.0}) {
        CHECK(s.holds_W("rear", "rear", Coord4(0, 0, 0, from_double(T))) == Truth::True);
        CHECK(s.holds_W("rear", "nose", Coord4(q(1, 2), 0, 0, from_double(T))) == Truth::True);
        CHECK(s.holds_W("rear", "nose", Coord4(q(1, 4), 0, 0, from_double(T))) == Truth::False);
    }
    CHECK(s.holds_W("rear", "rear", Coord4(-2, 0, 0, 0)) == Truth::False);
}

TEST_CASE("model files round trip") {
    Structure s = reference_minkowski();
    s.add_body(photon_body("p", Coord4(), Vec3(q(3, 5), q(4, 5), 0)));
    s.add_body(plain_body("twin", Worldline::piecewise({Coord4(), Coord4(3, 0, 0, 5), Coord4(0, 0, 0, 10)})));
    s.add_body(plain_body("ship", Worldline::hyperbolic(Vec3(0, 0, 0), 0, Vec3(1, 0, 0), q(1, 2))
                                      .with_domain(ExactReal(-1), std::nullopt)));
    s.add_body(inertial_body("g", Coord4(), Vec3(q(1, 2), 0, 0)));
    Matrix4 gal = Matrix4::identity();
    gal(0, 3) = q(-1, 2);
    DomainBox box;
    box.lo[3] = ExactReal(0);
    s.set_chart("g", AffineChart(AffineMap(gal, Coord4(0, 0, 0, 0)), box));
    std::string text = print_model(s);
    Structure back = parse_model(text);
    CHECK(print_model(back) == text);
    CHECK(back.bodies().size() == s.bodies().size());
    CHECK(back.holds_W("boost_x", "p", s.event_correspondence("rest", "boost_x", Coord4(q(3, 5), q(4, 5), 0, 1))) ==
          Truth::True);
    CHECK(back.holds_W("g", "g", Coord4(0, 0, 0, -1)) == Truth::False);
    CHECK(back.holds_W("g", "g", Coord4(0, 0, 0, 1)) == Truth::True);

    CHECK_THROWS_AS(parse_model("{"), FormatError);
    CHECK_THROWS_AS(parse_model(R"({"format":"axrel-model","version":1,"bodies":[{"id":"a","worldline":{"kind":"warp"}}]})"),
                    FormatError);
    CHECK_THROWS_AS(parse_model(R"({"format":"axrel-model","version":1,"observers":[{"name":"a","velocity":["1","0","0"]}]})"),
                    SuperluminalObserver);
    CHECK_THROWS_AS(parse_model(R"({"format":"axrel-model","version":1,"constants":["3/"]})"), LiteralError);
}

TEST_CASE("quarantined superluminal model") {
    Structure s = testing::superluminal_model();
    CHECK(s.holds_W("rest", "ftl", Coord4(2, 0, 0, 1)) == Truth::True);
    CHECK(s.holds_W("ftl", "ftl", Coord4(0, 0, 0, 1)) == Truth::True);
    CHECK(s.is_inertial_observer("ftl"));
}
