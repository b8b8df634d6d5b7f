#include "doctest.h"

#include "axrel/accel/accel.hpp"
#include "axrel/errors.hpp"
#include "axrel/kinematics/lorentz.hpp"

#include <cmath>

using namespace axrel;

namespace {
ExactReal q(long n, long d = 1) { return ExactReal::rational(n, d); }

const ExactReal& exact(const ProperTime& p) { return std::get<ExactReal>(p); }

// midpoint rule for the proper time of a hyperbola, independent of asinh
double hyperbola_tau(double rho, double t0, double t1, int n = 200000) {
    double sum = 0, h = (t1 - t0) / n;
    for (int i = 0; i < n; ++i) {
        double t = t0 + (i + 0.5) * h;
        double v = t / std::sqrt(rho * rho + t * t);
        sum += std::sqrt(1 - v * v) * h;
    }
    return sum;
}
}  // namespace

TEST_CASE("proper time of straight worldlines") {
    Worldline w = Worldline::inertial(Coord4(), Vec3(q(3, 5), 0, 0));
    CHECK(exact(proper_time(w, 0, 5)) == 4);
    CHECK(exact(proper_time(w, 2, 2)) == 0);
    CHECK_THROWS_AS(proper_time(w, 3, 1), DomainError);
    CHECK_THROWS_AS(proper_time(w.with_domain(q(0), q(1)), 0, 2), DomainError);
    CHECK_THROWS_AS(proper_time(Worldline::photon(Coord4(), Vec3(1, 0, 0)), 0, 1), SuperluminalSegment);
    // 1/2 sqrt(3) sits in the tower, not over Q
    Worldline h = Worldline::inertial(Coord4(), Vec3(q(1, 2), 0, 0));
    CHECK(exact(proper_time(h, 0, 1)) == ExactReal(3).sqrt() / 2);
}

TEST_CASE("round trip at 3/5") {
    TwinResult r = twin_paradox(round_trip(q(3, 5), 10));
    REQUIRE(is_exact(r.home));
    REQUIRE(is_exact(r.traveler));
    CHECK(exact(r.home) == 10);
    // each leg: sqrt(5^2 - 3^2) = 4
    CHECK(exact(r.traveler) == 8);
    CHECK(r.accelerated);
    // a partial interval scales linearly inside the first leg
    const Worldline& tw = round_trip(q(3, 5), 10).traveler.worldline;
    CHECK(exact(proper_time(tw, 0, q(5, 2))) == 2);
}

TEST_CASE("galaxy journey ages the traveler exactly 2") {
    AcceleratedScenario sc = galaxy_journey(200, 1);
    TwinResult r = twin_paradox(sc);
    CHECK(exact(r.traveler) == 2);
    CHECK(exact(r.home) == 2 * ExactReal(40001).sqrt());
    CHECK(std::abs(to_double(r.home) - 400.005) < 1e-3);
    Comoving c = comoving_inertial(sc.traveler.worldline, 1);
    CHECK(c.velocity[0] == ExactReal(200) / ExactReal(40001).sqrt());
}

TEST_CASE("twin results are chart independent") {
    PoincareMap w = observer_chart(Vec3(q(1, 3), q(-1, 4), 0), {1, 1, 0, 2}, Coord4(1, -2, 3, 5));
    AcceleratedScenario sc = round_trip(q(3, 5), 10);
    AcceleratedScenario moved = rechart(sc, w);
    TwinResult a = twin_paradox(sc), b = twin_paradox(moved);
    CHECK(exact(a.home) == exact(b.home));
    CHECK(exact(a.traveler) == exact(b.traveler));
}

TEST_CASE("twin paradox errors") {
    AcceleratedScenario sc = round_trip(q(3, 5), 10);
    AcceleratedScenario swapped = sc;
    std::swap(swapped.departure, swapped.reunion);
    CHECK_THROWS_AS(twin_paradox(swapped), NoReunion);
    AcceleratedScenario off = sc;
    off.reunion = Coord4(1, 0, 0, 10);
    CHECK_THROWS_AS(twin_paradox(off), NoReunion);
    AcceleratedScenario bad{sc.name, sc.traveler, sc.home, sc.departure, sc.reunion};
    CHECK_THROWS_AS(twin_paradox(bad), NotInertialObserver);
    CHECK_THROWS_AS(round_trip(1, 10), SuperluminalVelocity);
}

TEST_CASE("superluminal piece is rejected") {
    // piecewise construction accepts any spacetime events; the speed check is
    // deferred to proper time
    Worldline w = Worldline::piecewise({Coord4(), Coord4(2, 0, 0, 1), Coord4(0, 0, 0, 5)});
    CHECK_THROWS_AS(proper_time(w, 0, 5), SuperluminalSegment);
}

TEST_CASE("inertial motion maximizes proper time") {
    Coord4 from(0, 0, 0, 0), to(q(1, 2), q(-1, 3), 0, 4);
    CompetitorSweep sweep = maximal_aging_sweep(from, to, 200, 7);
    CHECK(sweep.competitors == 200);
    CHECK(sweep.not_shorter == 0);
    CHECK(sweep.inertial * sweep.inertial == 16 - q(1, 4) - q(1, 9));
    Rng rng(3, "check");
    for (int i = 0; i < 20; ++i) {
        Worldline w = random_competitor(rng, from, to);
        const auto& ev = std::get<PiecewiseInertial>(w.data()).events;
        CHECK(ev.size() >= 3);
        CHECK(ev.size() <= 5);
        CHECK(ev.front() == from);
        CHECK(ev.back() == to);
    }
    CHECK_THROWS_AS(random_competitor(rng, from, Coord4(5, 0, 0, 1)), InvalidConfig);
}

TEST_CASE("hyperbolic worldlines") {
    Worldline h = rindler_worldline(1, 0);
    Comoving c = comoving_inertial(h, q(3, 4));
    // t / sqrt(1 + t^2) at t = 3/4
    CHECK(c.velocity[0] == q(3, 5));
    CHECK(c.event == Coord4(q(5, 4), 0, 0, q(3, 4)));
    ProperTime tau = proper_time(h, 0, q(3, 4));
    REQUIRE_FALSE(is_exact(tau));
    CHECK(std::get<ApproxReal>(tau).width_double() < 1e-10);
    CHECK(std::abs(to_double(tau) - hyperbola_tau(1, 0, 0.75)) < 1e-9);
    CHECK(std::abs(to_double(tau) - std::log(2.0)) < 1e-12);  // asinh(3/4) = ln 2
}

TEST_CASE("comoving observers of piecewise lines") {
    Worldline w = round_trip(q(3, 5), 10).traveler.worldline;
    CHECK(comoving_inertial(w, 1).velocity[0] == q(3, 5));
    CHECK(comoving_inertial(w, 6).velocity[0] == q(-3, 5));
    CHECK(comoving_inertial(w, 0).velocity[0] == q(3, 5));
    CHECK(comoving_inertial(w, 10).velocity[0] == q(-3, 5));
    CHECK_THROWS_AS(comoving_inertial(w, 5), NotDifferentiable);
    CHECK_THROWS_AS(comoving_inertial(w, 11), DomainError);
}

TEST_CASE("co-moving check on inertial and accelerated observers") {
    Structure ship = rindler_ship({1, q(1, 2)});
    Verdict home = check_axcmv(ship, "home", 3);
    CHECK(home.holds());
    CHECK(home.basis == Basis::Decided);
    for (ExactReal t : {q(0), q(1, 2), q(-1), q(2)}) {
        Verdict v = check_axcmv(ship, "rear", t);
        CHECK_MESSAGE(v.holds(), v.note);
        CHECK(v.basis == Basis::Numeric);
    }
    Verdict at = check_axcmv(ship, "rear", q(1, 2));
    REQUIRE(at.evidence.size() == 1);
    const auto& k = std::get<BodyRef>(at.evidence[0].value);
    // rapidity g T = 1/2 for the rear
    CHECK(std::abs(std::get<InertialLine>(k->worldline.data()).velocity[0].to_double() - std::tanh(0.5)) < 1e-6);
    CHECK_THROWS_AS(check_axcmv(ship, "nose", 0), NotAnObserver);

    // an observer whose worldline has a kink where its chart stays affine
    Structure s("kink");
    s.add_body(plain_body("o", Worldline::piecewise({Coord4(0, 0, 0, -1), Coord4(), Coord4(q(1, 2), 0, 0, 1)})));
    s.set_chart("o", AffineChart(AffineMap()));
    CHECK_THROWS_AS(check_axcmv(s, "o", 0), NotDifferentiable);
    CHECK_THROWS_AS(check_axcmv(s, "o", q(1, 2)), DomainError);  // o has moved off the origin
    CHECK(check_axcmv(s, "o", q(-1, 2)).holds());
}

TEST_CASE("co-moving check fails for a chart with a distorted first order") {
    Structure s("stretch");
    s.add_body(plain_body("o", Worldline::hyperbolic(Vec3(), 0, Vec3(1, 0, 0), 1)));
    SmoothChart c = rindler_chart(1);
    auto base = c.to_reference;
    // stretching the spatial coordinate breaks the Lorentz tangent
    c.to_reference = [base](const std::array<double, 4>& x) { return base({2 * x[0], x[1], x[2], x[3]}); };
    s.set_chart("o", c);
    Verdict v = check_axcmv(s, "o", 0);
    CHECK(v.fails());
}

TEST_CASE("clock ratio in the accelerated ship") {
    CHECK(gtd_clock_ratio({1, q(1, 2)}) == q(3, 2));
    CHECK(gtd_clock_ratio({0, 5}) == 1);
    ExactReal prev;
    for (long k = 0; k <= 32; ++k) {
        ExactReal g = q(k, 4);
        ExactReal r = gtd_clock_ratio({g, q(1, 3)});
        CHECK(r == 1 + g * q(1, 3));
        if (k > 0) CHECK(prev < r);
        prev = r;
    }
    CHECK_THROWS_AS(gtd_clock_ratio({-1, 1}), InvalidConfig);
    CHECK_THROWS_AS(gtd_clock_ratio({1, 0}), InvalidConfig);
    CHECK_THROWS_AS(rindler_ship({0, 1}), InvalidConfig);

    // the same ratio from proper times between two ship simultaneity lines
    // (rays t = x tanh(theta) from the center)
    double theta = 0.8;
    Structure ship = rindler_ship({2, q(1, 4)});
    const Worldline& rear = ship.body("rear").worldline;
    const Worldline& nose = ship.body("nose").worldline;
    ExactReal tr = from_double(0.5 * std::sinh(theta)), tn = from_double(0.75 * std::sinh(theta));
    double ratio = to_double(proper_time(nose, 0, tn)) / to_double(proper_time(rear, 0, tr));
    CHECK(std::abs(ratio - 1.5) < 1e-9);
}

TEST_CASE("scenario files round trip") {
    AcceleratedScenario sc = round_trip(q(3, 5), 10);
    std::string text = print_scenario(sc);
    ScenarioFile f = parse_scenario(text);
    REQUIRE(f.twin);
    CHECK(print_scenario(*f.twin) == text);
    CHECK(exact(twin_paradox(*f.twin).traveler) == 8);
    ScenarioFile ship = parse_scenario(R"({"format":"axrel-scenario/1","ship":{"g":"1","h":"1/2"}})");
    REQUIRE(ship.ship);
    CHECK(gtd_clock_ratio(*ship.ship) == q(3, 2));
    CHECK_THROWS_AS(parse_scenario("{}"), FormatError);
    CHECK_THROWS_AS(parse_scenario("[1"), FormatError);
    CHECK_THROWS_AS(parse_scenario(R"({"format":"other/2","ship":{"g":"1","h":"1"}})"), FormatError);
}

TEST_CASE("trajectory csv") {
    std::string csv = trajectory_csv(round_trip(q(3, 5), 10).traveler.worldline, 0, 10, 4);
    CHECK(csv.rfind("t,x,y,z,vx,vy,vz,tau\n", 0) == 0);
    CHECK(csv.find("5,3,0,0,-0.6,0,0,4\n") != std::string::npos);
    CHECK(csv.find("10,0,0,0,-0.6,0,0,8\n") != std::string::npos);
}
