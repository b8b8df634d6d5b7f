#include "doctest.h"

#include "axrel/errors.hpp"
#include "axrel/field/exact_real.hpp"

#include <random>
#include <vector>

using axrel::ExactReal;
using axrel::Ordering;

namespace {

ExactReal q(long n, long d = 1) { return ExactReal::rational(n, d); }

// Small random tower elements: rational, a + b*sqrt(r), or sums of two surds.
ExactReal random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6), rad(2, 7);
    switch (rng() % 4) {
        case 0: return q(num(rng), den(rng));
        case 1: return q(num(rng), den(rng)) + q(num(rng), den(rng)) * q(rad(rng)).sqrt();
        case 2: return q(rad(rng)).sqrt() - q(rad(rng), den(rng)).sqrt();
        default: return (q(rad(rng)) + q(rad(rng)).sqrt()).sqrt() * q(num(rng), den(rng));
    }
}

}  // namespace

TEST_CASE("arith on rationals and square roots") {
    CHECK(axrel::arith(q(1, 2), q(1, 3), axrel::ArithOp::add) == q(5, 6));
    CHECK(axrel::arith(q(3, 5), q(4, 5), axrel::ArithOp::mul) == q(12, 25));
    ExactReal r2 = q(2).sqrt();
    ExactReal two = axrel::arith(r2, r2, axrel::ArithOp::mul);
    CHECK(two.is_rational());
    CHECK(two == q(2));
    CHECK_THROWS_AS(axrel::arith(q(1), q(0), axrel::ArithOp::div), axrel::DivisionByZero);
}

TEST_CASE("sqrt") {
    CHECK(q(16, 25).sqrt() == q(4, 5));
    CHECK(q(16, 25).sqrt().is_rational());
    CHECK(q(0).sqrt() == q(0));
    ExactReal r = q(2).sqrt();
    REQUIRE(r.tower_depth() == 1);
    CHECK(r.radicands()[0] == q(2));
    CHECK(r.coords()[0] == 0);
    CHECK(r.coords()[1] == 1);
    CHECK(r * r == q(2));
    CHECK_THROWS_AS(q(-1).sqrt(), axrel::NegativeRadicand);
    CHECK_THROWS_AS((q(1) - q(2).sqrt()).sqrt(), axrel::NegativeRadicand);

    // sqrt(8) shares the radicand of sqrt(2).
    CHECK(q(8).sqrt() == q(2) * q(2).sqrt());
    CHECK(q(8).sqrt().radicands()[0] == q(2));
    // denesting: sqrt(3 + 2 sqrt 2) = 1 + sqrt 2, found inside the tower
    ExactReal nested = (q(3) + q(2) * q(2).sqrt()).sqrt();
    CHECK(nested.tower_depth() == 1);
    CHECK(nested == q(1) + q(2).sqrt());
    // sqrt(1 - 9/25) = 4/5 through the literal path
    CHECK(ExactReal::parse("sqrt(1 - 9/25)") == q(4, 5));
}

TEST_CASE("compare") {
    // oracle: both sides positive, so sqrt(2) < 3/2 iff 2 < (3/2)^2 = 9/4
    CHECK(q(2) < q(9, 4));
    CHECK(axrel::compare(q(2).sqrt(), q(3, 2)) == Ordering::less);
    CHECK(axrel::compare(q(2).sqrt() * q(2).sqrt(), q(2)) == Ordering::equal);
    CHECK(axrel::compare(q(4, 5), q(1)) == Ordering::less);
    // values whose leading digits agree for a long time
    ExactReal a = q(10001).sqrt() - q(100);
    ExactReal b = q(1, 200);
    CHECK(a < b);  // sqrt(10001) - 100 = 1/(sqrt(10001)+100) < 1/200
    ExactReal c = q(2).sqrt() + q(3).sqrt();
    ExactReal d = (q(5) + q(2) * q(6).sqrt()).sqrt();
    CHECK(c == d);
    CHECK(c.tower_depth() <= 2);
}

TEST_CASE("different towers merge and compress") {
    ExactReal a = q(2).sqrt() + q(3).sqrt();
    ExactReal b = a - q(2).sqrt();
    CHECK(b == q(3).sqrt());
    CHECK(b.tower_depth() == 1);
    ExactReal z = a - a;
    CHECK(z.is_zero());
    CHECK(z.is_rational());
    ExactReal e = q(6).sqrt() / (q(2).sqrt() * q(3).sqrt());
    CHECK(e == q(1));
    CHECK(e.is_rational());
}

TEST_CASE("literals round trip") {
    for (const char* text : {"3/5", "sqrt(2)", "1/2*sqrt(2)", "sqrt(1 + sqrt(2))", "-7/3",
                             "sqrt(2)*sqrt(3) - 1", "0", "1.25"}) {
        ExactReal v = ExactReal::parse(text);
        ExactReal w = ExactReal::parse(v.to_string());
        CHECK_MESSAGE(v == w, text << " -> " << v.to_string());
    }
    CHECK(ExactReal::parse("1.25").to_string() == "5/4");
    CHECK(ExactReal::parse("2^3 - 1") == q(7));
    CHECK_THROWS_AS(ExactReal::parse("3/"), axrel::LiteralError);
    CHECK_THROWS_AS(ExactReal::parse("sqrt 2"), axrel::LiteralError);
    CHECK_THROWS_AS(ExactReal::parse("1/0"), axrel::DivisionByZero);
}

TEST_CASE("ordered field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 150; ++i) {
        ExactReal a = random_element(rng), b = random_element(rng), c = random_element(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        if (a < b) CHECK(a + c < b + c);
        if (a > 0 && b > 0) CHECK(a * b > 0);
        // antisymmetry and transitivity
        if (a <= b && b <= a) CHECK(a == b);
        if (a < b && b < c) CHECK(a < c);
        int trichotomy = (a < b) + (a == b) + (a > b);
        CHECK(trichotomy == 1);
    }
}

TEST_CASE("sqrt squares back and approximations enclose") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        ExactReal a = random_element(rng);
        if (a < 0) a = -a;
        ExactReal r = a.sqrt();
        CHECK(r >= 0);
        CHECK(r * r == a);
        axrel::ApproxReal box = a.approx();
        CHECK(box.lower() <= box.upper());
        CHECK(box.width() < mpq_class(1, 1000000000));
        double d = a.to_double();
        CHECK(box.lower().get_d() <= d + 1e-12);
        CHECK(d - 1e-12 <= box.upper().get_d());
        // the enclosure agrees with the exact order against its endpoints
        CHECK(ExactReal(box.lower()) <= a);
        CHECK(a <= ExactReal(box.upper()));
    }
}
