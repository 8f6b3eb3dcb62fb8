#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zecap/rational.hpp"
#include "zecap/sqrt2.hpp"

using namespace zecap;

TEST_CASE("rationals are canonical after parsing and arithmetic") {
    CHECK(parse_rational("3/9") == parse_rational("1/3"));
    CHECK(to_string(parse_rational("3/9")) == "1/3");
    CHECK(to_string(parse_rational("-4/8")) == "-1/2");
    CHECK(parse_rational("0") == Rational(0));
    CHECK(to_string(parse_rational("2/4") + parse_rational("1/4")) == "3/4");
    CHECK(make_rational(2, -4) == parse_rational("-1/2"));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("floor and ceiling of rationals") {
    CHECK(floor_rational(parse_rational("5/2")) == 2);
    CHECK(ceil_rational(parse_rational("5/2")) == 3);
    CHECK(floor_rational(parse_rational("-5/2")) == -3);
    CHECK(ceil_rational(parse_rational("-5/2")) == -2);
    CHECK(floor_rational(Rational(7)) == 7);
    CHECK(ceil_rational(Rational(7)) == 7);
}

TEST_CASE("combinatorial helpers") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
    CHECK(factorial(7) == 5040);
    CHECK(pow_rational(parse_rational("3/2"), 3) == parse_rational("27/8"));
}

TEST_CASE("rationalize recovers small fractions from doubles") {
    CHECK(rationalize(0.5, 100) == parse_rational("1/2"));
    CHECK(rationalize(1.0 / 3.0, 100) == parse_rational("1/3"));
    CHECK(rationalize(-0.25, 100) == parse_rational("-1/4"));
    CHECK(rationalize(0.0, 100) == Rational(0));
}

TEST_CASE("Q(sqrt2) arithmetic is exact") {
    Sqrt2Ext r2 = Sqrt2Ext::sqrt2();
    CHECK(r2 * r2 == Sqrt2Ext(2));
    Sqrt2Ext lam{parse_rational("1/2"), parse_rational("1/4")}; // (1 + 1/sqrt2)/2
    Sqrt2Ext bar = Sqrt2Ext(1) - lam;
    CHECK(lam + bar == Sqrt2Ext(1));
    CHECK((lam / lam) == Sqrt2Ext(1));
    Sqrt2Ext alpha = lam / Sqrt2Ext(2);
    CHECK(alpha == Sqrt2Ext{parse_rational("1/4"), parse_rational("1/8")});
    CHECK(to_double(alpha) == doctest::Approx(0.42677669529).epsilon(1e-10));
}

TEST_CASE("Q(sqrt2) ordering decides mixed-sign cases exactly") {
    Sqrt2Ext a{Rational(2), Rational(-2)};  // 2 - 2 sqrt2 < 0
    CHECK(a.sign() == -1);
    Sqrt2Ext b{Rational(3), Rational(-2)};  // 3 - 2 sqrt2 > 0 (9 > 8)
    CHECK(b.sign() == 1);
    Sqrt2Ext c{Rational(-7), Rational(5)};  // 5 sqrt2 > 7
    CHECK(c.sign() == 1);
    CHECK(Sqrt2Ext(0).sign() == 0);
    CHECK(a < b);
    CHECK(Sqrt2Ext(1) < Sqrt2Ext::sqrt2());
}

TEST_CASE("Q(sqrt2) parse and print round-trip") {
    CHECK(to_string(Sqrt2Ext{parse_rational("1/4"), parse_rational("1/8")}) == "1/4+1/8*sqrt2");
    CHECK(to_string(Sqrt2Ext{parse_rational("1/4"), parse_rational("-1/8")}) == "1/4-1/8*sqrt2");
    CHECK(parse_sqrt2ext("1/4+1/8*sqrt2") == Sqrt2Ext{parse_rational("1/4"), parse_rational("1/8")});
    CHECK(parse_sqrt2ext("1/4-1/8*sqrt2") == Sqrt2Ext{parse_rational("1/4"), parse_rational("-1/8")});
    CHECK(parse_sqrt2ext("-3/4") == Sqrt2Ext(parse_rational("-3/4")));
    CHECK(parse_sqrt2ext("1/2*sqrt2") == Sqrt2Ext{Rational(0), parse_rational("1/2")});
}
