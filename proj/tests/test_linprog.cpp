#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zecap/linprog.hpp"

#include <random>

using namespace zecap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

} // namespace

TEST_CASE("one-variable box LP") {
    LinearProgram<Rational> lp;
    int x = lp.add_var("x", Rational(1));
    lp.add_row({{x, Rational(1)}}, Rel::Le, Rational(3));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == 3);
    CHECK(res.primal[0] == 3);
    CHECK(res.verify(lp));
}

TEST_CASE("pentagon packing LP has value 5/2") {
    // vertices 0..4, hyperedges {y-1, y} of the pentagon channel
    LinearProgram<Rational> lp;
    for (int i = 0; i < 5; ++i) lp.add_var("v" + std::to_string(i), Rational(1));
    for (int y = 0; y < 5; ++y)
        lp.add_row({{y, Rational(1)}, {(y + 1) % 5, Rational(1)}}, Rel::Le, Rational(1));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == q("5/2"));
    CHECK(res.verify(lp));
}

TEST_CASE("x <= 1 and x >= 2 is infeasible with a Farkas certificate") {
    LinearProgram<Rational> lp;
    int x = lp.add_var("x", Rational(1));
    lp.add_row({{x, Rational(1)}}, Rel::Le, Rational(1));
    lp.add_row({{x, Rational(1)}}, Rel::Ge, Rational(2));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Infeasible);
    CHECK(res.verify(lp));

    auto f = feasible(lp);
    CHECK_FALSE(f.is_feasible);
    CHECK(f.verify(lp));
}

TEST_CASE("empty constraint set is feasible") {
    LinearProgram<Rational> lp;
    lp.add_var("x", Rational(0));
    auto f = feasible(lp);
    CHECK(f.is_feasible);
    CHECK(f.verify(lp));
}

TEST_CASE("unbounded LP returns a verified ray") {
    LinearProgram<Rational> lp;
    int x = lp.add_var("x", Rational(1));
    int y = lp.add_var("y", Rational(0));
    lp.add_row({{x, Rational(1)}, {y, Rational(-1)}}, Rel::Le, Rational(1));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Unbounded);
    CHECK(res.verify(lp));
}

TEST_CASE("minimisation with equality rows and free variables") {
    // min 2a + b  s.t.  a + b = 4, a - b >= -1, b free
    LinearProgram<Rational> lp;
    lp.sense = Sense::Min;
    int a = lp.add_var("a", Rational(2));
    int b = lp.add_var("b", Rational(1), /*nn=*/false);
    lp.add_row({{a, Rational(1)}, {b, Rational(1)}}, Rel::Eq, Rational(4));
    lp.add_row({{a, Rational(1)}, {b, Rational(-1)}}, Rel::Ge, Rational(-1));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    // a = 0 is allowed only if b = 4 and 0 - 4 >= -1 fails, so a = 3/2, b = 5/2
    CHECK(res.primal[a] == q("3/2"));
    CHECK(res.primal[b] == q("5/2"));
    CHECK(res.value == q("11/2"));
    CHECK(res.verify(lp));
}

TEST_CASE("degenerate LP terminates (Bland fallback)") {
    // classic cycling-prone instance (Beale); exact arithmetic + stall
    // detection must still terminate at the optimum 1/20
    LinearProgram<Rational> lp;
    int x1 = lp.add_var("x1", q("3/4"));
    int x2 = lp.add_var("x2", Rational(-150));
    int x3 = lp.add_var("x3", q("1/50"));
    int x4 = lp.add_var("x4", Rational(-6));
    lp.add_row({{x1, q("1/4")}, {x2, Rational(-60)}, {x3, q("-1/25")}, {x4, Rational(9)}},
               Rel::Le, Rational(0));
    lp.add_row({{x1, q("1/2")}, {x2, Rational(-90)}, {x3, q("-1/50")}, {x4, Rational(3)}},
               Rel::Le, Rational(0));
    lp.add_row({{x3, Rational(1)}}, Rel::Le, Rational(1));
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == q("1/20"));
    CHECK(res.verify(lp));
}

TEST_CASE("LP over Q(sqrt2) scalars") {
    // max x s.t. x <= sqrt2, compare exactly
    LinearProgram<Sqrt2Ext> lp;
    int x = lp.add_var("x", Sqrt2Ext(1));
    lp.add_row({{x, Sqrt2Ext(1)}}, Rel::Le, Sqrt2Ext::sqrt2());
    auto res = solve(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == Sqrt2Ext::sqrt2());
    CHECK(res.verify(lp));
}

TEST_CASE("solver is deterministic and certificates verify on random LPs") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> relpick(0, 2);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int trial = 0; trial < 120; ++trial) {
        LinearProgram<Rational> lp;
        int n = dim(rng), m = dim(rng);
        for (int j = 0; j < n; ++j)
            lp.add_var("x" + std::to_string(j), Rational(coef(rng)), coef(rng) >= -1);
        for (int i = 0; i < m; ++i) {
            std::vector<std::pair<int, Rational>> terms;
            for (int j = 0; j < n; ++j) terms.push_back({j, Rational(coef(rng))});
            lp.add_row(terms, static_cast<Rel>(relpick(rng)), Rational(coef(rng)));
        }
        auto res = solve(lp);
        CHECK(res.verify(lp));
        auto res2 = solve(lp);
        CHECK(res.status == res2.status);
        CHECK(res.primal == res2.primal);
        CHECK(res.dual == res2.dual);
        CHECK(res.value == res2.value);
        if (res.status == LpStatus::Optimal) ++optimal;
        if (res.status == LpStatus::Infeasible) ++infeasible;
        if (res.status == LpStatus::Unbounded) ++unbounded;

        auto f = feasible(lp);
        CHECK(f.is_feasible == (res.status != LpStatus::Infeasible));
        CHECK(f.verify(lp));
    }
    // the corpus must exercise all three outcomes
    CHECK(optimal > 10);
    CHECK(infeasible > 10);
    CHECK(unbounded > 10);
}
