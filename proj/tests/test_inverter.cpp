#include <catch2/catch_amalgamated.hpp>

#include "polyinv/derivative_recursion.hpp"
#include "polyinv/inverter.hpp"
#include "polyinv/tame.hpp"
#include "polyinv/text.hpp"
#include "support.hpp"

using namespace polyinv;
using testsupport::map_of;
using testsupport::poly;

namespace {

SeriesVec expected_series(std::initializer_list<std::vector<const char*>> rows) {
    std::vector<TruncSeries> comps;
    const std::size_t m = rows.size();
    for (const auto& row : rows) {
        std::vector<Polynomial> cs;
        for (const char* c : row) cs.push_back(testsupport::poly(c, m));
        comps.push_back(TruncSeries(std::move(cs)));
    }
    return SeriesVec(std::move(comps));
}

// The deformation target t*X_i + (1-t)*F_i(init), as a series of the given
// order. Used to assert the defining identity independently of the solver.
TruncSeries deformation_target(const PolyMap& f, const PolyMap& init, std::size_t i,
                               std::size_t order) {
    const Polynomial f_at_init = compose(f[i], init.components());
    TruncSeries target = TruncSeries::from_polynomial(f_at_init, order);
    if (order >= 1) target.coeff(1) = Polynomial::variable(f.arity(), i) - f_at_init;
    return target;
}

}  // namespace

TEST_CASE("degree bound") {
    CHECK(degree_bound(map_of("X + Y^2; Y")) == 2);
    CHECK(degree_bound(map_of("X + Y; Y")) == 1);
    CHECK(degree_bound(map_of("X1 + X2*X3^2; X2; X3")) == 9);
    CHECK_THROWS_AS(degree_bound(PolyMap({Polynomial::constant(1, Rational(5))})),
                    std::domain_error);
}

TEST_CASE("series solve reproduces the shift example") {
    const SeriesVec s = solve_series(map_of("X + Y^3; Y"), 2);
    CHECK(s == expected_series({{"X", "-Y^3", "0"}, {"Y", "0", "0"}}));
}

TEST_CASE("series solve fixes the identity map") {
    const SeriesVec s = solve_series(PolyMap::identity(3), 4);
    CHECK(s == SeriesVec::identity(3, 4));
}

TEST_CASE("series solve reproduces the linear-form power example") {
    const PolyMap f = map_of("X + 1/2*(2X - 3Y)^2; Y + 1/3*(2X - 3Y)^2");
    const SeriesVec s = solve_series(f, 2);
    CHECK(s == expected_series({{"X", "-1/2*(2X - 3Y)^2", "0"},
                                {"Y", "-1/3*(2X - 3Y)^2", "0"}}));
}

TEST_CASE("series solve with a general initial condition") {
    const PolyMap f = map_of("X + Y^2; Y");
    const PolyMap init = map_of("Y; X");
    const SeriesVec s = solve_series(f, 1, init);
    // Order-0 coefficients are the initial condition; order 1 solved by hand
    // against the Jacobian at (Y, X).
    CHECK(s == expected_series({{"Y", "X^2 - 2*X*Y + X - Y"}, {"X", "Y - X"}}));
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(compose_poly_series(f[i], s) == deformation_target(f, init, i, 1));
}

TEST_CASE("series solve refuses a non-unit Jacobian") {
    CHECK_THROWS_AS(solve_series(map_of("X + X^2; Y"), 2), std::domain_error);
}

TEST_CASE("candidate inverse evaluates the series at one") {
    CHECK(candidate_inverse(expected_series({{"X", "-Y^3"}, {"Y", "0"}})) ==
          map_of("X - Y^3; Y"));
    CHECK(candidate_inverse(SeriesVec::identity(2, 3)) == PolyMap::identity(2));
    CHECK(candidate_inverse(expected_series({{"X", "-1/2*(2X - 3Y)^2"},
                                             {"Y", "-1/3*(2X - 3Y)^2"}})) ==
          map_of("X - 1/2*(2X - 3Y)^2; Y - 1/3*(2X - 3Y)^2"));
}

TEST_CASE("mutual inverse verification") {
    CHECK(verify_mutual_inverse(map_of("X + Y^3; Y"), map_of("X - Y^3; Y")));
    CHECK(verify_mutual_inverse(PolyMap::identity(2), PolyMap::identity(2)));
    CHECK_FALSE(verify_mutual_inverse(map_of("X + Y^2; Y"), map_of("X - Y^3; Y")));
    CHECK_FALSE(verify_mutual_inverse(map_of("X + Y^2; Y"), map_of("X - Y^3; Y"), true));
    CHECK(verify_mutual_inverse(map_of("X + Y^3; Y"), map_of("X - Y^3; Y"), true));
}

TEST_CASE("decide: invertible shift") {
    const Verdict v = decide_invertible(map_of("X + Y^2; Y"));
    const auto* inv = std::get_if<Invertible>(&v);
    REQUIRE(inv);
    CHECK(inv->inverse == map_of("X - Y^2; Y"));
    CHECK(verify_mutual_inverse(map_of("X + Y^2; Y"), inv->inverse));
}

TEST_CASE("decide: nonconstant Jacobian determinant") {
    const Verdict v = decide_invertible(map_of("X + X^2; Y"));
    const auto* nj = std::get_if<NotInvertibleJacobian>(&v);
    REQUIRE(nj);
    CHECK(nj->determinant == poly("1 + 2X"));
}

TEST_CASE("decide: composed elementary steps undo in reverse order") {
    const PolyMap f = map_of("X + Y^2; Y + (X + Y^2)^3");
    const Verdict v = decide_invertible(f);
    const auto* inv = std::get_if<Invertible>(&v);
    REQUIRE(inv);
    CHECK(inv->inverse == map_of("X - (Y - X^3)^2; Y - X^3"));
}

TEST_CASE("decide: degenerate constant map fails the determinant gate") {
    const Verdict v = decide_invertible(map_of("1; 2"));
    CHECK(std::holds_alternative<NotInvertibleJacobian>(v));
}

TEST_CASE("decide: bound cap yields the capped verdicts") {
    // Two triangular steps: the inverse genuinely needs order > 2.
    const PolyMap f = map_of("X + Y^2; Y + (X + Y^2)^3");
    const SeriesVec full = solve_series(f, degree_bound(f));
    std::size_t true_order = 0;
    for (std::size_t j = 0; j <= full.order(); ++j)
        for (std::size_t i = 0; i < 2; ++i)
            if (!full[i].coeff(j).is_zero()) true_order = std::max(true_order, j);
    REQUIRE(true_order > 2);

    SolveConfig capped;
    capped.max_order = 2;
    const Verdict bounded = decide_invertible(f, capped);
    const auto* be = std::get_if<BoundExceeded>(&bounded);
    REQUIRE(be);
    CHECK(be->required == degree_bound(f));
    CHECK(be->cap == 2);

    capped.eager_check = true;
    const Verdict v = decide_invertible(f, capped);
    const auto* nc = std::get_if<NotInvertibleComposition>(&v);
    REQUIRE(nc);
    CHECK(nc->solved_order == 2);
}

TEST_CASE("derivative recursion matches the solver on the examples") {
    CHECK(derivative_recursion_m2(map_of("X + Y^3; Y"), 3) ==
          expected_series({{"X", "-Y^3", "0", "0"}, {"Y", "0", "0", "0"}}));
    CHECK(derivative_recursion_m2(PolyMap::identity(2), 3) == SeriesVec::identity(2, 3));
    const PolyMap f = map_of("X + 1/2*(2X - 3Y)^2; Y + 1/3*(2X - 3Y)^2");
    CHECK(derivative_recursion_m2(f, 3) == solve_series(f, 3));
    CHECK_THROWS_AS(derivative_recursion_m2(PolyMap::identity(3), 2), std::invalid_argument);
}

TEST_CASE("defining identity holds for solved series") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t m = 2 + testsupport::draw(rng, 2);
        const TameRecipe recipe = random_recipe(m, 1 + testsupport::draw(rng, 3), 2, 100 + rep);
        const auto [f, tracked] = realize(recipe);
        const std::size_t order = 1 + testsupport::draw(rng, 4);
        const SeriesVec s = solve_series(f, order);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(compose_poly_series(f[i], s) ==
                  deformation_target(f, PolyMap::identity(m), i, order));
            CHECK(s[i].coeff(0) == Polynomial::variable(m, i));
        }
    }
}

TEST_CASE("solutions are prefix-stable") {
    std::mt19937_64 rng(67);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t m = 2 + testsupport::draw(rng, 2);
        const auto [f, tracked] = realize(random_recipe(m, 1 + testsupport::draw(rng, 3), 2, 200 + rep));
        CHECK(solve_series(f, 3) == solve_series(f, 6).truncated(3));
    }
}

TEST_CASE("derivative recursion agrees with the solver on random maps") {
    for (int rep = 0; rep < 6; ++rep) {
        const auto [f, tracked] = realize(random_recipe(2, 1 + rep % 3, 2, 300 + rep));
        CHECK(derivative_recursion_m2(f, 4) == solve_series(f, 4));
    }
}

TEST_CASE("decide recovers tracked inverses") {
    SolveConfig cfg;
    cfg.eager_check = true;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t m = 2 + rep % 2;
        const auto [f, tracked] = realize(random_recipe(m, 1 + rep % 4, 2, 400 + rep));
        const Verdict v = decide_invertible(f, cfg);
        const auto* inv = std::get_if<Invertible>(&v);
        REQUIRE(inv);
        CHECK(inv->inverse == tracked);
        CHECK(map_degree(inv->inverse) <= degree_bound(f));
        CHECK(verify_mutual_inverse(f, inv->inverse));
    }
}
