#include <catch2/catch_amalgamated.hpp>

#include "polyinv/rational.hpp"

using polyinv::Rational;

TEST_CASE("rationals are stored canonically") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, -2).str() == "-1/2");
    CHECK(Rational(1, -2).denominator() > 0);
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(0, 5).denominator() == 1);
    CHECK(Rational(7, 1).str() == "7");
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(3, 7) == Rational(-3, 7));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(5, 9).pow(0) == Rational(1));
    CHECK(Rational(-2, 3).inverse() == Rational(-3, 2));
}

TEST_CASE("rational error paths") {
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
}

TEST_CASE("rational string round-trip") {
    for (const char* text : {"0", "1", "-7", "3/4", "-22/7", "1000000007/3"}) {
        CHECK(Rational::from_string(text).str() == text);
    }
    CHECK(Rational::from_string("4/6") == Rational(2, 3));
    CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
}
