#include <catch2/catch_amalgamated.hpp>

#include "virasoro/scalars.hpp"

#include <random>

using namespace virasoro;

namespace {

GaussianRational gr(long long nr, long long dr, long long ni = 0, long long di = 1) {
    return {Rational(nr, dr), Rational(ni, di)};
}

// small random scalars with exact representations
GaussianRational random_scalar(std::mt19937& rng, bool allowZero = true) {
    std::uniform_int_distribution<long long> num(-12, 12);
    std::uniform_int_distribution<long long> den(1, 9);
    for (;;) {
        GaussianRational x{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        if (allowZero || !x.is_zero()) return x;
    }
}

}  // namespace

TEST_CASE("field arithmetic matches hand values", "[scalars]") {
    CHECK(gr(1, 2) + gr(1, 3) == gr(5, 6));
    CHECK(gr(0, 1, 1, 1) * gr(0, 1, 1, 1) == gr(-1, 1));  // i^2 = -1
    CHECK(GaussianRational(1) / gr(1, 1, 1, 1) == gr(1, 2, -1, 2));
    CHECK(gr(2, 4) == gr(1, 2));  // canonical on construction
}

TEST_CASE("division by zero is a distinct error", "[scalars]") {
    CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), DivisionByZeroError);
    CHECK_THROWS_AS(inverse(GaussianRational(0)), DivisionByZeroError);
}

TEST_CASE("parse handles the documented grammar", "[scalars]") {
    CHECK(parse_scalar("5/6") == gr(5, 6));
    CHECK(parse_scalar("-1/2+3/4i") == gr(-1, 2, 3, 4));
    CHECK(parse_scalar("2/4") == gr(1, 2));
    CHECK(parse_scalar("0") == GaussianRational(0));
    CHECK(parse_scalar("-1/3i") == gr(0, 1, -1, 3));
    CHECK(parse_scalar("1i") == gr(0, 1, 1, 1));
    CHECK(parse_scalar("+7") == gr(7, 1));
    CHECK(parse_scalar("1/2-3/4i") == gr(1, 2, -3, 4));
}

TEST_CASE("parse rejects malformed text", "[scalars]") {
    CHECK_THROWS_AS(parse_scalar(""), ParseError);
    CHECK_THROWS_AS(parse_scalar("i"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1+2"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1+2i3"), ParseError);
    CHECK_THROWS_AS(parse_scalar("one"), ParseError);
    CHECK_THROWS_AS(parse_rational("1+2i"), ParseError);
}

TEST_CASE("format emits canonical text", "[scalars]") {
    CHECK(format_scalar(gr(1, 2)) == "1/2");
    CHECK(format_scalar(GaussianRational(0)) == "0");
    CHECK(format_scalar(gr(0, 1, -1, 3)) == "-1/3i");
    CHECK(format_scalar(gr(-1, 2, 3, 4)) == "-1/2+3/4i");
    CHECK(format_scalar(gr(1, 2, -3, 4)) == "1/2-3/4i");
    CHECK(format_scalar(gr(3, 1)) == "3");
}

TEST_CASE("parse/format round-trips on random values", "[scalars][property]") {
    std::mt19937 rng(20240811);
    for (int t = 0; t < 500; ++t) {
        GaussianRational x = random_scalar(rng);
        CHECK(parse_scalar(format_scalar(x)) == x);
    }
}

TEST_CASE("field axioms hold exactly on random triples", "[scalars][property]") {
    std::mt19937 rng(987654);
    for (int t = 0; t < 200; ++t) {
        GaussianRational x = random_scalar(rng);
        GaussianRational y = random_scalar(rng);
        GaussianRational z = random_scalar(rng);
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
        GaussianRational w = random_scalar(rng, /*allowZero=*/false);
        REQUIRE(w * inverse(w) == GaussianRational(1));
    }
}

TEST_CASE("rational floor rounds toward minus infinity", "[scalars]") {
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_floor(Rational(4, 2)) == 2);
    CHECK(rational_floor(Rational(0)) == 0);
}
