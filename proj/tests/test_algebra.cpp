#include <catch2/catch_amalgamated.hpp>

#include "virasoro/algebra.hpp"

#include <random>

using namespace virasoro;

namespace {

LieElement L(long long i) { return LieElement::generator(Generator::L(i)); }

UEAElement word_product(const std::vector<long long>& idx) {
    std::vector<Generator> gens;
    for (long long i : idx) gens.push_back(Generator::L(i));
    return straighten_word(gens);
}

PBWMonomial mono(std::vector<long long> neg, unsigned l0, unsigned cpow,
                 std::vector<long long> pos) {
    PBWMonomial m;
    m.neg = std::move(neg);
    m.l0 = l0;
    m.cpow = cpow;
    m.pos = std::move(pos);
    return m;
}

std::vector<long long> random_word(std::mt19937& rng, int maxLen, long long lo, long long hi) {
    std::uniform_int_distribution<int> len(1, maxLen);
    std::uniform_int_distribution<long long> idx(lo, hi);
    std::vector<long long> w(len(rng));
    for (auto& x : w) x = idx(rng);
    return w;
}

// product of the word under a random association order
UEAElement random_association(std::mt19937& rng, const std::vector<long long>& w, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo == 1) return word_product({w[lo]});
    std::uniform_int_distribution<std::size_t> cut(lo + 1, hi - 1);
    std::size_t c = cut(rng);
    return normal_order_product(random_association(rng, w, lo, c),
                                random_association(rng, w, c, hi));
}

}  // namespace

TEST_CASE("bracket of basis elements", "[algebra]") {
    CHECK(bracket(L(1), L(2)) == L(3));

    LieElement expected;  // [L2, L-2] = -4 L0 + 1/2 C
    expected.add(Generator::L(0), GaussianRational(-4));
    expected.add(Generator::C(), GaussianRational(Rational(1, 2)));
    CHECK(bracket(L(2), L(-2)) == expected);

    CHECK(bracket(L(3), L(3)).is_zero());
    CHECK(bracket(L(5), LieElement::generator(Generator::C())).is_zero());
}

TEST_CASE("bracket is antisymmetric on random elements", "[algebra][property]") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long long> idx(-5, 5);
    std::uniform_int_distribution<long long> coef(-3, 3);
    for (int t = 0; t < 100; ++t) {
        LieElement x, y;
        for (int s = 0; s < 3; ++s) {
            x.add(Generator::L(idx(rng)), GaussianRational(coef(rng)));
            y.add(Generator::L(idx(rng)), GaussianRational(coef(rng)));
        }
        x.add(Generator::C(), GaussianRational(coef(rng)));
        CHECK(bracket(x, y) == GaussianRational(-1) * bracket(y, x));
    }
}

TEST_CASE("Jacobi identity on basis triples", "[algebra][property]") {
    std::vector<Generator> gens;
    for (long long i = -4; i <= 4; ++i) gens.push_back(Generator::L(i));
    gens.push_back(Generator::C());
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens) {
                LieElement x = LieElement::generator(a);
                LieElement y = LieElement::generator(b);
                LieElement z = LieElement::generator(c);
                LieElement sum = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) +
                                 bracket(bracket(z, x), y);
                REQUIRE(sum.is_zero());
            }
}

TEST_CASE("normal ordering of simple products", "[algebra]") {
    UEAElement expected;  // L1 L-1 = L-1 L1 - 2 L0
    expected.add(mono({1}, 0, 0, {1}), GaussianRational(1));
    expected.add(mono({}, 1, 0, {}), GaussianRational(-2));
    CHECK(word_product({1, -1}) == expected);

    UEAElement expected2;  // L2 L1 = L1 L2 - L3
    expected2.add(mono({}, 0, 0, {1, 2}), GaussianRational(1));
    expected2.add(mono({}, 0, 0, {3}), GaussianRational(-1));
    CHECK(word_product({2, 1}) == expected2);

    // central term: L2 L-2 = L-2 L2 - 4 L0 + 1/2 C
    UEAElement expected3;
    expected3.add(mono({2}, 0, 0, {2}), GaussianRational(1));
    expected3.add(mono({}, 1, 0, {}), GaussianRational(-4));
    expected3.add(mono({}, 0, 1, {}), GaussianRational(Rational(1, 2)));
    CHECK(word_product({2, -2}) == expected3);
}

TEST_CASE("identity monomial is a two-sided unit", "[algebra]") {
    std::mt19937 rng(777);
    for (int t = 0; t < 20; ++t) {
        UEAElement x = word_product(random_word(rng, 3, -3, 3));
        CHECK(normal_order_product(UEAElement::one(), x) == x);
        CHECK(normal_order_product(x, UEAElement::one()) == x);
    }
}

TEST_CASE("normal ordering is association independent", "[algebra][property]") {
    std::mt19937 rng(13579);
    for (int t = 0; t < 120; ++t) {
        std::vector<long long> w = random_word(rng, 4, -3, 3);
        UEAElement left = word_product(w);
        UEAElement tree = random_association(rng, w, 0, w.size());
        REQUIRE(left == tree);
    }
}

TEST_CASE("normal ordering is associative on composite elements", "[algebra][property]") {
    std::mt19937 rng(8642);
    for (int t = 0; t < 40; ++t) {
        UEAElement x = word_product(random_word(rng, 2, -3, 3));
        UEAElement y = word_product(random_word(rng, 2, -3, 3));
        UEAElement z = word_product(random_word(rng, 2, -3, 3));
        REQUIRE(normal_order_product(normal_order_product(x, y), z) ==
                normal_order_product(x, normal_order_product(y, z)));
    }
}

TEST_CASE("omega on monomials", "[algebra]") {
    // omega(L-2 L1) = L-1 L2
    UEAElement in = UEAElement::monomial(mono({2}, 0, 0, {1}));
    UEAElement out = UEAElement::monomial(mono({1}, 0, 0, {2}));
    CHECK(omega(in) == out);

    UEAElement l0 = UEAElement::monomial(mono({}, 1, 0, {}));
    CHECK(omega(l0) == l0);

    UEAElement m = UEAElement::monomial(mono({3, 1}, 0, 0, {2}));
    CHECK(omega(omega(m)) == m);
}

TEST_CASE("omega is an involutive anti-automorphism", "[algebra][property]") {
    std::mt19937 rng(99881);
    for (int t = 0; t < 60; ++t) {
        std::vector<long long> wu = random_word(rng, 3, -3, 3);
        std::vector<long long> wv = random_word(rng, 3, -3, 3);
        UEAElement u = word_product(wu);
        UEAElement v = word_product(wv);
        REQUIRE(omega(normal_order_product(u, v)) ==
                normal_order_product(omega(v), omega(u)));
        REQUIRE(omega(omega(u)) == u);

        // independent route: reverse the word and negate indices, then straighten
        std::vector<long long> rev(wu.rbegin(), wu.rend());
        for (auto& i : rev) i = -i;
        REQUIRE(omega(u) == word_product(rev));
    }
}

TEST_CASE("degree grading", "[algebra]") {
    CHECK(degree_of(mono({3, 1}, 0, 0, {2})) == -2);
    CHECK(degree_of(mono({}, 2, 1, {})) == 0);
    CHECK(degree_of(PBWMonomial{}) == 0);

    std::mt19937 rng(31415);
    for (int t = 0; t < 40; ++t) {
        std::vector<long long> wa = random_word(rng, 3, -3, 3);
        std::vector<long long> wb = random_word(rng, 3, -3, 3);
        long long da = 0, db = 0;
        for (long long i : wa) da += i;
        for (long long i : wb) db += i;
        UEAElement prod = normal_order_product(word_product(wa), word_product(wb));
        for (const auto& [m, c] : prod.terms) REQUIRE(degree_of(m) == da + db);
    }
}

TEST_CASE("element text round-trips", "[algebra]") {
    CHECK(format_lie(bracket(L(2), L(-2))) == "-4*L0 + 1/2*C");
    CHECK(format_lie(bracket(L(1), L(2))) == "L3");
    CHECK(format_lie(LieElement{}) == "0");

    LieElement mixed;
    mixed.add(Generator::L(-2), GaussianRational(Rational(1, 2), Rational(3, 4)));
    CHECK(format_lie(mixed) == "(1/2+3/4i)*L-2");
    CHECK(parse_lie(format_lie(mixed)) == mixed);

    UEAElement u = word_product({1, -1});
    CHECK(format_uea(u) == "-2*L0 + L-1 L1");
    CHECK(parse_uea(format_uea(u)) == u);

    UEAElement scalarOnly = GaussianRational(Rational(2, 3)) * UEAElement::one();
    CHECK(format_uea(scalarOnly) == "2/3");
    CHECK(parse_uea("2/3") == scalarOnly);

    CHECK(parse_uea("L1 L-1") == u);  // non-normal input gets straightened
    CHECK_THROWS_AS(parse_lie("L1 L2"), ParseError);
    CHECK_THROWS_AS(parse_generator("M3"), ParseError);
    CHECK_THROWS_AS(parse_uea("2**L1"), ParseError);
}

TEST_CASE("word cap is enforced when requested", "[algebra]") {
    CHECK(parse_word("L1 L2 L3", 8).size() == 3);
    CHECK_THROWS_AS(parse_word("L1 L2 L3", 2), ParseError);
}
