#include <doctest.h>

#include <random>

#include "bloch/poly.hpp"

using namespace bloch;

namespace {

const auto R = make_rational_ring({"lambda", "z1", "z2", "a"});

QPoly P(const char* s) { return parse_poly(R, s); }

}  // namespace

TEST_CASE("ring arithmetic")
{
    CHECK((P("z1 + 1") * P("z1 - 1")) == P("z1^2 - 1"));
    CHECK((P("3*z1*z2 - a") + -P("3*z1*z2 - a")).is_zero());
    CHECK((P("z1^-1 + 1") * P("z1")) == P("1 + z1"));
    CHECK(P("z1 + z2").pow(3) == P("z1^3 + 3*z1^2*z2 + 3*z1*z2^2 + z2^3"));
    CHECK(P("z1 + 1").pow(0) == P("1"));
    CHECK((P("1/2*a") * P("4")) == P("2*a"));
}

TEST_CASE("mixing rings or fields is rejected")
{
    const auto other = make_rational_ring({"x"});
    CHECK_THROWS_AS(P("z1") + parse_poly(other, "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(R, "w + 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(R, "(z1 + 1)^-1"), std::invalid_argument);
}

TEST_CASE("canonical text is stable")
{
    CHECK(P("0").to_string() == "0");
    CHECK(P("-z1 + 2*z1^2 - 1").to_string() == "2*z1^2 - z1 - 1");
    CHECK(parse_poly(R, P("3*lambda^2*z1 - z2^-1 + 1/3").to_string()) == P("3*lambda^2*z1 - z2^-1 + 1/3"));
}

TEST_CASE("partial derivatives")
{
    CHECK(partial(P("z1^2*z2"), "z1") == P("2*z1*z2"));
    CHECK(partial(P("z1^-1"), "z1") == P("-z1^-2"));
    const QPoly t = P("a*z1 + z2^-1");
    const QPoly g = P("lambda^2") - P("lambda") * t + P("z1*z2");
    CHECK(partial(g, "lambda") == P("2*lambda") - t);
    CHECK_THROWS(partial(P("z1"), "w"));
}

TEST_CASE("clearing denominators")
{
    const std::vector<std::size_t> zs{1, 2};
    auto c = clear_denominators(P("z1^-1 + z2^-1 + 1"), std::span<const std::size_t>(zs));
    CHECK(c.numerator == P("z2 + z1 + z1*z2"));
    CHECK(c.multiplier == Exponent{0, 1, 1, 0});

    auto id = clear_denominators(P("lambda*z1 + a"), std::span<const std::size_t>(zs));
    CHECK(id.numerator == P("lambda*z1 + a"));
    CHECK(id.multiplier == Exponent{0, 0, 0, 0});

    CHECK_THROWS_AS(clear_denominators(P("a^-1"), std::span<const std::size_t>(zs)), std::domain_error);
}

TEST_CASE("determinants")
{
    PolyMatrix<Rationals> id(2, 2, P("0"));
    id(0, 0) = id(1, 1) = P("1");
    CHECK(det(id) == P("1"));

    PolyMatrix<Rationals> anti(2, 2, P("0"));
    anti(0, 1) = P("z1 + a");
    anti(1, 0) = P("z2");
    CHECK(det(anti) == -(P("z1 + a") * P("z2")));

    // Graphene symbol from its displayed entries.
    PolyMatrix<Rationals> g(2, 2, P("-3"));
    g(0, 1) = P("z1^-1 + z2^-1 + 1");
    g(1, 0) = P("z1 + z2 + 1");
    CHECK(det(g) == P("9") - P("z1^-1 + z2^-1 + 1") * P("z1 + z2 + 1"));

    PolyMatrix<Rationals> three(3, 3, P("0"));
    three(0, 0) = P("1"), three(0, 1) = P("2"), three(0, 2) = P("3");
    three(1, 0) = P("0"), three(1, 1) = P("a"), three(1, 2) = P("1");
    three(2, 0) = P("z1"), three(2, 1) = P("0"), three(2, 2) = P("1");
    CHECK(det(three) == P("a + 2*z1 - 3*a*z1"));

    CHECK_THROWS_AS(det(PolyMatrix<Rationals>(2, 3, P("0"))), std::invalid_argument);
}

TEST_CASE("specialization")
{
    CHECK(specialize(P("a*z1 + 7"), {{"a", mpq_class(0)}}) == P("7"));
    CHECK(specialize(P("a*z1 + 7"), {}) == P("a*z1 + 7"));
    CHECK(specialize(P("a^2*z1 - a"), {{"a", mpq_class(3)}}) == P("9*z1 - 3"));
    CHECK(specialize(P("z1^-1"), {{"z1", mpq_class(2)}}) == P("1/2"));
}

TEST_CASE("reduction modulo a prime commutes with arithmetic")
{
    const auto F = make_ring(PrimeField(101), R->vars());
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-30, 30), e(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        QPoly p(R), q(R);
        for (int t = 0; t < 4; ++t) {
            p.add_term({e(rng), e(rng), e(rng), e(rng)}, mpq_class(c(rng), 7));
            q.add_term({e(rng), e(rng), e(rng), e(rng)}, mpq_class(c(rng), 3));
        }
        CHECK(reduce_mod(p * q, F) == reduce_mod(p, F) * reduce_mod(q, F));
        CHECK(reduce_mod(p + q, F) == reduce_mod(p, F) + reduce_mod(q, F));
    }
}

TEST_CASE("evaluation and ring changes")
{
    const std::vector<double> pt{2, 3, 5, 7};
    CHECK(evaluate<double>(P("lambda*z1 - z2^-1 + a"), std::span<const double>(pt)) == doctest::Approx(6 - 0.2 + 7));
    const auto small = make_rational_ring({"z1", "lambda"});
    CHECK(change_ring(P("lambda*z1"), small) == parse_poly(small, "z1*lambda"));
    CHECK_THROWS_AS(change_ring(P("a"), small), std::invalid_argument);
}
