#include <doctest.h>

#include <random>

#include "bloch/critical.hpp"
#include "bloch/groebner.hpp"

using namespace bloch;

namespace {

template <class Field>
void check_basis(const Ideal<Field>& ideal, const GroebnerBasis<Field>& g)
{
    const auto& els = g.elements;
    for (std::size_t i = 0; i < els.size(); ++i) {
        CHECK(Field::is_one(els[i].coefficient(leading_exponent(els[i]))));
        for (std::size_t j = i + 1; j < els.size(); ++j) CHECK(normal_form(s_polynomial(els[i], els[j]), els).is_zero());
        for (std::size_t j = 0; j < els.size(); ++j) {
            if (i == j) continue;
            const auto a = leading_exponent(els[i]), b = leading_exponent(els[j]);
            bool divides = true;
            for (std::size_t k = 0; k < a.size(); ++k) divides &= a[k] <= b[k];
            CHECK_FALSE(divides);
        }
    }
    for (const auto& f : ideal.generators()) CHECK(normal_form(f, els).is_zero());
}

Ideal<Rationals> ideal(const RingPtr<Rationals>& r, std::initializer_list<const char*> gens)
{
    std::vector<QPoly> v;
    for (const char* g : gens) v.push_back(parse_poly(r, g));
    return Ideal<Rationals>(r, std::move(v));
}

Ideal<PrimeField> modular(const Ideal<Rationals>& I, std::uint32_t p = kDefaultPrime)
{
    const auto F = make_ring(PrimeField(p), I.ring()->vars());
    std::vector<FpPoly> v;
    for (const auto& g : I.generators()) v.push_back(reduce_mod(g, F));
    return Ideal<PrimeField>(F, std::move(v));
}

const auto XY = make_rational_ring({"x", "y"});

}  // namespace

TEST_CASE("small bases")
{
    auto a = ideal(XY, {"x^2", "x*y"});
    auto ga = buchberger(a);
    check_basis(a, ga);
    REQUIRE(ga.elements.size() == 2);
    CHECK(leading_exponent(ga.elements[0]) == Exponent{1, 1});
    CHECK(leading_exponent(ga.elements[1]) == Exponent{2, 0});

    auto b = ideal(XY, {"x", "x - 1"});
    CHECK(buchberger(b).is_one());

    auto c = ideal(XY, {"x^2 - 1", "y - x"});
    auto gc = buchberger(c);
    check_basis(c, gc);
    std::vector<Exponent> lead;
    for (const auto& e : gc.elements) lead.push_back(leading_exponent(e));
    std::sort(lead.begin(), lead.end());
    CHECK(lead == std::vector<Exponent>{{0, 2}, {1, 0}});
}

TEST_CASE("ideal membership of one")
{
    CHECK(contains_one(ideal(XY, {"x - 1", "x - 2"})) == Answer::yes);
    CHECK(contains_one(ideal(XY, {"x*y"})) == Answer::no);
    CHECK(contains_one(modular(ideal(XY, {"x - 1", "x - 2"}))) == Answer::yes);
    GroebnerOptions tiny;
    tiny.budget = 0;
    CHECK(contains_one(ideal(XY, {"x^2 - y", "x*y - 1"}), tiny) == Answer::inconclusive);
}

TEST_CASE("quotient dimensions")
{
    const auto X = make_rational_ring({"x"});
    CHECK(quotient_dimension(buchberger(ideal(X, {"x^2 - 1"}))) == 2u);
    CHECK(quotient_dimension(buchberger(ideal(XY, {"x^2 - 1", "y^2 - 1"}))) == 4u);
    CHECK(quotient_dimension(buchberger(ideal(X, {"(x - 1)^2"}))) == 2u);
    CHECK_FALSE(quotient_dimension(buchberger(ideal(XY, {"x*y"}))).has_value());
    CHECK(quotient_dimension(buchberger(ideal(XY, {"x", "x - 1"}))) == 0u);
}

TEST_CASE("bases of random ideals satisfy the Groebner criteria over both fields")
{
    const auto R = make_rational_ring({"x", "y", "z"});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-5, 5), e(0, 2);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<QPoly> gens;
        for (int g = 0; g < 3; ++g) {
            QPoly p(R);
            for (int t = 0; t < 3; ++t) p.add_term({e(rng), e(rng), e(rng)}, mpq_class(c(rng)));
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        const Ideal<Rationals> I(R, gens);
        const auto gq = buchberger(I);
        check_basis(I, gq);
        const auto Ip = modular(I);
        const auto gp = buchberger(Ip);
        check_basis(Ip, gp);
        // Reduction mod p of the rational basis is the modular basis (p is lucky for these inputs).
        REQUIRE(gq.elements.size() == gp.elements.size());
        for (std::size_t i = 0; i < gq.elements.size(); ++i) CHECK(reduce_mod(gq.elements[i], gp.ring) == gp.elements[i]);
    }
}

TEST_CASE("critical ideal of the mother graph: basis checks and field agreement")
{
    const auto sys = build_system(build_symbol(mother_graph()));
    const std::vector<long> alpha{1, 2, 3, 4, 5, 6, 7, 8, 1};
    const auto J = specialized_ideal(sys, alpha, false);
    const auto gq = buchberger(J);
    check_basis(J, gq);
    const auto gp = buchberger(modular(J));
    check_basis(modular(J), gp);
    REQUIRE(gq.elements.size() == gp.elements.size());
    for (std::size_t i = 0; i < gq.elements.size(); ++i) CHECK(reduce_mod(gq.elements[i], gp.ring) == gp.elements[i]);
    CHECK(quotient_dimension(gq) == 32u);
    CHECK(quotient_dimension(gp) == 32u);
    const auto sm = standard_monomials(gq);
    REQUIRE(sm);
    CHECK(sm->size() == 32);
}

TEST_CASE("unit test modulo a basis agrees with direct membership over GF(p)")
{
    const auto sys = build_system(build_symbol(mother_graph()));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(1, 50);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<long> alpha(9);
        for (auto& a : alpha) a = d(rng);
        if (trial == 0) alpha = {0, 0, 0, 0, 1, 0, 0, 0, 0};
        if (trial == 1) alpha = {31, 1, 13, 19, 36, 4, 27, 3, 7};
        const auto J = modular(specialized_ideal(sys, alpha, false));
        const auto I = modular(specialized_ideal(sys, alpha, true));
        const auto f4 = reduce_mod(specialized_generator(sys, alpha, 3), J.ring());
        const auto unit = is_unit_modulo(buchberger(J), f4);
        const Answer direct = contains_one(I);
        INFO("trial " << trial);
        if (unit) CHECK((*unit ? Answer::yes : Answer::no) == direct);
        else CHECK(trial == 0);
    }

    const auto X = make_rational_ring({"x"});
    const auto g = buchberger(ideal(X, {"x^2 - 1"}));
    CHECK(is_unit_modulo(g, parse_poly(X, "x + 2")) == true);
    CHECK(is_unit_modulo(g, parse_poly(X, "x + 1")) == false);
    CHECK_FALSE(is_unit_modulo(buchberger(ideal(XY, {"x*y"})), parse_poly(XY, "x")).has_value());
}

TEST_CASE("contains one implies an empty quotient")
{
    const auto g = buchberger(ideal(XY, {"x*y - 1", "x", "y^3 + 2"}));
    CHECK(g.is_one());
    CHECK(quotient_dimension(g) == 0u);
}
