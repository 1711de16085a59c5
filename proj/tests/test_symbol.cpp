#include <doctest.h>

#include <complex>
#include <map>
#include <random>

#include "bloch/symbol.hpp"

using namespace bloch;

namespace {

QPoly P(const SymbolMatrix& s, const char* text) { return parse_poly(s.ring, text); }

SymbolMatrix unit_graphene()
{
    const SymbolMatrix s = build_symbol(graphene_graph(), Convention::adjacency);
    const std::vector<mpq_class> one(3, 1);
    return specialize_symbol(s, one);
}

}  // namespace

TEST_CASE("graphene symbol matches the displayed matrices")
{
    const SymbolMatrix s = unit_graphene();
    CHECK(s.entries(0, 0) == P(s, "-3"));
    CHECK(s.entries(0, 1) == P(s, "z1^-1 + z2^-1 + 1"));
    CHECK(s.entries(1, 0) == P(s, "z1 + z2 + 1"));
    CHECK(s.entries(1, 1) == P(s, "-3"));

    const ClearedSymbol c = clear_symbol(s);
    CHECK(c.multiplier == std::vector<int>{1, 1});
    CHECK(c.entries(0, 0) == P(s, "-3*z1*z2"));
    CHECK(c.entries(0, 1) == P(s, "z1 + z2 + z1*z2"));
    CHECK(c.entries(1, 0) == P(s, "z1^2*z2 + z1*z2^2 + z1*z2"));
    CHECK(c.entries(1, 1) == P(s, "-3*z1*z2"));

    const TraceDet td = trace_det(s);
    CHECK(td.trace == P(s, "-6"));
    CHECK(td.det == P(s, "9 - (z1^-1 + z2^-1 + 1)*(z1 + z2 + 1)"));

    CHECK(dispersion_polynomial(s) == P(s, "(-3*z1*z2 - lambda*z1*z2)^2 - (z1 + z2 + z1*z2)*(z1^2*z2 + z1*z2^2 + z1*z2)"));
}

TEST_CASE("divergence convention is the negated adjacency one")
{
    const auto g = graphene_graph();
    const SymbolMatrix d = build_symbol(g), a = build_symbol(g, Convention::adjacency);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(d.entries(i, j) == -a.entries(i, j));
}

TEST_CASE("small symbols")
{
    const SymbolMatrix empty = build_symbol(subgraph(mother_graph(), {}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(empty.entries(i, j).is_zero());

    const SymbolMatrix one = build_symbol(subgraph(mother_graph(), std::vector<std::size_t>{4}));
    CHECK(one.entries(0, 0) == P(one, "alpha5"));
    CHECK(one.entries(0, 1) == P(one, "-alpha5"));
    CHECK(one.entries(1, 1) == P(one, "alpha5"));
    const TraceDet td = trace_det(one);
    CHECK(td.trace == P(one, "2*alpha5"));
    CHECK(td.det.is_zero());

    const ClearedSymbol c = clear_symbol(one);
    CHECK(c.multiplier == std::vector<int>{0, 0});
    CHECK(c.entries == one.entries);
}

TEST_CASE("mother symbol clears with multiplier one per variable")
{
    CHECK(clear_symbol(build_symbol(mother_graph())).multiplier == std::vector<int>{1, 1});
}

TEST_CASE("constants are harmonic and entries are formally self-adjoint")
{
    for (const auto& g : {mother_graph(), graphene_graph()}) {
        const SymbolMatrix s = build_symbol(g);
        std::map<std::string, mpq_class> at_one{{"z1", 1}, {"z2", 1}};
        for (std::size_t i = 0; i < s.size(); ++i) {
            QPoly row(s.ring);
            for (std::size_t j = 0; j < s.size(); ++j) row += s.entries(i, j);
            CHECK(specialize(row, at_one).is_zero());
        }
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j)
                for (const auto& [e, c] : s.entries(i, j).terms()) {
                    Exponent mirrored = e;
                    for (auto z : s.z_indices()) mirrored[z] = -mirrored[z];
                    CHECK(s.entries(j, i).coefficient(mirrored) == c);
                }
    }
}

TEST_CASE("entries are homogeneous of degree one in the weights")
{
    const SymbolMatrix s = build_symbol(mother_graph());
    const auto p = s.param_indices();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(s.entries(i, j).is_homogeneous_in(p));
            CHECK(s.entries(i, j).degree_in(p) == 1);
        }
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> d(1, 40);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<mpq_class> a(9), ca(9);
        mpq_class c(d(rng), d(rng));
        c.canonicalize();
        for (std::size_t k = 0; k < 9; ++k) {
            a[k] = mpq_class(d(rng), d(rng));
            a[k].canonicalize();
            ca[k] = c * a[k];
        }
        const auto sa = specialize_symbol(s, a), sca = specialize_symbol(s, ca);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(sca.entries(i, j) == sa.entries(i, j).scaled(c));
    }
}

TEST_CASE("numerical symbol is Hermitian and positive semidefinite")
{
    const SymbolMatrix s = build_symbol(mother_graph());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> w(0, 10), k(-M_PI, M_PI);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(9);
        for (auto& x : a) x = w(rng);
        const std::vector<double> kk{k(rng), k(rng)};
        const auto m = evaluate_symbol(s, a, kk);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(m(i, j) - std::conj(m(j, i))) <= 1e-12 * (1 + std::abs(m(i, j))));
        const double tr = (m(0, 0) + m(1, 1)).real();
        const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
        CHECK((tr - disc) / 2 >= -1e-10 * (1 + tr));
    }
}

TEST_CASE("rendering lists every entry")
{
    const std::string text = render_symbol(unit_graphene().entries);
    CHECK(text == "[0,0] -3\n[0,1] 1 + z2^-1 + z1^-1\n[1,0] z1 + z2 + 1\n[1,1] -3\n");
}
