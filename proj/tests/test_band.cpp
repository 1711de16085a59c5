#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "bloch/band.hpp"

using namespace bloch;
using std::numbers::pi;

namespace {

BandModel graphene_model()
{
    const std::vector<double> one(3, 1.0);
    return BandModel(build_symbol(graphene_graph(), Convention::adjacency), one);
}

BandModel mother_model(std::vector<double> a = {1, 2, 3, 4, 5, 6, 7, 8, 1})
{
    return BandModel(build_symbol(mother_graph()), a);
}

}  // namespace

TEST_CASE("ground state and symmetry")
{
    const auto m = mother_model();
    CHECK(std::fabs(m.eigenvalues({0, 0})[0]) < 1e-12);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-pi, pi);
    double degree = 0;
    for (double a : {1, 2, 3, 4, 5, 6, 7, 8, 1}) degree += a;
    for (int t = 0; t < 200; ++t) {
        const KPoint k{u(rng), u(rng)};
        const auto e = m.eigenvalues(k), f = m.eigenvalues({-k[0], -k[1]});
        CHECK(std::fabs(e[0] - f[0]) < 1e-10);
        CHECK(std::fabs(e[1] - f[1]) < 1e-10);
        CHECK(e[0] >= -1e-10);
        CHECK(e[1] <= 4 * degree);
    }
}

TEST_CASE("graphene closed form")
{
    const auto m = graphene_model();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int t = 0; t < 200; ++t) {
        const KPoint k{u(rng), u(rng)};
        const double s = std::abs(1.0 + std::polar(1.0, k[0]) + std::polar(1.0, k[1]));
        const auto e = m.eigenvalues(k);
        CHECK(e[0] == doctest::Approx(-3 - s).epsilon(1e-12));
        CHECK(e[1] == doctest::Approx(-3 + s).epsilon(1e-12));
    }
    const auto grid = eval_bands(m, 128);
    const auto cps = find_critical_points(m, grid);
    std::vector<KPoint> dirac;
    for (const auto& p : cps.points)
        if (p.kind == PointClass::crossing) dirac.push_back(p.k);
    REQUIRE(dirac.size() >= 2);
    const double third = 2 * pi / 3;
    for (const KPoint& target : {KPoint{third, -third}, KPoint{-third, third}}) {
        bool found = false;
        for (const auto& k : dirac) found |= torus_distance(k, target) < 1e-6;
        CHECK(found);
    }
    const auto sb = spectral_summary(grid, cps);
    REQUIRE(sb.bands.size() == 2);
    CHECK(sb.bands[0].lo == doctest::Approx(-6));
    CHECK(sb.bands[1].hi == doctest::Approx(0).epsilon(1e-9));
    CHECK(sb.gaps.empty());
}

TEST_CASE("a single vertical edge gives flat bands")
{
    const std::vector<double> a{0, 0, 0, 0, 1, 0, 0, 0, 0};
    const auto m = mother_model(a);
    const auto grid = eval_bands(m, 32);
    const auto cps = find_critical_points(m, grid);
    CHECK(cps.flat_bands == std::vector<int>{0, 1});
    const auto sb = spectral_summary(grid, cps);
    CHECK_FALSE(sb.all_pass());
}

TEST_CASE("mother graph critical points are nondegenerate and few")
{
    const auto m = mother_model();
    const auto grid = eval_bands(m, 128);
    const auto cps = find_critical_points(m, grid);
    CHECK(cps.points.size() <= 32);
    CHECK(cps.points.size() >= 4);
    for (const auto& p : cps.points) {
        CHECK(p.kind != PointClass::degenerate);
        CHECK(p.kind != PointClass::crossing);
        CHECK(p.gradient_norm < 1e-8);
    }
    const auto sb = spectral_summary(grid, cps);
    CHECK(sb.all_pass());
}

TEST_CASE("analytic derivatives agree with finite differences")
{
    const auto m = mother_model({3, 1, 4, 1, 5, 9, 2, 6, 5});
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-pi, pi);
    const double h = 1e-6;
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const KPoint k{u(rng), u(rng)};
        if (m.gap(k) < 1e-2) continue;
        ++checked;
        for (int j = 0; j < 2; ++j) {
            const auto g = m.gradient(k, j), ig = m.implicit_gradient(k, j);
            for (int c = 0; c < 2; ++c) {
                KPoint kp = k, km = k;
                kp[c] += h;
                km[c] -= h;
                const double fd = (m.band(kp, j) - m.band(km, j)) / (2 * h);
                CHECK(std::fabs(g[c] - fd) <= 1e-5 * (1 + std::fabs(fd)));
                CHECK(std::fabs(ig[c] - g[c]) <= 1e-8 * (1 + std::fabs(g[c])));
            }
            const auto H = m.hessian(k, j), F = m.fd_hessian(k, j, 1e-5);
            for (int c = 0; c < 4; ++c) CHECK(std::fabs(H[c] - F[c]) <= 1e-4 * (1 + std::fabs(H[c])));
        }
    }
    CHECK(checked > 900);
}

TEST_CASE("surface export")
{
    const auto m = mother_model();
    const auto grid = eval_bands(m, 8);
    std::ostringstream a, b;
    export_surface(a, grid);
    export_surface(b, eval_bands(m, 8));
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    const auto rows = read_surface(in);
    REQUIRE(rows.size() == 64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const auto& r = rows[static_cast<std::size_t>(i) * 8 + j];
            CHECK(r.k1 == doctest::Approx(grid.k(i, j)[0]).epsilon(1e-11));
            CHECK(r.k2 == doctest::Approx(grid.k(i, j)[1]).epsilon(1e-11));
            CHECK(r.lambda1 == doctest::Approx(grid.value(0, i, j)).epsilon(1e-11));
            CHECK(r.lambda2 == doctest::Approx(grid.value(1, i, j)).epsilon(1e-11));
        }
    CHECK(a.str().rfind("k1,k2,lambda1,lambda2\n", 0) == 0);
    CHECK_THROWS(eval_bands(m, 4));
}

TEST_CASE("parallel grid matches serial")
{
    const auto m = mother_model();
    const auto p = eval_bands(m, 96), s = eval_bands_serial(m, 96);
    CHECK(p.lower == s.lower);
    CHECK(p.upper == s.upper);
    CHECK(p.touching == s.touching);
}

TEST_CASE("torus helpers")
{
    const auto w = wrap_torus({pi + 0.5, -pi - 0.5});
    CHECK(w[0] == doctest::Approx(-pi + 0.5));
    CHECK(w[1] == doctest::Approx(pi - 0.5));
    CHECK(torus_distance({-pi + 0.1, 0}, {pi - 0.1, 0}) == doctest::Approx(0.2));
}
