#include <doctest.h>

#include "bloch/sweep.hpp"

using namespace bloch;

TEST_CASE("maximal elements")
{
    CHECK(maximal_elements(std::vector<Mask>{0}) == std::vector<Mask>{0});
    CHECK(maximal_elements(std::vector<Mask>{0, 1, 2, 3}) == std::vector<Mask>{3});
    CHECK(maximal_elements(std::vector<Mask>{0, 1, 2, 4, 6}) == std::vector<Mask>{1, 6});
    CHECK(maximal_elements(std::vector<Mask>{}).empty());
}

TEST_CASE("downward closure check")
{
    CHECK_FALSE(check_simplicial(std::vector<Mask>{}));
    CHECK_FALSE(check_simplicial(std::vector<Mask>{0, 1, 2, 3}));
    const auto bad = check_simplicial(std::vector<Mask>{3});
    REQUIRE(bad);
    CHECK(bad->first == 1);
    CHECK(bad->second == 3);
    const auto gap = check_simplicial(std::vector<Mask>{0, 1, 3});
    REQUIRE(gap);
    CHECK(gap->first == 2);
}

TEST_CASE("seeds and members")
{
    CHECK(subset_seed(1, 5) == subset_seed(1, 5));
    CHECK(subset_seed(1, 5) != subset_seed(1, 6));
    CHECK(subset_seed(1, 5) != subset_seed(2, 5));
    CHECK(mask_members(0b101001) == std::vector<std::size_t>{0, 3, 5});
}

TEST_CASE("graphene census")
{
    SweepOptions opt;
    opt.trials = 3;
    const auto g = graphene_graph();
    const auto p = run_sweep(g, opt), s = run_sweep_serial(g, opt);
    REQUIRE(p.subsets.size() == 8);
    for (std::size_t m = 0; m < 8; ++m) {
        CHECK(p.subsets[m].verdict == s.subsets[m].verdict);
        CHECK(p.subsets[m].connected == s.subsets[m].connected);
    }
    CHECK(p.dsg == s.dsg);
    CHECK(p.unresolved.empty());
    CHECK_FALSE(p.subsets[7].degenerate());
    CHECK(p.subsets[0].degenerate());
    CHECK_FALSE(check_simplicial(p.dsg));
}

TEST_CASE("invalid sweeps")
{
    SweepOptions opt;
    opt.trials = 0;
    CHECK_THROWS_AS(run_sweep(graphene_graph(), opt), std::invalid_argument);
}
