#include <doctest.h>

#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "bloch/graph.hpp"
#include "support.hpp"

using namespace bloch;

namespace {

PeriodicGraph two_atoms(std::vector<EdgeClass> edges) { return PeriodicGraph(2, {"a", "b"}, std::move(edges)); }

}  // namespace

TEST_CASE("mother graph is well formed with nine nearest-cell classes")
{
    const auto g = mother_graph();
    CHECK_FALSE(validate(g).has_value());
    CHECK(g.num_edges() == 9);
    CHECK(g.parameter_names().size() == 9);
    for (const auto& e : g.edge_classes()) CHECK(std::abs(e.shift[0]) + std::abs(e.shift[1]) <= 1);
}

TEST_CASE("validate reports loops, duplicates and arity")
{
    auto loop = validate(PeriodicGraph(2, {"a"}, {{"a", "a", {0, 0}, "x"}}));
    REQUIRE(loop);
    CHECK(loop->kind == Violation::Kind::loop);

    auto dup = validate(two_atoms({{"a", "b", {1, 0}, "x"}, {"b", "a", {-1, 0}, "y"}}));
    REQUIRE(dup);
    CHECK(dup->kind == Violation::Kind::multiple_edge);

    auto arity = validate(two_atoms({{"a", "b", {1}, "x"}}));
    REQUIRE(arity);
    CHECK(arity->kind == Violation::Kind::arity);

    auto unknown = validate(two_atoms({{"a", "c", {0, 0}, "x"}}));
    REQUIRE(unknown);
    CHECK(unknown->kind == Violation::Kind::unknown_vertex);

    CHECK_THROWS_AS(require_valid(PeriodicGraph(2, {"a"}, {{"a", "a", {0, 0}, "x"}})), GraphError);
}

TEST_CASE("canonical orientation picks the smaller of the two directions")
{
    const EdgeClass e{"b", "a", {-1, 0}, "x"};
    const EdgeClass c = canonical_orientation(e);
    CHECK(c.from == "a");
    CHECK(c.to == "b");
    CHECK(c.shift == std::vector<int>{1, 0});
    CHECK(canonical_orientation(c) == c);
}

TEST_CASE("subgraph selection")
{
    const auto g = mother_graph();
    std::vector<std::size_t> all(9);
    std::iota(all.begin(), all.end(), 0);
    CHECK(subgraph(g, all) == g);

    const auto empty = subgraph(g, {});
    CHECK(empty.num_edges() == 0);
    CHECK(empty.num_vertices() == 2);
    CHECK_FALSE(is_connected(empty));

    const std::size_t ab0 = 4;  // a-b (0,0)
    const auto single = subgraph(g, std::vector<std::size_t>{ab0});
    REQUIRE(single.num_edges() == 1);
    CHECK(single.edge_classes()[0].shift == std::vector<int>{0, 0});
    CHECK(single.parameter_names() == std::vector<std::string>{"alpha5"});

    CHECK_THROWS_AS(subgraph(g, std::vector<std::size_t>{9}), std::out_of_range);
    CHECK(subgraph_mask(g, 0x1ff) == g);
}

TEST_CASE("connectivity examples")
{
    CHECK(is_connected(mother_graph()));
    CHECK_FALSE(is_connected(two_atoms({{"a", "a", {1, 0}, "x"}, {"b", "b", {1, 0}, "y"}})));
    CHECK(is_connected(graphene_graph()));
    // The single cycle defect (-1,1) spans a rank-one lattice.
    CHECK_FALSE(is_connected(two_atoms({{"a", "b", {1, 0}, "x"}, {"a", "b", {0, 1}, "y"}})));
}

TEST_CASE("98 of the 512 mother subgraphs are disconnected")
{
    const auto g = mother_graph();
    int disconnected = 0;
    for (std::uint32_t m = 0; m < 512; ++m) disconnected += !is_connected(subgraph_mask(g, m));
    CHECK(disconnected == 98);
}

TEST_CASE("defect lattice agrees with a window search on all subsets")
{
    const auto g = mother_graph();
    for (std::uint32_t m = 0; m < 512; ++m) {
        const auto s = subgraph_mask(g, m);
        INFO("mask " << m);
        CHECK(is_connected(s) == testing::window_connected(s, 6));
    }
}

TEST_CASE("connectivity is monotone under adding edge classes")
{
    const auto g = mother_graph();
    std::vector<bool> conn(512);
    for (std::uint32_t m = 0; m < 512; ++m) conn[m] = is_connected(subgraph_mask(g, m));
    for (std::uint32_t m = 0; m < 512; ++m)
        for (int b = 0; b < 9; ++b)
            if (conn[m]) CHECK(conn[m | (1u << b)]);
}

TEST_CASE("JSON graph definitions round-trip")
{
    const auto g = mother_graph();
    std::stringstream s;
    write_graph_json(s, g);
    const auto back = read_graph_json(s);
    CHECK(back == canonicalize(g));

    std::istringstream bad(R"({"dimension": 2, "vertices": ["a"], "edges": [{"from": "a", "to": "a", "shift": [0, 0], "param": "x"}]})");
    CHECK_THROWS_AS(read_graph_json(bad), GraphError);
    std::istringstream junk("{not json");
    CHECK_THROWS_AS(read_graph_json(junk), GraphError);
}

TEST_CASE("builtin lookup")
{
    CHECK(builtin_graph("mother").has_value());
    CHECK(builtin_graph("graphene").has_value());
    CHECK_FALSE(builtin_graph("kagome").has_value());
}
