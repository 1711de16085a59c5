#pragma once

#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bloch/graph.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(BLOCH_TEST_DATA_DIR) + "/" + name; }

inline std::vector<long> random_alpha(std::mt19937_64& rng, std::size_t n, long lo = 1, long hi = 50)
{
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<long> a(n);
    for (auto& x : a) x = d(rng);
    return a;
}

// Connectivity of a finite (2R+1)^2 window of the infinite graph: every vertex in the
// inner cells (radius R-2) must reach every other one.
inline bool window_connected(const bloch::PeriodicGraph& g, int R)
{
    const int side = 2 * R + 1;
    const std::size_t nv = g.num_vertices();
    auto id = [&](int x, int y, std::size_t v) { return ((x + R) * side + (y + R)) * nv + v; };
    std::vector<std::size_t> parent(static_cast<std::size_t>(side) * side * nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int x = -R; x <= R; ++x)
        for (int y = -R; y <= R; ++y)
            for (const auto& e : g.edge_classes()) {
                const int tx = x + e.shift[0], ty = y + e.shift[1];
                if (std::abs(tx) > R || std::abs(ty) > R) continue;
                parent[find(id(x, y, *g.vertex_index(e.from)))] = find(id(tx, ty, *g.vertex_index(e.to)));
            }
    const std::size_t root = find(id(0, 0, 0));
    for (int x = -(R - 2); x <= R - 2; ++x)
        for (int y = -(R - 2); y <= R - 2; ++y)
            for (std::size_t v = 0; v < nv; ++v)
                if (find(id(x, y, v)) != root) return false;
    return true;
}

}  // namespace testing
