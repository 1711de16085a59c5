#include "bloch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace bloch {

PeriodicGraph::PeriodicGraph(int dimension, std::vector<std::string> vertices, std::vector<EdgeClass> edges,
                             std::vector<std::string> parameter_names)
    : dimension_(dimension), vertices_(std::move(vertices)), edges_(std::move(edges)), params_(std::move(parameter_names))
{
    if (params_.empty())
        for (const auto& e : edges_) params_.push_back(e.param);
}

std::optional<std::size_t> PeriodicGraph::vertex_index(const std::string& label) const
{
    auto it = std::find(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::string to_string(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::dimension: return "dimension";
    case Violation::Kind::unknown_vertex: return "unknown vertex";
    case Violation::Kind::arity: return "arity";
    case Violation::Kind::loop: return "loop";
    case Violation::Kind::multiple_edge: return "multiple edge";
    case Violation::Kind::parameter: return "parameter";
    }
    return "?";
}

EdgeClass canonical_orientation(const EdgeClass& e)
{
    EdgeClass flipped{e.to, e.from, e.shift, e.param};
    for (int& s : flipped.shift) s = -s;
    return std::tie(flipped.from, flipped.to, flipped.shift) < std::tie(e.from, e.to, e.shift) ? flipped : e;
}

std::optional<Violation> validate(const PeriodicGraph& g)
{
    using K = Violation::Kind;
    if (g.dimension() < 1) return Violation{K::dimension, "dimension must be positive"};
    {
        std::set<std::string> seen;
        for (const auto& v : g.vertices())
            if (!seen.insert(v).second) return Violation{K::unknown_vertex, "duplicate vertex label " + v};
    }
    std::set<std::tuple<std::string, std::string, std::vector<int>>> seen;
    for (std::size_t i = 0; i < g.edge_classes().size(); ++i) {
        const auto& e = g.edge_classes()[i];
        const std::string where = "edge " + std::to_string(i) + " (" + e.from + "-" + e.to + ")";
        if (!g.vertex_index(e.from) || !g.vertex_index(e.to)) return Violation{K::unknown_vertex, where};
        if (e.shift.size() != static_cast<std::size_t>(g.dimension()))
            return Violation{K::arity, where + ": shift has " + std::to_string(e.shift.size()) + " entries"};
        if (e.from == e.to && std::all_of(e.shift.begin(), e.shift.end(), [](int s) { return s == 0; }))
            return Violation{K::loop, where + " joins a vertex to itself"};
        const EdgeClass c = canonical_orientation(e);
        if (!seen.emplace(c.from, c.to, c.shift).second) return Violation{K::multiple_edge, where + " repeats an edge"};
    }
    std::map<std::string, int> uses;
    for (const auto& e : g.edge_classes()) ++uses[e.param];
    if (g.parameter_names().size() != g.edge_classes().size())
        return Violation{K::parameter, "parameter list does not match edge classes"};
    for (const auto& p : g.parameter_names())
        if (uses[p] != 1) return Violation{K::parameter, "parameter " + p + " must label exactly one edge class"};
    return std::nullopt;
}

void require_valid(const PeriodicGraph& g)
{
    if (auto v = validate(g)) throw GraphError(*v);
}

PeriodicGraph canonicalize(const PeriodicGraph& g)
{
    require_valid(g);
    std::vector<EdgeClass> edges;
    for (const auto& e : g.edge_classes()) edges.push_back(canonical_orientation(e));
    return PeriodicGraph(g.dimension(), g.vertices(), std::move(edges), g.parameter_names());
}

PeriodicGraph subgraph(const PeriodicGraph& g, std::span<const std::size_t> keep)
{
    std::vector<std::size_t> idx(keep.begin(), keep.end());
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<EdgeClass> edges;
    for (std::size_t i : idx) {
        if (i >= g.num_edges()) throw std::out_of_range("edge class index " + std::to_string(i) + " out of range");
        edges.push_back(g.edge_classes()[i]);
    }
    std::vector<std::string> params;
    for (const auto& p : g.parameter_names())
        if (std::any_of(edges.begin(), edges.end(), [&](const EdgeClass& e) { return e.param == p; })) params.push_back(p);
    return PeriodicGraph(g.dimension(), g.vertices(), std::move(edges), std::move(params));
}

PeriodicGraph subgraph_mask(const PeriodicGraph& g, std::uint32_t mask)
{
    if (g.num_edges() < 32 && (mask >> g.num_edges()) != 0) throw std::out_of_range("mask selects missing edge classes");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (mask & (1u << i)) keep.push_back(i);
    return subgraph(g, keep);
}

namespace {

// Rank and determinant check of the lattice spanned by integer vectors, via
// integer row reduction (Euclid on columns). Returns true iff the rows span Z^n.
bool spans_full_lattice(std::vector<std::vector<long long>> rows, int n)
{
    std::size_t top = 0;
    for (int col = 0; col < n; ++col) {
        for (;;) {
            std::size_t pivot = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (pivot == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[pivot][col])))
                    pivot = r;
            if (pivot == rows.size()) return false;  // rank deficient
            std::swap(rows[top], rows[pivot]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                const long long q = rows[r][col] / rows[top][col];
                for (int c = col; c < n; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (std::llabs(rows[top][col]) != 1) return false;
        ++top;
    }
    return true;
}

}  // namespace

bool is_connected(const PeriodicGraph& g)
{
    const std::size_t nv = g.num_vertices();
    const int n = g.dimension();
    if (nv == 0) return false;

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);  // (neighbor, edge index)
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const auto& e = g.edge_classes()[i];
        const std::size_t u = *g.vertex_index(e.from), v = *g.vertex_index(e.to);
        adj[u].emplace_back(v, i);
        adj[v].emplace_back(u, i);
    }

    // Spanning tree potentials: the far endpoint of (u -> v, shift) sits in cell potential(u) + shift.
    std::vector<std::optional<std::vector<long long>>> potential(nv);
    std::vector<bool> tree_edge(g.num_edges(), false);
    potential[0] = std::vector<long long>(n, 0);
    std::queue<std::size_t> queue;
    queue.push(0);
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop();
        for (auto [v, i] : adj[u]) {
            if (potential[v]) continue;
            const auto& e = g.edge_classes()[i];
            const int sign = (*g.vertex_index(e.from) == u) ? 1 : -1;
            std::vector<long long> p = *potential[u];
            for (int d = 0; d < n; ++d) p[d] += sign * e.shift[d];
            potential[v] = std::move(p);
            tree_edge[i] = true;
            queue.push(v);
        }
    }
    if (std::any_of(potential.begin(), potential.end(), [](const auto& p) { return !p.has_value(); })) return false;

    std::vector<std::vector<long long>> defects;
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        if (tree_edge[i]) continue;
        const auto& e = g.edge_classes()[i];
        const auto& pu = *potential[*g.vertex_index(e.from)];
        const auto& pv = *potential[*g.vertex_index(e.to)];
        std::vector<long long> d(n);
        for (int k = 0; k < n; ++k) d[k] = pu[k] + e.shift[k] - pv[k];
        defects.push_back(std::move(d));
    }
    return spans_full_lattice(std::move(defects), n);
}

PeriodicGraph mother_graph()
{
    // Labels follow the weight placement of the reference drawing of the cell.
    std::vector<EdgeClass> edges = {
        {"a", "a", {0, 1}, "alpha1"},  {"a", "b", {0, -1}, "alpha2"}, {"a", "b", {-1, 0}, "alpha3"},
        {"a", "a", {1, 0}, "alpha4"},  {"a", "b", {0, 0}, "alpha5"},  {"a", "b", {0, 1}, "alpha6"},
        {"b", "b", {0, 1}, "alpha7"},  {"b", "b", {1, 0}, "alpha8"},  {"a", "b", {1, 0}, "alpha9"},
    };
    return PeriodicGraph(2, {"a", "b"}, std::move(edges));
}

PeriodicGraph graphene_graph()
{
    std::vector<EdgeClass> edges = {
        {"a", "b", {0, 0}, "alpha1"},
        {"a", "b", {1, 0}, "alpha2"},
        {"a", "b", {0, 1}, "alpha3"},
    };
    return PeriodicGraph(2, {"a", "b"}, std::move(edges));
}

std::optional<PeriodicGraph> builtin_graph(const std::string& name)
{
    if (name == "mother") return mother_graph();
    if (name == "graphene") return graphene_graph();
    return std::nullopt;
}

PeriodicGraph read_graph_json(std::istream& in)
{
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw GraphError({Violation::Kind::arity, std::string("malformed JSON: ") + e.what()});
    }
    try {
        const int dim = j.at("dimension").get<int>();
        auto vertices = j.at("vertices").get<std::vector<std::string>>();
        std::vector<EdgeClass> edges;
        for (const auto& e : j.at("edges")) {
            edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                             e.at("shift").get<std::vector<int>>(), e.at("param").get<std::string>()});
        }
        return canonicalize(PeriodicGraph(dim, std::move(vertices), std::move(edges)));
    } catch (const nlohmann::json::exception& e) {
        throw GraphError({Violation::Kind::arity, std::string("bad graph definition: ") + e.what()});
    }
}

PeriodicGraph read_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    return read_graph_json(in);
}

void write_graph_json(std::ostream& out, const PeriodicGraph& g)
{
    nlohmann::json j;
    j["dimension"] = g.dimension();
    j["vertices"] = g.vertices();
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edge_classes())
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"shift", e.shift}, {"param", e.param}});
    out << j.dump(2) << '\n';
}

std::string describe_edges(const PeriodicGraph& g)
{
    std::ostringstream os;
    for (const auto& e : g.edge_classes()) {
        os << "  " << e.param << ": " << e.from << " - " << e.to << " (";
        for (std::size_t i = 0; i < e.shift.size(); ++i) os << (i ? "," : "") << e.shift[i];
        os << ")\n";
    }
    if (g.edge_classes().empty()) os << "  (no edges)\n";
    return os.str();
}

}  // namespace bloch
