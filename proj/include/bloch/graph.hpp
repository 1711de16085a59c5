#pragma once

// Z^n-periodic graphs given by a fundamental domain: vertex orbits plus edge
// classes carrying an integer shift and a symbolic weight.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bloch {

struct EdgeClass {
    std::string from;
    std::string to;
    std::vector<int> shift;  ///< cell of the far endpoint
    std::string param;

    friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

class PeriodicGraph {
public:
    PeriodicGraph() = default;
    /// Parameter order defaults to the order in which edges name them.
    PeriodicGraph(int dimension, std::vector<std::string> vertices, std::vector<EdgeClass> edges,
                  std::vector<std::string> parameter_names = {});

    int dimension() const { return dimension_; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<EdgeClass>& edge_classes() const { return edges_; }
    const std::vector<std::string>& parameter_names() const { return params_; }

    std::optional<std::size_t> vertex_index(const std::string& label) const;
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    friend bool operator==(const PeriodicGraph&, const PeriodicGraph&) = default;

private:
    int dimension_ = 0;
    std::vector<std::string> vertices_;
    std::vector<EdgeClass> edges_;
    std::vector<std::string> params_;
};

struct Violation {
    enum class Kind { dimension, unknown_vertex, arity, loop, multiple_edge, parameter };
    Kind kind;
    std::string message;
};

std::string to_string(Violation::Kind kind);

/// First violated invariant, or nullopt when the graph is well formed.
std::optional<Violation> validate(const PeriodicGraph& g);

class GraphError : public std::runtime_error {
public:
    explicit GraphError(Violation v) : std::runtime_error(to_string(v.kind) + ": " + v.message), violation_(std::move(v)) {}
    const Violation& violation() const { return violation_; }

private:
    Violation violation_;
};

/// Throws GraphError when validate() reports a violation.
void require_valid(const PeriodicGraph& g);

/// Same edge, orientation chosen as the smaller of (from,to,shift) and (to,from,-shift).
EdgeClass canonical_orientation(const EdgeClass& e);

/// Validates, then orients every edge canonically.
PeriodicGraph canonicalize(const PeriodicGraph& g);

/// Restriction to the listed edge classes; all vertex orbits are kept.
PeriodicGraph subgraph(const PeriodicGraph& g, std::span<const std::size_t> keep);

/// Restriction to the edge classes whose bit is set in `mask`.
PeriodicGraph subgraph_mask(const PeriodicGraph& g, std::uint32_t mask);

/// True iff the infinite periodic graph is connected.
bool is_connected(const PeriodicGraph& g);

/// Two-atom nearest-cell graph in Z^2 with nine weighted edge classes alpha1..alpha9:
/// a-a (0,1), a-b (0,-1), a-b (-1,0), a-a (1,0), a-b (0,0), a-b (0,1), b-b (0,1), b-b (1,0), a-b (1,0).
PeriodicGraph mother_graph();

/// Honeycomb lattice with unit cell {a, b} and edges a-b with shifts (0,0), (1,0), (0,1).
PeriodicGraph graphene_graph();

/// Builtin graph by name ("mother", "graphene"); nullopt for other names.
std::optional<PeriodicGraph> builtin_graph(const std::string& name);

/// Reads {"dimension", "vertices", "edges": [{"from","to","shift","param"}]}; validates and canonicalizes.
PeriodicGraph read_graph_json(std::istream& in);
PeriodicGraph read_graph_file(const std::string& path);
void write_graph_json(std::ostream& out, const PeriodicGraph& g);

/// Human-readable edge list, one class per line.
std::string describe_edges(const PeriodicGraph& g);

}  // namespace bloch
