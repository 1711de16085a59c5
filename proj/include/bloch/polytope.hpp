#pragma once

// Lattice polytopes in dimensions 1 to 3: exact hulls, volumes, Minkowski sums
// and mixed volumes, plus the Bernstein bound of a dispersion system.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bloch/critical.hpp"

namespace bloch {

using Point = std::vector<long>;

/// Polygonal face of a full-dimensional 3D hull. Vertices are indices into
/// LatticePolytope::vertices(), counter-clockwise seen from outside.
struct Face {
    std::vector<std::size_t> vertices;
    Point normal;  ///< primitive outward normal
    long offset;   ///< normal . x == offset on the face, < offset inside
};

class LatticePolytope {
public:
    /// Hull of the given points; throws on an empty list or mixed lengths.
    explicit LatticePolytope(std::vector<Point> points);

    int ambient_dimension() const { return ambient_; }
    /// Dimension of the affine hull (0 for a point).
    int dimension() const { return dim_; }
    const std::vector<Point>& points() const { return points_; }
    /// Hull vertices, sorted lexicographically.
    const std::vector<Point>& vertices() const { return vertices_; }
    /// Faces with coplanar triangles merged; filled only for full-dimensional 3D hulls.
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t num_edges() const;

    /// Euclidean volume in the ambient space; 0 for lower-dimensional hulls.
    const mpq_class& volume() const { return volume_; }

    bool contains(const Point& p) const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.vertices_ == b.vertices_; }

private:
    int ambient_ = 0;
    int dim_ = 0;
    std::vector<Point> points_;
    std::vector<Point> vertices_;
    std::vector<Face> faces_;
    mpq_class volume_;
};

/// Exponent vectors of p restricted to the variables at `vars`, in that order.
template <class Field>
LatticePolytope newton_polytope(const Poly<Field>& p, std::span<const std::size_t> vars)
{
    if (p.is_zero()) throw std::invalid_argument("Newton polytope of the zero polynomial");
    std::vector<Point> pts;
    for (const auto& [e, c] : p.terms()) {
        Point x;
        for (std::size_t v : vars) x.push_back(e.at(v));
        pts.push_back(std::move(x));
    }
    return LatticePolytope(std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope translate(const LatticePolytope& p, const Point& shift);
/// Image under a coordinate permutation: coordinate i of the result is coordinate perm[i] of the input.
LatticePolytope permute(const LatticePolytope& p, std::span<const int> perm);

/// Normalized so that mixed_volume(P, ..., P) = d! vol(P); inclusion-exclusion over subsets.
mpq_class mixed_volume(std::span<const LatticePolytope> polytopes);

/// True iff every vertex of inner lies in outer.
bool contains(const LatticePolytope& outer, const LatticePolytope& inner);

/// OFF text: vertex list followed by face index lists.
void write_off(std::ostream& out, const LatticePolytope& p);

struct BernsteinReport {
    std::vector<LatticePolytope> polytopes;  ///< N(f_1), N(f_2), ..., coordinates (z_1, ..., z_n, lambda)
    mpq_class mixed_volume;
    std::optional<std::uint64_t> bound;  ///< nullopt when the mixed volume is not an integer
};

/// Newton polytopes of the characteristic and gradient equations in (z, lambda) with
/// the parameters left symbolic, i.e. the generic support.
BernsteinReport bernstein_bound(const DispersionSystem& sys);
/// Same, with the parameters specialized first.
BernsteinReport bernstein_bound(const DispersionSystem& sys, std::span<const long> alpha);

}  // namespace bloch
