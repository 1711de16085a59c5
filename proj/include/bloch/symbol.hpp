#pragma once

// Floquet symbol of the weighted Laplacian on a periodic graph.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "bloch/graph.hpp"
#include "bloch/poly.hpp"

namespace bloch {

/// divergence: L f(u) = sum alpha(e) (f(u) - f(v)), positive semidefinite.
/// adjacency: sum alpha(e) f(v) - deg(u) f(u), i.e. the negative of the above.
enum class Convention { divergence, adjacency };

/// Name of the spectral variable in every ring built from a symbol.
inline const std::string kLambda = "lambda";

/// Names z1..zn.
std::vector<std::string> z_names(int dimension);

struct SymbolMatrix {
    RingPtr<Rationals> ring;  ///< variables: lambda, z1..zn, then the graph parameters
    PolyMatrix<Rationals> entries;
    int dimension = 0;
    std::vector<std::string> params;

    std::size_t size() const { return entries.rows(); }
    std::vector<std::size_t> z_indices() const;
    std::vector<std::size_t> param_indices() const;
};

/// Ring with variables lambda, z1..zn followed by the given parameters.
RingPtr<Rationals> symbol_ring(int dimension, const std::vector<std::string>& params);

SymbolMatrix build_symbol(const PeriodicGraph& g, Convention convention = Convention::divergence);

struct ClearedSymbol {
    PolyMatrix<Rationals> entries;  ///< z^m * A, all entries ordinary polynomials
    std::vector<int> multiplier;    ///< m, one exponent per z variable
};

ClearedSymbol clear_symbol(const SymbolMatrix& s);

struct TraceDet {
    QPoly trace;
    QPoly det;
};

/// Trace and determinant of a 2x2 symbol.
TraceDet trace_det(const SymbolMatrix& s);

/// det(cleared - lambda z^m I): the dispersion polynomial in its polynomial form.
QPoly dispersion_polynomial(const SymbolMatrix& s);

/// A(alpha, e^{ik}) as a dense complex matrix (row-major).
Matrix<std::complex<double>> evaluate_symbol(const SymbolMatrix& s, std::span<const double> alpha,
                                             std::span<const double> k);

/// Substitutes numeric parameter values into every entry.
SymbolMatrix specialize_symbol(const SymbolMatrix& s, std::span<const mpq_class> alpha);

/// Entries rendered row by row as "[i,j] text".
std::string render_symbol(const PolyMatrix<Rationals>& m);

}  // namespace bloch
