#include "bloch/symbol.hpp"

#include <sstream>

namespace bloch {

std::vector<std::string> z_names(int dimension)
{
    std::vector<std::string> out;
    for (int i = 1; i <= dimension; ++i) out.push_back("z" + std::to_string(i));
    return out;
}

RingPtr<Rationals> symbol_ring(int dimension, const std::vector<std::string>& params)
{
    std::vector<std::string> vars{kLambda};
    for (auto& z : z_names(dimension)) vars.push_back(std::move(z));
    vars.insert(vars.end(), params.begin(), params.end());
    return make_rational_ring(std::move(vars));
}

std::vector<std::size_t> SymbolMatrix::z_indices() const
{
    std::vector<std::size_t> out;
    for (int i = 0; i < dimension; ++i) out.push_back(static_cast<std::size_t>(1 + i));
    return out;
}

std::vector<std::size_t> SymbolMatrix::param_indices() const
{
    std::vector<std::size_t> out;
    for (const auto& p : params) out.push_back(ring->require(p));
    return out;
}

SymbolMatrix build_symbol(const PeriodicGraph& g, Convention convention)
{
    require_valid(g);
    const int n = g.dimension();
    auto ring = symbol_ring(n, g.parameter_names());
    const std::size_t w = g.num_vertices();
    PolyMatrix<Rationals> a(w, w, QPoly(ring));

    auto zpow = [&](const std::vector<int>& shift, int sign) {
        Exponent e(ring->nvars(), 0);
        for (int d = 0; d < n; ++d) e[1 + d] = sign * shift[d];
        return e;
    };

    for (const auto& edge : g.edge_classes()) {
        const std::size_t u = *g.vertex_index(edge.from), v = *g.vertex_index(edge.to);
        const std::size_t pi = ring->require(edge.param);
        Exponent weight(ring->nvars(), 0);
        weight[pi] = 1;

        // Row u sees the far endpoint in cell +shift, contributing z^{-shift}.
        a(u, u).add_term(weight, 1);
        a(v, v).add_term(weight, 1);
        Exponent out = zpow(edge.shift, -1), back = zpow(edge.shift, 1);
        out[pi] = 1;
        back[pi] = 1;
        a(u, v).add_term(out, -1);
        a(v, u).add_term(back, -1);
    }

    if (convention == Convention::adjacency)
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) a(i, j) = -a(i, j);

    return SymbolMatrix{ring, std::move(a), n, g.parameter_names()};
}

ClearedSymbol clear_symbol(const SymbolMatrix& s)
{
    std::vector<int> m(s.dimension, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            for (const auto& [e, c] : s.entries(i, j).terms())
                for (int d = 0; d < s.dimension; ++d) m[d] = std::max(m[d], -e[1 + d]);

    Exponent shift(s.ring->nvars(), 0);
    for (int d = 0; d < s.dimension; ++d) shift[1 + d] = m[d];
    PolyMatrix<Rationals> out(s.size(), s.size(), QPoly(s.ring));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) out(i, j) = s.entries(i, j).shifted(shift);
    return {std::move(out), std::move(m)};
}

TraceDet trace_det(const SymbolMatrix& s)
{
    if (s.size() != 2) throw std::invalid_argument("trace/determinant reduction needs a 2x2 symbol");
    return {s.entries(0, 0) + s.entries(1, 1), det(s.entries)};
}

QPoly dispersion_polynomial(const SymbolMatrix& s)
{
    const ClearedSymbol c = clear_symbol(s);
    Exponent e(s.ring->nvars(), 0);
    e[0] = 1;
    for (int d = 0; d < s.dimension; ++d) e[1 + d] = c.multiplier[d];
    const QPoly shift = QPoly::monomial(s.ring, e, 1);
    PolyMatrix<Rationals> m = c.entries;
    for (std::size_t i = 0; i < s.size(); ++i) m(i, i) -= shift;
    return det(m);
}

Matrix<std::complex<double>> evaluate_symbol(const SymbolMatrix& s, std::span<const double> alpha,
                                             std::span<const double> k)
{
    if (alpha.size() != s.params.size()) throw std::invalid_argument("parameter arity mismatch");
    if (k.size() != static_cast<std::size_t>(s.dimension)) throw std::invalid_argument("quasimomentum arity mismatch");
    std::vector<std::complex<double>> point(s.ring->nvars(), 0.0);
    for (int d = 0; d < s.dimension; ++d) point[1 + d] = std::polar(1.0, k[d]);
    const auto pidx = s.param_indices();
    for (std::size_t i = 0; i < alpha.size(); ++i) point[pidx[i]] = alpha[i];
    Matrix<std::complex<double>> out(s.size(), s.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            out(i, j) = evaluate<std::complex<double>>(s.entries(i, j), point);
    return out;
}

SymbolMatrix specialize_symbol(const SymbolMatrix& s, std::span<const mpq_class> alpha)
{
    if (alpha.size() != s.params.size()) throw std::invalid_argument("parameter arity mismatch");
    std::map<std::string, mpq_class> bind;
    for (std::size_t i = 0; i < alpha.size(); ++i) bind[s.params[i]] = alpha[i];
    SymbolMatrix out = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) out.entries(i, j) = specialize(s.entries(i, j), bind);
    return out;
}

std::string render_symbol(const PolyMatrix<Rationals>& m)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) os << '[' << i << ',' << j << "] " << m(i, j).to_string() << '\n';
    return os.str();
}

}  // namespace bloch
