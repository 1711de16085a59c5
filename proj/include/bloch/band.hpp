#pragma once

// Band functions of a two-atomic Z^2-periodic operator on the Brillouin torus:
// grid sampling, critical points, spectral bands and CSV export.

#include <array>
#include <complex>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bloch/symbol.hpp"

namespace bloch {

using KPoint = std::array<double, 2>;
using Hessian2 = std::array<double, 4>;  ///< row-major 2x2

struct BandOptions {
    double crossing_tol = 1e-8;  ///< lambda_2 - lambda_1 below this is a crossing
    double hessian_tol = 1e-7;   ///< |det H| <= tol ||H||^2 is degenerate
    double gradient_tol = 1e-9;
    int max_iterations = 50;
    double dedup_radius = 1e-6;
    double isolation_radius = 1e-3;
    double level_tol = 1e-8;
    double fd_step = 1e-5;  ///< finite-difference step for the reported Hessian
    bool parallel = true;
};

/// Numerical symbol [[p, q], [conj(q), r]] at fixed real parameters.
class BandModel {
public:
    /// Throws unless the symbol is 2x2 over a two-dimensional torus.
    BandModel(const SymbolMatrix& s, std::span<const double> alpha);

    /// lambda_1 <= lambda_2 at k.
    std::array<double, 2> eigenvalues(const KPoint& k) const;
    double band(const KPoint& k, int j) const { return eigenvalues(k)[static_cast<std::size_t>(j)]; }
    double gap(const KPoint& k) const;

    /// Analytic derivatives of branch j (0 lower, 1 upper); undefined at crossings.
    std::array<double, 2> gradient(const KPoint& k, int j) const;
    Hessian2 hessian(const KPoint& k, int j) const;

    /// Trace and determinant of the symbol with their k-gradients.
    struct TraceDetJet {
        double t, d;
        std::array<double, 2> dt, dd;
    };
    TraceDetJet trace_det(const KPoint& k) const;

    /// (d, Re q, Im q) with d = (p - r) / 2, and its 3x2 Jacobian (row-major); zero exactly
    /// where the bands cross.
    struct CrossingJet {
        std::array<double, 3> f;
        std::array<double, 6> jac;
    };
    CrossingJet crossing_residual(const KPoint& k) const;

    /// (lambda T_j - D_j) / (2 lambda - T) for branch j, from the characteristic equation.
    std::array<double, 2> implicit_gradient(const KPoint& k, int j) const;

    /// Symmetric finite-difference Hessian of the analytic gradient.
    Hessian2 fd_hessian(const KPoint& k, int j, double step) const;

private:
    struct Term {
        std::complex<double> c;
        int e1, e2;
    };
    struct Jet {
        std::complex<double> v;
        std::array<std::complex<double>, 2> g;
        std::array<std::complex<double>, 4> h;
    };
    static Jet eval(const std::vector<Term>& terms, const KPoint& k);

    std::vector<Term> p_, r_, q_;
};

/// Wraps each coordinate into [-pi, pi).
KPoint wrap_torus(KPoint k);
double torus_distance(const KPoint& a, const KPoint& b);

struct BandGrid {
    int n = 0;
    double origin = -std::numbers::pi;  ///< k_i = origin + index * 2 pi / n
    std::vector<double> lower;         ///< row-major, index i * n + j for (k_1, k_2)
    std::vector<double> upper;
    std::vector<char> touching;  ///< lambda_2 - lambda_1 < crossing tolerance

    double step() const { return 2 * std::numbers::pi / n; }
    KPoint k(int i, int j) const { return {origin + i * step(), origin + j * step()}; }
    double value(int band, int i, int j) const
    {
        return (band == 0 ? lower : upper)[static_cast<std::size_t>(i) * n + j];
    }
};

/// Samples both bands on an n x n grid (n >= 8), rows in parallel.
BandGrid eval_bands(const BandModel& m, int n, double origin = -std::numbers::pi,
                    const BandOptions& opt = {});
BandGrid eval_bands_serial(const BandModel& m, int n, double origin = -std::numbers::pi,
                           const BandOptions& opt = {});

enum class PointClass { minimum, maximum, saddle, degenerate, crossing };
std::string to_string(PointClass c);

struct CriticalPoint {
    KPoint k;
    int band = 0;  ///< 0 lower, 1 upper
    double lambda = 0;
    double gradient_norm = 0;
    Hessian2 hessian{};
    double hessian_det = 0;
    PointClass kind = PointClass::minimum;
};

struct NewtonFailure {
    KPoint seed;
    int band;
    std::string reason;
};

struct CriticalSearch {
    std::vector<CriticalPoint> points;  ///< sorted by band, then k
    std::vector<int> flat_bands;        ///< bands constant over the grid
    std::vector<NewtonFailure> warnings;
};

/// Seeds from 3x3-neighbourhood extrema and saddles of each band, Newton refinement on the
/// gradient, crossings located by minimizing the squared gap.
CriticalSearch find_critical_points(const BandModel& m, const BandGrid& grid, const BandOptions& opt = {});

struct Interval {
    double lo, hi;
};

struct EdgeReport {
    double value;
    std::vector<int> bands;   ///< bands attaining the value
    bool single_band;         ///< condition (1)
    bool isolated;            ///< condition (2)
    bool nondegenerate;       ///< condition (3)
};

struct SpectralBands {
    std::vector<Interval> bands;
    std::vector<Interval> gaps;
    std::vector<EdgeReport> edges;  ///< endpoints of the spectrum's components
    bool all_pass() const;
};

SpectralBands spectral_summary(const BandGrid& grid, const CriticalSearch& cps, const BandOptions& opt = {});

/// CSV with header k1,k2,lambda1,lambda2, row-major, 12 significant digits.
void export_surface(std::ostream& out, const BandGrid& grid);
void export_surface(const BandGrid& grid, const std::string& path);

struct SurfaceRow {
    double k1, k2, lambda1, lambda2;
};
std::vector<SurfaceRow> read_surface(std::istream& in);

}  // namespace bloch
