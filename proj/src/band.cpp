#include "bloch/band.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bloch {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double norm2(const std::array<double, 2>& g) { return std::hypot(g[0], g[1]); }

}  // namespace

BandModel::BandModel(const SymbolMatrix& s, std::span<const double> alpha)
{
    if (s.size() != 2) throw std::invalid_argument("band analysis needs a two-atomic graph");
    if (s.dimension != 2) throw std::invalid_argument("band analysis needs a two-dimensional torus");
    if (alpha.size() != s.params.size()) throw std::invalid_argument("parameter arity mismatch");
    const auto pidx = s.param_indices();
    auto collect = [&](const QPoly& entry) {
        std::vector<Term> out;
        for (const auto& [e, c] : entry.terms()) {
            double v = c.get_d();
            for (std::size_t i = 0; i < pidx.size(); ++i) v *= std::pow(alpha[i], e[pidx[i]]);
            if (v != 0) out.push_back({v, e[1], e[2]});
        }
        return out;
    };
    p_ = collect(s.entries(0, 0));
    r_ = collect(s.entries(1, 1));
    q_ = collect(s.entries(0, 1));
}

BandModel::Jet BandModel::eval(const std::vector<Term>& terms, const KPoint& k)
{
    Jet j{};
    for (const auto& t : terms) {
        const double phase = t.e1 * k[0] + t.e2 * k[1];
        const std::complex<double> v = t.c * std::polar(1.0, phase);
        const double e[2] = {static_cast<double>(t.e1), static_cast<double>(t.e2)};
        j.v += v;
        for (int a = 0; a < 2; ++a) {
            j.g[a] += std::complex<double>(0, e[a]) * v;
            for (int b = 0; b < 2; ++b) j.h[2 * a + b] -= e[a] * e[b] * v;
        }
    }
    return j;
}

std::array<double, 2> BandModel::eigenvalues(const KPoint& k) const
{
    const double p = eval(p_, k).v.real(), r = eval(r_, k).v.real();
    const std::complex<double> q = eval(q_, k).v;
    const double m = 0.5 * (p + r), s = std::hypot(0.5 * (p - r), std::abs(q));
    return {m - s, m + s};
}

double BandModel::gap(const KPoint& k) const
{
    const auto l = eigenvalues(k);
    return l[1] - l[0];
}

std::array<double, 2> BandModel::gradient(const KPoint& k, int j) const
{
    const Jet p = eval(p_, k), r = eval(r_, k), q = eval(q_, k);
    const double d = 0.5 * (p.v.real() - r.v.real());
    const double s = std::hypot(d, std::abs(q.v));
    const double sign = j == 0 ? -1.0 : 1.0;
    std::array<double, 2> g{};
    for (int a = 0; a < 2; ++a) {
        const double dm = 0.5 * (p.g[a].real() + r.g[a].real());
        const double dd = 0.5 * (p.g[a].real() - r.g[a].real());
        const double dw = 2 * d * dd + 2 * std::real(std::conj(q.v) * q.g[a]);
        g[a] = dm + sign * dw / (2 * s);
    }
    return g;
}

Hessian2 BandModel::hessian(const KPoint& k, int j) const
{
    const Jet p = eval(p_, k), r = eval(r_, k), q = eval(q_, k);
    const double d = 0.5 * (p.v.real() - r.v.real());
    const double s = std::hypot(d, std::abs(q.v));
    const double sign = j == 0 ? -1.0 : 1.0;
    std::array<double, 2> dd{}, dw{};
    for (int a = 0; a < 2; ++a) {
        dd[a] = 0.5 * (p.g[a].real() - r.g[a].real());
        dw[a] = 2 * d * dd[a] + 2 * std::real(std::conj(q.v) * q.g[a]);
    }
    Hessian2 h{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const int ab = 2 * a + b;
            const double hm = 0.5 * (p.h[ab].real() + r.h[ab].real());
            const double hd = 0.5 * (p.h[ab].real() - r.h[ab].real());
            const double hw = 2 * (dd[a] * dd[b] + d * hd) + 2 * std::real(std::conj(q.g[b]) * q.g[a] + std::conj(q.v) * q.h[ab]);
            h[ab] = hm + sign * (hw / (2 * s) - dw[a] * dw[b] / (4 * s * s * s));
        }
    return h;
}

BandModel::TraceDetJet BandModel::trace_det(const KPoint& k) const
{
    const Jet p = eval(p_, k), r = eval(r_, k), q = eval(q_, k);
    TraceDetJet t{};
    t.t = p.v.real() + r.v.real();
    t.d = p.v.real() * r.v.real() - std::norm(q.v);
    for (int a = 0; a < 2; ++a) {
        t.dt[a] = p.g[a].real() + r.g[a].real();
        t.dd[a] = p.g[a].real() * r.v.real() + p.v.real() * r.g[a].real() - 2 * std::real(std::conj(q.v) * q.g[a]);
    }
    return t;
}

BandModel::CrossingJet BandModel::crossing_residual(const KPoint& k) const
{
    const Jet p = eval(p_, k), r = eval(r_, k), q = eval(q_, k);
    CrossingJet c{};
    c.f = {0.5 * (p.v.real() - r.v.real()), q.v.real(), q.v.imag()};
    for (int a = 0; a < 2; ++a) {
        c.jac[a] = 0.5 * (p.g[a].real() - r.g[a].real());
        c.jac[2 + a] = q.g[a].real();
        c.jac[4 + a] = q.g[a].imag();
    }
    return c;
}

std::array<double, 2> BandModel::implicit_gradient(const KPoint& k, int j) const
{
    const auto t = trace_det(k);
    const double lambda = band(k, j);
    const double den = 2 * lambda - t.t;
    return {(lambda * t.dt[0] - t.dd[0]) / den, (lambda * t.dt[1] - t.dd[1]) / den};
}

Hessian2 BandModel::fd_hessian(const KPoint& k, int j, double step) const
{
    Hessian2 h{};
    for (int b = 0; b < 2; ++b) {
        KPoint plus = k, minus = k;
        plus[b] += step;
        minus[b] -= step;
        const auto gp = gradient(plus, j), gm = gradient(minus, j);
        for (int a = 0; a < 2; ++a) h[2 * a + b] = (gp[a] - gm[a]) / (2 * step);
    }
    const double off = 0.5 * (h[1] + h[2]);
    h[1] = h[2] = off;
    return h;
}

KPoint wrap_torus(KPoint k)
{
    for (double& x : k) {
        x = std::fmod(x + std::numbers::pi, kTwoPi);
        if (x < 0) x += kTwoPi;
        x -= std::numbers::pi;
    }
    return k;
}

double torus_distance(const KPoint& a, const KPoint& b)
{
    double sq = 0;
    for (int i = 0; i < 2; ++i) {
        double d = std::fmod(std::fabs(a[i] - b[i]), kTwoPi);
        d = std::min(d, kTwoPi - d);
        sq += d * d;
    }
    return std::sqrt(sq);
}

namespace {

BandGrid make_grid(int n, double origin)
{
    if (n < 8) throw std::invalid_argument("grid resolution must be at least 8");
    BandGrid g;
    g.n = n;
    g.origin = origin;
    const std::size_t size = static_cast<std::size_t>(n) * n;
    g.lower.resize(size);
    g.upper.resize(size);
    g.touching.resize(size);
    return g;
}

void fill_row(const BandModel& m, BandGrid& g, int i, double tol)
{
    for (int j = 0; j < g.n; ++j) {
        const auto l = m.eigenvalues(g.k(i, j));
        const std::size_t at = static_cast<std::size_t>(i) * g.n + j;
        g.lower[at] = l[0];
        g.upper[at] = l[1];
        g.touching[at] = (l[1] - l[0]) < tol;
    }
}

}  // namespace

BandGrid eval_bands(const BandModel& m, int n, double origin, const BandOptions& opt)
{
    BandGrid g = make_grid(n, origin);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fill_row(m, g, i, opt.crossing_tol);
    return g;
}

BandGrid eval_bands_serial(const BandModel& m, int n, double origin, const BandOptions& opt)
{
    BandGrid g = make_grid(n, origin);
    for (int i = 0; i < n; ++i) fill_row(m, g, i, opt.crossing_tol);
    return g;
}

std::string to_string(PointClass c)
{
    switch (c) {
    case PointClass::minimum: return "min";
    case PointClass::maximum: return "max";
    case PointClass::saddle: return "saddle";
    case PointClass::degenerate: return "degenerate";
    case PointClass::crossing: return "crossing";
    }
    return "?";
}

namespace {

struct Seed {
    KPoint k;
    int band;  ///< -1 marks a crossing seed
};

// Ring of the eight neighbours in cyclic order.
constexpr int kRing[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}};

std::vector<Seed> collect_seeds(const BandGrid& g, const std::vector<int>& flat)
{
    std::vector<Seed> seeds;
    const int n = g.n;
    auto at = [&](const std::vector<double>& v, int i, int j) {
        return v[static_cast<std::size_t>((i + n) % n) * n + static_cast<std::size_t>((j + n) % n)];
    };
    std::vector<double> gapv(g.lower.size());
    for (std::size_t t = 0; t < gapv.size(); ++t) gapv[t] = g.upper[t] - g.lower[t];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int band = 0; band < 2; ++band) {
                if (std::find(flat.begin(), flat.end(), band) != flat.end()) continue;
                const auto& v = band == 0 ? g.lower : g.upper;
                const double c = at(v, i, j);
                bool ge = true, le = true;
                int changes = 0;
                double prev = at(v, i + kRing[7][0], j + kRing[7][1]) - c;
                for (const auto& o : kRing) {
                    const double d = at(v, i + o[0], j + o[1]) - c;
                    ge &= d <= 0;
                    le &= d >= 0;
                    if ((d > 0) != (prev > 0)) ++changes;
                    prev = d;
                }
                if (ge || le || changes >= 4) seeds.push_back({g.k(i, j), band});
            }
            const double c = at(gapv, i, j);
            bool minimal = true;
            for (const auto& o : kRing) minimal &= at(gapv, i + o[0], j + o[1]) >= c;
            if (minimal) seeds.push_back({g.k(i, j), -1});
        }
    return seeds;
}

struct Outcome {
    std::optional<KPoint> k;
    bool crossing = false;
    std::string failure;
};

Outcome newton_band(const BandModel& m, KPoint k, int band, const BandOptions& opt)
{
    for (int it = 0; it <= opt.max_iterations; ++it) {
        if (m.gap(k) < 1e-6) return {std::nullopt, true, {}};
        const auto g = m.gradient(k, band);
        if (norm2(g) <= opt.gradient_tol) return {wrap_torus(k), false, {}};
        if (it == opt.max_iterations) break;
        const auto h = m.hessian(k, band);
        const double det = h[0] * h[3] - h[1] * h[2];
        if (!std::isfinite(det) || det == 0) return {std::nullopt, false, "singular Hessian"};
        k[0] -= (h[3] * g[0] - h[1] * g[1]) / det;
        k[1] -= (-h[2] * g[0] + h[0] * g[1]) / det;
        k = wrap_torus(k);
    }
    return {std::nullopt, false, "no convergence after " + std::to_string(opt.max_iterations) + " iterations"};
}

// Gauss-Newton on the residual (d, Re q, Im q), whose zeros are the band crossings.
Outcome newton_crossing(const BandModel& m, KPoint k, const BandOptions& opt)
{
    for (int it = 0; it < opt.max_iterations; ++it) {
        const auto c = m.crossing_residual(k);
        const double norm = std::sqrt(c.f[0] * c.f[0] + c.f[1] * c.f[1] + c.f[2] * c.f[2]);
        if (2 * norm <= opt.crossing_tol) return {wrap_torus(k), true, {}};
        double a = 0, b = 0, d = 0, r0 = 0, r1 = 0;  // J^T J = [[a, b], [b, d]], J^T F = (r0, r1)
        for (int i = 0; i < 3; ++i) {
            const double j0 = c.jac[2 * i], j1 = c.jac[2 * i + 1];
            a += j0 * j0;
            b += j0 * j1;
            d += j1 * j1;
            r0 += j0 * c.f[i];
            r1 += j1 * c.f[i];
        }
        const double det = a * d - b * b;
        if (!std::isfinite(det) || det <= 0) return {};
        k[0] -= (d * r0 - b * r1) / det;
        k[1] -= (-b * r0 + a * r1) / det;
        k = wrap_torus(k);
    }
    return {};
}

CriticalPoint classify(const BandModel& m, const KPoint& k, int band, const BandOptions& opt, bool crossing)
{
    CriticalPoint cp;
    cp.k = k;
    cp.band = band;
    cp.lambda = m.band(k, band);
    if (crossing || m.gap(k) <= opt.crossing_tol) {
        cp.kind = PointClass::crossing;
        return cp;
    }
    cp.gradient_norm = norm2(m.gradient(k, band));
    cp.hessian = m.fd_hessian(k, band, opt.fd_step);
    const auto& h = cp.hessian;
    cp.hessian_det = h[0] * h[3] - h[1] * h[2];
    const double scale = h[0] * h[0] + h[1] * h[1] + h[2] * h[2] + h[3] * h[3];
    if (std::fabs(cp.hessian_det) <= opt.hessian_tol * scale)
        cp.kind = PointClass::degenerate;
    else if (cp.hessian_det < 0)
        cp.kind = PointClass::saddle;
    else
        cp.kind = h[0] > 0 ? PointClass::minimum : PointClass::maximum;
    return cp;
}

}  // namespace

CriticalSearch find_critical_points(const BandModel& m, const BandGrid& grid, const BandOptions& opt)
{
    CriticalSearch out;
    for (int band = 0; band < 2; ++band) {
        const auto& v = band == 0 ? grid.lower : grid.upper;
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        if (*hi - *lo <= 1e-12 * (1 + std::max(std::fabs(*lo), std::fabs(*hi)))) out.flat_bands.push_back(band);
    }
    const auto seeds = collect_seeds(grid, out.flat_bands);

    std::vector<Outcome> results(seeds.size());
    const long count = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
    for (long s = 0; s < count; ++s)
        results[s] = seeds[s].band < 0 ? newton_crossing(m, seeds[s].k, opt) : newton_band(m, seeds[s].k, seeds[s].band, opt);

    // Merge in seed order so the output does not depend on scheduling.
    auto known = [&](const KPoint& k, int band) {
        return std::any_of(out.points.begin(), out.points.end(), [&](const CriticalPoint& c) {
            return c.band == band && torus_distance(c.k, k) < opt.dedup_radius;
        });
    };
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        const auto& r = results[s];
        if (!r.k) {
            if (!r.failure.empty()) out.warnings.push_back({seeds[s].k, seeds[s].band, r.failure});
            continue;
        }
        if (seeds[s].band < 0) {
            for (int band = 0; band < 2; ++band)
                if (!known(*r.k, band)) out.points.push_back(classify(m, *r.k, band, opt, true));
        } else if (!known(*r.k, seeds[s].band)) {
            out.points.push_back(classify(m, *r.k, seeds[s].band, opt, false));
        }
    }
    std::sort(out.points.begin(), out.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return std::tie(a.band, a.k) < std::tie(b.band, b.k);
    });
    return out;
}

bool SpectralBands::all_pass() const
{
    return std::all_of(edges.begin(), edges.end(),
                       [](const EdgeReport& e) { return e.single_band && e.isolated && e.nondegenerate; });
}

SpectralBands spectral_summary(const BandGrid& grid, const CriticalSearch& cps, const BandOptions& opt)
{
    SpectralBands s;
    for (int band = 0; band < 2; ++band) {
        const auto& v = band == 0 ? grid.lower : grid.upper;
        Interval iv{*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end())};
        for (const auto& c : cps.points)
            if (c.band == band) {
                iv.lo = std::min(iv.lo, c.lambda);
                iv.hi = std::max(iv.hi, c.lambda);
            }
        s.bands.push_back(iv);
    }
    std::vector<Interval> sorted = s.bands;
    std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> components{sorted.front()};
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo > components.back().hi + opt.level_tol) {
            s.gaps.push_back({components.back().hi, sorted[i].lo});
            components.push_back(sorted[i]);
        } else {
            components.back().hi = std::max(components.back().hi, sorted[i].hi);
        }
    }

    std::vector<double> edges;
    for (const auto& c : components) {
        edges.push_back(c.lo);
        if (c.hi > c.lo + opt.level_tol) edges.push_back(c.hi);
    }
    for (double value : edges) {
        EdgeReport e{value, {}, false, false, false};
        for (int band = 0; band < 2; ++band)
            if (value >= s.bands[band].lo - opt.level_tol && value <= s.bands[band].hi + opt.level_tol)
                e.bands.push_back(band);
        e.single_band = e.bands.size() == 1;

        std::vector<const CriticalPoint*> at;
        for (const auto& c : cps.points)
            if (std::find(e.bands.begin(), e.bands.end(), c.band) != e.bands.end() &&
                std::fabs(c.lambda - value) <= opt.level_tol)
                at.push_back(&c);
        bool flat = false;
        for (int band : e.bands) flat |= std::find(cps.flat_bands.begin(), cps.flat_bands.end(), band) != cps.flat_bands.end();
        e.isolated = !flat && !at.empty();
        for (std::size_t a = 0; a < at.size() && e.isolated; ++a)
            for (std::size_t b = a + 1; b < at.size(); ++b)
                if (at[a]->band == at[b]->band && torus_distance(at[a]->k, at[b]->k) < opt.isolation_radius) e.isolated = false;
        e.nondegenerate = !flat && !at.empty() && std::all_of(at.begin(), at.end(), [](const CriticalPoint* c) {
            return c->kind == PointClass::minimum || c->kind == PointClass::maximum;
        });
        s.edges.push_back(std::move(e));
    }
    return s;
}

void export_surface(std::ostream& out, const BandGrid& grid)
{
    out << "k1,k2,lambda1,lambda2\n";
    char buf[128];
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) {
            const KPoint k = grid.k(i, j);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", k[0], k[1], grid.value(0, i, j),
                          grid.value(1, i, j));
            out << buf;
        }
}

void export_surface(const BandGrid& grid, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    export_surface(out, grid);
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<SurfaceRow> read_surface(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "k1,k2,lambda1,lambda2") throw std::runtime_error("missing surface header");
    std::vector<SurfaceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SurfaceRow r{};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.k1, &r.k2, &r.lambda1, &r.lambda2) != 4)
            throw std::runtime_error("malformed surface row: " + line);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace bloch
