#include "bloch/polytope.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace bloch {

namespace {

using Vec3 = std::array<long, 3>;

Vec3 v3(const Point& p) { return {p[0], p[1], p[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
long dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

Vec3 primitive(Vec3 n)
{
    const long g = std::gcd(std::gcd(std::labs(n[0]), std::labs(n[1])), std::labs(n[2]));
    if (g > 1)
        for (long& x : n) x /= g;
    return n;
}

long cross2(const std::array<long, 2>& o, const std::array<long, 2>& a, const std::array<long, 2>& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strict convex hull (no collinear points) of 2D points, counter-clockwise from the lexicographic minimum.
std::vector<std::size_t> hull2(const std::vector<std::array<long, 2>>& pts)
{
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
              idx.end());
    if (idx.size() < 3) return idx;
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i : idx) {
        while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
        const std::size_t i = idx[t];
        while (k >= lower && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

// Counter-clockwise polygon (seen from the tip of n) of the coplanar points `on`.
std::vector<Point> planar_polygon(const std::vector<Point>& on, const Vec3& n)
{
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::labs(n[i]) > std::labs(n[k])) k = i;
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    std::vector<std::array<long, 2>> proj;
    for (const auto& p : on) proj.push_back({p[i], p[j]});
    auto order = hull2(proj);
    if (n[k] < 0) std::reverse(order.begin(), order.end());
    std::vector<Point> out;
    for (std::size_t t : order) out.push_back(on[t]);
    return out;
}

int affine_rank(const std::vector<Point>& pts)
{
    if (pts.empty()) return -1;
    const std::size_t d = pts[0].size();
    std::vector<std::vector<mpz_class>> rows;
    for (std::size_t r = 1; r < pts.size(); ++r) {
        std::vector<mpz_class> row(d);
        for (std::size_t c = 0; c < d; ++c) row[c] = pts[r][c] - pts[0][c];
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (std::size_t c = 0; c < d && static_cast<std::size_t>(rank) < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][c]) == 0) continue;
            const mpz_class a = rows[rank][c], b = rows[r][c];
            for (std::size_t t = c; t < d; ++t) rows[r][t] = rows[r][t] * a - rows[rank][t] * b;
        }
        ++rank;
    }
    return rank;
}

struct Hull3 {
    std::vector<std::vector<Point>> polygons;
    std::vector<Vec3> normals;
    std::vector<long> offsets;
};

// Gift wrapping over faces; the points span R^3.
Hull3 wrap(const std::vector<Point>& pts)
{
    std::vector<Vec3> p;
    for (const auto& x : pts) p.push_back(v3(x));
    const std::size_t n = p.size();
    const Vec3 a = *std::min_element(p.begin(), p.end());

    Vec3 first{};
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) {
        for (std::size_t c = b + 1; c < n && !found; ++c) {
            Vec3 nrm = cross(sub(p[b], a), sub(p[c], a));
            if (is_zero(nrm)) continue;
            bool pos = false, neg = false;
            for (const auto& q : p) {
                const long s = dot(nrm, sub(q, a));
                pos |= s > 0;
                neg |= s < 0;
            }
            if (pos && neg) continue;
            if (pos) nrm = {-nrm[0], -nrm[1], -nrm[2]};
            first = primitive(nrm);
            found = true;
        }
    }
    if (!found) throw std::logic_error("no supporting plane found for a full-dimensional point set");

    Hull3 h;
    std::map<std::pair<Vec3, long>, std::size_t> seen;
    std::queue<std::size_t> todo;
    auto add_face = [&](const Vec3& nrm, long off) {
        auto [it, fresh] = seen.emplace(std::make_pair(nrm, off), h.polygons.size());
        if (!fresh) return;
        std::vector<Point> on;
        for (std::size_t t = 0; t < n; ++t)
            if (dot(nrm, p[t]) == off) on.push_back(pts[t]);
        h.polygons.push_back(planar_polygon(on, nrm));
        h.normals.push_back(nrm);
        h.offsets.push_back(off);
        todo.push(h.polygons.size() - 1);
    };
    add_face(first, dot(first, a));

    while (!todo.empty()) {
        const std::size_t f = todo.front();
        todo.pop();
        const auto poly = h.polygons[f];
        for (std::size_t e = 0; e < poly.size(); ++e) {
            const Vec3 u = v3(poly[e]), v = v3(poly[(e + 1) % poly.size()]);
            // Neighbor across u->v traverses v->u; keep the candidate w that leaves nothing outside.
            std::size_t w = n;
            for (std::size_t t = 0; t < n; ++t) {
                if (is_zero(cross(sub(u, v), sub(p[t], v)))) continue;
                if (w == n || dot(cross(sub(u, v), sub(p[w], v)), sub(p[t], v)) > 0) w = t;
            }
            const Vec3 nrm = primitive(cross(sub(u, v), sub(p[w], v)));
            add_face(nrm, dot(nrm, v));
        }
    }
    return h;
}

}  // namespace

LatticePolytope::LatticePolytope(std::vector<Point> points) : points_(std::move(points))
{
    if (points_.empty()) throw std::invalid_argument("polytope needs at least one point");
    ambient_ = static_cast<int>(points_[0].size());
    if (ambient_ < 1 || ambient_ > 3) throw std::invalid_argument("only dimensions 1 to 3 are supported");
    for (const auto& p : points_)
        if (static_cast<int>(p.size()) != ambient_) throw std::invalid_argument("points of different dimensions");

    std::vector<Point> pts = points_;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    dim_ = affine_rank(pts);
    volume_ = 0;

    if (dim_ == 0) {
        vertices_ = {pts[0]};
    } else if (dim_ == 1) {
        vertices_ = {pts.front(), pts.back()};  // collinear: lexicographic extremes are the endpoints
        if (ambient_ == 1) volume_ = pts.back()[0] - pts.front()[0];
    } else if (dim_ == 2) {
        Vec3 nrm{0, 0, 1};
        std::vector<Point> flat = pts;
        if (ambient_ == 3) {
            bool found = false;
            for (std::size_t b = 1; b < pts.size() && !found; ++b)
                for (std::size_t c = b + 1; c < pts.size() && !found; ++c) {
                    const Vec3 x = cross(sub(v3(pts[b]), v3(pts[0])), sub(v3(pts[c]), v3(pts[0])));
                    if (!is_zero(x)) {
                        nrm = primitive(x);
                        found = true;
                    }
                }
        } else {
            for (auto& q : flat) q.push_back(0);
        }
        auto poly = planar_polygon(flat, nrm);
        if (ambient_ == 2) {
            mpz_class twice = 0;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const auto& s = poly[i];
                const auto& t = poly[(i + 1) % poly.size()];
                twice += s[0] * t[1] - s[1] * t[0];
            }
            volume_ = mpq_class(twice, 2);
            volume_.canonicalize();
            for (auto& q : poly) q.pop_back();
        }
        vertices_ = poly;
        std::sort(vertices_.begin(), vertices_.end());
        if (ambient_ == 3) {
            Face face{{}, {nrm[0], nrm[1], nrm[2]}, dot(nrm, v3(poly[0]))};
            for (const auto& q : poly)
                face.vertices.push_back(static_cast<std::size_t>(
                    std::lower_bound(vertices_.begin(), vertices_.end(), q) - vertices_.begin()));
            faces_.push_back(std::move(face));
        }
    } else {
        const Hull3 h = wrap(pts);
        for (const auto& poly : h.polygons) vertices_.insert(vertices_.end(), poly.begin(), poly.end());
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

        const Vec3 r = v3(vertices_[0]);
        mpz_class six = 0;
        for (std::size_t f = 0; f < h.polygons.size(); ++f) {
            const auto& poly = h.polygons[f];
            Face face{{}, {h.normals[f][0], h.normals[f][1], h.normals[f][2]}, h.offsets[f]};
            for (const auto& q : poly)
                face.vertices.push_back(static_cast<std::size_t>(
                    std::lower_bound(vertices_.begin(), vertices_.end(), q) - vertices_.begin()));
            faces_.push_back(std::move(face));
            for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
                const Vec3 x = sub(v3(poly[0]), r), y = sub(v3(poly[i]), r), z = sub(v3(poly[i + 1]), r);
                six += dot(x, cross(y, z));
            }
        }
        volume_ = mpq_class(six, 6);
        volume_.canonicalize();
    }
}

std::size_t LatticePolytope::num_edges() const
{
    if (dim_ <= 0) return 0;
    if (dim_ == 1) return 1;
    if (dim_ == 2) return vertices_.size();
    std::size_t sides = 0;
    for (const auto& f : faces_) sides += f.vertices.size();
    return sides / 2;
}

bool LatticePolytope::contains(const Point& p) const
{
    if (static_cast<int>(p.size()) != ambient_) throw std::invalid_argument("point dimension mismatch");
    std::vector<Point> pts = vertices_;
    pts.push_back(p);
    return LatticePolytope(std::move(pts)).vertices() == vertices_;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q)
{
    if (p.ambient_dimension() != q.ambient_dimension()) throw std::invalid_argument("Minkowski sum dimension mismatch");
    std::vector<Point> sums;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            Point s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return LatticePolytope(std::move(sums));
}

LatticePolytope translate(const LatticePolytope& p, const Point& shift)
{
    if (static_cast<int>(shift.size()) != p.ambient_dimension()) throw std::invalid_argument("shift dimension mismatch");
    std::vector<Point> pts = p.vertices();
    for (auto& x : pts)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += shift[i];
    return LatticePolytope(std::move(pts));
}

LatticePolytope permute(const LatticePolytope& p, std::span<const int> perm)
{
    if (static_cast<int>(perm.size()) != p.ambient_dimension()) throw std::invalid_argument("permutation length mismatch");
    std::vector<Point> pts;
    for (const auto& x : p.vertices()) {
        Point y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.at(static_cast<std::size_t>(perm[i]));
        pts.push_back(std::move(y));
    }
    return LatticePolytope(std::move(pts));
}

mpq_class mixed_volume(std::span<const LatticePolytope> polytopes)
{
    const std::size_t d = polytopes.size();
    if (d == 0) throw std::invalid_argument("mixed volume of no polytopes");
    for (const auto& p : polytopes)
        if (static_cast<std::size_t>(p.ambient_dimension()) != d)
            throw std::invalid_argument("mixed volume needs as many polytopes as the dimension");
    mpq_class total = 0;
    for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
        std::optional<LatticePolytope> sum;
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (1u << i)) sum = sum ? minkowski_sum(*sum, polytopes[i]) : polytopes[i];
        const std::size_t k = static_cast<std::size_t>(std::popcount(mask));
        if ((d - k) % 2 == 0)
            total += sum->volume();
        else
            total -= sum->volume();
    }
    return total;
}

bool contains(const LatticePolytope& outer, const LatticePolytope& inner)
{
    std::vector<Point> pts = outer.vertices();
    pts.insert(pts.end(), inner.vertices().begin(), inner.vertices().end());
    return LatticePolytope(std::move(pts)).vertices() == outer.vertices();
}

void write_off(std::ostream& out, const LatticePolytope& p)
{
    out << "OFF\n" << p.vertices().size() << ' ' << p.faces().size() << ' ' << p.num_edges() << '\n';
    for (const auto& v : p.vertices()) {
        for (int i = 0; i < 3; ++i) out << (i ? " " : "") << (i < p.ambient_dimension() ? v[i] : 0);
        out << '\n';
    }
    for (const auto& f : p.faces()) {
        out << f.vertices.size();
        for (std::size_t i : f.vertices) out << ' ' << i;
        out << '\n';
    }
}

namespace {

BernsteinReport bernstein_from(const std::vector<QPoly>& eqs, const DispersionSystem& sys)
{
    std::vector<std::size_t> vars = sys.z_indices();
    vars.push_back(sys.ring->require(kLambda));
    BernsteinReport r;
    for (const auto& f : eqs) {
        if (f.is_zero()) {
            r.polytopes.clear();
            r.mixed_volume = 0;
            r.bound = 0;
            return r;
        }
        r.polytopes.push_back(newton_polytope(f, vars));
    }
    r.mixed_volume = mixed_volume(r.polytopes);
    if (r.mixed_volume.get_den() == 1) r.bound = r.mixed_volume.get_num().get_ui();
    return r;
}

}  // namespace

BernsteinReport bernstein_bound(const DispersionSystem& sys)
{
    return bernstein_from({sys.f.begin(), sys.f.begin() + 1 + sys.dimension}, sys);
}

BernsteinReport bernstein_bound(const DispersionSystem& sys, std::span<const long> alpha)
{
    if (alpha.size() != sys.params.size()) throw std::invalid_argument("parameter arity mismatch");
    std::map<std::string, mpq_class> bind;
    for (std::size_t i = 0; i < alpha.size(); ++i) bind[sys.params[i]] = mpq_class(alpha[i]);
    std::vector<QPoly> eqs;
    for (int i = 0; i <= sys.dimension; ++i) eqs.push_back(specialize(sys.f[i], bind));
    return bernstein_from(eqs, sys);
}

}  // namespace bloch
