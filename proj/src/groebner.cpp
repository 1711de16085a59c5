#include "bloch/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <ostream>

namespace bloch {

std::string to_string(Answer a)
{
    switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Packed monomial: byte i holds the exponent of variable i. Total degree is
// capped at 127 so bytewise subtraction never borrows.
struct Mono {
    std::uint64_t e = 0;
    std::uint32_t deg = 0;

    friend bool operator==(Mono a, Mono b) { return a.e == b.e; }
};

constexpr std::uint64_t kHighBits = 0x8080808080808080ull;
constexpr std::uint32_t kMaxDegree = 127;

inline bool greater(Mono a, Mono b) { return a.deg != b.deg ? a.deg > b.deg : a.e < b.e; }

inline bool divides(Mono a, Mono b)
{
    return a.deg <= b.deg && (((b.e | kHighBits) - a.e) & kHighBits) == kHighBits;
}

inline Mono mul(Mono a, Mono b)
{
    Mono r{a.e + b.e, a.deg + b.deg};
    if (r.deg > kMaxDegree) throw std::overflow_error("monomial degree exceeds engine limit");
    return r;
}

inline Mono quotient(Mono b, Mono a) { return {b.e - a.e, b.deg - a.deg}; }

inline Mono lcm(Mono a, Mono b)
{
    Mono r;
    for (int i = 0; i < 8; ++i) {
        const std::uint64_t x = (a.e >> (8 * i)) & 0xff, y = (b.e >> (8 * i)) & 0xff;
        const std::uint64_t m = std::max(x, y);
        r.e |= m << (8 * i);
        r.deg += static_cast<std::uint32_t>(m);
    }
    if (r.deg > kMaxDegree) throw std::overflow_error("monomial degree exceeds engine limit");
    return r;
}

inline bool coprime(Mono a, Mono b)
{
    for (int i = 0; i < 8; ++i)
        if (((a.e >> (8 * i)) & 0xff) && ((b.e >> (8 * i)) & 0xff)) return false;
    return true;
}

Mono pack(const Exponent& e)
{
    Mono m;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw std::domain_error("negative exponent in Groebner input");
        m.e |= static_cast<std::uint64_t>(e[i]) << (8 * i);
        m.deg += static_cast<std::uint32_t>(e[i]);
    }
    if (m.deg > kMaxDegree) throw std::overflow_error("monomial degree exceeds engine limit");
    return m;
}

Exponent unpack(Mono m, std::size_t n)
{
    Exponent e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<int>((m.e >> (8 * i)) & 0xff);
    return e;
}

template <class C>
struct Term {
    Mono m;
    C c;
};

template <class C>
using Terms = std::vector<Term<C>>;

// Coefficient policy over GF(p): elements kept monic.
struct ModularOps {
    using Field = PrimeField;
    using C = std::uint32_t;
    PrimeField f;

    explicit ModularOps(const PrimeField& field) : f(field) {}

    Terms<C> from_poly(const Poly<PrimeField>& p) const
    {
        Terms<C> t;
        for (const auto& [e, c] : p.terms()) t.push_back({pack(e), c});
        return t;
    }

    void canonicalize(Terms<C>& p) const
    {
        if (p.empty() || p.front().c == 1) return;
        const C inv = f.inv(p.front().c);
        for (auto& t : p) t.c = f.mul(t.c, inv);
    }

    // out = p[start+1..] - lc(p) * q * g[1..]; g is monic and cancels the lead.
    void eliminate(const Terms<C>& p, std::size_t start, const Terms<C>& g, Mono q, Terms<C>& tail,
                   Terms<C>& out) const
    {
        (void)tail;
        const C scale = f.neg(p[start].c);
        out.clear();
        std::size_t i = start + 1, j = 1;
        while (i < p.size() || j < g.size()) {
            if (j >= g.size()) {
                out.push_back(p[i++]);
                continue;
            }
            const Mono gm = mul(g[j].m, q);
            if (i < p.size() && greater(p[i].m, gm)) {
                out.push_back(p[i++]);
            } else if (i < p.size() && p[i].m == gm) {
                const C c = f.add(p[i].c, f.mul(scale, g[j].c));
                if (c) out.push_back({gm, c});
                ++i, ++j;
            } else {
                out.push_back({gm, f.mul(scale, g[j].c)});
                ++j;
            }
        }
    }

    Terms<C> spoly(const Terms<C>& a, const Terms<C>& b, Mono l) const
    {
        const Mono qa = quotient(l, a.front().m), qb = quotient(l, b.front().m);
        Terms<C> out;
        std::size_t i = 1, j = 1;
        while (i < a.size() || j < b.size()) {
            const bool hasA = i < a.size(), hasB = j < b.size();
            const Mono ma = hasA ? mul(a[i].m, qa) : Mono{}, mb = hasB ? mul(b[j].m, qb) : Mono{};
            if (hasA && (!hasB || greater(ma, mb))) {
                out.push_back({ma, a[i++].c});
            } else if (hasB && (!hasA || greater(mb, ma))) {
                out.push_back({mb, f.neg(b[j++].c)});
            } else {
                const C c = f.sub(a[i].c, b[j].c);
                if (c) out.push_back({ma, c});
                ++i, ++j;
            }
        }
        return out;
    }

    void control_growth(Terms<C>&, std::size_t, Terms<C>&) const {}

    bool nonsingular(std::vector<std::vector<C>> m) const
    {
        const std::size_t n = m.size();
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m[piv][col] == 0) ++piv;
            if (piv == n) return false;
            std::swap(m[col], m[piv]);
            const C inv = f.inv(m[col][col]);
            for (std::size_t r = col + 1; r < n; ++r) {
                if (m[r][col] == 0) continue;
                const C s = f.neg(f.mul(m[r][col], inv));
                for (std::size_t c = col; c < n; ++c) m[r][c] = f.add(m[r][c], f.mul(s, m[col][c]));
            }
        }
        return true;
    }

    Poly<PrimeField> to_poly(const Terms<C>& t, const RingPtr<PrimeField>& ring) const
    {
        Poly<PrimeField> p(ring);
        const C inv = t.empty() ? 1 : f.inv(t.front().c);
        for (const auto& x : t) p.add_term(unpack(x.m, ring->nvars()), f.mul(x.c, inv));
        return p;
    }
};

// Coefficient policy over Q: fraction-free integer arithmetic, elements kept primitive.
struct IntegerOps {
    using Field = Rationals;
    using C = mpz_class;

    explicit IntegerOps(const Rationals&) {}

    Terms<C> from_poly(const Poly<Rationals>& p) const
    {
        mpz_class den = 1;
        for (const auto& [e, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        Terms<C> t;
        for (const auto& [e, c] : p.terms()) {
            mpz_class v = c.get_num() * (den / c.get_den());
            t.push_back({pack(e), std::move(v)});
        }
        return t;
    }

    static void divide_content(Terms<C>& p, std::size_t start, Terms<C>* extra)
    {
        mpz_class g = 0;
        for (std::size_t i = start; i < p.size() && g != 1; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p[i].c.get_mpz_t());
        if (extra)
            for (std::size_t i = 0; i < extra->size() && g != 1; ++i)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), (*extra)[i].c.get_mpz_t());
        if (g == 0 || g == 1) return;
        for (std::size_t i = start; i < p.size(); ++i) mpz_divexact(p[i].c.get_mpz_t(), p[i].c.get_mpz_t(), g.get_mpz_t());
        if (extra)
            for (auto& t : *extra) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    }

    void canonicalize(Terms<C>& p) const
    {
        if (p.empty()) return;
        divide_content(p, 0, nullptr);
        if (p.front().c < 0)
            for (auto& t : p) t.c = -t.c;
    }

    // out = a*p[start+1..] - b*q*g[1..] with a = lc(g)/d, b = lc(p)/d; tail *= a.
    void eliminate(const Terms<C>& p, std::size_t start, const Terms<C>& g, Mono q, Terms<C>& tail,
                   Terms<C>& out) const
    {
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), p[start].c.get_mpz_t(), g.front().c.get_mpz_t());
        mpz_class a = g.front().c / d, b = p[start].c / d;
        const bool unitA = a == 1;
        if (!unitA)
            for (auto& t : tail) t.c *= a;
        out.clear();
        std::size_t i = start + 1, j = 1;
        mpz_class tmp;
        while (i < p.size() || j < g.size()) {
            if (j >= g.size()) {
                out.push_back({p[i].m, unitA ? p[i].c : mpz_class(p[i].c * a)});
                ++i;
                continue;
            }
            const Mono gm = mul(g[j].m, q);
            if (i < p.size() && greater(p[i].m, gm)) {
                out.push_back({p[i].m, unitA ? p[i].c : mpz_class(p[i].c * a)});
                ++i;
            } else if (i < p.size() && p[i].m == gm) {
                tmp = p[i].c * a;
                tmp -= b * g[j].c;
                if (sgn(tmp) != 0) out.push_back({gm, tmp});
                ++i, ++j;
            } else {
                out.push_back({gm, mpz_class(-b * g[j].c)});
                ++j;
            }
        }
    }

    Terms<C> spoly(const Terms<C>& x, const Terms<C>& y, Mono l) const
    {
        const Mono qx = quotient(l, x.front().m), qy = quotient(l, y.front().m);
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), x.front().c.get_mpz_t(), y.front().c.get_mpz_t());
        const mpz_class a = y.front().c / d, b = x.front().c / d;
        Terms<C> out;
        std::size_t i = 1, j = 1;
        while (i < x.size() || j < y.size()) {
            const bool hasX = i < x.size(), hasY = j < y.size();
            const Mono mx = hasX ? mul(x[i].m, qx) : Mono{}, my = hasY ? mul(y[j].m, qy) : Mono{};
            if (hasX && (!hasY || greater(mx, my))) {
                out.push_back({mx, a * x[i++].c});
            } else if (hasY && (!hasX || greater(my, mx))) {
                out.push_back({my, -b * y[j++].c});
            } else {
                mpz_class c = a * x[i].c - b * y[j].c;
                if (sgn(c) != 0) out.push_back({mx, std::move(c)});
                ++i, ++j;
            }
        }
        return out;
    }

    void control_growth(Terms<C>& p, std::size_t start, Terms<C>& tail) const { divide_content(p, start, &tail); }

    // Fraction-free (Bareiss) elimination; every division is exact.
    static bool nonsingular(std::vector<std::vector<C>> m)
    {
        const std::size_t n = m.size();
        mpz_class prev = 1;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            while (piv < n && sgn(m[piv][k]) == 0) ++piv;
            if (piv == n) return false;
            std::swap(m[k], m[piv]);
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                    mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        return true;
    }

    Poly<Rationals> to_poly(const Terms<C>& t, const RingPtr<Rationals>& ring) const
    {
        Poly<Rationals> p(ring);
        if (t.empty()) return p;
        const mpz_class& lead = t.front().c;
        for (const auto& x : t) {
            mpq_class q(x.c, lead);
            q.canonicalize();
            p.add_term(unpack(x.m, ring->nvars()), q);
        }
        return p;
    }
};

// Full reduction of p; pick(m) returns a polynomial whose leading monomial divides m, or
// null. Over Z the result is a nonzero scalar multiple of the normal form.
template <class Ops, class Pick>
Terms<typename Ops::C> reduce_terms(const Ops& ops, Terms<typename Ops::C> p, Pick pick)
{
    Terms<typename Ops::C> done, buf;
    std::size_t start = 0, steps = 0;
    while (start < p.size()) {
        const Mono lead = p[start].m;
        const auto* reducer = pick(lead);
        if (!reducer) {
            done.push_back(std::move(p[start]));
            ++start;
            continue;
        }
        ops.eliminate(p, start, *reducer, quotient(lead, reducer->front().m), done, buf);
        p.swap(buf);
        start = 0;
        if (++steps % 16 == 0) ops.control_growth(p, 0, done);
    }
    return done;
}

template <class Ops>
class Engine {
public:
    using C = typename Ops::C;
    using Field = typename Ops::Field;

    Engine(const Ideal<Field>& ideal, const GroebnerOptions& options)
        : ops_(ideal.ring()->field()), ring_(ideal.ring()), options_(options)
    {
        if (ring_->nvars() > kMaxGroebnerVars) throw std::invalid_argument("too many variables for Groebner engine");
        if (ideal.generators().empty()) throw std::invalid_argument("ideal has no generators");
    }

    GroebnerBasis<Field> run(const Ideal<Field>& ideal)
    {
        const auto t0 = std::chrono::steady_clock::now();
        GroebnerBasis<Field> out{ring_, {}, {}};

        std::vector<Terms<C>> gens;
        for (const auto& g : ideal.generators()) {
            Terms<C> t = ops_.from_poly(g);
            std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return greater(a.m, b.m); });
            ops_.canonicalize(t);
            gens.push_back(std::move(t));
        }
        std::stable_sort(gens.begin(), gens.end(),
                         [](const auto& a, const auto& b) { return greater(b.front().m, a.front().m); });

        bool unit = false;
        for (auto& g : gens) {
            if (g.front().m.deg == 0) {
                unit = true;
                break;
            }
            std::uint32_t sugar = 0;
            for (const auto& t : g) sugar = std::max(sugar, t.m.deg);
            insert(std::move(g), sugar);
        }

        while (!unit && !pairs_.empty()) {
            const Pair pair = pop_pair();
            if (++stats_.pairs_reduced > options_.budget) throw BudgetExceeded(options_.budget);
            if (options_.trace && stats_.pairs_reduced % options_.trace_every == 0)
                *options_.trace << "groebner: " << stats_.pairs_reduced << " pairs reduced, basis " << active_count()
                                << ", queue " << pairs_.size() << ", sugar " << pair.sugar << '\n';

            Terms<C> h = reduce(ops_.spoly(basis_[pair.i].poly, basis_[pair.j].poly, pair.lcm), -1);
            if (h.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            ops_.canonicalize(h);
            if (h.front().m.deg == 0) {
                unit = true;
                break;
            }
            insert(std::move(h), pair.sugar);
        }

        if (unit) {
            out.elements.push_back(Poly<Field>::constant(ring_, ring_->field().one()));
        } else {
            std::vector<std::size_t> live;
            for (std::size_t k = 0; k < basis_.size(); ++k)
                if (basis_[k].active) live.push_back(k);
            // minimal basis first
            std::erase_if(live, [&](std::size_t a) {
                return std::any_of(live.begin(), live.end(),
                                   [&](std::size_t b) { return b != a && divides(basis_[b].lead, basis_[a].lead); });
            });
            std::sort(live.begin(), live.end(),
                      [&](std::size_t a, std::size_t b) { return greater(basis_[b].lead, basis_[a].lead); });
            std::vector<Terms<C>> reduced;
            for (std::size_t k : live) {
                Terms<C> r = reduce(basis_[k].poly, static_cast<long>(k));
                ops_.canonicalize(r);
                reduced.push_back(std::move(r));
            }
            for (const auto& r : reduced) out.elements.push_back(ops_.to_poly(r, ring_));
        }

        stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.stats = stats_;
        return out;
    }

private:
    struct Element {
        Terms<C> poly;
        Mono lead;
        std::uint32_t sugar;
        bool active;
    };

    struct Pair {
        std::size_t i, j;
        Mono lcm;
        std::uint32_t sugar;
    };

    static bool pair_before(const Pair& a, const Pair& b)
    {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        if (!(a.lcm == b.lcm)) return greater(b.lcm, a.lcm);
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }

    Pair pop_pair()
    {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k)
            if (pair_before(pairs_[k], pairs_[best])) best = k;
        Pair p = pairs_[best];
        pairs_[best] = pairs_.back();
        pairs_.pop_back();
        return p;
    }

    std::size_t active_count() const
    {
        return static_cast<std::size_t>(std::count_if(basis_.begin(), basis_.end(), [](const auto& e) { return e.active; }));
    }

    std::uint32_t pair_sugar(std::size_t i, std::size_t j, Mono l) const
    {
        const auto& a = basis_[i];
        const auto& b = basis_[j];
        return std::max(a.sugar + l.deg - a.lead.deg, b.sugar + l.deg - b.lead.deg);
    }

    // Full reduction by the active basis, skipping element `skip` (or none when negative).
    Terms<C> reduce(Terms<C> p, long skip)
    {
        return reduce_terms(ops_, std::move(p), [&](Mono lead) -> const Terms<C>* {
            for (std::size_t k = 0; k < basis_.size(); ++k)
                if (basis_[k].active && static_cast<long>(k) != skip && divides(basis_[k].lead, lead)) return &basis_[k].poly;
            return nullptr;
        });
    }

    // Gebauer-Moeller update followed by insertion of h into the basis.
    void insert(Terms<C> h, std::uint32_t sugar)
    {
        const std::size_t hi = basis_.size();
        const Mono lh = h.front().m;
        basis_.push_back({std::move(h), lh, sugar, true});

        struct Cand {
            std::size_t g;
            Mono lcm;
            bool coprime;
            bool keep;
        };
        std::vector<Cand> cands;
        for (std::size_t g = 0; g < hi; ++g)
            if (basis_[g].active) cands.push_back({g, lcm(lh, basis_[g].lead), coprime(lh, basis_[g].lead), false});

        // Chain criterion among the new pairs: C holds indices still undecided, D those kept.
        std::vector<bool> decided(cands.size(), false);
        for (std::size_t a = 0; a < cands.size(); ++a) {
            decided[a] = true;
            bool keep = cands[a].coprime;
            if (!keep) {
                keep = true;
                for (std::size_t b = 0; b < cands.size(); ++b) {
                    if (b == a) continue;
                    const bool inPool = !decided[b] || cands[b].keep;
                    if (inPool && divides(cands[b].lcm, cands[a].lcm)) {
                        keep = false;
                        break;
                    }
                }
            }
            cands[a].keep = keep;
        }

        // Old pairs made redundant by h.
        std::vector<Pair> kept;
        kept.reserve(pairs_.size());
        for (const Pair& p : pairs_) {
            if (divides(lh, p.lcm) && !(lcm(basis_[p.i].lead, lh) == p.lcm) && !(lcm(basis_[p.j].lead, lh) == p.lcm)) {
                ++stats_.pairs_skipped;
                continue;
            }
            kept.push_back(p);
        }
        pairs_.swap(kept);

        for (const Cand& c : cands) {
            if (!c.keep || c.coprime) {
                ++stats_.pairs_skipped;
                continue;
            }
            pairs_.push_back({c.g, hi, c.lcm, pair_sugar(c.g, hi, c.lcm)});
        }

        for (std::size_t g = 0; g < hi; ++g)
            if (basis_[g].active && divides(lh, basis_[g].lead)) basis_[g].active = false;
        stats_.max_basis = std::max(stats_.max_basis, active_count());
    }

    Ops ops_;
    RingPtr<Field> ring_;
    GroebnerOptions options_;
    std::vector<Element> basis_;
    std::vector<Pair> pairs_;
    GroebnerStats stats_;
};

template <class Field>
struct OpsFor;
template <>
struct OpsFor<Rationals> {
    using type = IntegerOps;
};
template <>
struct OpsFor<PrimeField> {
    using type = ModularOps;
};

std::uint64_t count_rec(const std::vector<Exponent>& leads, std::size_t var, std::size_t nvars)
{
    for (const auto& e : leads)
        if (std::all_of(e.begin() + static_cast<long>(var), e.end(), [](int x) { return x == 0; })) return 0;
    if (var == nvars) return 1;
    std::uint64_t total = 0;
    for (int level = 0;; ++level) {
        std::vector<Exponent> sub;
        bool blocked = false;
        for (const auto& e : leads) {
            if (e[var] > level) continue;
            if (std::all_of(e.begin() + static_cast<long>(var) + 1, e.end(), [](int x) { return x == 0; })) {
                blocked = true;
                break;
            }
            sub.push_back(e);
        }
        if (blocked) break;
        total += count_rec(sub, var + 1, nvars);
    }
    return total;
}

}  // namespace

template <class Field>
std::vector<Exponent> GroebnerBasis<Field>::leading_exponents() const
{
    std::vector<Exponent> out;
    for (const auto& e : elements) out.push_back(leading_exponent(e));
    return out;
}

template struct GroebnerBasis<Rationals>;
template struct GroebnerBasis<PrimeField>;

template <class Field>
GroebnerBasis<Field> buchberger(const Ideal<Field>& ideal, const GroebnerOptions& options)
{
    Engine<typename OpsFor<Field>::type> engine(ideal, options);
    return engine.run(ideal);
}

template GroebnerBasis<Rationals> buchberger(const Ideal<Rationals>&, const GroebnerOptions&);
template GroebnerBasis<PrimeField> buchberger(const Ideal<PrimeField>&, const GroebnerOptions&);

template <class Field>
Answer contains_one(const Ideal<Field>& ideal, const GroebnerOptions& options)
{
    try {
        return buchberger(ideal, options).is_one() ? Answer::yes : Answer::no;
    } catch (const BudgetExceeded&) {
        return Answer::inconclusive;
    }
}

template Answer contains_one(const Ideal<Rationals>&, const GroebnerOptions&);
template Answer contains_one(const Ideal<PrimeField>&, const GroebnerOptions&);

QuotientDimension count_standard_monomials(const std::vector<Exponent>& leading, std::size_t nvars)
{
    for (std::size_t v = 0; v < nvars; ++v) {
        bool pure = false;
        for (const auto& e : leading) {
            bool only = e[v] > 0;
            for (std::size_t w = 0; w < nvars && only; ++w)
                if (w != v && e[w] != 0) only = false;
            if (only || std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) pure = true;
        }
        if (!pure) return std::nullopt;
    }
    return count_rec(leading, 0, nvars);
}

template <class Field>
QuotientDimension quotient_dimension(const GroebnerBasis<Field>& basis)
{
    return count_standard_monomials(basis.leading_exponents(), basis.ring->nvars());
}

template <class Field>
std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis<Field>& basis)
{
    const std::size_t n = basis.ring->nvars();
    const auto leads = basis.leading_exponents();
    if (!count_standard_monomials(leads, n)) return std::nullopt;
    auto standard = [&](const Exponent& e) {
        return std::none_of(leads.begin(), leads.end(), [&](const Exponent& l) {
            for (std::size_t i = 0; i < n; ++i)
                if (l[i] > e[i]) return false;
            return true;
        });
    };
    // The standard set is an order ideal, so growing it one variable step at a time reaches all of it.
    std::vector<Exponent> out;
    std::set<Exponent> seen;
    std::vector<Exponent> frontier;
    if (standard(Exponent(n, 0))) frontier.push_back(Exponent(n, 0));
    while (!frontier.empty()) {
        Exponent e = frontier.back();
        frontier.pop_back();
        if (!seen.insert(e).second) continue;
        out.push_back(e);
        for (std::size_t i = 0; i < n; ++i) {
            ++e[i];
            if (!seen.count(e) && standard(e)) frontier.push_back(e);
            --e[i];
        }
    }
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) { return grevlex_greater(b, a); });
    return out;
}

template std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis<Rationals>&);
template std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis<PrimeField>&);

template <class Field>
std::optional<bool> is_unit_modulo(const GroebnerBasis<Field>& basis, const Poly<Field>& f)
{
    if (f.ring()->vars() != basis.ring->vars()) throw std::invalid_argument("polynomial and basis live in different rings");
    if (basis.is_one()) return true;
    const auto monos = standard_monomials(basis);
    if (!monos) return std::nullopt;
    if (basis.ring->nvars() > kMaxGroebnerVars) throw std::invalid_argument("too many variables for Groebner engine");

    using Ops = typename OpsFor<Field>::type;
    using C = typename Ops::C;
    const Ops ops(basis.ring->field());
    std::vector<Terms<C>> reducers;
    for (const auto& g : basis.elements) {
        Terms<C> t = ops.from_poly(g);
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return greater(a.m, b.m); });
        reducers.push_back(std::move(t));
    }
    auto pick = [&](Mono lead) -> const Terms<C>* {
        for (const auto& r : reducers)
            if (divides(r.front().m, lead)) return &r;
        return nullptr;
    };

    std::map<std::uint64_t, std::size_t> column;
    std::vector<Mono> packed;
    for (const auto& e : *monos) {
        packed.push_back(pack(e));
        column[packed.back().e] = column.size();
    }

    Terms<C> base = ops.from_poly(f);
    std::sort(base.begin(), base.end(), [](const auto& a, const auto& b) { return greater(a.m, b.m); });
    base = reduce_terms(ops, std::move(base), pick);

    // Row k holds the normal form of f * m_k up to a nonzero scalar; rank is unaffected.
    std::vector<std::vector<C>> rows(packed.size(), std::vector<C>(packed.size(), C(0)));
    for (std::size_t k = 0; k < packed.size(); ++k) {
        Terms<C> t = base;
        for (auto& x : t) x.m = mul(x.m, packed[k]);
        for (const auto& x : reduce_terms(ops, std::move(t), pick)) rows[k][column.at(x.m.e)] = x.c;
    }
    return ops.nonsingular(std::move(rows));
}

template std::optional<bool> is_unit_modulo(const GroebnerBasis<Rationals>&, const Poly<Rationals>&);
template std::optional<bool> is_unit_modulo(const GroebnerBasis<PrimeField>&, const Poly<PrimeField>&);

template QuotientDimension quotient_dimension(const GroebnerBasis<Rationals>&);
template QuotientDimension quotient_dimension(const GroebnerBasis<PrimeField>&);

}  // namespace bloch
