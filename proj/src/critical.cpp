#include "bloch/critical.hpp"

#include <chrono>
#include <random>

namespace bloch {

std::vector<std::size_t> DispersionSystem::z_indices() const
{
    std::vector<std::size_t> out;
    for (int i = 0; i < dimension; ++i) out.push_back(static_cast<std::size_t>(1 + i));
    return out;
}

std::vector<std::size_t> DispersionSystem::param_indices() const
{
    std::vector<std::size_t> out;
    for (const auto& p : params) out.push_back(ring->require(p));
    return out;
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::nondegenerate_certified: return "nondegenerate-certified";
    case Status::degenerate_witnessed: return "degenerate-witnessed";
    case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

DispersionSystem build_system(const SymbolMatrix& s)
{
    if (s.size() != 2) throw std::invalid_argument("dispersion system needs a 2x2 symbol");
    const auto [t, d] = trace_det(s);
    const int n = s.dimension;
    const QPoly lambda = QPoly::variable(s.ring, kLambda);
    const auto z = s.z_indices();

    DispersionSystem sys{s.ring, n, s.params, {}, {}, {}};
    sys.g.push_back(lambda * lambda - lambda * t + d);
    for (int j = 0; j < n; ++j) sys.g.push_back(lambda * partial(t, z[j]) - partial(d, z[j]));

    PolyMatrix<Rationals> hess(n, n, QPoly(s.ring));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            hess(i, j) = lambda * partial(partial(t, z[i]), z[j]) - partial(partial(d, z[i]), z[j]);
    sys.g.push_back(det(hess));

    for (const auto& g : sys.g) {
        auto cleared = clear_denominators(g, std::span<const std::size_t>(z));
        sys.f.push_back(std::move(cleared.numerator));
        sys.multipliers.push_back(std::move(cleared.multiplier));
    }
    return sys;
}

RingPtr<Rationals> saturation_ring(int dimension)
{
    std::vector<std::string> vars{kLambda};
    for (auto& z : z_names(dimension)) vars.push_back(std::move(z));
    for (int i = 1; i <= dimension; ++i) vars.push_back("u" + std::to_string(i));
    return make_rational_ring(std::move(vars));
}

QPoly specialized_generator(const DispersionSystem& sys, std::span<const long> alpha, std::size_t index)
{
    if (alpha.size() != sys.params.size())
        throw std::invalid_argument("expected " + std::to_string(sys.params.size()) + " parameters, got " +
                                    std::to_string(alpha.size()));
    std::map<std::string, mpq_class> bind;
    for (std::size_t i = 0; i < alpha.size(); ++i) bind[sys.params[i]] = mpq_class(alpha[i]);
    return change_ring(specialize(sys.f.at(index), bind), saturation_ring(sys.dimension));
}

Ideal<Rationals> specialized_ideal(const DispersionSystem& sys, std::span<const long> alpha, bool with_hessian)
{
    const auto ring = saturation_ring(sys.dimension);
    std::vector<QPoly> gens;
    const std::size_t count = with_hessian ? sys.f.size() : sys.f.size() - 1;
    for (std::size_t i = 0; i < count; ++i) {
        QPoly p = specialized_generator(sys, alpha, i);
        if (!p.is_zero()) gens.push_back(std::move(p));
    }
    for (int j = 1; j <= sys.dimension; ++j) {
        const std::string zj = "z" + std::to_string(j), uj = "u" + std::to_string(j);
        gens.push_back(QPoly::variable(ring, zj) * QPoly::variable(ring, uj) - QPoly::integer(ring, 1));
    }
    return Ideal<Rationals>(ring, std::move(gens));
}

namespace {

Ideal<PrimeField> reduce_ideal(const Ideal<Rationals>& ideal, std::uint32_t prime)
{
    auto ring = make_ring(PrimeField(prime), ideal.ring()->vars());
    std::vector<FpPoly> gens;
    for (const auto& g : ideal.generators()) {
        FpPoly r = reduce_mod(g, ring);
        if (!r.is_zero()) gens.push_back(std::move(r));
    }
    return Ideal<PrimeField>(ring, std::move(gens));
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

DegeneracyVerdict degeneracy_test(const DispersionSystem& sys, std::span<const long> alpha, const TestOptions& options)
{
    const auto t0 = std::chrono::steady_clock::now();
    DegeneracyVerdict v;
    v.alpha.assign(alpha.begin(), alpha.end());
    const Ideal<Rationals> ideal = specialized_ideal(sys, alpha, true);

    auto finish = [&](Status s, std::string field, std::string evidence) {
        v.status = s;
        v.field = std::move(field);
        v.evidence = std::move(evidence);
        v.seconds = seconds_since(t0);
        return v;
    };
    auto budget_note = [&] { return "budget of " + std::to_string(options.groebner.budget) + " pair reductions exhausted"; };

    if (options.policy != FieldPolicy::rational) {
        const PrimeField fp(options.prime);
        const Answer a = contains_one(reduce_ideal(ideal, options.prime), options.groebner);
        if (a == Answer::inconclusive) return finish(Status::inconclusive, fp.name(), budget_note());
        if (a == Answer::no) return finish(Status::degenerate_witnessed, fp.name(), "proper ideal (no 1 in basis)");
        if (options.policy == FieldPolicy::prime)
            return finish(Status::nondegenerate_certified, fp.name(), "basis is {1} (modular, uncertified)");
    }

    // 1 in J + <f_hess> iff f_hess is a unit modulo J.
    std::optional<bool> unit;
    try {
        const auto basis = buchberger(specialized_ideal(sys, alpha, false), options.groebner);
        unit = is_unit_modulo(basis, specialized_generator(sys, alpha, sys.f.size() - 1));
    } catch (const BudgetExceeded&) {
        return finish(Status::inconclusive, Rationals::name(), budget_note());
    }
    if (unit && *unit) return finish(Status::nondegenerate_certified, Rationals::name(), "basis is {1} (Hessian unit modulo critical ideal)");
    if (unit) {
        v.unlucky_prime = options.policy == FieldPolicy::screened;
        return finish(Status::degenerate_witnessed, Rationals::name(), "proper ideal (Hessian vanishes at a critical point)");
    }

    const Answer a = contains_one(ideal, options.groebner);
    if (a == Answer::inconclusive) return finish(Status::inconclusive, Rationals::name(), budget_note());
    if (a == Answer::yes) return finish(Status::nondegenerate_certified, Rationals::name(), "basis is {1}");
    v.unlucky_prime = options.policy == FieldPolicy::screened;
    return finish(Status::degenerate_witnessed, Rationals::name(), "proper ideal (no 1 in basis)");
}

std::vector<std::vector<long>> draw_parameters(std::size_t count, std::size_t arity, std::uint64_t seed,
                                               SampleRange range)
{
    if (range.lo > range.hi) throw std::invalid_argument("empty sampling range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(range.lo, range.hi);
    std::vector<std::vector<long>> out(count, std::vector<long>(arity));
    for (auto& a : out)
        for (auto& x : a) x = dist(rng);
    return out;
}

namespace {

void summarize(SampleSummary& s)
{
    for (const auto& v : s.verdicts) {
        switch (v.status) {
        case Status::nondegenerate_certified: ++s.certified; break;
        case Status::degenerate_witnessed: ++s.witnessed; break;
        case Status::inconclusive: ++s.inconclusive; break;
        }
    }
    if (s.certified > s.witnessed && s.certified > s.inconclusive)
        s.majority = Status::nondegenerate_certified;
    else if (s.witnessed > s.certified && s.witnessed > s.inconclusive)
        s.majority = Status::degenerate_witnessed;
    else
        s.majority = Status::inconclusive;
}

}  // namespace

SampleSummary sample_test_serial(const DispersionSystem& sys, std::size_t trials, std::uint64_t seed,
                                 SampleRange range, const TestOptions& options)
{
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    const auto draws = draw_parameters(trials, sys.params.size(), seed, range);
    SampleSummary s;
    for (const auto& a : draws) s.verdicts.push_back(degeneracy_test(sys, a, options));
    summarize(s);
    return s;
}

SampleSummary sample_test(const DispersionSystem& sys, std::size_t trials, std::uint64_t seed, SampleRange range,
                          const TestOptions& options)
{
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    const auto draws = draw_parameters(trials, sys.params.size(), seed, range);
    SampleSummary s;
    s.verdicts.resize(trials);
    const long n = static_cast<long>(trials);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) s.verdicts[i] = degeneracy_test(sys, draws[i], options);
    summarize(s);
    return s;
}

CriticalCount count_critical_points(const DispersionSystem& sys, std::span<const long> alpha, const TestOptions& options)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Ideal<Rationals> ideal = specialized_ideal(sys, alpha, false);
    CriticalCount out;
    try {
        if (options.policy == FieldPolicy::prime) {
            out.field = PrimeField(options.prime).name();
            out.count = quotient_dimension(buchberger(reduce_ideal(ideal, options.prime), options.groebner));
        } else {
            out.field = Rationals::name();
            out.count = quotient_dimension(buchberger(ideal, options.groebner));
        }
    } catch (const BudgetExceeded&) {
        out.count.reset();
    }
    out.seconds = seconds_since(t0);
    return out;
}

}  // namespace bloch
