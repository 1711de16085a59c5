#pragma once

// Buchberger's algorithm (sugar strategy, Gebauer-Moeller criteria) under the
// graded reverse lexicographic order induced by the ring's variable order.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bloch/poly.hpp"

namespace bloch {

enum class Answer { yes, no, inconclusive };

std::string to_string(Answer a);

struct GroebnerOptions {
    std::size_t budget = 200000;  ///< maximum number of S-pair reductions
    std::ostream* trace = nullptr;
    std::size_t trace_every = 500;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : std::runtime_error("Groebner budget of " + std::to_string(budget) + " pair reductions exceeded")
    {
    }
};

template <class Field>
class Ideal {
public:
    Ideal(RingPtr<Field> ring, std::vector<Poly<Field>> generators)
        : ring_(std::move(ring)), generators_(std::move(generators))
    {
        for (const auto& g : generators_) {
            if (g.is_zero()) throw std::invalid_argument("ideal generators must be nonzero");
            if (!(*g.ring() == *ring_)) throw std::invalid_argument("generator lives in a different ring");
            if (!g.is_polynomial()) throw std::invalid_argument("ideal generators must be polynomials");
        }
    }

    const RingPtr<Field>& ring() const { return ring_; }
    const std::vector<Poly<Field>>& generators() const { return generators_; }

private:
    RingPtr<Field> ring_;
    std::vector<Poly<Field>> generators_;
};

struct GroebnerStats {
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t pairs_skipped = 0;  ///< discarded by the Buchberger criteria
    std::size_t max_basis = 0;
    double seconds = 0.0;
};

template <class Field>
struct GroebnerBasis {
    RingPtr<Field> ring;
    std::vector<Poly<Field>> elements;  ///< reduced, monic, ascending leading monomials
    GroebnerStats stats;

    bool is_one() const { return elements.size() == 1 && elements.front().is_constant(); }
    std::vector<Exponent> leading_exponents() const;
};

/// Maximum number of ring variables the packed monomial engine supports.
inline constexpr std::size_t kMaxGroebnerVars = 8;

template <class Field>
GroebnerBasis<Field> buchberger(const Ideal<Field>& ideal, const GroebnerOptions& options = {});

template <class Field>
Answer contains_one(const Ideal<Field>& ideal, const GroebnerOptions& options = {});

/// Dimension of R/I as a vector space; nullopt encodes an infinite-dimensional quotient.
using QuotientDimension = std::optional<std::uint64_t>;

template <class Field>
QuotientDimension quotient_dimension(const GroebnerBasis<Field>& basis);

/// Counts monomials outside the monomial ideal generated by `leading`.
QuotientDimension count_standard_monomials(const std::vector<Exponent>& leading, std::size_t nvars);

/// Monomials outside the leading-term ideal in ascending grevlex order; nullopt when infinitely many.
template <class Field>
std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis<Field>& basis);

/// Whether f is invertible in R/I, decided by the rank of multiplication by f on the
/// standard monomials; equivalently whether 1 lies in I + <f>. nullopt for infinite quotients.
template <class Field>
std::optional<bool> is_unit_modulo(const GroebnerBasis<Field>& basis, const Poly<Field>& f);

/// Leading exponent under grevlex; throws on the zero polynomial.
template <class Field>
Exponent leading_exponent(const Poly<Field>& p)
{
    if (p.is_zero()) throw std::domain_error("leading term of zero polynomial");
    const Exponent* best = nullptr;
    for (const auto& [e, c] : p.terms())
        if (!best || grevlex_greater(e, *best)) best = &e;
    return *best;
}

/// Reference S-polynomial, written directly on the map-based representation.
template <class Field>
Poly<Field> s_polynomial(const Poly<Field>& f, const Poly<Field>& g)
{
    const Exponent lf = leading_exponent(f), lg = leading_exponent(g);
    Exponent l(lf.size()), mf(lf.size()), mg(lf.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        l[i] = std::max(lf[i], lg[i]);
        mf[i] = l[i] - lf[i];
        mg[i] = l[i] - lg[i];
    }
    const auto& F = f.field();
    return f.shifted(mf).scaled(F.inv(f.coefficient(lf))) - g.shifted(mg).scaled(F.inv(g.coefficient(lg)));
}

/// Reference full normal form of p by the divisors, in the order given.
template <class Field>
Poly<Field> normal_form(Poly<Field> p, const std::vector<Poly<Field>>& divisors)
{
    const auto& F = p.field();
    std::vector<std::pair<Exponent, typename Field::value_type>> leads;
    for (const auto& d : divisors) {
        Exponent e = leading_exponent(d);
        leads.emplace_back(e, d.coefficient(e));
    }
    Poly<Field> rem(p.ring());
    while (!p.is_zero()) {
        const Exponent lp = leading_exponent(p);
        const auto cp = p.coefficient(lp);
        bool reduced = false;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            const auto& [ld, cd] = leads[k];
            bool divides = true;
            for (std::size_t i = 0; i < lp.size() && divides; ++i) divides = ld[i] <= lp[i];
            if (!divides) continue;
            Exponent q(lp.size());
            for (std::size_t i = 0; i < q.size(); ++i) q[i] = lp[i] - ld[i];
            p -= divisors[k].shifted(q).scaled(F.mul(cp, F.inv(cd)));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lp, cp);
            p -= Poly<Field>::monomial(p.ring(), lp, cp);
        }
    }
    return rem;
}

extern template GroebnerBasis<Rationals> buchberger(const Ideal<Rationals>&, const GroebnerOptions&);
extern template GroebnerBasis<PrimeField> buchberger(const Ideal<PrimeField>&, const GroebnerOptions&);

}  // namespace bloch
