#pragma once

// Polynomial systems for critical points of the dispersion relation of a
// two-band symbol, and the randomized degeneracy test built on them.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bloch/groebner.hpp"
#include "bloch/symbol.hpp"

namespace bloch {

/// g[0] = lambda^2 - lambda T + D, g[1..n] = lambda dT/dz_j - dD/dz_j,
/// g[n+1] = det(lambda d2T/dz_i dz_j - d2D/dz_i dz_j); f = numerators of g.
struct DispersionSystem {
    RingPtr<Rationals> ring;  ///< lambda, z1..zn, params
    int dimension = 0;
    std::vector<std::string> params;
    std::vector<QPoly> g;
    std::vector<QPoly> f;
    std::vector<Exponent> multipliers;

    const QPoly& characteristic() const { return f.front(); }
    std::span<const QPoly> gradient() const { return {f.data() + 1, static_cast<std::size_t>(dimension)}; }
    const QPoly& hessian() const { return f.back(); }
    std::vector<std::size_t> z_indices() const;
    std::vector<std::size_t> param_indices() const;
};

DispersionSystem build_system(const SymbolMatrix& s);

enum class Status { nondegenerate_certified, degenerate_witnessed, inconclusive };

std::string to_string(Status s);

/// rational: Buchberger over Q only. prime: over GF(p) only (no certificate).
/// screened: GF(p) first, then Q to confirm any "contains 1".
enum class FieldPolicy { rational, prime, screened };

struct TestOptions {
    FieldPolicy policy = FieldPolicy::screened;
    std::uint32_t prime = kDefaultPrime;
    GroebnerOptions groebner;
};

struct DegeneracyVerdict {
    Status status = Status::inconclusive;
    std::string field;     ///< field of the deciding computation
    std::string evidence;  ///< "basis is {1}", "proper ideal", budget note, ...
    std::vector<long> alpha;
    double seconds = 0.0;
    bool unlucky_prime = false;  ///< GF(p) and Q disagreed
};

/// Ring lambda, z1..zn, u1..un used for the specialized ideals.
RingPtr<Rationals> saturation_ring(int dimension);

/// f[index] at alpha, moved into the saturation ring.
QPoly specialized_generator(const DispersionSystem& sys, std::span<const long> alpha, std::size_t index);

/// Specialized f's plus z_j u_j - 1, with identically zero polynomials dropped.
Ideal<Rationals> specialized_ideal(const DispersionSystem& sys, std::span<const long> alpha, bool with_hessian);

DegeneracyVerdict degeneracy_test(const DispersionSystem& sys, std::span<const long> alpha,
                                  const TestOptions& options = {});

struct SampleRange {
    long lo = 1;
    long hi = 50;
};

/// Parameter points drawn uniformly from the range with a seeded mt19937_64.
std::vector<std::vector<long>> draw_parameters(std::size_t count, std::size_t arity, std::uint64_t seed,
                                               SampleRange range);

struct SampleSummary {
    std::vector<DegeneracyVerdict> verdicts;
    std::size_t certified = 0;
    std::size_t witnessed = 0;
    std::size_t inconclusive = 0;
    Status majority = Status::inconclusive;
};

/// Runs degeneracy_test on `trials` seeded draws. Trials run in parallel.
SampleSummary sample_test(const DispersionSystem& sys, std::size_t trials, std::uint64_t seed, SampleRange range,
                          const TestOptions& options = {});

/// Same draws, one after another.
SampleSummary sample_test_serial(const DispersionSystem& sys, std::size_t trials, std::uint64_t seed,
                                 SampleRange range, const TestOptions& options = {});

struct CriticalCount {
    std::optional<QuotientDimension> count;  ///< nullopt: inconclusive; inner nullopt: infinite
    std::string field;
    double seconds = 0.0;
};

/// dim of the quotient by f_1..f_{n+1} and z_j u_j - 1 at alpha: critical points in (C*)^n x C with multiplicity.
CriticalCount count_critical_points(const DispersionSystem& sys, std::span<const long> alpha,
                                    const TestOptions& options = {});

}  // namespace bloch
