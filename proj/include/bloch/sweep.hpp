#pragma once

// Exhaustive degeneracy census over all edge subsets of a periodic graph.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bloch/critical.hpp"
#include "bloch/graph.hpp"

namespace bloch {

using Mask = std::uint32_t;

enum class SubsetClass { degenerate, nondegenerate, unresolved, mixed };
std::string to_string(SubsetClass c);

struct SubsetRecord {
    Mask mask = 0;
    std::vector<DegeneracyVerdict> trials;
    SubsetClass verdict = SubsetClass::unresolved;
    bool connected = false;
    /// Rational recomputation of the first trial, run for boundary subsets only.
    std::optional<DegeneracyVerdict> confirmation;
    /// For mixed subsets: fresh trials drawn from SweepOptions::resample_range.
    std::vector<DegeneracyVerdict> resample;

    bool degenerate() const { return verdict == SubsetClass::degenerate; }
};

struct SweepOptions {
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    SampleRange range{1, 50};
    TestOptions test{FieldPolicy::prime, kDefaultPrime, {}};
    bool confirm_boundary = true;
    /// Mixed subsets are redrawn here, where landing on a proper degeneracy locus is unlikely.
    SampleRange resample_range{1, 1000000};
};

struct SweepResult {
    std::vector<SubsetRecord> subsets;  ///< indexed by mask
    std::vector<Mask> dsg;              ///< ascending
    std::vector<Mask> maximal;
    std::vector<Mask> unresolved;
    std::vector<Mask> mixed;
    std::vector<Mask> mixed_unexplained;  ///< mixed subsets whose resample is not all certified
    std::vector<Mask> disconnected;
    std::vector<Mask> maximal_disconnected;
    std::vector<Mask> confirmed;  ///< boundary subsets rechecked over Q
    std::size_t unlucky = 0;      ///< confirmations that overturned the modular verdict
    double seconds = 0.0;
};

/// Tests every subset of the edge classes (at most 20) with seeded parameters per subset.
/// Subsets run in parallel; the result does not depend on the schedule.
/// Throws std::logic_error when the degenerate family is not downward closed.
SweepResult run_sweep(const PeriodicGraph& g, const SweepOptions& options = {});
SweepResult run_sweep_serial(const PeriodicGraph& g, const SweepOptions& options = {});

/// Seed of the parameter draws for one subset.
std::uint64_t subset_seed(std::uint64_t seed, Mask mask);

/// Members with no proper superset in the family, by popcount then value.
std::vector<Mask> maximal_elements(std::span<const Mask> family);

/// nullopt if the family is closed under taking subsets, else (T, S) with T a missing facet of S.
std::optional<std::pair<Mask, Mask>> check_simplicial(std::span<const Mask> family);

/// Edge indices in the mask, ascending.
std::vector<std::size_t> mask_members(Mask m);

}  // namespace bloch
