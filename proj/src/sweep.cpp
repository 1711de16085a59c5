#include "bloch/sweep.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <random>
#include <stdexcept>

namespace bloch {

std::string to_string(SubsetClass c)
{
    switch (c) {
    case SubsetClass::degenerate: return "degenerate";
    case SubsetClass::nondegenerate: return "nondegenerate";
    case SubsetClass::unresolved: return "unresolved";
    case SubsetClass::mixed: return "mixed";
    }
    return "?";
}

std::uint64_t subset_seed(std::uint64_t seed, Mask mask)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), mask};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<std::size_t> mask_members(Mask m)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m != 0; ++i, m >>= 1)
        if (m & 1u) out.push_back(i);
    return out;
}

std::vector<Mask> maximal_elements(std::span<const Mask> family)
{
    std::vector<Mask> out;
    for (Mask s : family) {
        const bool covered = std::any_of(family.begin(), family.end(), [s](Mask t) { return t != s && (s & t) == s; });
        if (!covered && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return out;
}

std::optional<std::pair<Mask, Mask>> check_simplicial(std::span<const Mask> family)
{
    std::vector<Mask> sorted(family.begin(), family.end());
    std::sort(sorted.begin(), sorted.end());
    for (Mask s : sorted)
        for (int bit = 31; bit >= 0; --bit) {
            const Mask b = Mask{1} << bit;
            if ((s & b) && !std::binary_search(sorted.begin(), sorted.end(), s & ~b)) return std::pair{s & ~b, s};
        }
    return std::nullopt;
}

namespace {

SubsetClass classify(const std::vector<DegeneracyVerdict>& trials)
{
    std::size_t cert = 0, deg = 0;
    for (const auto& v : trials) {
        if (v.status == Status::inconclusive) return SubsetClass::unresolved;
        (v.status == Status::nondegenerate_certified ? cert : deg) += 1;
    }
    if (cert && deg) return SubsetClass::mixed;
    return deg ? SubsetClass::degenerate : SubsetClass::nondegenerate;
}

struct Prepared {
    DispersionSystem sys;
    bool connected;
};

Prepared prepare(const PeriodicGraph& g, Mask mask)
{
    const PeriodicGraph sub = subgraph_mask(g, mask);
    return {build_system(build_symbol(sub)), is_connected(sub)};
}

SubsetRecord test_subset(const PeriodicGraph& g, Mask mask, const SweepOptions& opt)
{
    const Prepared p = prepare(g, mask);
    SubsetRecord r;
    r.mask = mask;
    r.connected = p.connected;
    const auto draws = draw_parameters(opt.trials, p.sys.params.size(), subset_seed(opt.seed, mask), opt.range);
    for (const auto& a : draws) r.trials.push_back(degeneracy_test(p.sys, a, opt.test));
    r.verdict = classify(r.trials);
    return r;
}

void confirm(const PeriodicGraph& g, SubsetRecord& r, const SweepOptions& opt, std::size_t& unlucky)
{
    const Prepared p = prepare(g, r.mask);
    TestOptions q = opt.test;
    q.policy = FieldPolicy::rational;
    r.confirmation = degeneracy_test(p.sys, r.trials.front().alpha, q);
    const Status s = r.confirmation->status;
    if (s != Status::inconclusive && s != r.trials.front().status) {
        ++unlucky;
        r.confirmation->unlucky_prime = true;
        r.trials.front() = *r.confirmation;
        r.verdict = classify(r.trials);
    }
}

void resample(const PeriodicGraph& g, SubsetRecord& r, const SweepOptions& opt)
{
    const Prepared p = prepare(g, r.mask);
    const auto draws = draw_parameters(opt.trials, p.sys.params.size(), subset_seed(~opt.seed, r.mask), opt.resample_range);
    r.resample.clear();
    for (const auto& a : draws) r.resample.push_back(degeneracy_test(p.sys, a, opt.test));
}

void collect(SweepResult& out)
{
    out.dsg.clear();
    out.unresolved.clear();
    out.mixed.clear();
    out.disconnected.clear();
    for (const auto& r : out.subsets) {
        if (r.degenerate()) out.dsg.push_back(r.mask);
        if (r.verdict == SubsetClass::unresolved) out.unresolved.push_back(r.mask);
        if (r.verdict == SubsetClass::mixed) out.mixed.push_back(r.mask);
        if (!r.connected) out.disconnected.push_back(r.mask);
    }
    out.mixed_unexplained.clear();
    for (Mask m : out.mixed)
        if (classify(out.subsets[m].resample) != SubsetClass::nondegenerate) out.mixed_unexplained.push_back(m);
    out.maximal = maximal_elements(out.dsg);
    out.maximal_disconnected = maximal_elements(out.disconnected);
}

// Maximal degenerate subsets and minimal subsets outside the degenerate family.
std::vector<Mask> boundary(const SweepResult& r)
{
    std::vector<Mask> out = r.maximal;
    for (const auto& s : r.subsets) {
        if (s.degenerate() || s.verdict != SubsetClass::nondegenerate) continue;
        bool minimal = true;
        for (std::size_t b : mask_members(s.mask)) minimal &= r.subsets[s.mask & ~(Mask{1} << b)].degenerate();
        if (minimal) out.push_back(s.mask);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SweepResult sweep(const PeriodicGraph& g, const SweepOptions& opt, bool parallel)
{
    if (opt.trials == 0) throw std::invalid_argument("trials must be positive");
    if (g.num_edges() > 20) throw std::invalid_argument("sweep supports at most 20 edge classes");
    const auto t0 = std::chrono::steady_clock::now();
    const long count = 1L << g.num_edges();
    SweepResult out;
    out.subsets.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long m = 0; m < count; ++m) out.subsets[m] = test_subset(g, static_cast<Mask>(m), opt);
    std::vector<Mask> mixed;
    for (const auto& r : out.subsets)
        if (r.verdict == SubsetClass::mixed) mixed.push_back(r.mask);
    const long nm = static_cast<long>(mixed.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long i = 0; i < nm; ++i) resample(g, out.subsets[mixed[i]], opt);
    collect(out);

    if (opt.confirm_boundary) {
        out.confirmed = boundary(out);
        const long nb = static_cast<long>(out.confirmed.size());
        std::vector<std::size_t> flips(out.confirmed.size(), 0);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (long i = 0; i < nb; ++i) confirm(g, out.subsets[out.confirmed[i]], opt, flips[i]);
        for (std::size_t f : flips) out.unlucky += f;
        if (out.unlucky) {
            for (Mask m : out.confirmed)
                if (out.subsets[m].verdict == SubsetClass::mixed && out.subsets[m].resample.empty()) resample(g, out.subsets[m], opt);
            collect(out);
        }
    }

    if (const auto bad = check_simplicial(out.dsg))
        throw std::logic_error("degenerate family is not downward closed: " + std::to_string(bad->first) +
                               " missing below " + std::to_string(bad->second));
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace

SweepResult run_sweep(const PeriodicGraph& g, const SweepOptions& options) { return sweep(g, options, true); }

SweepResult run_sweep_serial(const PeriodicGraph& g, const SweepOptions& options) { return sweep(g, options, false); }

}  // namespace bloch
