#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloch/band.hpp"
#include "bloch/critical.hpp"
#include "bloch/polytope.hpp"
#include "bloch/sweep.hpp"

namespace bloch::cli {

using nlohmann::ordered_json;

std::string config_hash(const std::string& canonical)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::string graph = "mother";
    std::string convention = "auto";
    std::string alpha;
    std::size_t sample = 0;
    std::optional<std::uint64_t> seed;
    std::string range = "1:50";
    std::string field;
    int n = 128;
    std::string window = "centered";
    std::string out;
    std::string dump;
    std::string report;
    std::size_t trials = 10;
    std::size_t budget = GroebnerOptions{}.budget;
    int jobs = 0;
    bool verbose = false;

    // Every flag that can change the output, in a fixed order.
    std::string canonical() const
    {
        std::ostringstream s;
        s << command << "|graph=" << graph << "|convention=" << convention << "|alpha=" << alpha << "|sample=" << sample
          << "|seed=" << (seed ? std::to_string(*seed) : "") << "|range=" << range << "|field=" << field << "|n=" << n
          << "|window=" << window << "|trials=" << trials << "|budget=" << budget << "|prime=" << prime();
        return s.str();
    }

    std::uint32_t prime() const
    {
        const char* env = std::getenv("BLOCH_PRIME");
        if (!env || !*env) return kDefaultPrime;
        char* end = nullptr;
        const unsigned long long p = std::strtoull(env, &end, 10);
        if (*end != '\0' || p < 2 || p >= (1ull << 31)) throw InvalidInput("BLOCH_PRIME must be an integer in [2, 2^31)");
        return static_cast<std::uint32_t>(p);
    }
};

ordered_json provenance(const Config& c)
{
    return {{"tool", "bloch"}, {"version", kVersion}, {"command", c.command}, {"config_hash", config_hash(c.canonical())}};
}

std::string header_line(const Config& c)
{
    return "# bloch " + std::string(kVersion) + " " + c.command + " config " + config_hash(c.canonical());
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    for (const auto& tok : split(text, ',')) {
        std::istringstream in(tok);
        T v;
        if (!(in >> v) || !(in >> std::ws).eof()) throw InvalidInput(std::string("malformed ") + what + " entry '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidInput(std::string("empty ") + what);
    return out;
}

SampleRange parse_range(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw InvalidInput("range must look like lo:hi");
    SampleRange r;
    try {
        r.lo = std::stol(parts[0]);
        r.hi = std::stol(parts[1]);
    } catch (const std::exception&) {
        throw InvalidInput("range must look like lo:hi");
    }
    if (r.lo > r.hi) throw InvalidInput("empty range " + text);
    return r;
}

PeriodicGraph load_graph(const Config& c)
{
    if (auto g = builtin_graph(c.graph)) return *g;
    if (!std::filesystem::exists(c.graph)) throw InvalidInput("no builtin graph or file named '" + c.graph + "'");
    return read_graph_file(c.graph);
}

Convention convention_of(const Config& c)
{
    if (c.convention == "divergence") return Convention::divergence;
    if (c.convention == "adjacency") return Convention::adjacency;
    return c.graph == "graphene" ? Convention::adjacency : Convention::divergence;
}

void check_arity(std::size_t got, const PeriodicGraph& g)
{
    if (got != g.parameter_names().size())
        throw InvalidInput("graph has " + std::to_string(g.parameter_names().size()) + " parameters, --alpha gave " +
                           std::to_string(got));
}

std::vector<long> integer_alpha(const Config& c, const PeriodicGraph& g)
{
    if (c.alpha.empty()) throw InvalidInput("--alpha is required");
    auto a = parse_list<long>(c.alpha, "--alpha");
    check_arity(a.size(), g);
    return a;
}

TestOptions test_options(const Config& c, FieldPolicy fallback, std::ostream& err)
{
    TestOptions t;
    t.policy = fallback;
    if (c.field == "rational") t.policy = FieldPolicy::rational;
    else if (c.field == "prime") t.policy = FieldPolicy::prime;
    else if (c.field == "screened") t.policy = FieldPolicy::screened;
    else if (!c.field.empty()) throw InvalidInput("--field must be rational, prime or screened");
    t.prime = c.prime();
    t.groebner.budget = c.budget;
    if (c.verbose) t.groebner.trace = &err;
    return t;
}

ordered_json verdict_json(const DegeneracyVerdict& v)
{
    ordered_json j{{"alpha", v.alpha}, {"status", to_string(v.status)}, {"field", v.field}, {"evidence", v.evidence},
                   {"seconds", v.seconds}};
    if (v.unlucky_prime) j["unlucky_prime"] = true;
    return j;
}

void emit(const std::string& path, const ordered_json& j, std::ostream& out)
{
    if (path.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    f << j.dump(2) << '\n';
}

int cmd_symbol(const Config& c, std::ostream& out)
{
    const PeriodicGraph g = load_graph(c);
    SymbolMatrix s = build_symbol(g, convention_of(c));
    std::string weights = c.alpha;
    if (weights.empty() && c.graph == "graphene") weights = "1,1,1";
    if (!weights.empty()) {
        const auto a = parse_list<long>(weights, "--alpha");
        check_arity(a.size(), g);
        std::vector<mpq_class> q(a.begin(), a.end());
        s = specialize_symbol(s, q);
    }
    const ClearedSymbol cleared = clear_symbol(s);
    std::ostringstream text;
    text << header_line(c) << '\n';
    text << "A(z):\n" << render_symbol(s.entries);
    text << "multiplier:";
    for (std::size_t d = 0; d < cleared.multiplier.size(); ++d) text << " z" << d + 1 << "^" << cleared.multiplier[d];
    text << "\ncleared A(z):\n" << render_symbol(cleared.entries);
    if (c.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(c.out);
        if (!f) throw InvalidInput("cannot write " + c.out);
        f << text.str();
    }
    return ok;
}

int cmd_test(const Config& c, std::ostream& out, std::ostream& err)
{
    const PeriodicGraph g = load_graph(c);
    const DispersionSystem sys = build_system(build_symbol(g));
    const TestOptions opt = test_options(c, FieldPolicy::screened, err);
    if (c.alpha.empty() == (c.sample == 0)) throw InvalidInput("give exactly one of --alpha and --sample");

    ordered_json j{{"provenance", provenance(c)}};
    SampleSummary s;
    if (!c.alpha.empty()) {
        s.verdicts.push_back(degeneracy_test(sys, integer_alpha(c, g), opt));
        s.certified = s.verdicts[0].status == Status::nondegenerate_certified;
        s.witnessed = s.verdicts[0].status == Status::degenerate_witnessed;
        s.inconclusive = s.verdicts[0].status == Status::inconclusive;
    } else {
        if (!c.seed) throw InvalidInput("--sample needs --seed");
        s = sample_test(sys, c.sample, *c.seed, parse_range(c.range), opt);
    }
    j["verdicts"] = ordered_json::array();
    for (const auto& v : s.verdicts) j["verdicts"].push_back(verdict_json(v));
    j["summary"] = {{"certified", s.certified}, {"witnessed", s.witnessed}, {"inconclusive", s.inconclusive}};
    emit(c.out, j, out);
    return s.inconclusive ? inconclusive : ok;
}

ordered_json polytope_json(const LatticePolytope& p)
{
    ordered_json j;
    j["vertices"] = p.vertices();
    j["volume"] = p.volume().get_str();
    j["faces"] = p.faces().size();
    j["edges"] = p.num_edges();
    return j;
}

int cmd_bernstein(const Config& c, std::ostream& out)
{
    const PeriodicGraph g = load_graph(c);
    const DispersionSystem sys = build_system(build_symbol(g));
    const BernsteinReport r = c.alpha.empty() ? bernstein_bound(sys) : bernstein_bound(sys, integer_alpha(c, g));

    ordered_json j{{"provenance", provenance(c)}, {"coordinates", "z1,...,zn,lambda"}};
    j["polytopes"] = ordered_json::array();
    for (const auto& p : r.polytopes) j["polytopes"].push_back(polytope_json(p));
    j["mixed_volume"] = r.mixed_volume.get_str();
    j["bound"] = r.bound ? ordered_json(*r.bound) : ordered_json(nullptr);

    if (r.polytopes.size() == 3) {
        // The first polytope against d! times its own volume.
        const mpq_class six_vol = 6 * r.polytopes[0].volume();
        j["rojas"] = {{"volume_first", r.polytopes[0].volume().get_str()},
                      {"six_volume", six_vol.get_str()},
                      {"equals_mixed_volume", six_vol == r.mixed_volume}};
        ordered_json found = nullptr;
        std::vector<int> perm{0, 1, 2};
        do {
            if (permute(r.polytopes[1], perm) == r.polytopes[2]) {
                found = perm;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        j["reflection_second_to_third"] = found;
    }

    if (!c.dump.empty()) {
        std::filesystem::create_directories(c.dump);
        for (std::size_t i = 0; i < r.polytopes.size(); ++i) {
            const std::string path = (std::filesystem::path(c.dump) / ("N_f" + std::to_string(i + 1) + ".off")).string();
            std::ofstream f(path);
            if (!f) throw InvalidInput("cannot write " + path);
            write_off(f, r.polytopes[i]);
        }
        j["dumped_to"] = c.dump;
    }
    emit(c.out, j, out);
    return r.bound ? ok : inconclusive;
}

int cmd_count(const Config& c, std::ostream& out, std::ostream& err)
{
    const PeriodicGraph g = load_graph(c);
    const DispersionSystem sys = build_system(build_symbol(g));
    const auto alpha = integer_alpha(c, g);
    const CriticalCount cc = count_critical_points(sys, alpha, test_options(c, FieldPolicy::rational, err));
    const BernsteinReport b = bernstein_bound(sys, alpha);

    ordered_json j{{"provenance", provenance(c)}, {"alpha", alpha}, {"field", cc.field}};
    if (!cc.count) j["count"] = nullptr;
    else if (!*cc.count) j["count"] = "infinite";
    else j["count"] = **cc.count;
    j["bernstein_bound"] = b.bound ? ordered_json(*b.bound) : ordered_json(nullptr);
    j["seconds"] = cc.seconds;
    emit(c.out, j, out);
    return cc.count ? ok : inconclusive;
}

int cmd_bands(const Config& c, std::ostream& out)
{
    const PeriodicGraph g = load_graph(c);
    if (c.alpha.empty()) throw InvalidInput("--alpha is required");
    const auto alpha = parse_list<double>(c.alpha, "--alpha");
    check_arity(alpha.size(), g);
    if (c.n < 8) throw InvalidInput("--n must be at least 8");
    double origin = -std::numbers::pi;
    if (c.window == "shifted") origin = -std::numbers::pi / 2;
    else if (c.window != "centered") throw InvalidInput("--window must be centered or shifted");

    const BandModel model(build_symbol(g, convention_of(c)), alpha);
    const BandOptions opt;
    const BandGrid grid = eval_bands(model, c.n, origin, opt);
    const CriticalSearch cps = find_critical_points(model, grid, opt);
    const SpectralBands sb = spectral_summary(grid, cps, opt);
    if (!c.out.empty()) export_surface(grid, c.out);

    ordered_json j{{"provenance", provenance(c)}, {"alpha", alpha}, {"n", c.n}, {"origin", origin}};
    if (!c.out.empty()) j["surface"] = c.out;
    j["critical_points"] = ordered_json::array();
    for (const auto& p : cps.points)
        j["critical_points"].push_back({{"k", p.k}, {"band", p.band + 1}, {"lambda", p.lambda}, {"class", to_string(p.kind)},
                                        {"hessian_det", p.hessian_det}});
    j["flat_bands"] = ordered_json::array();
    for (int b : cps.flat_bands) j["flat_bands"].push_back(b + 1);
    j["warnings"] = ordered_json::array();
    for (const auto& w : cps.warnings) j["warnings"].push_back({{"seed", w.seed}, {"band", w.band + 1}, {"reason", w.reason}});
    j["bands"] = ordered_json::array();
    for (const auto& b : sb.bands) j["bands"].push_back({b.lo, b.hi});
    j["gaps"] = ordered_json::array();
    for (const auto& b : sb.gaps) j["gaps"].push_back({b.lo, b.hi});
    j["edges"] = ordered_json::array();
    for (const auto& e : sb.edges) {
        std::vector<int> bands;
        for (int b : e.bands) bands.push_back(b + 1);
        j["edges"].push_back({{"value", e.value}, {"bands", bands}, {"single_band", e.single_band}, {"isolated", e.isolated},
                              {"nondegenerate", e.nondegenerate}});
    }
    j["all_conditions_hold"] = sb.all_pass();
    emit(c.report, j, out);
    return ok;
}

std::vector<std::size_t> one_based(Mask m)
{
    auto v = mask_members(m);
    for (auto& i : v) ++i;
    return v;
}

ordered_json subset_json(const PeriodicGraph& g, Mask m)
{
    std::string edges = describe_edges(subgraph_mask(g, m));
    return {{"mask", m}, {"edges", one_based(m)}, {"edge_list", split(edges, '\n')}};
}

int cmd_sweep(const Config& c, std::ostream& out, std::ostream& err)
{
    const PeriodicGraph g = load_graph(c);
    SweepOptions opt;
    opt.trials = c.trials;
    opt.seed = c.seed.value_or(1);
    opt.range = parse_range(c.range);
    opt.test = test_options(c, FieldPolicy::prime, err);
    opt.test.groebner.trace = nullptr;
    if (opt.trials == 0) throw InvalidInput("--trials must be positive");
    const SweepResult r = run_sweep(g, opt);

    ordered_json j{{"provenance", provenance(c)}, {"trials", opt.trials}, {"seed", opt.seed}, {"range", c.range}};
    j["dsg_size"] = r.dsg.size();
    j["maximal"] = ordered_json::array();
    for (Mask m : r.maximal) j["maximal"].push_back(subset_json(g, m));
    j["disconnected"] = r.disconnected.size();
    j["maximal_disconnected_outside_dsg"] = ordered_json::array();
    for (Mask m : r.maximal_disconnected)
        if (!r.subsets[m].degenerate()) j["maximal_disconnected_outside_dsg"].push_back(subset_json(g, m));
    bool dsg_disconnected = true;
    for (Mask m : r.dsg) dsg_disconnected &= !r.subsets[m].connected;
    j["dsg_within_disconnected"] = dsg_disconnected;
    j["simplicial"] = !check_simplicial(r.dsg).has_value();
    j["unresolved"] = r.unresolved;
    j["mixed"] = r.mixed;
    j["mixed_unexplained"] = r.mixed_unexplained;
    j["boundary_confirmed_over_q"] = r.confirmed.size();
    j["unlucky_prime"] = r.unlucky;
    j["seconds"] = r.seconds;
    j["subsets"] = ordered_json::array();
    for (const auto& s : r.subsets) {
        ordered_json rec{{"mask", s.mask}, {"verdict", to_string(s.verdict)}, {"connected", s.connected}};
        std::string trials;
        for (const auto& t : s.trials) trials += t.status == Status::nondegenerate_certified ? 'C' : t.status == Status::degenerate_witnessed ? 'D' : '?';
        rec["trials"] = trials;
        j["subsets"].push_back(std::move(rec));
    }
    if (c.verbose)
        for (Mask m : r.maximal) {
            err << "maximal degenerate subset {";
            for (auto i : one_based(m)) err << ' ' << i;
            err << " }\n" << describe_edges(subgraph_mask(g, m));
        }
    emit(c.out, j, out);
    return r.unresolved.empty() && r.mixed_unexplained.empty() ? ok : inconclusive;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Degenerate critical points of periodic graph operators", "bloch"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--graph", c.graph, "builtin name (mother, graphene) or JSON file");
        s->add_option("--convention", c.convention, "divergence, adjacency or auto")->check(CLI::IsMember({"auto", "divergence", "adjacency"}));
        s->add_option("--out", c.out, "output file (default stdout)");
        s->add_option("--jobs", c.jobs, "worker threads (default: all cores)");
        s->add_flag("--verbose", c.verbose, "trace progress on stderr");
    };
    auto exact = [&](CLI::App* s) {
        s->add_option("--field", c.field, "rational, prime or screened");
        s->add_option("--budget", c.budget, "maximum S-pair reductions per basis");
    };

    auto* symbol = app.add_subcommand("symbol", "print the Floquet symbol and its cleared form");
    common(symbol);
    symbol->add_option("--alpha", c.alpha, "comma-separated weights");

    auto* test = app.add_subcommand("test", "decide degeneracy at given or sampled weights");
    common(test);
    exact(test);
    test->add_option("--alpha", c.alpha, "comma-separated integer weights");
    test->add_option("--sample", c.sample, "number of seeded random weight vectors");
    test->add_option("--seed", c.seed, "sampling seed");
    test->add_option("--range", c.range, "integer range lo:hi for sampling");

    auto* bern = app.add_subcommand("bernstein", "Newton polytopes and the mixed-volume bound");
    common(bern);
    bern->add_option("--alpha", c.alpha, "specialize the weights first");
    bern->add_option("--dump-polytopes", c.dump, "directory for OFF files");

    auto* count = app.add_subcommand("count", "number of complex critical points with multiplicity");
    common(count);
    exact(count);
    count->add_option("--alpha", c.alpha, "comma-separated integer weights")->required();

    auto* bands = app.add_subcommand("bands", "band functions, critical points and spectral edges");
    common(bands);
    bands->add_option("--alpha", c.alpha, "comma-separated real weights")->required();
    bands->add_option("--n", c.n, "grid resolution per axis");
    bands->add_option("--window", c.window, "centered: [-pi,pi)^2, shifted: [-pi/2,3pi/2)^2");
    bands->get_option("--out")->description("CSV surface file");
    bands->add_option("--report", c.report, "JSON report file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "degeneracy census over all edge subsets");
    common(sweep);
    exact(sweep);
    sweep->add_option("--trials", c.trials, "trials per subset");
    sweep->add_option("--seed", c.seed, "sampling seed (default 1)");
    sweep->add_option("--range", c.range, "integer range lo:hi");

    std::vector<const char*> argv{"bloch"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid;
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.jobs > 0) omp_set_num_threads(c.jobs);

    try {
        if (c.command == "symbol") return cmd_symbol(c, out);
        if (c.command == "test") return cmd_test(c, out, err);
        if (c.command == "bernstein") return cmd_bernstein(c, out);
        if (c.command == "count") return cmd_count(c, out, err);
        if (c.command == "bands") return cmd_bands(c, out);
        return cmd_sweep(c, out, err);
    } catch (const GraphError& e) {
        err << "invalid graph: " << e.what() << '\n';
        return invalid;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    }
}

}  // namespace bloch::cli
