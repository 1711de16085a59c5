#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = bloch::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void strip_timing(json& j)
{
    if (j.is_object()) {
        j.erase("seconds");
        for (auto& [k, v] : j.items()) strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

json parsed(const std::string& text)
{
    json j = json::parse(text);
    strip_timing(j);
    return j;
}

}  // namespace

TEST_CASE("golden outputs")
{
    const auto sym = run({"symbol", "--graph", "graphene"});
    CHECK(sym.code == 0);
    CHECK(sym.out == slurp(testing::data_path("symbol_graphene.txt")));

    const auto bern = run({"bernstein", "--graph", "mother"});
    CHECK(bern.code == 0);
    CHECK(parsed(bern.out) == parsed(slurp(testing::data_path("bernstein_mother.json"))));

    const auto count = run({"count", "--graph", "mother", "--alpha", "1,2,3,4,5,6,7,8,1"});
    CHECK(count.code == 0);
    CHECK(parsed(count.out) == parsed(slurp(testing::data_path("count_mother.json"))));
}

TEST_CASE("verdicts and exit codes")
{
    const auto cert = run({"test", "--alpha", "31,1,13,19,36,4,27,3,7"});
    CHECK(cert.code == 0);
    CHECK(json::parse(cert.out)["verdicts"][0]["status"] == "nondegenerate-certified");

    const auto flat = run({"test", "--alpha", "0,0,0,0,1,0,0,0,0"});
    CHECK(flat.code == 0);
    CHECK(json::parse(flat.out)["verdicts"][0]["status"] == "degenerate-witnessed");

    CHECK(run({"test", "--graph", "mother"}).code == 2);
    CHECK(run({"test", "--sample", "3"}).code == 2);
    CHECK(run({"test", "--alpha", "1,2"}).code == 2);
    CHECK(run({"symbol", "--graph", testing::data_path("bad.json")}).code == 2);
    CHECK(run({"symbol", "--graph", "/nonexistent/graph.json"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--version"}).code == 0);

    const auto tiny = run({"test", "--alpha", "31,1,13,19,36,4,27,3,7", "--field", "rational", "--budget", "0"});
    CHECK(tiny.code == 1);
}

TEST_CASE("prime override from the environment")
{
    ::setenv("BLOCH_PRIME", "not-a-prime", 1);
    CHECK(run({"test", "--alpha", "31,1,13,19,36,4,27,3,7", "--field", "prime"}).code == 2);
    ::setenv("BLOCH_PRIME", "1000003", 1);
    const auto r = run({"test", "--alpha", "31,1,13,19,36,4,27,3,7", "--field", "prime"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["verdicts"][0]["field"] == "GF(1000003)");
    ::unsetenv("BLOCH_PRIME");
}

TEST_CASE("provenance is deterministic")
{
    CHECK(bloch::cli::config_hash("a") == bloch::cli::config_hash("a"));
    CHECK(bloch::cli::config_hash("a") != bloch::cli::config_hash("b"));
    CHECK(bloch::cli::config_hash("").size() == 16);
    const auto a = run({"count", "--alpha", "1,2,3,4,5,6,7,8,1"}), b = run({"count", "--alpha", "1,2,3,4,5,6,7,8,1"});
    const auto c = run({"count", "--alpha", "1,2,3,4,5,6,7,8,2"});
    CHECK(json::parse(a.out)["provenance"] == json::parse(b.out)["provenance"]);
    CHECK(json::parse(a.out)["provenance"]["config_hash"] != json::parse(c.out)["provenance"]["config_hash"]);
    CHECK(run({"symbol", "--graph", "graphene"}).out.rfind("# bloch 0.1.0 symbol config ", 0) == 0);
}

TEST_CASE("mother symbol at unit weights")
{
    const auto r = run({"symbol", "--graph", "mother", "--alpha", "1,1,1,1,1,1,1,1,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("multiplier: z1^1 z2^1") != std::string::npos);
}
