#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "doctest.h"

using namespace nuharm;
using namespace nuharm::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nuharm");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("grid specs") {
        const auto g = parse_grid_spec("n_b=16, n_a=12");
        CHECK(g.at("n_b") == 16);
        CHECK(g.at("n_a") == 12);
        CHECK_THROWS_AS(parse_grid_spec("n_b=4"), ConfigError);
        CHECK_THROWS_AS(parse_grid_spec("n_b"), ConfigError);
        CHECK_THROWS_AS(parse_grid_spec("n_b=x"), ConfigError);
    }

    TEST_CASE("tolerances") {
        const Tolerances t = parse_tolerances("plancherel=0.5,inversion=1e-3");
        CHECK(t.get("plancherel", 0.02) == 0.5);
        CHECK(t.get("inversion", 0.05) == 1e-3);
        CHECK(t.get("associativity", 1e-9) == 1e-9);
        const Tolerances all = parse_tolerances("1e-30");
        CHECK(all.get("anything", 1.0) == 1e-30);
        CHECK_THROWS_AS(parse_tolerances("-1"), ConfigError);
        CHECK_THROWS_AS(parse_tolerances("0"), ConfigError);
    }

    TEST_CASE("rows pass when value is finite and within tolerance") {
        CHECK(make_row("x", GroupTag::Affine, "m", 0.5, {}, 1.0).pass);
        CHECK_FALSE(make_row("x", GroupTag::Affine, "m", 2.0, {}, 1.0).pass);
        CHECK_FALSE(make_row("x", GroupTag::Affine, "m", std::nan(""), {}, 1.0).pass);
        CHECK(relative_difference(0.0, 0.0) == 0.0);
        CHECK(relative_difference(1.0, 2.0) == doctest::Approx(0.5));
    }

    TEST_CASE("groups") {
        CHECK(parse_groups("all").size() == 3);
        CHECK(parse_groups("sim2").front() == GroupTag::Sim2);
        CHECK_THROWS_AS(parse_groups("so3"), ConfigError);
    }

    TEST_CASE("verify-group default passes and writes the header") {
        const Result r = run_cli({"verify-group", "--group", "affine"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("check,group,metric,value,tolerance,pass\n", 0) == 0);
        CHECK(r.out.find("associativity,affine") != std::string::npos);
        CHECK(r.out.find(",false") == std::string::npos);
    }

    TEST_CASE("forced failure") {
        const Result r = run_cli({"verify-group", "--group", "affine", "--tol", "1e-30"});
        CHECK(r.code == 1);
        CHECK(r.out.find(",false") != std::string::npos);
        CHECK(r.err.find("FAIL") != std::string::npos);
    }

    TEST_CASE("configuration errors exit 2") {
        CHECK(run_cli({"verify-group", "--grid", "n_b=2"}).code == 2);
        CHECK(run_cli({"verify-group", "--group", "heisenberg"}).code == 2);
        CHECK(run_cli({"verify-group", "--grid", "points_per_decade=10"}).code == 2);
        CHECK(run_cli({"frobnicate"}).code == 2);
        CHECK(run_cli({}).code == 2);
        CHECK(run_cli({"verify-group", "--config", "/nonexistent/file"}).code == 2);
        CHECK(run_cli({"sweep-divergence", "--alpha", "0.45"}).code == 2);
    }

    TEST_CASE("sweep windows") {
        const Result bad = run_cli({"sweep-divergence", "--group", "affine", "--alpha", "0.6", "--p", "3"});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("1/2 > alpha") != std::string::npos);
        CHECK(run_cli({"sweep-divergence", "--alpha", "0.45", "--p", "1.5"}).code == 2);

        const Result ok = run_cli({"sweep-divergence", "--group", "affine", "--alpha", "0.45", "--p", "3"});
        CHECK(ok.code == 0);
        CHECK(ok.out.rfind("group,alpha,p_prime,L,R,T,value,predicted_exponent\n", 0) == 0);
        CHECK(ok.out.find("verdict=divergent") != std::string::npos);

        const Result below = run_cli({"sweep-divergence", "--group", "affine", "--alpha", "0.2", "--p", "3"});
        CHECK(below.code == 0);
        CHECK(below.out.find("verdict=convergent") != std::string::npos);

        const Result sim = run_cli({"sweep-divergence", "--group", "sim2", "--alpha", "0.45", "--p", "2.6666666666666665"});
        CHECK(sim.code == 0);
        CHECK(sim.out.find("verdict=divergent") != std::string::npos);
    }

    TEST_CASE("determinism") {
        const Result a = run_cli({"verify-group", "--group", "sim2", "--seed", "11"});
        const Result b = run_cli({"verify-group", "--group", "sim2", "--seed", "11"});
        CHECK(a.out == b.out);
    }

    TEST_CASE("zero test function makes the harmonic identities trivial") {
        const Result r = run_cli({"verify-harmonic", "--group", "affine", "--test-function", "zero", "--grid",
                                  "n_rep=32,n_b=16,n_a=9", "--pairs", "1", "--triples", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("plancherel,affine,rel_error,0.000000e+00") != std::string::npos);
    }
}
