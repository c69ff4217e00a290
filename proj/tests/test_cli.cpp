#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(VIRA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

}  // namespace

TEST_CASE("bracket subcommand emits canonical element text", "[cli]") {
    auto r = run_cli("bracket \"L2\" \"L-2\"");
    CHECK(r.status == 0);
    CHECK(r.out == "-4*L0 + 1/2*C\n");

    auto r2 = run_cli("bracket \"L1\" \"L2\"");
    CHECK(r2.out == "L3\n");

    auto r3 = run_cli("bracket \"L3\" \"L3\"");
    CHECK(r3.out == "0\n");
}

TEST_CASE("normal-order subcommand and the word cap", "[cli]") {
    auto r = run_cli("normal-order \"L1 L-1\"");
    CHECK(r.status == 0);
    CHECK(r.out == "-2*L0 + L-1 L1\n");

    auto capped = run_cli("normal-order \"L1 L1 L1 L1 L1 L1 L1 L1 L1\"");
    CHECK(capped.status == 1);  // nine generators against the default cap of eight

    auto raised = run_cli("normal-order --max-word 12 \"L1 L1 L1 L1 L1 L1 L1 L1 L1\"");
    CHECK(raised.status == 0);
}

TEST_CASE("dims subcommand lists the level profile", "[cli]") {
    auto r = run_cli("dims --module verma:lambda=0,h=0,depth=6");
    CHECK(r.status == 0);
    CHECK(r.out == "1 1 2 3 5 7 11\n");

    auto anti = run_cli("dims --module antiverma:lambda=0,h=0,depth=6");
    CHECK(anti.out == "1 1 2 3 5 7 11\n");

    auto series = run_cli("dims --module A:a=1/2,b=0 --window -4..4");
    CHECK(series.out == "1 1 1 1 1 1 1 1 1\n");
}

TEST_CASE("act subcommand", "[cli]") {
    auto r = run_cli("act --module A:a=1/2,b=0 --gen 1 --weight -1");
    CHECK(r.status == 0);
    CHECK(r.out == "k=0 coords=[-1/2] truncated=false\n");
}

TEST_CASE("check-axioms separates success, corruption and misuse", "[cli]") {
    auto ok = run_cli("check-axioms --module A:a=1/2,b=3/4 --window -8..8");
    CHECK(ok.status == 0);
    CHECK(ok.out.find("no violations") == 0);

    auto bad = run_cli(
        "check-axioms --module A:a=1/2,b=3/4 --window -8..8 --corrupt i=1,k=0,row=0,col=0");
    CHECK(bad.status == 2);
    CHECK(bad.out.find("violation") != std::string::npos);

    auto misuse = run_cli("check-axioms --module A:a=nonsense,b=0");
    CHECK(misuse.status == 1);
}

TEST_CASE("simple subcommand matches the simplicity criterion", "[cli]") {
    CHECK(run_cli("simple --module A:a=1/2,b=0").out == "true\n");
    CHECK(run_cli("simple --module A:a=0,b=0").out == "false\n");
    CHECK(run_cli("simple --module A:a=0,b=2").out == "true\n");
}

TEST_CASE("primitive subcommand reports the verdict", "[cli]") {
    auto r = run_cli("primitive --module verma:lambda=0,h=0,depth=6 --weight 0");
    CHECK(r.status == 0);
    CHECK(r.out.find("stronglyPrimitive: true") != std::string::npos);
    CHECK(r.out.find("primitive: true") != std::string::npos);
}

TEST_CASE("intertwiner subcommand", "[cli]") {
    auto r = run_cli(
        "intertwiner --module A:a=1/2,b=1 --module A:a=1/2,b=0 --format json");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["invertible"] == true);

    auto none = run_cli("intertwiner --module A:a=0,b=1 --module A:a=0,b=0 --format json");
    auto jn = nlohmann::json::parse(none.out);
    CHECK(jn["invertible"] == false);
}

TEST_CASE("classify subcommand emits the documented JSON verdict", "[cli]") {
    auto r = run_cli("classify --module A:a=1/2,b=3 --window -10..10 --format json");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "UniformlyBounded");
    CHECK(j["bound"] == 1);
    CHECK(j["windowLimited"] == true);

    // text and JSON report the same verdict
    auto t = run_cli("classify --module A:a=1/2,b=3 --window -10..10");
    CHECK(t.out.find("verdict: UniformlyBounded (bound 1)") == 0);

    auto verma = run_cli("classify --module verma:lambda=0,h=0,depth=8 --format json");
    auto jv = nlohmann::json::parse(verma.out);
    CHECK(jv["verdict"] == "ContainsTrivialFactor");
    CHECK(jv["profileVerdict"] == "CategoryO");
}

TEST_CASE("paper-example subcommand reproduces the composite module", "[cli]") {
    auto r = run_cli("paper-example --a 1/2 --window -6..6 --depth 6 --format json");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["classification"]["verdict"] == "ContainsTrivialFactor");
    CHECK(j["witness"]["weight"] == 0);
    CHECK(j["primitivity"]["primitive"] == true);
    CHECK(j["primitivity"]["antiPrimitive"] == true);
    CHECK(j["primitivity"]["stronglyPrimitive"] == false);
    CHECK(j["primitivity"]["stronglyAntiPrimitive"] == false);
    CHECK(j["dims"]["0"] == 1);

    auto rejected = run_cli("paper-example --a 2");
    CHECK(rejected.status == 1);
}

TEST_CASE("json output is byte-identical across runs", "[cli]") {
    const std::string cmd = "classify --module verma:lambda=0,h=0,depth=6 --format json";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("--out writes the report to a file", "[cli]") {
    const std::string path = "vira_cli_out_test.json";
    std::remove(path.c_str());
    auto r = run_cli("dims --module A:a=1/2,b=0 --window -2..2 --format json --out " + path);
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    auto j = nlohmann::json::parse(f);
    CHECK(j["dims"]["0"] == 1);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit with status 1", "[cli]") {
    CHECK(run_cli("dims").status == 1);                       // missing --module
    CHECK(run_cli("bogus-subcommand").status == 1);           // unknown subcommand
    CHECK(run_cli("dims --module A:a=1/2").status == 1);      // malformed spec
    CHECK(run_cli("dims --module A:a=1/2,b=0 --window x..y").status == 1);
    CHECK(run_cli("--help").status == 0);
}
