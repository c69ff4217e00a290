#include <catch2/catch_amalgamated.hpp>

#include "virasoro/modspec.hpp"
#include "virasoro/serialize.hpp"

using namespace virasoro;

namespace {
GaussianRational q(long long n, long long d = 1) { return {Rational(n, d), Rational(0)}; }
const WindowShape kShape{-4, 4, 2};
}  // namespace

TEST_CASE("serialization is deterministic", "[serialize]") {
    auto build = [] {
        auto m = parse_module_spec("A:a=1/2,b=3", kShape).realization;
        return realization_to_json(m).dump(2);
    };
    CHECK(build() == build());

    auto classifyTwice = [] {
        auto m = parse_module_spec("verma:lambda=0,h=0,depth=4", kShape).realization;
        return classification_to_json(classify(m)).dump(2);
    };
    CHECK(classifyTwice() == classifyTwice());
}

TEST_CASE("realization JSON carries the documented layout", "[serialize]") {
    auto m = parse_module_spec("verma:lambda=0,h=0,depth=3", kShape).realization;
    auto j = realization_to_json(m);
    CHECK(j["window"]["offset"] == "0");
    CHECK(j["window"]["kMin"] == -4);
    CHECK(j["window"]["margin"] == 2);
    CHECK(j["centralScalar"] == "0");
    CHECK(j["dims"]["0"] == 1);
    CHECK(j["dims"]["-3"] == 3);
    CHECK(j["truncated"].is_array());
    CHECK(!j["truncated"].empty());  // depth 3 inside a +-6 extended window
    CHECK(j["actions"].is_object());
    auto l0 = j["actions"]["L0@0"];
    CHECK(l0["rows"] == 1);
    CHECK(l0["entries"][0] == "0");
    // scalar strings round-trip through the scalar grammar
    for (const auto& entry : j["actions"]["L-1@0"]["entries"])
        CHECK_NOTHROW(parse_scalar(entry.get<std::string>()));
}

TEST_CASE("report JSON uses the stable field names", "[serialize]") {
    auto m = parse_module_spec("verma:lambda=0,h=0,depth=4", kShape).realization;
    auto rep = classification_to_json(classify(m));
    CHECK(rep.contains("verdict"));
    CHECK(rep.contains("dimProfile"));
    CHECK(rep.contains("witnesses"));
    CHECK(rep.contains("windowLimited"));
    CHECK(rep["verdict"] == "ContainsTrivialFactor");
    CHECK(rep["windowLimited"] == true);
    REQUIRE(rep["witnesses"].size() == 1);
    CHECK(rep["witnesses"][0]["weight"] == 0);
    CHECK(rep["witnesses"][0]["coords"][0] == "1");

    auto ax = axiom_report_to_json(check_axioms(m, 2));
    CHECK(ax.contains("violations"));
    CHECK(ax["violations"].is_array());
    CHECK(ax["violations"].empty());
    CHECK(ax["checked"].get<long long>() > 0);

    auto pv = primitivity_to_json(
        primitivity(m, VectorInModule{0, Vec(1, GaussianRational(1))}));
    for (const char* key :
         {"stronglyPrimitive", "primitive", "stronglyAntiPrimitive", "antiPrimitive",
          "windowLimited"})
        CHECK(pv.contains(key));
}

TEST_CASE("intertwiner JSON distinguishes none from a map", "[serialize]") {
    CHECK(intertwiner_to_json(std::nullopt).is_null());
    auto m = parse_module_spec("A:a=1/2,b=0", kShape).realization;
    auto t = find_intertwiner(m, m);
    auto j = intertwiner_to_json(t);
    CHECK(j["invertible"] == true);
    CHECK(j["perWeight"]["0"]["entries"][0] == "1");
}
