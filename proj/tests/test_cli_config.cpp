#include <doctest.h>

#include <string>

#include "deltacone/acceptance.hpp"
#include "deltacone/report.hpp"
#include "run_config.hpp"

using namespace deltacone;
using cli::ConfigError;
using cli::parse_run_config;

namespace {

std::string error_field(const Json& j) {
    try {
        (void)parse_run_config(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

Json minimal() { return Json{{"field", {{"catalog", "power"}}}, {"operations", {"holder"}}}; }

}  // namespace

TEST_CASE("config defaults") {
    const cli::RunConfig c = parse_run_config(minimal());
    CHECK(c.n == 3);
    CHECK(c.grid_center.size() == 3);
    CHECK(c.field.center == c.grid_center);
    CHECK(c.h == 1.0 / 32);
    CHECK_FALSE(c.resolved_delta());
}

TEST_CASE("config resolves delta from k") {
    Json j = minimal();
    j["n"] = 4;
    j["k"] = 3;
    CHECK(*parse_run_config(j).resolved_delta() == doctest::Approx(0.125));
}

TEST_CASE("config validation names the field") {
    Json j = minimal();
    j["grid"] = {{"h", -1}};
    CHECK(error_field(j) == "grid.h");

    j = minimal();
    j["bogus"] = 1;
    CHECK(error_field(j) == "bogus");

    j = minimal();
    j["field"]["colour"] = "red";
    CHECK(error_field(j) == "field.colour");

    j = minimal();
    j["field"]["catalog"] = "nope";
    CHECK(error_field(j) == "field.catalog");

    j = minimal();
    j["operations"] = {"holder", "dance"};
    CHECK(error_field(j) == "operations[1]");

    j = minimal();
    j["operations"] = {"barrier"};
    CHECK(error_field(j) == "delta");

    j = minimal();
    j["operations"] = {"p-laplacian"};
    j["delta"] = 0;
    CHECK(error_field(j) == "delta");

    j = minimal();
    j["delta"] = 1.5;
    CHECK(error_field(j) == "delta");

    j = minimal();
    j["n"] = 2;
    CHECK(error_field(j) == "n");

    j = minimal();
    j["delta"] = 0.1;
    j["k"] = 2;
    CHECK(error_field(j) == "k");

    j = minimal();
    j["field"] = {{"catalog", "power"}, {"csv", "x.csv"}};
    CHECK(error_field(j) == "field");

    j = minimal();
    j["expect"] = {{"classify", "greens-rate"}};
    CHECK(error_field(j) == "expect.classify");

    j = minimal();
    j["operations"] = {"classify"};
    j["expect"] = {{"classify", "round"}};
    CHECK(error_field(j) == "expect.classify");

    j = minimal();
    j["grid"] = {{"center", {0, 0}}};
    CHECK(error_field(j) == "grid.center");

    j = minimal();
    j["operations"] = {"volume-balls"};
    j["balls"] = {0.5, 1.0};
    CHECK(error_field(j) == "balls");

    j = minimal();
    j["n"] = "three";
    CHECK(error_field(j) == "n");
}

TEST_CASE("config overrides the base") {
    cli::RunConfig base;
    base.n = 4;
    base.k = 3;
    base.h = 0.25;
    Json j = minimal();
    j["delta"] = 0.2;
    const cli::RunConfig c = parse_run_config(j, base);
    CHECK(c.n == 4);
    CHECK(c.h == 0.25);
    CHECK_FALSE(c.k);
    CHECK(*c.resolved_delta() == 0.2);
}

TEST_CASE("reports serialize non-finite numbers as strings") {
    CHECK(num(INFINITY) == Json("inf"));
    CHECK(num(-INFINITY) == Json("-inf"));
    CHECK(num(NAN) == Json("nan"));
    CHECK(num(1.5) == Json(1.5));
}

TEST_CASE("report layout and digest") {
    AnalysisReport r;
    r.operation = "op";
    r.inputs = Json{{"a", 1}};
    r.tolerances = Json{{"t", 0.1}};
    r.outputs = Json{{"x", 2}};
    r.pass = true;
    r.seed = 5;
    r.runtime_seconds = 12.0;
    const Json j = r.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "operation", "inputs", "inputs_digest", "tolerances", "outputs",
                                           "pass", "seed"});
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["inputs_digest"] == "fnv1a64:" + hex64(fnv1a64(R"({"a":1})")));
    CHECK(r.dump().back() == '\n');
    // FNV-1a reference values
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("criterion reports are deterministic") {
    const CriterionResult a = run_criterion(3, SuiteProfile::fast, 7);
    const CriterionResult b = run_criterion(3, SuiteProfile::fast, 7);
    CHECK(a.pass);
    CHECK(a.report.dump() == b.report.dump());
    CHECK_THROWS(run_criterion(14, SuiteProfile::fast, 7));
    CHECK(parse_profile("full") == SuiteProfile::full);
    CHECK_THROWS(parse_profile("medium"));
}
