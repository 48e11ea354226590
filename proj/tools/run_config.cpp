#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "deltacone/cones.hpp"

namespace deltacone::cli {

namespace {

double number(const Json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

int integer(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
    return j.get<int>();
}

std::string text(const Json& j, const std::string& field) {
    if (!j.is_string()) throw ConfigError(field, "expected a string");
    return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

void reject_unknown(const Json& j, const std::string& prefix, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigError(prefix + it.key(), "unknown key");
    }
}

const std::set<std::string> kCatalog{"power", "fundamental", "log-singular", "stereographic", "constant", "linear"};

}  // namespace

const std::vector<std::string>& known_operations() {
    static const std::vector<std::string> ops{"holder",     "w1p",     "classify",     "scale-check", "volume",
                                              "volume-balls", "p-laplacian", "barrier", "grad-v-ln", "eigen-bounds"};
    return ops;
}

std::optional<double> RunConfig::resolved_delta() const {
    if (delta) return delta;
    if (k) return delta_of_k(n, *k).to_double();
    return std::nullopt;
}

Json RunConfig::to_json() const {
    Json j;
    j["n"] = n;
    if (delta) j["delta"] = num(*delta);
    if (k) j["k"] = *k;
    Json f;
    if (field.csv.empty()) {
        f["catalog"] = field.catalog;
        f["exponent"] = num(field.exponent);
        f["coeff"] = num(field.coeff);
        f["value"] = num(field.value);
        f["center"] = field.center;
        f["slope"] = field.slope;
    } else {
        f["csv"] = field.csv;
    }
    j["field"] = f;
    j["grid"] = Json{{"center", grid_center}, {"r0", num(r0)}, {"r_exc", num(r_exc)}, {"h", num(h)}};
    j["operations"] = operations;
    j["p"] = num(p);
    j["mu"] = num(mu);
    j["order"] = order;
    if (barrier_radius) j["barrier_radius"] = num(*barrier_radius);
    if (center_value) j["center_value"] = num(*center_value);
    j["balls"] = balls;
    j["derivatives"] = to_string(trend.source);
    j["expect"] = expect;
    j["seed"] = seed;
    return j;
}

RunConfig parse_run_config(const Json& j, RunConfig c) {
    if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(j, "", {"n", "delta", "k", "field", "grid", "operations", "p", "mu", "order", "barrier_radius",
                           "center_value", "balls", "tolerances", "derivatives", "expect", "seed", "write_field"});

    if (j.contains("n")) c.n = integer(j["n"], "n");
    if (c.n < 3 || c.n > kMaxDim) throw ConfigError("n", "must lie in [3, 8]");
    if (j.contains("delta")) {
        c.delta = number(j["delta"], "delta");
        if (!j.contains("k")) c.k.reset();
    }
    if (j.contains("k")) {
        c.k = integer(j["k"], "k");
        if (!j.contains("delta")) c.delta.reset();
    }
    if (c.delta && c.k) throw ConfigError("k", "give either delta or k, not both");
    if (c.delta && !(*c.delta >= 0.0 && *c.delta * (c.n - 2) < 1.0)) {
        throw ConfigError("delta", "must satisfy 0 <= delta < 1/(n-2)");
    }
    if (c.k && !(2 * *c.k > c.n && *c.k <= c.n)) throw ConfigError("k", "must satisfy n/2 < k <= n");

    if (j.contains("grid")) {
        const Json& g = j["grid"];
        if (!g.is_object()) throw ConfigError("grid", "expected an object");
        reject_unknown(g, "grid.", {"center", "r0", "r_exc", "h"});
        if (g.contains("center")) c.grid_center = numbers(g["center"], "grid.center");
        if (g.contains("r0")) c.r0 = number(g["r0"], "grid.r0");
        if (g.contains("r_exc")) c.r_exc = number(g["r_exc"], "grid.r_exc");
        if (g.contains("h")) c.h = number(g["h"], "grid.h");
    }
    if (c.grid_center.empty()) c.grid_center.assign(static_cast<std::size_t>(c.n), 0.0);
    if (c.grid_center.size() != static_cast<std::size_t>(c.n)) throw ConfigError("grid.center", "length must equal n");
    if (!(c.r0 > 0.0)) throw ConfigError("grid.r0", "must be > 0");
    if (!(c.r_exc >= 0.0 && c.r_exc < c.r0)) throw ConfigError("grid.r_exc", "must satisfy 0 <= r_exc < r0");
    if (!(c.h > 0.0)) throw ConfigError("grid.h", "must be > 0");
    if (c.r0 / c.h > 400.0) throw ConfigError("grid.h", "r0 / h above 400 is not supported");

    if (j.contains("field")) {
        const Json& f = j["field"];
        if (!f.is_object()) throw ConfigError("field", "expected an object");
        reject_unknown(f, "field.", {"catalog", "exponent", "coeff", "value", "center", "slope", "csv"});
        c.field = FieldSpec{};
        if (f.contains("csv")) c.field.csv = text(f["csv"], "field.csv");
        if (f.contains("catalog")) c.field.catalog = text(f["catalog"], "field.catalog");
        if (f.contains("exponent")) c.field.exponent = number(f["exponent"], "field.exponent");
        if (f.contains("coeff")) c.field.coeff = number(f["coeff"], "field.coeff");
        if (f.contains("value")) c.field.value = number(f["value"], "field.value");
        if (f.contains("center")) c.field.center = numbers(f["center"], "field.center");
        if (f.contains("slope")) c.field.slope = numbers(f["slope"], "field.slope");
        if (!f.contains("coeff") && c.field.catalog == "log-singular") c.field.coeff = 2.0;
    }
    if (c.field.csv.empty() == c.field.catalog.empty()) {
        throw ConfigError("field", "give exactly one of field.catalog or field.csv");
    }
    if (!c.field.catalog.empty() && !kCatalog.count(c.field.catalog)) {
        throw ConfigError("field.catalog", "unknown field '" + c.field.catalog + "'");
    }
    if (c.field.center.empty()) c.field.center = c.grid_center;
    if (c.field.center.size() != static_cast<std::size_t>(c.n)) throw ConfigError("field.center", "length must equal n");
    if (c.field.catalog == "linear" && c.field.slope.size() != static_cast<std::size_t>(c.n)) {
        throw ConfigError("field.slope", "linear fields need a slope of length n");
    }
    if (c.field.catalog == "fundamental" && !c.resolved_delta()) {
        throw ConfigError("delta", "required by field 'fundamental'");
    }

    if (j.contains("operations")) {
        const Json& ops = j["operations"];
        if (!ops.is_array()) throw ConfigError("operations", "expected an array of names");
        c.operations.clear();
        for (std::size_t i = 0; i < ops.size(); ++i) c.operations.push_back(text(ops[i], "operations[" + std::to_string(i) + "]"));
    }
    if (c.operations.empty()) throw ConfigError("operations", "at least one operation is required");
    for (std::size_t i = 0; i < c.operations.size(); ++i) {
        const auto& known = known_operations();
        if (std::find(known.begin(), known.end(), c.operations[i]) == known.end()) {
            throw ConfigError("operations[" + std::to_string(i) + "]", "unknown operation '" + c.operations[i] + "'");
        }
    }

    if (j.contains("p")) c.p = number(j["p"], "p");
    if (!(c.p >= 1.0)) throw ConfigError("p", "must be >= 1");
    if (j.contains("mu")) c.mu = number(j["mu"], "mu");
    if (!(c.mu >= 0.0)) throw ConfigError("mu", "must be >= 0");
    if (j.contains("order")) c.order = integer(j["order"], "order");
    if (c.order != 1 && c.order != 2) throw ConfigError("order", "must be 1 or 2");
    if (j.contains("barrier_radius")) c.barrier_radius = number(j["barrier_radius"], "barrier_radius");
    if (c.barrier_radius && !(*c.barrier_radius > 0.0)) throw ConfigError("barrier_radius", "must be > 0");
    if (j.contains("center_value")) c.center_value = number(j["center_value"], "center_value");
    if (j.contains("balls")) c.balls = numbers(j["balls"], "balls");
    for (double b : c.balls) {
        if (!(b > c.r_exc && b <= c.r0)) throw ConfigError("balls", "radii must lie in (r_exc, r0]");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("write_field")) c.write_field = text(j["write_field"], "write_field");

    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
        reject_unknown(t, "tolerances.", {"slope_tol", "deviation_window", "minima_slope_tol", "exponent_tol",
                                          "min_excision_h"});
        if (t.contains("slope_tol")) c.classify.slope_tol = number(t["slope_tol"], "tolerances.slope_tol");
        if (t.contains("deviation_window")) {
            c.classify.deviation_window = number(t["deviation_window"], "tolerances.deviation_window");
        }
        if (t.contains("minima_slope_tol")) {
            c.classify.minima_slope_tol = number(t["minima_slope_tol"], "tolerances.minima_slope_tol");
        }
        if (t.contains("exponent_tol")) c.trend.exponent_tol = number(t["exponent_tol"], "tolerances.exponent_tol");
        if (t.contains("min_excision_h")) {
            c.trend.min_excision_h = number(t["min_excision_h"], "tolerances.min_excision_h");
        }
    }
    if (!(c.classify.slope_tol > 0.0)) throw ConfigError("tolerances.slope_tol", "must be > 0");
    if (!(c.classify.deviation_window > 0.0)) throw ConfigError("tolerances.deviation_window", "must be > 0");
    if (!(c.trend.exponent_tol > 0.0)) throw ConfigError("tolerances.exponent_tol", "must be > 0");
    if (!(c.trend.min_excision_h >= 1.0)) throw ConfigError("tolerances.min_excision_h", "must be >= 1");

    if (j.contains("derivatives")) {
        const std::string d = text(j["derivatives"], "derivatives");
        if (d == "automatic") c.trend.source = DerivativeSource::automatic;
        else if (d == "exact") c.trend.source = DerivativeSource::exact;
        else if (d == "finite-difference") c.trend.source = DerivativeSource::finite_difference;
        else throw ConfigError("derivatives", "expected automatic, exact or finite-difference");
    }
    if (c.trend.source == DerivativeSource::exact && !c.field.csv.empty()) {
        throw ConfigError("derivatives", "exact derivatives are unavailable for CSV fields");
    }

    if (j.contains("expect")) {
        const Json& e = j["expect"];
        if (!e.is_object()) throw ConfigError("expect", "expected an object");
        for (auto it = e.begin(); it != e.end(); ++it) {
            if (it.key() != "classify" && it.key() != "w1p" && it.key() != "volume" && it.key() != "grad-v-ln") {
                throw ConfigError("expect." + it.key(), "only classify, w1p, volume and grad-v-ln take expectations");
            }
            const std::string v = text(it.value(), "expect." + it.key());
            const bool ok = it.key() == "classify"
                                ? (v == "bounded-extendable" || v == "greens-rate" || v == "indeterminate")
                                : (v == "converging" || v == "diverging" || v == "log-diverging" ||
                                   v == "power-diverging");
            if (!ok) throw ConfigError("expect." + it.key(), "unknown verdict '" + v + "'");
            c.expect[it.key()] = v;
        }
    }

    for (const std::string& op : c.operations) {
        if ((op == "barrier" || op == "p-laplacian" || op == "eigen-bounds") && !c.resolved_delta()) {
            throw ConfigError("delta", "required by operation '" + op + "'");
        }
        if (op == "p-laplacian" && !(*c.resolved_delta() > 0.0)) {
            throw ConfigError("delta", "p-laplacian needs delta > 0 (p0 is infinite at 0)");
        }
        if (op == "volume-balls" && c.balls.size() < 3) throw ConfigError("balls", "volume-balls needs three radii");
    }
    for (const auto& [op, verdict] : c.expect) {
        if (std::find(c.operations.begin(), c.operations.end(), op) == c.operations.end()) {
            throw ConfigError("expect." + op, "operation '" + op + "' is not in operations");
        }
    }
    return c;
}

}  // namespace deltacone::cli
