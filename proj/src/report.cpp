#include "deltacone/report.hpp"

#include <cmath>
#include <cstdio>

namespace deltacone {

Json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Json AnalysisReport::to_json() const {
    Json j;
    j["schema"] = kReportSchema;
    j["operation"] = operation;
    j["inputs"] = inputs;
    j["inputs_digest"] = "fnv1a64:" + hex64(fnv1a64(inputs.dump()));
    j["tolerances"] = tolerances;
    j["outputs"] = outputs;
    j["pass"] = pass;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    return j;
}

std::string AnalysisReport::dump() const { return to_json().dump(2) + "\n"; }

Json to_json(const Rational& r) {
    return Json{{"exact", r.to_string()}, {"decimal", num(r.to_double())}};
}

Json to_json(const EigenTuple& e) {
    Json a = Json::array();
    for (double v : e.values()) a.push_back(num(v));
    return a;
}

Json to_json(const ExponentTable& t) {
    Json j;
    j["n"] = t.n;
    j["delta"] = to_json(t.delta);
    j["gamma"] = to_json(t.gamma);
    j["beta"] = to_json(t.beta);
    j["alpha"] = to_json(t.alpha);
    j["p0"] = to_json(t.p0);
    j["p_delta"] = to_json(t.p_delta);
    j["delta0"] = to_json(t.delta0);
    return j;
}

Json to_json(const ConeMargin& m) {
    return Json{{"margin", num(m.margin)}, {"verdict", to_string(m.verdict)}, {"tolerance", num(m.tolerance)}};
}

Json to_json(const InclusionReport& r) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["delta"] = to_json(r.delta);
    j["samples"] = r.samples;
    j["draws"] = r.draws;
    j["min_margin"] = num(r.min_margin);
    j["worst"] = to_json(r.worst);
    j["violations"] = r.violations;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const HolderEstimate& e) {
    Json j;
    j["exponent"] = num(e.exponent);
    j["seminorm"] = num(e.seminorm);
    j["residual"] = num(e.residual);
    j["r_min"] = num(e.r_min);
    j["r_max"] = num(e.r_max);
    j["constant_field"] = e.constant_field;
    Json rows = Json::array();
    for (std::size_t i = 0; i < e.radii.size(); ++i) rows.push_back({num(e.radii[i]), num(e.oscillations[i])});
    j["radius_oscillation"] = rows;
    return j;
}

Json to_json(const BarrierReport& r) {
    Json j;
    j["gamma"] = num(r.gamma);
    j["radius"] = num(r.radius);
    j["oscillation"] = num(r.oscillation);
    j["checked"] = r.checked;
    j["max_excess"] = num(r.max_excess);
    j["precondition_ok"] = r.precondition_ok;
    j["precondition_failures"] = r.precondition_failures.size();
    j["pass"] = r.pass;
    return j;
}

Json to_json(const IntegralTrend& t) {
    Json j;
    j["value"] = num(t.value);
    j["verdict"] = to_string(t.verdict);
    j["exponent"] = num(t.exponent);
    j["rate"] = num(t.rate);
    Json rows = Json::array();
    for (const ShellIncrement& s : t.shells) rows.push_back({num(s.r_inner), num(s.r_outer), num(s.increment)});
    j["shells"] = rows;
    return j;
}

Json to_json(const GrowingBallsReport& r) {
    Json j;
    j["value"] = num(r.value);
    j["tail_exponent"] = num(r.tail_exponent);
    j["converging"] = r.converging;
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.radii.size(); ++i) rows.push_back({num(r.radii[i]), num(r.values[i])});
    j["radius_value"] = rows;
    return j;
}

Json to_json(const SingularityVerdict& v) {
    Json j;
    j["verdict"] = to_string(v.verdict);
    j["slope"] = num(v.slope);
    j["intercept"] = num(v.intercept);
    j["fit_residual"] = num(v.fit_residual);
    j["sup_deviation"] = num(v.sup_deviation);
    j["sup_abs_psi"] = num(v.sup_abs_psi);
    j["minima_slope"] = num(v.minima_slope);
    j["min_u"] = num(v.min_u);
    Json rows = Json::array();
    for (const ShellStats& s : v.shells) {
        rows.push_back(Json{{"r_inner", num(s.r_inner)},
                            {"r_outer", num(s.r_outer)},
                            {"count", s.count},
                            {"mean_u", num(s.mean_u)},
                            {"min_u", num(s.min_u)},
                            {"max_u", num(s.max_u)},
                            {"min_psi", num(s.min_psi)},
                            {"max_psi", num(s.max_psi)}});
    }
    j["shells"] = rows;
    j["notes"] = v.notes;
    return j;
}

Json to_json(const ScaleInvariantReport& r) {
    Json j;
    j["order"] = r.order;
    j["sup"] = num(r.sup);
    j["inf"] = num(r.inf);
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.shell_radii.size(); ++i) rows.push_back({num(r.shell_radii[i]), num(r.shell_sups[i])});
    j["shell_sups"] = rows;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const PLaplacianReport& r) {
    Json j;
    j["p0"] = num(r.p0);
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    j["max_abs_divergence"] = num(r.max_abs_divergence);
    j["min_slack"] = num(r.min_slack);
    j["violations"] = r.violations;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const EigenBoundsFieldReport& r) {
    return Json{{"checked", r.checked},
                {"skipped", r.skipped},
                {"violations", r.violations},
                {"min_slack", num(r.min_slack)},
                {"pass", r.pass}};
}

Json to_json(const MollifiedConeReport& r) {
    Json j;
    j["mollifier_scale"] = num(r.mollifier_scale);
    j["input_nodes"] = r.input_nodes;
    j["output_nodes"] = r.output_nodes;
    j["min_input_margin"] = num(r.min_input_margin);
    j["min_output_margin"] = num(r.min_output_margin);
    j["precondition_ok"] = r.precondition_ok;
    j["input_failures"] = r.input_failures.size();
    j["pass"] = r.pass;
    return j;
}

Json to_json(const InversionReport& r) {
    return Json{{"dim", r.dim},
                {"points", r.points},
                {"max_pullback_deviation", num(r.max_pullback_deviation)},
                {"max_involution_error", num(r.max_involution_error)},
                {"pass", r.pass}};
}

Json to_json(const GrowthConsistency& r) {
    return Json{{"bound", num(r.bound)}, {"max_excess", num(r.max_excess)}, {"pass", r.pass}};
}

}  // namespace deltacone
