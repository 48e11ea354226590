// deltacone: exponent tables, cone membership, fundamental-solution checks,
// field analysis from a JSON config, radial profiles and the acceptance suite.
//
// Exit codes: 0 pass, 1 quantitative failure, 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deltacone/acceptance.hpp"
#include "deltacone/analysis.hpp"
#include "deltacone/cones.hpp"
#include "deltacone/error.hpp"
#include "deltacone/fields.hpp"
#include "deltacone/radial.hpp"
#include "deltacone/report.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace deltacone;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::stencil:
        case ErrorKind::sampling_failure:
        case ErrorKind::degeneracy:
            return kExitFail;
        default:
            return kExitUsage;
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write " + path);
    os << content;
    if (!os) throw UsageError("failed writing " + path);
}

std::string rational_line(const char* name, const Rational& r) {
    std::ostringstream os;
    os << name << " = " << r.to_string();
    if (!r.is_integer() && !r.is_infinite()) os << " (" << num(r.to_double()).dump() << ")";
    return os.str();
}

// ---------------------------------------------------------------- exponents

struct ExponentsArgs {
    int n = 0;
    std::string delta;
    int k = 0;
    std::string tau;
    bool json = false;
};

int cmd_exponents(const ExponentsArgs& a) {
    if (a.delta.empty() == (a.k == 0)) throw UsageError("give exactly one of --delta or --k");
    if (!a.tau.empty() && a.k == 0) throw UsageError("--tau needs --k");
    if (a.n < 3 || a.n > kMaxDim) throw UsageError("--n must lie in [3, 8]");
    if (a.k != 0 && !(2 * a.k > a.n && a.k <= a.n)) throw UsageError("--k must satisfy n/2 < k <= n");
    const Rational delta = a.k != 0 ? delta_of_k(a.n, a.k) : Rational::parse(a.delta);
    const ExponentTable t = exponents(a.n, delta);

    std::optional<Rational> gt;
    if (!a.tau.empty()) gt = gamma_tau(a.n, a.k, Rational::parse(a.tau));

    if (a.json) {
        Json j = to_json(t);
        if (a.k != 0) j["k"] = a.k;
        if (gt) {
            j["tau"] = to_json(Rational::parse(a.tau));
            j["gamma_tau"] = to_json(*gt);
        }
        std::cout << j.dump(2) << "\n";
        return kExitPass;
    }
    std::cout << "n = " << t.n << "\n";
    if (a.k != 0) std::cout << "k = " << a.k << "\n";
    std::cout << rational_line("delta", t.delta) << "\n"
              << rational_line("gamma", t.gamma) << "\n"
              << rational_line("beta", t.beta) << "\n"
              << rational_line("alpha", t.alpha) << "\n"
              << rational_line("p0", t.p0) << "\n"
              << rational_line("p_delta", t.p_delta) << "\n"
              << rational_line("delta0", t.delta0) << "\n";
    if (gt) {
        std::cout << rational_line("tau", Rational::parse(a.tau)) << "\n" << rational_line("gamma_tau", *gt) << "\n";
    }
    return kExitPass;
}

// ---------------------------------------------------------------- cone-check

struct ConeArgs {
    std::string delta;
    int sigma_k = 0;
    double tol = kDefaultBoundaryTol;
    std::vector<std::string> tuples;
    std::string csv;
};

std::vector<double> parse_tuple(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t\r");
        const auto e = item.find_last_not_of(" \t\r");
        if (b == std::string::npos) throw UsageError("empty entry in tuple '" + text + "'");
        const std::string t = item.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || !std::isfinite(v)) throw UsageError("bad number '" + t + "' in tuple '" + text + "'");
        out.push_back(v);
    }
    if (out.empty() || out.size() > static_cast<std::size_t>(kMaxDim)) {
        throw UsageError("tuple '" + text + "' must have 1..8 entries");
    }
    return out;
}

int cmd_cone_check(const ConeArgs& a) {
    if (a.delta.empty() == (a.sigma_k == 0)) throw UsageError("give exactly one of --delta or --sigma-k");
    if (!(a.tol >= 0.0)) throw UsageError("--tol must be >= 0");
    std::vector<std::string> tuples = a.tuples;
    if (!a.csv.empty()) {
        std::ifstream is(a.csv);
        if (!is) throw UsageError("cannot read " + a.csv);
        std::string line;
        while (std::getline(is, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
            tuples.push_back(line);
        }
    }
    if (tuples.empty()) throw UsageError("no tuples given");

    std::vector<std::vector<double>> parsed;
    for (const std::string& t : tuples) parsed.push_back(parse_tuple(t));
    const double delta = a.delta.empty() ? 0.0 : Rational::parse(a.delta).to_double();
    bool all_closed = true;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const int n = static_cast<int>(parsed[i].size());
        const ConeSpec cone = a.sigma_k != 0 ? ConeSpec::gamma_sigma_k(n, a.sigma_k) : ConeSpec::gamma_delta(n, delta);
        const ConeMargin m = cone_margin(EigenTuple(std::span<const double>(parsed[i])), cone, a.tol);
        std::printf("%s %s margin=%.10g\n", tuples[i].c_str(), to_string(m.verdict), m.margin);
        all_closed = all_closed && m.in_closure();
    }
    return all_closed ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- verify-fundamental

struct FundamentalArgs {
    int n = 3;
    std::string delta;
    int samples = 100;
    std::uint64_t seed = 7;
    double tol = 1e-10;
    std::string report;
};

int cmd_verify_fundamental(const FundamentalArgs& a) {
    const Rational delta = Rational::parse(a.delta);
    const FundamentalReport fr = verify_fundamental(a.n, delta, a.samples, a.seed, a.tol);
    const double gamma = fr.exponents.gamma.to_double();
    std::printf("n=%d delta=%s gamma=%s\n", a.n, delta.to_string().c_str(), fr.exponents.gamma.to_string().c_str());
    std::printf("nonzero eigenvalue = %.17g |x|^(%.17g), multiplicity %d\n", gamma * (2.0 - gamma), gamma - 2.0,
                a.n - 1);
    std::printf("samples=%d max_rel_spectrum_error=%.3e max_abs_F=%.3e max_fd_error=%.3e\n", fr.samples,
                fr.max_spectrum_error, fr.max_abs_F, fr.max_fd_error);
    if (!fr.pass) {
        std::ostringstream os;
        for (int i = 0; i < fr.worst_point.dim(); ++i) os << (i ? "," : "") << num(fr.worst_point[i]).dump();
        std::printf("FAIL worst point (%s)\n", os.str().c_str());
    } else {
        std::printf("PASS\n");
    }
    if (!a.report.empty()) {
        AnalysisReport rep;
        rep.operation = "verify-fundamental";
        rep.inputs = Json{{"n", a.n}, {"delta", delta.to_string()}, {"samples", a.samples}};
        rep.tolerances = Json{{"spectrum", num(fr.tolerance)}, {"fd", num(fr.fd_tolerance)}};
        rep.outputs = to_json(fr);
        rep.pass = fr.pass;
        rep.seed = a.seed;
        write_file(a.report, rep.dump());
    }
    return fr.pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- field-analyze

struct AnalyzeArgs {
    std::string config;
    std::string report;
    std::string csv;
    int n = 3;
    std::string delta;
    int k = 0;
    std::string field;
    std::vector<std::string> ops;
    double h = 0.0;
    double r0 = 0.0;
    double r_exc = -1.0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

AnalyticField make_generator(const cli::RunConfig& c) {
    const cli::FieldSpec& f = c.field;
    const Vector x0{std::span<const double>(f.center)};
    if (f.catalog == "power") return AnalyticField::power(x0, f.exponent, f.coeff);
    if (f.catalog == "fundamental") {
        const double gamma = (1.0 + (2.0 - c.n) * *c.resolved_delta()) / (1.0 + *c.resolved_delta());
        return AnalyticField::power(x0, gamma, f.coeff);
    }
    if (f.catalog == "log-singular") return AnalyticField::log_singular(x0, f.coeff);
    if (f.catalog == "stereographic") return AnalyticField::stereographic(x0, f.coeff);
    if (f.catalog == "constant") return AnalyticField::constant(c.n, f.value);
    return AnalyticField::linear(f.value, Vector{std::span<const double>(f.slope)});
}

ScalarField load_field(const cli::RunConfig& c, bool grid_given) {
    if (c.field.csv.empty()) {
        const Vector o{std::span<const double>(c.grid_center)};
        return ScalarField::sample(GridDomain::punctured_ball(o, c.r0, c.r_exc, c.h), make_generator(c));
    }
    std::ifstream is(c.field.csv);
    if (!is) throw cli::ConfigError("field.csv", "cannot read " + c.field.csv);
    ScalarField f = read_field_csv(is);
    const GridDomain& d = f.domain();
    if (d.dim() != c.n) {
        throw cli::ConfigError("n", "config has n = " + std::to_string(c.n) + " but the CSV field has n = " +
                                        std::to_string(d.dim()));
    }
    if (grid_given) {
        const auto differs = [](double a, double b) { return std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(b)); };
        if (differs(d.h(), c.h)) throw cli::ConfigError("grid.h", "does not match the CSV field");
        if (differs(d.r0(), c.r0)) throw cli::ConfigError("grid.r0", "does not match the CSV field");
        if (differs(d.r_exc(), c.r_exc)) throw cli::ConfigError("grid.r_exc", "does not match the CSV field");
    }
    return f;
}

bool verdict_matches(const std::string& expected, const std::string& got) {
    if (expected == "diverging") return got == "log-diverging" || got == "power-diverging";
    return expected == got;
}

struct DiagRow {
    std::string operation;
    std::string series;
    double x;
    double y;
};

int cmd_field_analyze(const AnalyzeArgs& a, const CLI::App& sub) {
    cli::RunConfig base;
    base.n = a.n;
    if (sub.count("--delta")) base.delta = Rational::parse(a.delta).to_double();
    if (sub.count("--k")) base.k = a.k;
    if (sub.count("--field")) base.field.catalog = a.field;
    if (!a.ops.empty()) base.operations = a.ops;
    if (sub.count("--grid-h")) base.h = a.h;
    if (sub.count("--r0")) base.r0 = a.r0;
    if (sub.count("--r-exc")) base.r_exc = a.r_exc;
    if (sub.count("--p")) base.p = a.p;
    base.seed = a.seed;

    Json raw = Json::object();
    if (!a.config.empty()) {
        std::ifstream is(a.config);
        if (!is) throw UsageError("cannot read " + a.config);
        try {
            raw = Json::parse(is, nullptr, true, true);
        } catch (const Json::parse_error& e) {
            throw UsageError("config is not valid JSON: " + std::string(e.what()));
        }
    }
    const cli::RunConfig c = cli::parse_run_config(raw, base);
    const bool grid_given = raw.is_object() && raw.contains("grid");

    const ScalarField field = load_field(c, grid_given);
    if (!c.write_field.empty()) {
        std::ostringstream os;
        write_field_csv(os, field);
        write_file(c.write_field, os.str());
    }
    const GridDomain& dom = field.domain();
    const Vector y = dom.center();

    AnalysisReport rep;
    rep.operation = "field-analyze";
    rep.inputs = c.to_json();
    if (!c.field.csv.empty()) {
        std::ostringstream os;
        write_field_csv(os, field);
        rep.inputs["field_digest"] = "fnv1a64:" + hex64(fnv1a64(os.str()));
    }
    rep.inputs["active_nodes"] = dom.active_count();
    rep.seed = c.seed;
    rep.tolerances = Json{{"slope_tol", num(c.classify.slope_tol)},
                          {"deviation_window", num(c.classify.deviation_window)},
                          {"minima_slope_tol", num(c.classify.minima_slope_tol)},
                          {"min_shells", c.classify.min_shells},
                          {"exponent_tol", num(c.trend.exponent_tol)},
                          {"min_excision_h", num(c.trend.min_excision_h)},
                          {"scale_growth_tol", 0.1},
                          {"barrier_tau", num(fd_cone_tolerance(dom.h()))},
                          {"derivatives", to_string(c.trend.source)}};

    std::vector<DiagRow> diag;
    bool pass = true;
    const auto expect = [&](const std::string& op, const std::string& got, Json& out) {
        const auto it = c.expect.find(op);
        if (it == c.expect.end()) return;
        const bool ok = verdict_matches(it->second, got);
        out["expected"] = it->second;
        out["expectation_met"] = ok;
        pass = pass && ok;
    };

    for (const std::string& op : c.operations) {
        Json out;
        std::string line;
        if (op == "holder") {
            const HolderEstimate e = holder_exponent(field, y, 0.0, c.center_value);
            out = to_json(e);
            for (std::size_t i = 0; i < e.radii.size(); ++i) diag.push_back({op, "oscillation", e.radii[i], e.oscillations[i]});
            line = "exponent " + num(e.exponent).dump() + ", seminorm " + num(e.seminorm).dump();
        } else if (op == "w1p") {
            const IntegralTrend t = w1p_norm(field, c.p, c.trend);
            out = to_json(t);
            out["p"] = num(c.p);
            for (std::size_t i = 0; i < t.excisions.size(); ++i) diag.push_back({op, "excised_integral", t.excisions[i], t.values[i]});
            expect(op, to_string(t.verdict), out);
            line = std::string(to_string(t.verdict)) + ", value " + num(t.value).dump() + ", exponent " + num(t.exponent).dump();
        } else if (op == "grad-v-ln") {
            const IntegralTrend t = grad_v_ln_norm(field, c.trend);
            out = to_json(t);
            for (std::size_t i = 0; i < t.excisions.size(); ++i) diag.push_back({op, "excised_integral", t.excisions[i], t.values[i]});
            expect(op, to_string(t.verdict), out);
            line = std::string(to_string(t.verdict)) + ", value " + num(t.value).dump();
        } else if (op == "classify") {
            const SingularityVerdict v = singularity_classify(field, c.classify);
            out = to_json(v);
            for (const ShellStats& s : v.shells) {
                diag.push_back({op, "mean_u", s.mean_log_d, s.mean_u});
                diag.push_back({op, "min_u", s.mean_log_d, s.min_u});
                diag.push_back({op, "max_u", s.mean_log_d, s.max_u});
            }
            expect(op, to_string(v.verdict), out);
            line = std::string(to_string(v.verdict)) + ", slope " + num(v.slope).dump();
        } else if (op == "scale-check") {
            const ScaleInvariantReport s = scale_invariant_check(field, c.order, c.trend.source);
            out = to_json(s);
            for (std::size_t i = 0; i < s.shell_radii.size(); ++i) diag.push_back({op, "shell_sup", s.shell_radii[i], s.shell_sups[i]});
            pass = pass && s.pass;
            line = "sup " + num(s.sup).dump() + (s.pass ? ", bounded" : ", growing");
        } else if (op == "volume" || op == "volume-balls") {
            if (op == "volume") {
                const IntegralTrend t = volume_integral(field, c.trend);
                out = to_json(t);
                for (std::size_t i = 0; i < t.excisions.size(); ++i) diag.push_back({op, "excised_integral", t.excisions[i], t.values[i]});
                expect(op, to_string(t.verdict), out);
                line = std::string(to_string(t.verdict)) + ", value " + num(t.value).dump();
            }
            if (!c.balls.empty() && (op == "volume-balls" || c.balls.size() >= 3)) {
                const GrowingBallsReport g = volume_growing_balls(field, c.balls, c.trend.exponent_tol);
                Json gj = to_json(g);
                for (std::size_t i = 0; i < g.radii.size(); ++i) diag.push_back({op, "ball_integral", g.radii[i], g.values[i]});
                if (op == "volume") {
                    out["growing_balls"] = gj;
                } else {
                    out = gj;
                    line = std::string(g.converging ? "converging" : "not converging") + ", value " + num(g.value).dump();
                }
            }
        } else if (op == "p-laplacian") {
            const PLaplacianReport r = p_laplacian_defect(field, *c.resolved_delta(), c.mu, c.trend.source);
            out = to_json(r);
            pass = pass && r.pass;
            line = "checked " + std::to_string(r.checked) + ", min slack " + num(r.min_slack).dump();
        } else if (op == "barrier") {
            const double radius = c.barrier_radius.value_or(c.r0);
            const BarrierReport b = barrier_oscillation_check(field, *c.resolved_delta(), y, radius, -1.0, c.trend.source,
                                                                c.center_value);
            out = to_json(b);
            pass = pass && b.pass;
            line = "max excess " + num(b.max_excess).dump() + (b.precondition_ok ? "" : ", precondition failed");
        } else if (op == "eigen-bounds") {
            const EigenBoundsFieldReport r = hessian_eigen_bounds_field(field, *c.resolved_delta(), c.mu, c.trend.source);
            out = to_json(r);
            pass = pass && r.pass;
            line = "checked " + std::to_string(r.checked) + ", min slack " + num(r.min_slack).dump();
        }
        rep.outputs[op] = out;
        std::printf("%-13s %s\n", op.c_str(), line.c_str());
    }
    rep.pass = pass;

    if (!a.csv.empty()) {
        std::ostringstream os;
        os << "operation,series,x,y\n";
        for (const DiagRow& r : diag) os << r.operation << "," << r.series << "," << num(r.x).dump() << "," << num(r.y).dump() << "\n";
        write_file(a.csv, os.str());
    }
    if (!a.report.empty()) write_file(a.report, rep.dump());
    std::printf("%s\n", pass ? "PASS" : "FAIL");
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- radial

struct RadialArgs {
    int n = 3;
    int k = 2;
    int l = 0;
    double f = 0.0;
    double r = 1.0;
    double u = 0.0;
    double du = 0.0;
    double r_end = 1e-3;
    double step = 1e-3;
    std::string out;
};

int cmd_radial(const RadialArgs& a) {
    if (a.n < 3 || a.n > kMaxDim) throw UsageError("--n must lie in [3, 8]");
    if (!(a.k >= 1 && a.k <= a.n)) throw UsageError("--k must lie in [1, n]");
    if (a.l != 0 && !(a.l >= 1 && a.l < a.k)) throw UsageError("--l must satisfy 1 <= l < k");
    if (!(a.r > 0.0 && a.r_end > 0.0)) throw UsageError("radii must be > 0");
    if (!(a.step > 0.0)) throw UsageError("--step must be > 0");
    const RadialOperator op = a.l == 0 ? RadialOperator{SigmaKOp{a.k}} : RadialOperator{QuotientOp{a.k, a.l}};
    const RadialProfile prof = radial_ode_solve(op, a.f, a.n, RadialInitial{a.r, a.u, a.du}, a.r_end, {a.step});
    std::printf("points %zu, r in [%.6g, %.6g], u in [%.6g, %.6g]\n", prof.size(), prof.r.front(), prof.r.back(),
                prof.u.front(), prof.u.back());
    if (prof.r.front() <= prof.r.back() / 16.0) {
        const SingularityVerdict v = classify_radial(prof);
        std::printf("classify %s, slope %.6g\n", to_string(v.verdict), v.slope);
    }
    if (!a.out.empty()) {
        std::ostringstream os;
        write_profile_csv(os, prof);
        write_file(a.out, os.str());
    }
    return kExitPass;
}

// ---------------------------------------------------------------- suite

int cmd_suite(const std::string& profile_name, std::uint64_t seed, const std::string& out_dir) {
    const SuiteProfile profile = parse_profile(profile_name);
    if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw UsageError("cannot create " + out_dir + ": " + ec.message());
    }
    int failed = 0;
    run_acceptance(profile, seed, [&](const CriterionResult& r) {
        std::printf("%s [%2d] %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str(),
                    r.report.runtime_seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
        if (!out_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "criterion-%02d.json", r.id);
            write_file((fs::path(out_dir) / name).string(), r.report.dump());
        }
    });
    std::printf("%d/%d criteria passed (profile %s, seed %llu)\n", kCriterionCount - failed, kCriterionCount,
                to_string(profile), static_cast<unsigned long long>(seed));
    return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deltacone: delta-convex cones, exponents and field diagnostics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "deltacone 1.0.0");

    ExponentsArgs ex;
    auto* s_ex = app.add_subcommand("exponents", "Exponent table for (n, delta) or (n, k), with optional tau");
    s_ex->add_option("--n", ex.n, "Dimension")->required();
    s_ex->add_option("--delta", ex.delta, "delta as p/q or decimal");
    s_ex->add_option("--k", ex.k, "sigma_k index; delta = (n-k)/(n(k-1))");
    s_ex->add_option("--tau", ex.tau, "tau for the sigma_k(A^tau) family");
    s_ex->add_flag("--json", ex.json, "Print JSON");

    ConeArgs cc;
    auto* s_cc = app.add_subcommand("cone-check", "Classify eigenvalue tuples against a cone");
    s_cc->add_option("--delta", cc.delta, "Gamma_delta parameter");
    s_cc->add_option("--sigma-k", cc.sigma_k, "Garding cone index k");
    s_cc->add_option("--tol", cc.tol, "Boundary tolerance on the normalized margin");
    s_cc->add_option("--csv", cc.csv, "File with one comma-separated tuple per line");
    s_cc->add_option("tuples", cc.tuples, "Tuples such as 1,1,1");

    FundamentalArgs fa;
    auto* s_fa = app.add_subcommand("verify-fundamental", "Check the spectrum of D^2|x|^gamma + delta lap I");
    s_fa->add_option("--n", fa.n, "Dimension")->required();
    s_fa->add_option("--delta", fa.delta, "delta as p/q or decimal")->required();
    s_fa->add_option("--samples", fa.samples, "Random points");
    s_fa->add_option("--seed", fa.seed, "RNG seed");
    s_fa->add_option("--tol", fa.tol, "Relative spectrum tolerance");
    s_fa->add_option("--report", fa.report, "Write a JSON report");

    AnalyzeArgs an;
    auto* s_an = app.add_subcommand("field-analyze", "Run analyses on a sampled or CSV field");
    s_an->add_option("--config", an.config, "JSON config (overrides flags)");
    s_an->add_option("--report", an.report, "Write the JSON report here");
    s_an->add_option("--csv", an.csv, "Write plot-ready diagnostics here");
    s_an->add_option("--n", an.n, "Dimension");
    s_an->add_option("--delta", an.delta, "delta");
    s_an->add_option("--k", an.k, "sigma_k index");
    s_an->add_option("--field", an.field, "Catalog field name");
    s_an->add_option("--ops", an.ops, "Operations")->delimiter(',');
    s_an->add_option("--grid-h", an.h, "Grid spacing");
    s_an->add_option("--r0", an.r0, "Outer radius");
    s_an->add_option("--r-exc", an.r_exc, "Excision radius");
    s_an->add_option("--p", an.p, "Exponent for w1p");
    s_an->add_option("--seed", an.seed, "Seed recorded in the report");

    RadialArgs ra;
    auto* s_ra = app.add_subcommand("radial", "Integrate a radial sigma_k or quotient equation and write a profile");
    s_ra->add_option("--n", ra.n, "Dimension");
    s_ra->add_option("--k", ra.k, "sigma_k index");
    s_ra->add_option("--l", ra.l, "Quotient denominator index (0 for sigma_k)");
    s_ra->add_option("--f", ra.f, "Right-hand side constant f");
    s_ra->add_option("--r", ra.r, "Initial radius");
    s_ra->add_option("--u", ra.u, "u at the initial radius");
    s_ra->add_option("--du", ra.du, "u' at the initial radius");
    s_ra->add_option("--r-end", ra.r_end, "Final radius");
    s_ra->add_option("--step", ra.step, "RK4 step in log r");
    s_ra->add_option("--out", ra.out, "CSV output (r,u,du,d2u)");

    std::string profile = "fast";
    std::uint64_t suite_seed = 7;
    std::string out_dir;
    auto* s_su = app.add_subcommand("suite", "Run the acceptance suite");
    s_su->add_option("--profile", profile, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    s_su->add_option("--seed", suite_seed, "Seed");
    s_su->add_option("--out", out_dir, "Directory for criterion-XX.json reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*s_ex) return cmd_exponents(ex);
        if (*s_cc) return cmd_cone_check(cc);
        if (*s_fa) return cmd_verify_fundamental(fa);
        if (*s_an) return cmd_field_analyze(an, *s_an);
        if (*s_ra) return cmd_radial(ra);
        if (*s_su) return cmd_suite(profile, suite_seed, out_dir);
    } catch (const cli::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
