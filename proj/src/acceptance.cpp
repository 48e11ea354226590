#include "deltacone/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "deltacone/conformal.hpp"
#include "deltacone/error.hpp"
#include "deltacone/random.hpp"

namespace deltacone {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix(std::uint64_t seed, int id) { return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(id); }

Vector random_direction(Rng& rng, int n) {
    Vector x(n);
    double norm = 0.0;
    while (!(norm > 1e-8)) {
        for (int i = 0; i < n; ++i) x[i] = rng.normal();
        norm = x.norm();
    }
    return x * (1.0 / norm);
}

Frame random_frame(Rng& rng, int n) {
    Frame q(n);
    for (int j = 0; j < n; ++j) {
        for (;;) {
            Vector c = random_direction(rng, n);
            for (int pass = 0; pass < 2; ++pass) {  // twice: one pass loses orthogonality
                for (int p = 0; p < j; ++p) {
                    const Vector prev = q.column(p);
                    c -= prev * prev.dot(c);
                }
            }
            const double norm = c.norm();
            if (norm < 1e-6) continue;
            for (int i = 0; i < n; ++i) q(i, j) = c[i] / norm;
            break;
        }
    }
    return q;
}

SymTensor random_symmetric(Rng& rng, int n, double scale) {
    SymTensor s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) s.set(i, j, scale * rng.normal());
    }
    return s;
}

EigenTuple random_tuple(Rng& rng, int n) {
    std::array<double, kMaxDim> v{};
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
    return EigenTuple(std::span<const double>(v.data(), static_cast<std::size_t>(n)));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CriterionResult finish(int id, std::string name, AnalysisReport rep, std::string summary) {
    CriterionResult c;
    c.id = id;
    c.name = std::move(name);
    c.pass = rep.pass;
    c.summary = std::move(summary);
    c.report = std::move(rep);
    return c;
}

AnalysisReport make_report(int id, std::uint64_t seed, SuiteProfile profile) {
    AnalysisReport r;
    r.operation = "acceptance-" + std::to_string(id);
    r.seed = seed;
    r.inputs["profile"] = to_string(profile);
    return r;
}

// ---------------------------------------------------------------- 1

CriterionResult fundamental_solution(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(1, seed, profile);
    rep.tolerances["spectrum_relative"] = 1e-10;
    rep.tolerances["F_abs"] = 1e-10;
    Json runs = Json::array();
    bool pass = true;
    double worst = 0.0;
    double worst_f = 0.0;
    for (int n : {3, 4, 5}) {
        std::vector<Rational> deltas{Rational(0), Rational(1, 8)};
        if (n == 3) deltas.emplace_back(1, 3);
        deltas.push_back(Rational(1, n - 2) - Rational(1, 100));
        for (const Rational& d : deltas) {
            const FundamentalReport fr = verify_fundamental(n, d, 100, mix(seed, n * 1000 + static_cast<int>(d.num())));
            runs.push_back(to_json(fr));
            pass = pass && fr.pass;
            worst = std::max(worst, fr.max_spectrum_error);
            worst_f = std::max(worst_f, fr.max_abs_F);
        }
    }
    rep.inputs["points_per_case"] = 100;
    rep.outputs["cases"] = runs;
    rep.outputs["max_spectrum_error"] = num(worst);
    rep.outputs["max_abs_F"] = num(worst_f);
    rep.pass = pass;
    return finish(1, "fundamental solution spectrum", std::move(rep),
                  "max rel spectrum err " + fmt(worst) + ", max |F| " + fmt(worst_f));
}

// ---------------------------------------------------------------- 2

CriterionResult cone_inclusion(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(2, seed, profile);
    const std::int64_t samples = profile == SuiteProfile::full ? 100000 : 10000;
    rep.inputs["samples_per_case"] = samples;
    rep.tolerances["margin"] = 1e-9;
    rep.tolerances["extremal"] = 1e-12;
    Json runs = Json::array();
    bool pass = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int n : {3, 4, 5}) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            const InclusionReport ir = inclusion_sample_test(n, k, samples, mix(seed, 10 * n + k), 1e-9);
            runs.push_back(to_json(ir));
            pass = pass && ir.pass;
            min_margin = std::min(min_margin, ir.min_margin);
        }
    }
    const double extremal = gamma_delta_margin(EigenTuple{2.0, 2.0, -1.0}, delta_of_k(3, 2).to_double()).margin;
    pass = pass && std::abs(extremal) <= 1e-12;
    rep.outputs["cases"] = runs;
    rep.outputs["min_margin"] = num(min_margin);
    rep.outputs["extremal_margin"] = num(extremal);
    rep.pass = pass;
    return finish(2, "sigma_k cone inside Gamma_delta(k,n)", std::move(rep),
                  "min margin " + fmt(min_margin) + ", extremal (2,2,-1) margin " + fmt(extremal));
}

// ---------------------------------------------------------------- 3

CriterionResult exponent_identities(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(3, seed, profile);
    rep.tolerances["exact"] = 0;
    int cases = 0;
    Json failures = Json::array();
    for (int n = 3; n <= 8; ++n) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            ++cases;
            const ExponentTable t = exponents(n, delta_of_k(n, k));
            const bool ok_gamma = t.gamma == Rational(2) - Rational(n, k);
            const bool ok_pd = k == n ? t.p_delta.is_infinite() : t.p_delta == Rational(n * k, n - k);
            const bool ok_p0 = k == n ? t.p0.is_infinite()
                                      : t.p_delta == Rational(n) * (t.p0 - Rational(1)) / Rational(n - 1);
            const bool ok_beta = t.beta == t.gamma / Rational(2);
            const bool ok_d0 = Rational(2) * t.delta0 == Rational(1) + Rational(2 - n) * t.delta;
            if (!(ok_gamma && ok_pd && ok_p0 && ok_beta && ok_d0)) {
                failures.push_back(Json{{"n", n}, {"k", k}});
            }
        }
    }
    rep.outputs["cases"] = cases;
    rep.outputs["failures"] = failures;
    rep.pass = failures.empty();
    return finish(3, "exact exponent identities", std::move(rep),
                  std::to_string(cases) + " (n,k) cases, " + std::to_string(failures.size()) + " failures");
}

// ---------------------------------------------------------------- 4

CriterionResult transform_convexity(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(4, seed, profile);
    const int configs = profile == SuiteProfile::full ? 10000 : 1000;
    rep.inputs["configs_per_case"] = configs;
    rep.tolerances["margin"] = 1e-9;
    Rng rng(mix(seed, 4));
    double min_margin = std::numeric_limits<double>::infinity();
    std::int64_t total = 0;
    std::int64_t rejected = 0;
    for (int n : {3, 4, 5}) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            const ExponentTable t = exponents(n, delta_of_k(n, k));
            const double delta = t.delta.to_double();
            const double beta = t.beta.to_double();
            for (int c = 0; c < configs; ++c) {
                EigenTuple target = random_tuple(rng, n);
                while (gamma_sigmak_margin(target, k).verdict != ConeVerdict::strict_interior) {
                    target = random_tuple(rng, n);
                }
                ConformalPointData p;
                p.u = rng.uniform(-1.0, 1.0);
                p.grad_u = random_direction(rng, n) * rng.uniform(0.0, 2.0);
                p.hess_u = random_symmetric(rng, n, 1.0);
                const SymTensor au = spectral_assemble(target, random_frame(rng, n));
                p.A = au - (p.hess_u + SymTensor::outer(p.grad_u) -
                            SymTensor::identity(n) * (0.5 * p.grad_u.norm_squared()));
                const EigenTuple lam = eigenvalues(conformal_change(p));
                if (admissibility_classify(lam, ConeSpec::gamma_sigma_k(n, k)) == Admissibility::inadmissible) {
                    ++rejected;
                    continue;
                }
                const double v = v_transform(p.u, beta);
                const SymTensor hess_v = (p.hess_u + SymTensor::outer(p.grad_u) * beta) * (beta * v);
                const SymTensor m = hessian_v_cone_form(p.A, beta, v, hess_v);
                min_margin = std::min(min_margin, gamma_delta_margin(eigenvalues(m), delta).margin);
                ++total;
            }
        }
    }

    // Model: u = 2 log|x| on flat space gives v = |x|^gamma on the cone boundary.
    double max_model = 0.0;
    for (int n : {3, 4, 5}) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            const ExponentTable t = exponents(n, delta_of_k(n, k));
            const double delta = t.delta.to_double();
            const double gamma = t.gamma.to_double();
            const double beta = t.beta.to_double();
            const Vector o(n);
            const AnalyticField u = AnalyticField::log_singular(o, 2.0);
            const AnalyticField vexact = AnalyticField::power(o, gamma);
            for (int s = 0; s < 50; ++s) {
                const Vector x = random_direction(rng, n) * rng.uniform(0.1, 3.0);
                const double v = v_transform(u.value(x), beta);
                const Vector gu = u.gradient(x);
                const SymTensor hv = (u.hessian(x) + SymTensor::outer(gu) * beta) * (beta * v);
                const double m1 = gamma_delta_margin(eigenvalues(hessian_v_cone_form(SymTensor(n), beta, v, hv)), delta).margin;
                const double m2 = gamma_delta_margin(eigenvalues(vexact.hessian(x)), delta).margin;
                max_model = std::max({max_model, std::abs(m1), std::abs(m2)});
            }
        }
    }
    rep.outputs["configs_checked"] = total;
    rep.outputs["configs_rejected"] = rejected;
    rep.outputs["min_margin"] = num(min_margin);
    rep.outputs["model_max_abs_margin"] = num(max_model);
    rep.pass = min_margin >= -1e-9 && max_model <= 1e-9;
    return finish(4, "v = exp(beta u) is delta-convex", std::move(rep),
                  "min margin " + fmt(min_margin) + " over " + std::to_string(total) + " configs, model |margin| " +
                      fmt(max_model));
}

// ---------------------------------------------------------------- 5

CriterionResult holder_estimator(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(5, seed, profile);
    const Vector o(3);
    const double delta = 1.0 / 3.0;
    const double gamma = 0.5;
    const double h = 2.0 / 64.0;
    const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.0, h);
    const ScalarField w = ScalarField::sample(g, AnalyticField::power(o, gamma));
    const HolderEstimate est = holder_exponent(w, o);
    const BarrierReport br = barrier_oscillation_check(w, delta, o, 1.0);
    rep.inputs["field"] = "|x|^gamma";
    rep.inputs["n"] = 3;
    rep.inputs["delta"] = "1/3";
    rep.inputs["h"] = h;
    rep.tolerances["exponent"] = 0.02;
    rep.tolerances["barrier_abs"] = num(br.tolerance);
    rep.outputs["holder"] = to_json(est);
    rep.outputs["barrier"] = to_json(br);
    rep.pass = std::abs(est.exponent - gamma) <= 0.02 && br.pass;
    return finish(5, "Holder exponent of |x|^gamma at 64^3", std::move(rep),
                  "fitted " + fmt(est.exponent) + " vs 0.5, barrier excess " + fmt(br.max_excess));
}

// ---------------------------------------------------------------- 6

CriterionResult w1p_threshold(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(6, seed, profile);
    const Vector o(3);
    const double p_delta = 6.0;
    const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.0, 2.0 / 64.0);
    const ScalarField w = ScalarField::sample(g, AnalyticField::power(o, 0.5));
    Json scan = Json::array();
    std::vector<bool> conv;
    std::vector<double> ps;
    for (int i = 0; i <= 10; ++i) {
        const double p = p_delta - 0.25 + 0.05 * i;
        const IntegralTrend t = w1p_norm(w, p);
        ps.push_back(p);
        conv.push_back(t.verdict == TrendVerdict::converging);
        scan.push_back(Json{{"p", num(p)}, {"exponent", num(t.exponent)}, {"verdict", to_string(t.verdict)}});
    }
    int flips = 0;
    double flip_at = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < conv.size(); ++i) {
        if (conv[i] != conv[i - 1]) {
            ++flips;
            flip_at = 0.5 * (ps[i] + ps[i - 1]);
        }
    }
    rep.inputs["p_delta"] = p_delta;
    rep.tolerances["bracket"] = 0.25;
    rep.tolerances["exponent_tol"] = TrendOptions{}.exponent_tol;
    rep.outputs["scan"] = scan;
    rep.outputs["flip_at"] = num(flip_at);
    rep.pass = conv.front() && !conv.back() && flips == 1;
    return finish(6, "W^{1,p} verdict flips at p_delta", std::move(rep),
                  "converging -> diverging between p = " + fmt(flip_at - 0.025) + " and " + fmt(flip_at + 0.025));
}

// ---------------------------------------------------------------- 7

CriterionResult mollification(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(7, seed, profile);
    const Vector o(3);
    const double h = 1.0 / 32.0;
    const double delta = 1.0 / 3.0;
    const double beta = 0.25;
    const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.25, h);
    const ScalarField c = ScalarField::sample(g, AnalyticField::constant(3, 3.7));
    const Vector b{0.3, -1.2, 0.7};
    const AnalyticField lin_gen = AnalyticField::linear(1.0, b);
    const ScalarField lin = ScalarField::sample(g, lin_gen);

    SymTensor a(3);
    a.set(0, 0, 0.5);
    a.set(1, 1, -0.3);
    a.set(2, 2, 0.2);
    a.set(0, 1, 0.1);
    const ScalarField v = ScalarField::sample(g, AnalyticField::power(o, 0.5));
    const LiftResult lift = lambda_lift(v, [&](const Vector&) { return a; }, beta, 0.1);

    double max_const = 0.0;
    double max_lin = 0.0;
    double min_out = std::numeric_limits<double>::infinity();
    bool cones_ok = true;
    Json scales = Json::array();
    for (double hm : {2.0 * h, 3.0 * h}) {
        const MollifierSpec rho(3, hm);
        const ScalarField cm = mollify(c, rho);
        const ScalarField lm = mollify(lin, rho);
        for (std::size_t node = 0; node < cm.domain().box_size(); ++node) {
            if (!cm.domain().active(node)) continue;
            max_const = std::max(max_const, std::abs(cm[node] - 3.7));
            max_lin = std::max(max_lin, std::abs(lm[node] - lin_gen.value(g.position(node))));
        }
        const MollifiedConeReport mr = mollified_hessian_cone_check(lift.field, delta, rho, 1e-10);
        scales.push_back(to_json(mr));
        cones_ok = cones_ok && mr.pass;
        min_out = std::min(min_out, mr.min_output_margin);
    }
    rep.inputs["annulus"] = Json{{"r_exc", 0.25}, {"r0", 1.0}, {"h", h}};
    rep.inputs["lambda"] = num(lift.lambda);
    rep.tolerances["reproduction"] = 1e-12;
    rep.tolerances["margin"] = 1e-10;
    rep.outputs["max_constant_error"] = num(max_const);
    rep.outputs["max_linear_error"] = num(max_lin);
    rep.outputs["scales"] = scales;
    rep.pass = max_const <= 1e-12 && max_lin <= 1e-12 && cones_ok && min_out >= -1e-10;
    return finish(7, "mollification reproduces affine fields and keeps the cone", std::move(rep),
                  "const err " + fmt(max_const) + ", linear err " + fmt(max_lin) + ", min output margin " + fmt(min_out));
}

// ---------------------------------------------------------------- 8

CriterionResult p_laplacian(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(8, seed, profile);
    const Vector o(3);
    const double delta = 1.0 / 3.0;
    const double p0 = 5.0;
    const int n = 3;
    std::vector<double> defects;
    double max_rel_quad = 0.0;
    double min_quad = std::numeric_limits<double>::infinity();
    Json runs = Json::array();
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.5, h);
        const PLaplacianReport pv = p_laplacian_defect(ScalarField::sample(g, AnalyticField::power(o, 0.5)), delta, 0.0);
        const PLaplacianReport pq = p_laplacian_defect(ScalarField::sample(g, AnalyticField::power(o, 2.0)), delta, 0.0);
        double rel = 0.0;
        for (const NodeValue& nv : pq.divergence) {
            const double r = g.distance(nv.node);
            const double exact = std::pow(2.0, p0 - 1.0) * (p0 + n - 2) * std::pow(r, p0 - 2.0);
            rel = std::max(rel, std::abs(nv.value - exact) / exact);
            min_quad = std::min(min_quad, nv.value);
        }
        defects.push_back(pv.max_abs_divergence);
        max_rel_quad = std::max(max_rel_quad, rel);
        runs.push_back(Json{{"h", h}, {"power", to_json(pv)}, {"quadratic_max_rel_error", num(rel)}});
    }
    const double order1 = std::log2(defects[0] / defects[1]);
    const double order2 = std::log2(defects[1] / defects[2]);
    rep.inputs["annulus"] = Json{{"r_exc", 0.5}, {"r0", 1.0}};
    rep.inputs["p0"] = p0;
    rep.tolerances["min_order"] = 1.0;
    rep.tolerances["quadratic_relative"] = 0.02;
    rep.outputs["runs"] = runs;
    rep.outputs["orders"] = Json::array({num(order1), num(order2)});
    rep.pass = order1 >= 1.0 && order2 >= 1.0 && max_rel_quad <= 0.02 && min_quad > 0.0;
    return finish(8, "p0-Laplacian of |x|^gamma vanishes, |x|^2 matches closed form", std::move(rep),
                  "orders " + fmt(order1) + ", " + fmt(order2) + "; |x|^2 rel err " + fmt(max_rel_quad));
}

// ---------------------------------------------------------------- 9

CriterionResult singularity_dichotomy(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(9, seed, profile);
    const Vector o(3);
    const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.0, 2.0 / 64.0);
    const ScalarField log_u = ScalarField::sample(g, AnalyticField::log_singular(o, 2.0));
    const ScalarField stereo = ScalarField::sample(g, AnalyticField::stereographic(o));
    const SingularityVerdict a = singularity_classify(log_u);
    const SingularityVerdict b = singularity_classify(stereo);
    const ScaleInvariantReport s = scale_invariant_check(log_u, 1, DerivativeSource::exact);
    rep.tolerances["slope"] = ClassifyOptions{}.slope_tol;
    rep.tolerances["scale_exact"] = 1e-12;
    rep.outputs["log_singular"] = to_json(a);
    rep.outputs["stereographic"] = to_json(b);
    rep.outputs["scale_check"] = to_json(s);
    rep.pass = a.verdict == SingularityClass::greens_rate && std::abs(a.slope - 2.0) <= 0.05 &&
               b.verdict == SingularityClass::bounded_extendable && std::abs(s.sup - 2.0) <= 1e-12 &&
               std::abs(s.inf - 2.0) <= 1e-12;
    return finish(9, "singularity dichotomy on the model fields", std::move(rep),
                  std::string("2 log|x|: ") + to_string(a.verdict) + " slope " + fmt(a.slope) + "; u0: " +
                      to_string(b.verdict) + "; d|grad u| in [" + fmt(s.inf) + ", " + fmt(s.sup) + "]");
}

// ---------------------------------------------------------------- 10

CriterionResult volume_criterion(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(10, seed, profile);
    const Vector o(3);
    const GridDomain g = GridDomain::punctured_ball(o, 1.0, 0.0, 2.0 / 128.0);
    const IntegralTrend flat = volume_integral(ScalarField::sample(g, AnalyticField::constant(3, 0.0)));
    const IntegralTrend sing = volume_integral(ScalarField::sample(g, AnalyticField::log_singular(o, 2.0)));
    const GridDomain big = GridDomain::punctured_ball(o, 10.0, 0.0, 0.125);
    const std::array<double, 3> radii{2.5, 5.0, 10.0};
    const GrowingBallsReport sphere = volume_growing_balls(ScalarField::sample(big, AnalyticField::stereographic(o)), radii);
    const double ball = 4.0 * kPi / 3.0;
    const double s3 = 2.0 * kPi * kPi;
    const double e1 = std::abs(flat.value - ball) / ball;
    const double e3 = std::abs(sphere.value - s3) / s3;
    rep.tolerances["relative"] = 0.01;
    rep.tolerances["rate"] = 0.3;
    rep.outputs["flat_ball"] = to_json(flat);
    rep.outputs["log_singular"] = to_json(sing);
    rep.outputs["stereographic"] = to_json(sphere);
    rep.pass = e1 <= 0.01 && flat.verdict == TrendVerdict::converging &&
               sing.verdict == TrendVerdict::power_diverging && std::abs(sing.rate - 3.0) <= 0.3 && e3 <= 0.01 &&
               sphere.converging;
    return finish(10, "volume of the conformal metric", std::move(rep),
                  "ball rel err " + fmt(e1) + ", 2 log|x| rate " + fmt(sing.rate) + ", S^3 rel err " + fmt(e3));
}

// ---------------------------------------------------------------- 11

CriterionResult inversion_identity(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(11, seed, profile);
    rep.tolerances["pullback"] = 1e-9;
    double worst = 0.0;
    bool pass = true;
    Json runs = Json::array();
    for (int n : {3, 4}) {
        const InversionReport r = pullback_flat_check(n, 1.0, 100, mix(seed, 110 + n), 1e-9);
        runs.push_back(to_json(r));
        pass = pass && r.pass;
        worst = std::max(worst, r.max_pullback_deviation);
    }
    rep.outputs["runs"] = runs;
    rep.pass = pass;
    return finish(11, "inversion pulls g_* back to the flat metric", std::move(rep), "max deviation " + fmt(worst));
}

// ---------------------------------------------------------------- 12

CriterionResult radial_ode(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(12, seed, profile);
    rep.tolerances["f0"] = 1e-8;
    rep.tolerances["sphere"] = 1e-6;
    rep.tolerances["schouten"] = 1e-10;

    double err_f0 = 0.0;
    double resid_f0 = 0.0;
    for (auto [n, k] : {std::pair{3, 2}, {4, 3}, {5, 3}, {5, 5}}) {
        const RadialProfile p = radial_ode_solve(SigmaKOp{k}, 0.0, n, {1.0, 0.0, 2.0}, 10.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            err_f0 = std::max(err_f0, std::abs(p.u[i] - 2.0 * std::log(p.r[i])));
            const EigenTuple lam = radial_spectrum(radial_schouten(p.u[i], p.du[i], p.d2u[i], p.r[i]), n);
            resid_f0 = std::max(resid_f0, std::abs(sigma_k(lam, k)));
        }
    }

    double err_sphere = 0.0;
    const RadialModel u0 = RadialModel::stereographic();
    for (auto [n, k] : {std::pair{3, 1}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 4}}) {
        const double f = 0.5 * std::pow(binomial(n, k), 1.0 / k);
        const RadialProfile p = radial_ode_solve(SigmaKOp{k}, f, n, {0.5, u0.value(0.5), u0.d1(0.5)}, 2.0);
        for (std::size_t i = 0; i < p.size(); ++i) err_sphere = std::max(err_sphere, std::abs(p.u[i] - u0.value(p.r[i])));
    }

    // radial_schouten against the full conformal change at (r, 0, ..., 0).
    const int profiles = profile == SuiteProfile::full ? 1000 : 200;
    Rng rng(mix(seed, 12));
    double err_schouten = 0.0;
    for (int i = 0; i < profiles; ++i) {
        const int n = 3 + static_cast<int>(rng.next() % 3);
        const Vector o(n);
        const double a = rng.uniform(-1.0, 3.0);
        const double ca = rng.uniform(-2.0, 2.0);
        const double cl = rng.uniform(-3.0, 3.0);
        const double cs = rng.uniform(-2.0, 2.0);
        const RadialModel m = RadialModel::power(a, ca) + RadialModel::log(cl) + RadialModel::stereographic(cs);
        const AnalyticField f = AnalyticField::power(o, a, ca) + AnalyticField::log_singular(o, cl) +
                                AnalyticField::stereographic(o, cs);
        const double r = rng.uniform(0.2, 3.0);
        Vector x(n);
        x[0] = r;
        const RadialSpectrum rs = radial_schouten(m.value(r), m.d1(r), m.d2(r), r);
        const SymTensor au = conformal_change({SymTensor(n), f.gradient(x), f.hessian(x), f.value(x)});
        const double scale = std::max({1.0, std::abs(rs.radial), std::abs(rs.tangential)});
        double e = std::abs(au(0, 0) - rs.radial);
        for (int j = 1; j < n; ++j) {
            e = std::max(e, std::abs(au(j, j) - rs.tangential));
            for (int l = 0; l < j; ++l) e = std::max(e, std::abs(au(l, j)));
        }
        err_schouten = std::max(err_schouten, e / scale);
    }
    rep.inputs["schouten_profiles"] = profiles;
    rep.outputs["f0_max_error"] = num(err_f0);
    rep.outputs["f0_sigma_k_residual"] = num(resid_f0);
    rep.outputs["sphere_max_error"] = num(err_sphere);
    rep.outputs["schouten_max_error"] = num(err_schouten);
    rep.pass = err_f0 <= 1e-8 && resid_f0 <= 1e-8 && err_sphere <= 1e-6 && err_schouten <= 1e-10;
    return finish(12, "radial ODE reproduces 2 log r and the sphere", std::move(rep),
                  "f=0 err " + fmt(err_f0) + ", sphere err " + fmt(err_sphere) + ", Schouten err " + fmt(err_schouten));
}

// ---------------------------------------------------------------- 13

CriterionResult ricci_bound(SuiteProfile profile, std::uint64_t seed) {
    AnalysisReport rep = make_report(13, seed, profile);
    const int samples = profile == SuiteProfile::full ? 100000 : 10000;
    const int boundary_samples = samples / 10;
    rep.inputs["samples_per_dim"] = samples;
    rep.inputs["boundary_samples_per_dim"] = boundary_samples;
    rep.tolerances["bound"] = 1e-9;
    rep.tolerances["equality"] = 1e-9;
    Rng rng(mix(seed, 13));
    double min_slack = std::numeric_limits<double>::infinity();
    double max_eq = 0.0;
    for (int n : {3, 4, 5}) {
        auto draw = [&](double delta) {
            for (;;) {
                const EigenTuple lam = random_tuple(rng, n);
                if (gamma_delta_margin(lam, delta).margin >= 0.0) return lam;
            }
        };
        auto slack = [&](const EigenTuple& lam, double delta) {
            const SymTensor a = spectral_assemble(lam, random_frame(rng, n));
            const EigenTuple ric = eigenvalues(ricci_tensor_from_schouten(a));
            return ric.min() - (1.0 + (2.0 - n) * delta) * a.trace();
        };
        for (int s = 0; s < samples; ++s) {
            const double delta = rng.uniform(0.0, 1.0 / (n - 2)) * 0.999;
            min_slack = std::min(min_slack, slack(draw(delta), delta));
        }
        for (int s = 0; s < boundary_samples; ++s) {
            const double delta = rng.uniform(0.0, 1.0 / (n - 2)) * 0.999;
            const EigenTuple lam = draw(delta);
            std::array<double, kMaxDim> v{};
            std::copy(lam.values().begin(), lam.values().end(), v.begin());
            const double rest = lam.sum() - lam.min();
            v[0] = -delta * rest / (1.0 + delta);  // lambda_min + delta sum = 0
            const double e = slack(EigenTuple(std::span<const double>(v.data(), static_cast<std::size_t>(n))), delta);
            max_eq = std::max(max_eq, std::abs(e));
            min_slack = std::min(min_slack, e);
        }
    }
    rep.outputs["min_slack"] = num(min_slack);
    rep.outputs["boundary_max_abs_slack"] = num(max_eq);
    rep.pass = min_slack >= -1e-9 && max_eq <= 1e-9;
    return finish(13, "Ricci lower bound from Gamma_delta", std::move(rep),
                  "min slack " + fmt(min_slack) + ", boundary |slack| <= " + fmt(max_eq));
}

}  // namespace

const char* to_string(SuiteProfile p) noexcept { return p == SuiteProfile::full ? "full" : "fast"; }

SuiteProfile parse_profile(const std::string& text) {
    if (text == "fast") return SuiteProfile::fast;
    if (text == "full") return SuiteProfile::full;
    throw Error(ErrorKind::invalid_input, "profile must be 'fast' or 'full'");
}

FundamentalReport verify_fundamental(int n, const Rational& delta, int samples, std::uint64_t seed,
                                     double tolerance, double fd_tolerance) {
    if (samples < 1) throw Error(ErrorKind::invalid_input, "sample count must be >= 1");
    FundamentalReport rep;
    rep.n = n;
    rep.exponents = exponents(n, delta);
    rep.samples = samples;
    rep.tolerance = tolerance;
    rep.fd_tolerance = fd_tolerance;
    const double d = delta.to_double();
    const double gamma = rep.exponents.gamma.to_double();
    const Vector o(n);
    const AnalyticField g = AnalyticField::power(o, gamma);
    const CurvatureOperator op = CurvatureOperator::det_delta(n, d);
    Rng rng(seed);
    double worst = -1.0;
    for (int s = 0; s < samples; ++s) {
        const Vector x = random_direction(rng, n) * rng.uniform(0.05, 3.0);
        const SymTensor hess = g.hessian(x);
        const double c = gamma * (2.0 - gamma) * std::pow(x.norm(), gamma - 2.0);
        const EigenTuple mu = eigenvalues(hess + SymTensor::identity(n) * (d * hess.trace()));
        double err = std::abs(mu[0]) / c;
        for (int i = 1; i < n; ++i) err = std::max(err, std::abs(mu[i] - c) / c);
        const double fval = std::abs(evaluate_F(op, eigenvalues(hess)));
        rep.max_spectrum_error = std::max(rep.max_spectrum_error, err);
        rep.max_abs_F = std::max(rep.max_abs_F, fval);
        if (err > worst) {
            worst = err;
            rep.worst_point = x;
        }

        // Local central-difference Hessian of the sampled function.
        const double eta = 1e-3 * x.norm();
        SymTensor fd(n);
        auto at = [&](int i, double si, int j, double sj) {
            Vector y = x;
            y[i] += si * eta;
            y[j] += sj * eta;
            return g.value(y);
        };
        for (int i = 0; i < n; ++i) {
            Vector yp = x;
            Vector ym = x;
            yp[i] += eta;
            ym[i] -= eta;
            fd.set(i, i, (g.value(yp) - 2.0 * g.value(x) + g.value(ym)) / (eta * eta));
            for (int j = i + 1; j < n; ++j) {
                fd.set(i, j, (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4 * eta * eta));
            }
        }
        const EigenTuple ef = eigenvalues(fd);
        const EigenTuple ee = eigenvalues(hess);
        for (int i = 0; i < n; ++i) {
            rep.max_fd_error = std::max(rep.max_fd_error, std::abs(ef[i] - ee[i]) / c);
        }
    }
    rep.pass = rep.max_spectrum_error <= tolerance && rep.max_abs_F <= tolerance && rep.max_fd_error <= fd_tolerance;
    return rep;
}

Json to_json(const FundamentalReport& r) {
    Json j;
    j["n"] = r.n;
    j["delta"] = to_json(r.exponents.delta);
    j["gamma"] = to_json(r.exponents.gamma);
    j["samples"] = r.samples;
    j["max_spectrum_error"] = num(r.max_spectrum_error);
    j["max_abs_F"] = num(r.max_abs_F);
    j["max_fd_error"] = num(r.max_fd_error);
    Json w = Json::array();
    for (double v : r.worst_point.values()) w.push_back(num(v));
    j["worst_point"] = w;
    j["pass"] = r.pass;
    return j;
}

CriterionResult run_criterion(int id, SuiteProfile profile, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = fundamental_solution(profile, seed); break;
        case 2: r = cone_inclusion(profile, seed); break;
        case 3: r = exponent_identities(profile, seed); break;
        case 4: r = transform_convexity(profile, seed); break;
        case 5: r = holder_estimator(profile, seed); break;
        case 6: r = w1p_threshold(profile, seed); break;
        case 7: r = mollification(profile, seed); break;
        case 8: r = p_laplacian(profile, seed); break;
        case 9: r = singularity_dichotomy(profile, seed); break;
        case 10: r = volume_criterion(profile, seed); break;
        case 11: r = inversion_identity(profile, seed); break;
        case 12: r = radial_ode(profile, seed); break;
        case 13: r = ricci_bound(profile, seed); break;
        default: throw Error(ErrorKind::invalid_input, "no acceptance criterion " + std::to_string(id));
    }
    r.report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(SuiteProfile profile, std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_done) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id, profile, seed));
        if (on_done) on_done(out.back());
    }
    return out;
}

}  // namespace deltacone
