#include "deltacone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "deltacone/cones.hpp"
#include "deltacone/error.hpp"
#include "deltacone/parallel.hpp"

namespace deltacone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gamma_of(int n, double delta) {
    if (!(delta >= 0.0) || !(delta * (n - 2) < 1.0)) {
        throw Error(ErrorKind::domain, "delta must satisfy 0 <= delta < 1/(n-2)");
    }
    return (1.0 + (2.0 - n) * delta) / (1.0 + delta);
}

// Normalized-margin tolerance for a Hessian at distance d from the center.
double local_tolerance(const GridDomain& g, std::size_t node, bool fd) {
    if (!fd) return kDefaultBoundaryTol;
    const double d = g.distance(node);
    return fd_cone_tolerance(g.h(), std::max(1.0, 1.0 / (d * d)));
}

bool derivatives_available(const GridDomain& g, std::size_t node, bool fd) {
    return g.active(node) && (!fd || g.is_interior(node));
}

// Dyadic radii r_outer 2^-j, j = 0..J, stopping before the radius drops below floor.
std::vector<double> dyadic_radii(double r_outer, double floor) {
    std::vector<double> r;
    for (double x = r_outer; x >= floor * (1.0 - 1e-12); x *= 0.5) r.push_back(x);
    return r;
}

// Index j with r[j+1] < s <= r[j], clamped to the last ball.
std::size_t ball_index(const std::vector<double>& r, double s) {
    const auto it = std::lower_bound(r.rbegin(), r.rend(), s);  // first r >= s from the inside
    if (it == r.rend()) return 0;
    return static_cast<std::size_t>(r.rend() - it) - 1;
}

}  // namespace

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::resolution, "line fit needs at least two points");
    }
    const double m = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorKind::resolution, "line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / m);
    f.points = x.size();
    return f;
}

// ---------------------------------------------------------------- barrier

BarrierReport barrier_oscillation_check(const ScalarField& w, double delta, const Vector& y,
                                        double radius, double tau, DerivativeSource source,
                                        std::optional<double> w_at_y) {
    const GridDomain& g = w.domain();
    if (y.dim() != g.dim()) throw Error(ErrorKind::invalid_input, "point dimension mismatch");
    if (!(radius > 0.0)) throw Error(ErrorKind::invalid_input, "barrier radius must be > 0");
    BarrierReport rep;
    rep.gamma = gamma_of(g.dim(), delta);
    rep.radius = radius;
    rep.tolerance = (tau < 0.0 ? fd_cone_tolerance(g.h()) : tau) * radius * radius;

    const auto wy = w_at_y ? w_at_y : w.value_at(y);
    if (!wy || !std::isfinite(*wy)) {
        throw Error(ErrorKind::invalid_input, "no value of W at the base point; supply it explicitly");
    }

    const bool fd = uses_finite_differences(w, source);
    std::vector<std::size_t> ball;
    double lo = *wy;
    double hi = *wy;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node) || (g.position(node) - y).norm() > radius) continue;
        ball.push_back(node);
        lo = std::min(lo, w[node]);
        hi = std::max(hi, w[node]);
        if (!derivatives_available(g, node, fd)) continue;
        const double tol = local_tolerance(g, node, fd);
        const double m = gamma_delta_margin(eigenvalues(field_hessian(w, node, source)), delta, tol).margin;
        if (m < -tol) rep.precondition_failures.push_back({node, m});
    }
    rep.precondition_ok = rep.precondition_failures.empty();
    rep.oscillation = hi - lo;
    if (!rep.precondition_ok) return rep;

    rep.max_excess = -kInf;
    for (std::size_t node : ball) {
        const double s = (g.position(node) - y).norm();
        const double bound = rep.oscillation * std::pow(s / radius, rep.gamma);
        const double excess = w[node] - *wy - bound;
        if (excess > rep.max_excess) {
            rep.max_excess = excess;
            rep.worst_node = node;
        }
    }
    rep.checked = ball.size();
    rep.pass = rep.checked > 0 && rep.max_excess <= rep.tolerance;
    return rep;
}

// ---------------------------------------------------------------- Holder

HolderEstimate holder_exponent(const ScalarField& w, const Vector& y, double r_max,
                               std::optional<double> w_at_y) {
    const GridDomain& g = w.domain();
    if (y.dim() != g.dim()) throw Error(ErrorKind::invalid_input, "point dimension mismatch");
    if (r_max <= 0.0) r_max = g.r0() - (y - g.center()).norm();
    if (!(r_max > 0.0)) throw Error(ErrorKind::invalid_input, "base point lies outside the domain");

    const std::vector<double> radii = dyadic_radii(r_max, 2.0 * g.h());
    if (radii.size() < 4) {
        throw Error(ErrorKind::resolution, "Holder fit needs four dyadic radii >= 2h; got " +
                                               std::to_string(radii.size()));
    }
    const std::size_t J = radii.size();
    std::vector<double> lo(J, kInf);
    std::vector<double> hi(J, -kInf);
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        const double s = (g.position(node) - y).norm();
        if (s > r_max) continue;
        const std::size_t j = ball_index(radii, s);
        lo[j] = std::min(lo[j], w[node]);
        hi[j] = std::max(hi[j], w[node]);
    }
    if (const auto wy = w_at_y ? w_at_y : w.value_at(y)) {
        lo[J - 1] = std::min(lo[J - 1], *wy);
        hi[J - 1] = std::max(hi[J - 1], *wy);
    }
    for (std::size_t j = J - 1; j-- > 0;) {
        lo[j] = std::min(lo[j], lo[j + 1]);
        hi[j] = std::max(hi[j], hi[j + 1]);
    }

    HolderEstimate est;
    est.r_max = radii.front();
    est.r_min = radii.back();
    est.radii = radii;
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t j = 0; j < J; ++j) {
        const double osc = hi[j] >= lo[j] ? hi[j] - lo[j] : 0.0;
        est.oscillations.push_back(osc);
        if (osc > 0.0) {
            lx.push_back(std::log(radii[j]));
            ly.push_back(std::log(osc));
        }
    }
    if (lx.empty()) {
        est.constant_field = true;
        est.exponent = kInf;
        return est;
    }
    if (lx.size() < 2) throw Error(ErrorKind::resolution, "oscillation vanishes on all but one radius");
    const LineFit f = fit_line(lx, ly);
    est.exponent = f.slope;
    est.seminorm = std::exp(f.intercept);
    est.residual = f.residual;
    return est;
}

GrowthConsistency holder_growth_check(const ScalarField& v, double gamma, const HolderEstimate& est,
                                      double tolerance) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::domain, "gamma must be > 0");
    double k = 0.0;
    for (std::size_t j = 0; j < est.radii.size(); ++j) {
        k = std::max(k, est.oscillations[j] / std::pow(est.radii[j], gamma));
    }
    GrowthConsistency rep;
    rep.tolerance = tolerance;
    if (!(k > 0.0)) {
        rep.pass = true;  // v == 0: u = -inf everywhere
        rep.bound = -kInf;
        return rep;
    }
    rep.bound = (2.0 / gamma) * std::log(k);
    rep.max_excess = -kInf;
    const GridDomain& g = v.domain();
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node) || !(v[node] > 0.0) || g.distance(node) > est.r_max) continue;
        const double u = (2.0 / gamma) * std::log(v[node]);
        rep.max_excess = std::max(rep.max_excess, u - 2.0 * std::log(g.distance(node)) - rep.bound);
    }
    rep.pass = rep.max_excess <= tolerance;
    return rep;
}

// ---------------------------------------------------------------- excision trends

const char* to_string(TrendVerdict v) noexcept {
    switch (v) {
        case TrendVerdict::converging: return "converging";
        case TrendVerdict::log_diverging: return "log-diverging";
        case TrendVerdict::power_diverging: return "power-diverging";
    }
    return "?";
}

IntegralTrend classify_increments(std::vector<ShellIncrement> shells, double exponent_tol) {
    if (shells.size() < 3) {
        throw Error(ErrorKind::resolution, "divergence detection needs three nested excisions");
    }
    IntegralTrend t;
    t.exponent_tol = exponent_tol;
    t.shells = std::move(shells);
    std::vector<double> lx;
    std::vector<double> ly;
    for (const ShellIncrement& s : t.shells) {
        if (s.increment == 0.0) continue;
        lx.push_back(0.5 * (std::log(s.r_inner) + std::log(s.r_outer)));
        ly.push_back(std::log(std::abs(s.increment)));
    }
    // Vanishing innermost increment: nothing accumulates near the puncture.
    const std::size_t inner = t.shells.size() - 1;
    if (lx.size() < 2 || t.shells[inner].increment == 0.0) {
        t.exponent = kInf;
        t.verdict = TrendVerdict::converging;
        return t;
    }
    t.exponent = fit_line(lx, ly).slope;
    if (t.exponent > exponent_tol) {
        t.verdict = TrendVerdict::converging;
    } else {
        t.verdict = t.exponent >= -exponent_tol ? TrendVerdict::log_diverging : TrendVerdict::power_diverging;
        t.rate = -t.exponent;
    }
    return t;
}

IntegralTrend excision_trend(const GridDomain& g, const NodeIntegrand& integrand, const TrendOptions& opt) {
    const double floor = std::max(opt.min_excision_h * g.h(), g.r_exc());
    const std::vector<double> radii = dyadic_radii(g.r0(), floor);
    if (radii.size() < 4) {
        throw Error(ErrorKind::resolution, "divergence detection needs three nested excisions above " +
                                               std::to_string(floor));
    }
    const std::size_t J = radii.size() - 1;  // shells [radii[j+1], radii[j])
    const std::size_t slots = J + 1;         // plus the core below radii[J]
    const std::size_t chunks = chunk_count(g.box_size());
    std::vector<double> partial(chunks * slots, 0.0);
    parallel_chunks(g.box_size(), kDefaultChunk, [&](std::size_t begin, std::size_t end, std::size_t c) {
        double* acc = partial.data() + c * slots;
        for (std::size_t node = begin; node < end; ++node) {
            if (!g.active(node)) continue;
            const double f = integrand(node);
            if (std::isnan(f)) continue;
            const double d = g.distance(node);
            std::size_t j = J;
            if (d >= radii[J]) {
                j = 0;
                while (j + 1 < radii.size() && d < radii[j + 1]) ++j;
            }
            acc[j] += f;
        }
    });
    std::vector<double> sums(slots, 0.0);
    for (std::size_t c = 0; c < chunks; ++c) {
        for (std::size_t j = 0; j < slots; ++j) sums[j] += partial[c * slots + j];
    }
    const double vol = std::pow(g.h(), g.dim());

    std::vector<ShellIncrement> shells;
    for (std::size_t j = 0; j < J; ++j) shells.push_back({radii[j + 1], radii[j], sums[j] * vol});
    IntegralTrend t = classify_increments(std::move(shells), opt.exponent_tol);
    double running = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        running += sums[j] * vol;
        t.excisions.push_back(radii[j + 1]);
        t.values.push_back(running);
    }
    t.value = running + sums[J] * vol;
    return t;
}

IntegralTrend w1p_norm(const ScalarField& w, double p, const TrendOptions& opt) {
    if (!(p >= 1.0)) throw Error(ErrorKind::invalid_input, "w1p_norm requires p >= 1");
    const GridDomain& g = w.domain();
    const bool fd = uses_finite_differences(w, opt.source);
    return excision_trend(
        g,
        [&](std::size_t node) {
            if (!derivatives_available(g, node, fd)) return std::numeric_limits<double>::quiet_NaN();
            return std::pow(field_gradient(w, node, opt.source).norm(), p);
        },
        opt);
}

IntegralTrend volume_integral(const ScalarField& u, const TrendOptions& opt) {
    const double n = u.domain().dim();
    return excision_trend(u.domain(), [&](std::size_t node) { return std::exp(-n * u[node]); }, opt);
}

GrowingBallsReport volume_growing_balls(const ScalarField& u, std::span<const double> radii,
                                        double exponent_tol) {
    const GridDomain& g = u.domain();
    if (radii.size() < 3) throw Error(ErrorKind::resolution, "growing-ball volume needs three radii");
    std::vector<double> r(radii.begin(), radii.end());
    std::sort(r.begin(), r.end());
    if (!(r.front() > g.r_exc()) || r.back() > g.r0() * (1.0 + 1e-12)) {
        throw Error(ErrorKind::invalid_input, "growing-ball radii must lie in (r_exc, r0]");
    }
    const double n = g.dim();
    std::vector<double> sums(r.size(), 0.0);
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        const double d = g.distance(node);
        const auto it = std::lower_bound(r.begin(), r.end(), d);
        if (it == r.end()) continue;
        sums[static_cast<std::size_t>(it - r.begin())] += std::exp(-n * u[node]);
    }
    GrowingBallsReport rep;
    rep.radii = r;
    const double vol = std::pow(g.h(), g.dim());
    double running = 0.0;
    for (double s : sums) {
        running += s * vol;
        rep.values.push_back(running);
    }
    rep.value = running;
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t j = 1; j < r.size(); ++j) {
        const double inc = rep.values[j] - rep.values[j - 1];
        if (inc <= 0.0) continue;
        lx.push_back(0.5 * (std::log(r[j - 1]) + std::log(r[j])));
        ly.push_back(std::log(inc));
    }
    if (lx.size() < 2) {
        rep.tail_exponent = -kInf;
        rep.converging = true;
        return rep;
    }
    rep.tail_exponent = fit_line(lx, ly).slope;
    rep.converging = rep.tail_exponent < -exponent_tol;
    return rep;
}

IntegralTrend grad_v_ln_norm(const ScalarField& v, const TrendOptions& opt) {
    const GridDomain& g = v.domain();
    const bool fd = uses_finite_differences(v, opt.source);
    const double n = g.dim();
    return excision_trend(
        g,
        [&](std::size_t node) {
            if (!derivatives_available(g, node, fd)) return std::numeric_limits<double>::quiet_NaN();
            return std::pow(field_gradient(v, node, opt.source).norm(), n);
        },
        opt);
}

// ---------------------------------------------------------------- dichotomy

const char* to_string(SingularityClass c) noexcept {
    switch (c) {
        case SingularityClass::bounded_extendable: return "bounded-extendable";
        case SingularityClass::greens_rate: return "greens-rate";
        case SingularityClass::indeterminate: return "indeterminate";
    }
    return "?";
}

SingularityVerdict singularity_classify_samples(std::span<const double> d, std::span<const double> u,
                                                double r_outer, double r_floor, const ClassifyOptions& opt) {
    if (d.size() != u.size()) throw Error(ErrorKind::invalid_input, "sample arrays differ in length");
    const std::vector<double> radii = dyadic_radii(r_outer, r_floor);
    if (radii.size() < opt.min_shells + 1) {
        throw Error(ErrorKind::resolution, "classification needs " + std::to_string(opt.min_shells) +
                                               " dyadic shells between " + std::to_string(r_floor) +
                                               " and " + std::to_string(r_outer));
    }
    const std::size_t J = radii.size() - 1;
    std::vector<ShellStats> shells(J);
    for (std::size_t j = 0; j < J; ++j) {
        shells[j].r_outer = radii[j];
        shells[j].r_inner = radii[j + 1];
        shells[j].min_u = shells[j].min_psi = kInf;
        shells[j].max_u = shells[j].max_psi = -kInf;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] <= r_outer) || !(d[i] > radii[J])) continue;
        if (!std::isfinite(u[i])) throw Error(ErrorKind::invalid_input, "non-finite sample value");
        const std::size_t j = ball_index(radii, d[i]);
        ShellStats& s = shells[std::min(j, J - 1)];
        const double ld = std::log(d[i]);
        const double psi = u[i] - 2.0 * ld;
        ++s.count;
        s.mean_log_d += ld;
        s.mean_u += u[i];
        s.min_u = std::min(s.min_u, u[i]);
        s.max_u = std::max(s.max_u, u[i]);
        s.min_psi = std::min(s.min_psi, psi);
        s.max_psi = std::max(s.max_psi, psi);
    }
    std::erase_if(shells, [](const ShellStats& s) { return s.count == 0; });
    if (shells.size() < opt.min_shells) {
        throw Error(ErrorKind::resolution, "too few populated shells (" + std::to_string(shells.size()) + ")");
    }

    SingularityVerdict v;
    std::vector<double> lx;
    std::vector<double> ly;
    double psi_bar = 0.0;
    v.min_u = kInf;
    for (ShellStats& s : shells) {
        s.mean_log_d /= static_cast<double>(s.count);
        s.mean_u /= static_cast<double>(s.count);
        lx.push_back(s.mean_log_d);
        ly.push_back(s.mean_u);
        psi_bar += s.mean_u - 2.0 * s.mean_log_d;
        v.min_u = std::min(v.min_u, s.min_u);
    }
    psi_bar /= static_cast<double>(shells.size());
    const LineFit f = fit_line(lx, ly);
    v.slope = f.slope;
    v.intercept = f.intercept;
    v.fit_residual = f.residual;
    for (const ShellStats& s : shells) {
        v.sup_deviation = std::max({v.sup_deviation, std::abs(s.max_psi - psi_bar), std::abs(s.min_psi - psi_bar)});
        v.sup_abs_psi = std::max({v.sup_abs_psi, std::abs(s.max_psi), std::abs(s.min_psi)});
    }

    // Inner three shells: do the minima fall toward the puncture?
    std::vector<double> mx;
    std::vector<double> my;
    for (std::size_t j = shells.size() - 3; j < shells.size(); ++j) {
        mx.push_back(shells[j].mean_log_d);
        my.push_back(shells[j].min_u);
    }
    v.minima_slope = fit_line(mx, my).slope;
    v.shells = std::move(shells);

    const bool slope_ok = std::abs(v.slope - 2.0) <= opt.slope_tol;
    if (slope_ok && v.sup_deviation <= opt.deviation_window) {
        v.verdict = SingularityClass::greens_rate;
    } else if (v.minima_slope <= opt.minima_slope_tol) {
        v.verdict = SingularityClass::bounded_extendable;
        if (slope_ok) v.notes.push_back("slope near 2 but u - 2 log d drifts beyond the window");
    } else {
        v.verdict = SingularityClass::indeterminate;
        v.notes.push_back("minima decrease toward the puncture at a rate other than 2 log d");
    }
    return v;
}

SingularityVerdict singularity_classify(const ScalarField& u, const ClassifyOptions& opt) {
    const GridDomain& g = u.domain();
    std::vector<double> d;
    std::vector<double> vals;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        d.push_back(g.distance(node));
        vals.push_back(u[node]);
    }
    return singularity_classify_samples(d, vals, g.r0(), std::max(g.r_exc(), g.h()), opt);
}

// ---------------------------------------------------------------- scale invariance

ScaleInvariantReport scale_invariant_check(const ScalarField& u, int order, DerivativeSource source,
                                           double growth_tol) {
    if (order != 1 && order != 2) throw Error(ErrorKind::invalid_input, "order must be 1 or 2");
    const GridDomain& g = u.domain();
    const bool fd = uses_finite_differences(u, source);
    const std::vector<double> radii = dyadic_radii(g.r0(), std::max(g.r_exc(), g.h()));
    ScaleInvariantReport rep;
    rep.order = order;
    rep.growth_tol = growth_tol;
    rep.inf = kInf;
    std::vector<double> sups(radii.size(), -kInf);
    bool finite = true;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!derivatives_available(g, node, fd)) continue;
        const double d = g.distance(node);
        const Vector grad = field_gradient(u, node, source);
        double q = d * grad.norm();
        if (order == 2) {
            q = d * d * (field_hessian(u, node, source).frobenius_norm() + grad.norm_squared());
        }
        if (!std::isfinite(q)) finite = false;
        const std::size_t j = ball_index(radii, d);
        sups[j] = std::max(sups[j], q);
        rep.sup = std::max(rep.sup, q);
        rep.inf = std::min(rep.inf, q);
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (sups[j] == -kInf) continue;
        rep.shell_radii.push_back(radii[j]);
        rep.shell_sups.push_back(sups[j]);
    }
    if (rep.shell_sups.size() < 2) throw Error(ErrorKind::resolution, "scale check needs two populated shells");
    const double inner = rep.shell_sups.back();
    const double outer = *std::max_element(rep.shell_sups.begin(), rep.shell_sups.end() - 1);
    rep.pass = finite && inner <= (1.0 + growth_tol) * outer + 1e-12;
    return rep;
}

// ---------------------------------------------------------------- p-Laplacian

double p_laplacian_at(const ScalarField& v, std::size_t node, double p) {
    const GridDomain& g = v.domain();
    if (!g.active(node) || !g.is_interior(node)) {
        throw Error(ErrorKind::stencil, "p-Laplacian stencil at node " + g.describe_node(node) +
                                            " touches an inactive node");
    }
    const int n = g.dim();
    const double h = g.h();
    auto flux = [&](std::size_t lo, std::size_t hi, int a) {
        // Gradient at the midpoint of the edge lo -> hi along axis a.
        Vector grad(n);
        grad[a] = (v[hi] - v[lo]) / h;
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            const std::size_t s = g.stride(b);
            grad[b] = ((v[lo + s] - v[lo - s]) + (v[hi + s] - v[hi - s])) / (4.0 * h);
        }
        const double norm = grad.norm();
        return norm > 0.0 ? std::pow(norm, p - 2.0) * grad[a] : 0.0;
    };
    double div = 0.0;
    for (int a = 0; a < n; ++a) {
        const std::size_t s = g.stride(a);
        div += (flux(node, node + s, a) - flux(node - s, node, a)) / h;
    }
    return div;
}

PLaplacianReport p_laplacian_defect(const ScalarField& v, double delta, double mu, DerivativeSource source) {
    if (!(delta > 0.0)) throw Error(ErrorKind::domain, "p0 = 2 + 1/delta is infinite for delta = 0");
    const GridDomain& g = v.domain();
    (void)gamma_of(g.dim(), delta);
    PLaplacianReport rep;
    rep.delta = delta;
    rep.mu = mu;
    rep.p0 = 2.0 + 1.0 / delta;
    const double c = (rep.p0 - 2.0) * mu;
    const bool fd = uses_finite_differences(v, source);
    const int n = g.dim();

    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node) || !g.is_interior(node)) continue;
        if (!(v[node] > 0.0)) {
            throw Error(ErrorKind::domain, "p-Laplacian check requires v > 0 (node " + g.describe_node(node) + ")");
        }
        const SymTensor hess = field_hessian(v, node, source);
        const double scale = std::max(1.0, hess.frobenius_norm());
        const double rel = local_tolerance(g, node, fd);
        const SymTensor cond = hess + SymTensor::identity(n) * (delta * hess.trace() + mu * v[node]);
        if (eigenvalues(cond).min() < -rel * scale) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        const double div = p_laplacian_at(v, node, rep.p0);
        const double gnorm = field_gradient(v, node, source).norm();
        const double weight = std::pow(gnorm, rep.p0 - 2.0);
        const double d = g.distance(node);
        const double tol = fd_cone_tolerance(g.h(), std::max(1.0, 1.0 / (d * d))) * weight * scale;
        const double slack = div + c * weight * v[node] + tol;
        rep.divergence.push_back({node, div});
        rep.max_abs_divergence = std::max(rep.max_abs_divergence, std::abs(div));
        rep.min_slack = std::min(rep.min_slack, slack);
        if (slack < 0.0) ++rep.violations;
    }
    rep.pass = rep.checked > 0 && rep.violations == 0;
    return rep;
}

// ---------------------------------------------------------------- eigenvalue bounds

EigenBoundsReport hessian_eigen_bounds(const SymTensor& hess_v, double v, double delta, double mu, double tol) {
    if (!(mu >= 0.0) || !(v >= 0.0)) throw Error(ErrorKind::domain, "eigenvalue bounds need mu >= 0 and v >= 0");
    const int n = hess_v.dim();
    EigenBoundsReport rep;
    const EigenTuple nu = eigenvalues(hess_v);
    rep.laplacian = nu.sum();
    rep.op_norm = std::max(std::abs(nu.min()), std::abs(nu.max()));
    const double scale = std::max({1.0, rep.op_norm, std::abs(rep.laplacian), mu * v});
    const double etol = tol * scale;
    rep.precondition_ok = nu.min() + delta * rep.laplacian + mu * v >= -etol;
    rep.lower = -delta * rep.laplacian - mu * v;
    rep.upper = (1.0 + (n - 1) * delta) * rep.laplacian + (n - 1) * mu * v;
    rep.c0 = 1.0 / (1.0 + (n - 1) * delta);
    rep.c1 = mu * (n / (1.0 + n * delta) + (n - 1) / (1.0 + (n - 1) * delta));
    rep.min_slack = std::min({nu.min() - rep.lower, rep.upper - nu.max(),
                              rep.laplacian - rep.c0 * rep.op_norm + rep.c1 * v});
    rep.pass = rep.precondition_ok && rep.min_slack >= -etol;
    return rep;
}

EigenBoundsFieldReport hessian_eigen_bounds_field(const ScalarField& v, double delta, double mu,
                                                  DerivativeSource source) {
    const GridDomain& g = v.domain();
    const bool fd = uses_finite_differences(v, source);
    EigenBoundsFieldReport rep;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!derivatives_available(g, node, fd)) continue;
        const EigenBoundsReport r =
            hessian_eigen_bounds(field_hessian(v, node, source), v[node], delta, mu, local_tolerance(g, node, fd));
        if (!r.precondition_ok) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        rep.min_slack = std::min(rep.min_slack, r.min_slack);
        if (!r.pass) ++rep.violations;
    }
    rep.pass = rep.checked > 0 && rep.violations == 0;
    return rep;
}

}  // namespace deltacone
