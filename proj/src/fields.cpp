#include "deltacone/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "deltacone/error.hpp"
#include "deltacone/parallel.hpp"
#include "deltacone/random.hpp"

namespace deltacone {

namespace {

[[noreturn]] void stencil_failure(const ScalarField& f, std::size_t node) {
    throw Error(ErrorKind::stencil, "finite-difference stencil at node " +
                                        f.domain().describe_node(node) + " touches an inactive node");
}

}  // namespace

// ---------------------------------------------------------------- differences

Vector fd_gradient(const ScalarField& f, std::size_t node) {
    const GridDomain& g = f.domain();
    if (!g.active(node) || !g.is_interior(node)) stencil_failure(f, node);
    const double inv2h = 0.5 / g.h();
    Vector grad(g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        const std::size_t s = g.stride(a);
        grad[a] = (f[node + s] - f[node - s]) * inv2h;
    }
    return grad;
}

SymTensor fd_hessian(const ScalarField& f, std::size_t node) {
    const GridDomain& g = f.domain();
    if (!g.active(node) || !g.is_interior(node)) stencil_failure(f, node);
    const double h = g.h();
    const double inv_h2 = 1.0 / (h * h);
    const double inv_4h2 = 0.25 * inv_h2;
    const double c = f[node];
    SymTensor H(g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        const std::size_t sa = g.stride(a);
        H.set(a, a, (f[node + sa] - 2.0 * c + f[node - sa]) * inv_h2);
        for (int b = a + 1; b < g.dim(); ++b) {
            const std::size_t sb = g.stride(b);
            H.set(a, b, (f[node + sa + sb] - f[node + sa - sb] - f[node - sa + sb] +
                         f[node - sa - sb]) *
                            inv_4h2);
        }
    }
    return H;
}

double fd_laplacian(const ScalarField& f, std::size_t node) {
    const GridDomain& g = f.domain();
    if (!g.active(node) || !g.is_interior(node)) stencil_failure(f, node);
    const double inv_h2 = 1.0 / (g.h() * g.h());
    double lap = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const std::size_t s = g.stride(a);
        lap += (f[node + s] - 2.0 * f[node] + f[node - s]) * inv_h2;
    }
    return lap;
}

const char* to_string(DerivativeSource s) noexcept {
    switch (s) {
        case DerivativeSource::automatic: return "automatic";
        case DerivativeSource::exact: return "exact";
        case DerivativeSource::finite_difference: return "finite-difference";
    }
    return "?";
}

bool uses_finite_differences(const ScalarField& f, DerivativeSource source) {
    switch (source) {
        case DerivativeSource::finite_difference: return true;
        case DerivativeSource::exact:
            if (!f.has_exact_derivatives()) {
                throw Error(ErrorKind::invalid_input, "exact derivatives requested for a sampled field");
            }
            return false;
        case DerivativeSource::automatic: return !f.has_exact_derivatives();
    }
    return true;
}

Vector field_gradient(const ScalarField& f, std::size_t node, DerivativeSource source) {
    if (uses_finite_differences(f, source)) return fd_gradient(f, node);
    return f.analytic()->gradient(f.domain().position(node));
}

SymTensor field_hessian(const ScalarField& f, std::size_t node, DerivativeSource source) {
    if (uses_finite_differences(f, source)) return fd_hessian(f, node);
    return f.analytic()->hessian(f.domain().position(node));
}

double fd_cone_tolerance(double h, double scale) { return 10.0 * h * h * scale; }

// ---------------------------------------------------------------- mollifier

MollifierSpec::MollifierSpec(int dim, double scale)
    : dim_(dim), scale_(scale), normalization_(integral(dim)) {
    if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::invalid_input, "mollifier dimension out of range");
    if (!(scale > 0.0)) throw Error(ErrorKind::invalid_input, "mollifier scale must be > 0");
}

double MollifierSpec::profile(double s) noexcept {
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double t = s - 1.0;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double MollifierSpec::integral(int dim, std::size_t intervals) {
    // |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)
    const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    const double plateau = 1.0 / dim;
    const double ds = 1.0 / static_cast<double>(intervals);
    double ramp = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) {
        const double s = 1.0 + (static_cast<double>(i) + 0.5) * ds;
        ramp += profile(s) * std::pow(s, dim - 1);
    }
    return sphere * (plateau + ramp * ds);
}

ScalarField mollify(const ScalarField& w, const MollifierSpec& rho) {
    const GridDomain& g = w.domain();
    if (rho.dim() != g.dim()) throw Error(ErrorKind::invalid_input, "mollifier dimension mismatch");
    const double h = g.h();
    const double hm = rho.scale();
    if (hm < 2.0 * h * (1.0 - 1e-12)) {
        throw Error(ErrorKind::invalid_input, "mollification scale must be at least twice the grid spacing");
    }

    // Lattice stencil: offsets k with rho(k h / h_m) > 0, weights normalized to sum 1.
    const int reach = static_cast<int>(std::floor(2.0 * hm / h));
    struct Tap {
        std::ptrdiff_t offset;
        double weight;
    };
    std::vector<Tap> taps;
    MultiIndex k{};
    const int n = g.dim();
    std::function<void(int)> enumerate = [&](int axis) {
        if (axis == n) {
            double r2 = 0.0;
            std::ptrdiff_t off = 0;
            for (int a = 0; a < n; ++a) {
                const int ka = k[static_cast<std::size_t>(a)];
                r2 += static_cast<double>(ka) * ka;
                off += static_cast<std::ptrdiff_t>(ka) * static_cast<std::ptrdiff_t>(g.stride(a));
            }
            const double weight = MollifierSpec::profile(std::sqrt(r2) * h / hm);
            if (weight > 0.0) taps.push_back({off, weight});
            return;
        }
        for (int v = -reach; v <= reach; ++v) {
            k[static_cast<std::size_t>(axis)] = v;
            enumerate(axis + 1);
        }
    };
    enumerate(0);
    double total = 0.0;
    for (const Tap& t : taps) total += t.weight;
    for (Tap& t : taps) t.weight /= total;

    std::vector<std::uint8_t> eligible(g.box_size(), 0);
    std::vector<double> out(g.box_size(), std::numeric_limits<double>::quiet_NaN());
    parallel_chunks(g.box_size(), kDefaultChunk, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t node = begin; node < end; ++node) {
            if (!g.active(node) || !g.box_contains(node, reach)) continue;
            bool ok = true;
            for (const Tap& t : taps) {
                if (!g.active(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) + t.offset))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            double acc = 0.0;
            for (const Tap& t : taps) {
                acc += t.weight * w[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) + t.offset)];
            }
            eligible[node] = 1;
            out[node] = acc;
        }
    });
    if (std::find(eligible.begin(), eligible.end(), 1) == eligible.end()) {
        throw Error(ErrorKind::empty_domain, "no node has its full mollifier support inside the domain");
    }
    return ScalarField::from_values(g.restricted(eligible), std::move(out));
}

MollifiedConeReport mollified_hessian_cone_check(const ScalarField& w, double delta,
                                                 const MollifierSpec& rho, double tolerance) {
    MollifiedConeReport rep;
    rep.delta = delta;
    rep.mollifier_scale = rho.scale();
    rep.tolerance = tolerance;
    rep.min_input_margin = std::numeric_limits<double>::infinity();
    rep.min_output_margin = std::numeric_limits<double>::infinity();

    const GridDomain& g = w.domain();
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node) || !g.is_interior(node)) continue;
        ++rep.input_nodes;
        const double m = gamma_delta_margin(eigenvalues(fd_hessian(w, node)), delta, tolerance).margin;
        rep.min_input_margin = std::min(rep.min_input_margin, m);
        if (m < -tolerance) rep.input_failures.push_back({node, m});
    }
    rep.precondition_ok = rep.input_failures.empty() && rep.input_nodes > 0;
    if (!rep.precondition_ok) return rep;

    const ScalarField wh = mollify(w, rho);
    const GridDomain& gh = wh.domain();
    for (std::size_t node = 0; node < gh.box_size(); ++node) {
        if (!gh.active(node) || !gh.is_interior(node)) continue;
        ++rep.output_nodes;
        const double m = gamma_delta_margin(eigenvalues(fd_hessian(wh, node)), delta, tolerance).margin;
        rep.min_output_margin = std::min(rep.min_output_margin, m);
    }
    rep.pass = rep.output_nodes > 0 && rep.min_output_margin >= -tolerance;
    return rep;
}

// ---------------------------------------------------------------- lift

LiftResult lambda_lift(const ScalarField& v, const TensorFieldFn& schouten, double beta, double safety) {
    const GridDomain& g = v.domain();
    double worst = 0.0;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        if (!(v[node] > 0.0)) {
            throw Error(ErrorKind::domain, "lambda lift requires v > 0 (node " + g.describe_node(node) + ")");
        }
        const EigenTuple ev = eigenvalues(schouten(g.position(node)));
        const double op_norm = std::max(std::abs(ev.min()), std::abs(ev.max()));
        worst = std::max(worst, beta * v[node] * op_norm);
    }
    LiftResult out;
    out.lambda = safety + 0.5 * worst;
    std::vector<double> vals = v.values();
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        const double d = g.distance(node);
        vals[node] += out.lambda * d * d;
    }
    if (v.analytic()) {
        AnalyticField gen = *v.analytic() + AnalyticField::power(g.center(), 2.0, out.lambda);
        out.field = ScalarField::sample(g, gen);
    } else {
        out.field = ScalarField::from_values(g, std::move(vals));
    }
    return out;
}

// ---------------------------------------------------------------- inversion

Vector invert_coordinates(const Vector& x) {
    const double r2 = x.norm_squared();
    if (!(r2 > 0.0)) throw Error(ErrorKind::domain, "inversion is undefined at the origin");
    return x * (1.0 / r2);
}

InversionReport pullback_flat_check(int dim, double r0, int points, std::uint64_t seed,
                                    double tolerance) {
    if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::invalid_input, "dimension out of range");
    InversionReport rep;
    rep.dim = dim;
    rep.points = points;
    rep.tolerance = tolerance;
    Rng rng(seed);
    for (int p = 0; p < points; ++p) {
        // Random direction, radius in [r0/4, r0).
        Vector x(dim);
        for (int i = 0; i < dim; ++i) x[i] = rng.normal();
        x *= rng.uniform(0.25 * r0, r0) / x.norm();
        const Vector z = invert_coordinates(x);

        rep.max_involution_error = std::max(
            rep.max_involution_error, (invert_coordinates(z) - x).norm() / x.norm());

        // J(i, k) = d x_i / d z_k by Richardson-extrapolated central differences.
        const double eps = 1e-3 * z.norm();
        auto central = [&](int k, double step) {
            Vector zp = z;
            Vector zm = z;
            zp[k] += step;
            zm[k] -= step;
            return (invert_coordinates(zp) - invert_coordinates(zm)) * (0.5 / step);
        };
        std::array<Vector, kMaxDim> cols{};
        for (int k = 0; k < dim; ++k) {
            cols[static_cast<std::size_t>(k)] = (central(k, 0.5 * eps) * 4.0 - central(k, eps)) * (1.0 / 3.0);
        }
        const double conf = std::pow(x.norm_squared(), -2.0);  // |x|^{-4}
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const double gij = conf * cols[static_cast<std::size_t>(i)].dot(cols[static_cast<std::size_t>(j)]);
                rep.max_pullback_deviation =
                    std::max(rep.max_pullback_deviation, std::abs(gij - (i == j ? 1.0 : 0.0)));
            }
        }
    }
    rep.pass = rep.max_pullback_deviation <= tolerance && rep.max_involution_error <= 1e-13;
    return rep;
}

ScalarField psi_field(const ScalarField& u) {
    const GridDomain& g = u.domain();
    if (u.analytic()) {
        return ScalarField::sample(g, *u.analytic() + AnalyticField::log_singular(g.center(), -2.0));
    }
    std::vector<double> vals = u.values();
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (g.active(node)) vals[node] -= 2.0 * std::log(g.distance(node));
    }
    return ScalarField::from_values(g, std::move(vals));
}

// ---------------------------------------------------------------- CSV

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error(ErrorKind::invalid_input, "line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& s, std::size_t line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error(ErrorKind::invalid_input, "line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
    return v;
}

}  // namespace

void write_field_csv(std::ostream& os, const ScalarField& f) {
    const GridDomain& g = f.domain();
    const int n = g.dim();
    os << "n,h,r0,rexc";
    for (int a = 0; a < n; ++a) os << ",cx" << (a + 1);
    os << '\n' << n << ',' << shortest(g.h()) << ',' << shortest(g.r0()) << ',' << shortest(g.r_exc());
    for (int a = 0; a < n; ++a) os << ',' << shortest(g.center()[a]);
    os << '\n';
    for (int a = 0; a < n; ++a) os << 'i' << (a + 1) << ',';
    os << "value\n";
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (!g.active(node)) continue;
        const MultiIndex m = g.multi_index(node);
        for (int a = 0; a < n; ++a) os << m[static_cast<std::size_t>(a)] << ',';
        os << shortest(f[node]) << '\n';
    }
}

ScalarField read_field_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line() || split_csv(line).size() < 5 || split_csv(line)[0] != "n") {
        throw Error(ErrorKind::invalid_input, "field CSV: missing 'n,h,r0,rexc,cx...' header");
    }
    if (!next_line()) throw Error(ErrorKind::invalid_input, "field CSV: missing geometry line");
    const auto geo = split_csv(line);
    const int n = parse_int(geo.at(0), lineno);
    if (n < 1 || n > kMaxDim || geo.size() != static_cast<std::size_t>(4 + n)) {
        throw Error(ErrorKind::invalid_input, "field CSV: geometry line does not match dimension");
    }
    const double h = parse_double(geo[1], lineno);
    const double r0 = parse_double(geo[2], lineno);
    const double rexc = parse_double(geo[3], lineno);
    Vector center(n);
    for (int a = 0; a < n; ++a) center[a] = parse_double(geo[static_cast<std::size_t>(4 + a)], lineno);
    const GridDomain g = GridDomain::punctured_ball(center, r0, rexc, h);

    if (!next_line() || split_csv(line).size() != static_cast<std::size_t>(n + 1)) {
        throw Error(ErrorKind::invalid_input, "field CSV: missing 'i1,...,in,value' header");
    }

    std::vector<double> values(g.box_size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::uint8_t> seen(g.box_size(), 0);
    while (next_line()) {
        const auto cells = split_csv(line);
        if (cells.size() != static_cast<std::size_t>(n + 1)) {
            throw Error(ErrorKind::invalid_input, "field CSV line " + std::to_string(lineno) +
                                                      ": expected " + std::to_string(n + 1) + " cells");
        }
        MultiIndex m{};
        for (int a = 0; a < n; ++a) m[static_cast<std::size_t>(a)] = parse_int(cells[static_cast<std::size_t>(a)], lineno);
        const auto node = g.node_at(m);
        if (!node || !g.active(*node)) {
            throw Error(ErrorKind::invalid_input,
                        "field CSV line " + std::to_string(lineno) + ": node outside the active domain");
        }
        if (seen[*node]) {
            throw Error(ErrorKind::invalid_input, "field CSV line " + std::to_string(lineno) +
                                                      ": duplicate node " + g.describe_node(*node));
        }
        seen[*node] = 1;
        values[*node] = parse_double(cells[static_cast<std::size_t>(n)], lineno);
    }

    std::vector<std::size_t> missing;
    for (std::size_t node = 0; node < g.box_size(); ++node) {
        if (g.active(node) && !seen[node]) missing.push_back(node);
    }
    if (!missing.empty()) {
        std::string msg = "field CSV: " + std::to_string(missing.size()) + " active node(s) missing:";
        for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 20); ++i) {
            msg += " " + g.describe_node(missing[i]);
        }
        if (missing.size() > 20) msg += " ...";
        throw Error(ErrorKind::invalid_input, msg);
    }
    return ScalarField::from_values(g, std::move(values));
}

}  // namespace deltacone
