#include "deltacone/radial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "deltacone/error.hpp"

namespace deltacone {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string radius_text(double r) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, p);
}

}  // namespace

RadialSpectrum radial_schouten(double /*u*/, double du, double d2u, double r) {
    if (!(r > 0.0)) throw Error(ErrorKind::domain, "radial Schouten spectrum needs r > 0");
    return {d2u + 0.5 * du * du, du / r - 0.5 * du * du};
}

EigenTuple radial_spectrum(const RadialSpectrum& s, int n) {
    std::array<double, kMaxDim> v{};
    v[0] = s.radial;
    for (int i = 1; i < n; ++i) v[static_cast<std::size_t>(i)] = s.tangential;
    return EigenTuple(std::span<const double>(v.data(), static_cast<std::size_t>(n)));
}

// ---------------------------------------------------------------- models

RadialModel RadialModel::power(double exponent, double coeff) {
    RadialModel m;
    m.terms_.push_back(Power{coeff, exponent});
    return m;
}

RadialModel RadialModel::log(double coeff) {
    RadialModel m;
    m.terms_.push_back(Log{coeff});
    return m;
}

RadialModel RadialModel::stereographic(double coeff) {
    RadialModel m;
    m.terms_.push_back(Stereographic{coeff});
    return m;
}

RadialModel RadialModel::constant(double value) {
    RadialModel m;
    m.terms_.push_back(Constant{value});
    return m;
}

RadialModel& RadialModel::operator+=(const RadialModel& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

double RadialModel::value(double r) const {
    double s = 0.0;
    for (const Term& t : terms_) {
        s += std::visit(overloaded{
                            [&](const Power& p) { return p.coeff * std::pow(r, p.exponent); },
                            [&](const Log& l) { return l.coeff * std::log(r); },
                            [&](const Stereographic& g) { return g.coeff * std::log(0.5 * (1.0 + r * r)); },
                            [&](const Constant& c) { return c.value; },
                        },
                        t);
    }
    return s;
}

double RadialModel::d1(double r) const {
    double s = 0.0;
    for (const Term& t : terms_) {
        s += std::visit(overloaded{
                            [&](const Power& p) { return p.coeff * p.exponent * std::pow(r, p.exponent - 1.0); },
                            [&](const Log& l) { return l.coeff / r; },
                            [&](const Stereographic& g) { return g.coeff * 2.0 * r / (1.0 + r * r); },
                            [&](const Constant&) { return 0.0; },
                        },
                        t);
    }
    return s;
}

double RadialModel::d2(double r) const {
    double s = 0.0;
    for (const Term& t : terms_) {
        s += std::visit(overloaded{
                            [&](const Power& p) {
                                return p.coeff * p.exponent * (p.exponent - 1.0) * std::pow(r, p.exponent - 2.0);
                            },
                            [&](const Log& l) { return -l.coeff / (r * r); },
                            [&](const Stereographic& g) {
                                const double q = 1.0 + r * r;
                                return g.coeff * 2.0 * (1.0 - r * r) / (q * q);
                            },
                            [&](const Constant&) { return 0.0; },
                        },
                        t);
    }
    return s;
}

RadialProfile RadialProfile::sample(const RadialModel& model, double r_min, double r_max, std::size_t count) {
    if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) {
        throw Error(ErrorKind::invalid_input, "profile sampling needs 0 < r_min < r_max and two samples");
    }
    RadialProfile p;
    const double a = std::log(r_min);
    const double b = std::log(r_max);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = i + 1 == count ? r_max : std::exp(a + (b - a) * static_cast<double>(i) / (count - 1.0));
        p.r.push_back(r);
        p.u.push_back(model.value(r));
        p.du.push_back(model.d1(r));
        p.d2u.push_back(model.d2(r));
    }
    return p;
}

// ---------------------------------------------------------------- ODE

double radial_second_derivative(const RadialOperator& op, double f, int n, double r, double u, double du,
                                double tol) {
    if (!(r > 0.0)) throw Error(ErrorKind::domain, "radial ODE needs r > 0");
    const auto [k, l] = std::visit(overloaded{
                                       [](const SigmaKOp& s) { return std::pair{s.k, 0}; },
                                       [](const QuotientOp& q) { return std::pair{q.k, q.l}; },
                                   },
                                   op);
    if (k < 1 || k > n || l < 0 || l >= k || (std::holds_alternative<QuotientOp>(op) && l < 1)) {
        throw Error(ErrorKind::invalid_input, "operator indices out of range");
    }
    const double t = du / r - 0.5 * du * du;
    auto degenerate = [&](const std::string& why) {
        return Error(ErrorKind::degeneracy, why + " at r = " + radius_text(r));
    };

    double lambda_rad = 0.0;
    if (f == 0.0) {
        // sigma_k = 0: lambda_rad sigma_{k-1}(t) + sigma_k(t) = 0, reduced by t^{k-1}.
        if (k >= 2 && t < -tol) throw degenerate("tangential eigenvalue negative, sigma_1 < 0");
        lambda_rad = -(static_cast<double>(n - k) / k) * t;
    } else {
        for (int j = 1; j < k; ++j) {
            if (!(binomial(n - 1, j) * std::pow(t, j) > tol)) {
                throw degenerate("sigma_" + std::to_string(j) + " of the tangential block <= tolerance");
            }
        }
        const double F = f * std::exp(-2.0 * u);
        auto a = [&](int j) { return binomial(n - 1, j - 1) * std::pow(t, j - 1); };
        auto b = [&](int j) { return binomial(n - 1, j) * std::pow(t, j); };
        if (l == 0) {
            lambda_rad = (std::pow(F, k) - b(k)) / a(k);
        } else {
            const double Fq = std::pow(F, k - l);
            const double denom = a(k) - Fq * a(l);
            if (!(denom > tol)) throw degenerate("quotient equation not solvable for u''");
            lambda_rad = (Fq * b(l) - b(k)) / denom;
            if (!(lambda_rad * a(l) + b(l) > tol)) throw degenerate("sigma_" + std::to_string(l) + " <= tolerance");
        }
    }
    return lambda_rad - 0.5 * du * du;
}

RadialProfile radial_ode_solve(const RadialOperator& op, double f, int n, const RadialInitial& init, double r_end,
                               const RadialSolveOptions& opt) {
    if (n < 3 || n > kMaxDim) throw Error(ErrorKind::invalid_input, "dimension out of range");
    if (!(init.r > 0.0) || !(r_end > 0.0)) throw Error(ErrorKind::domain, "radial ODE needs r > 0");
    if (!(opt.step > 0.0)) throw Error(ErrorKind::invalid_input, "step must be > 0");
    if (!std::isfinite(f) || f < 0.0) throw Error(ErrorKind::invalid_input, "f must be finite and >= 0");

    const double t0 = std::log(init.r);
    const double t1 = std::log(r_end);
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(t1 - t0) / opt.step - 1e-9)));
    const double dt = (t1 - t0) / static_cast<double>(steps);

    // State (U, V) = (u, r u') in t = log r; U'' = r^2 u'' + V.
    auto rhs = [&](double t, double U, double V, double& dU, double& dV) {
        const double r = std::exp(t);
        dU = V;
        dV = r * r * radial_second_derivative(op, f, n, r, U, V / r, opt.degeneracy_tol) + V;
    };

    RadialProfile p;
    p.r.reserve(steps + 1);
    double U = init.u;
    double V = init.r * init.du;
    auto record = [&](double t) {
        const double r = std::exp(t);
        p.r.push_back(r);
        p.u.push_back(U);
        p.du.push_back(V / r);
        p.d2u.push_back(radial_second_derivative(op, f, n, r, U, V / r, opt.degeneracy_tol));
    };
    record(t0);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t0 + dt * static_cast<double>(i);
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        rhs(t, U, V, k1u, k1v);
        rhs(t + 0.5 * dt, U + 0.5 * dt * k1u, V + 0.5 * dt * k1v, k2u, k2v);
        rhs(t + 0.5 * dt, U + 0.5 * dt * k2u, V + 0.5 * dt * k2v, k3u, k3v);
        rhs(t + dt, U + dt * k3u, V + dt * k3v, k4u, k4v);
        U += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        V += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        record(i + 1 == steps ? t1 : t + dt);
    }
    if (dt < 0.0) {
        std::reverse(p.r.begin(), p.r.end());
        std::reverse(p.u.begin(), p.u.end());
        std::reverse(p.du.begin(), p.du.end());
        std::reverse(p.d2u.begin(), p.d2u.end());
    }
    return p;
}

SingularityVerdict classify_radial(const RadialProfile& profile, const ClassifyOptions& opt) {
    if (profile.size() < 2) throw Error(ErrorKind::resolution, "profile has fewer than two samples");
    const double r_min = profile.r.front();
    const double r_max = profile.r.back();
    if (r_min > r_max / 16.0) throw Error(ErrorKind::resolution, "profile must reach r_max / 16");
    // Shells strictly above r_min so the innermost one is fully sampled.
    return singularity_classify_samples(profile.r, profile.u, r_max, r_min, opt);
}

IntegralTrend radial_volume(const RadialProfile& p, int n, double exponent_tol) {
    if (p.size() < 2) throw Error(ErrorKind::resolution, "profile has fewer than two samples");
    const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    std::vector<double> radii;
    for (double x = p.r.back(); x >= p.r.front() * (1.0 - 1e-12); x *= 0.5) radii.push_back(x);
    if (radii.size() < 4) throw Error(ErrorKind::resolution, "profile spans fewer than three dyadic shells");
    const std::size_t J = radii.size() - 1;
    std::vector<double> shell(J + 1, 0.0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        auto g = [&](std::size_t j) { return std::exp(-n * p.u[j]) * sphere * std::pow(p.r[j], n - 1); };
        const double seg = 0.5 * (g(i) + g(i + 1)) * (p.r[i + 1] - p.r[i]);
        const double mid = 0.5 * (p.r[i] + p.r[i + 1]);
        std::size_t j = J;
        if (mid >= radii[J]) {
            j = 0;
            while (j + 1 < radii.size() && mid < radii[j + 1]) ++j;
        }
        shell[j] += seg;
    }
    std::vector<ShellIncrement> inc;
    for (std::size_t j = 0; j < J; ++j) inc.push_back({radii[j + 1], radii[j], shell[j]});
    IntegralTrend t = classify_increments(std::move(inc), exponent_tol);
    double running = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        running += shell[j];
        t.excisions.push_back(radii[j + 1]);
        t.values.push_back(running);
    }
    t.value = running + shell[J];
    return t;
}

void write_profile_csv(std::ostream& os, const RadialProfile& p) {
    auto put = [&](double v) {
        char buf[32];
        auto [e, ec] = std::to_chars(buf, buf + sizeof buf, v);
        os.write(buf, e - buf);
    };
    os << "r,u,du,d2u\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        put(p.r[i]);
        os << ',';
        put(p.u[i]);
        os << ',';
        put(p.du[i]);
        os << ',';
        put(p.d2u[i]);
        os << '\n';
    }
}

}  // namespace deltacone
