#include "deltacone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deltacone/error.hpp"
#include "deltacone/random.hpp"

namespace deltacone {

const char* to_string(ConeVerdict v) noexcept {
    switch (v) {
        case ConeVerdict::strict_interior: return "strict-interior";
        case ConeVerdict::boundary: return "boundary";
        case ConeVerdict::exterior: return "exterior";
    }
    return "?";
}

ConeMargin ConeMargin::classify(double margin, double tolerance) {
    ConeMargin m;
    m.margin = margin;
    m.tolerance = tolerance;
    if (std::abs(margin) <= tolerance) {
        m.verdict = ConeVerdict::boundary;
    } else {
        m.verdict = margin > 0.0 ? ConeVerdict::strict_interior : ConeVerdict::exterior;
    }
    return m;
}

ConeSpec ConeSpec::gamma_delta(int n, double delta) {
    if (n < 1 || n > kMaxDim) throw Error(ErrorKind::invalid_input, "cone dimension out of range");
    if (!(delta > -1.0 / n)) {
        throw Error(ErrorKind::invalid_input, "Gamma_delta requires delta > -1/n");
    }
    ConeSpec c;
    c.kind_ = Kind::gamma_delta;
    c.dim_ = n;
    c.delta_ = delta;
    return c;
}

ConeSpec ConeSpec::gamma_sigma_k(int n, int k) {
    if (n < 1 || n > kMaxDim) throw Error(ErrorKind::invalid_input, "cone dimension out of range");
    if (k < 1 || k > n) throw Error(ErrorKind::invalid_input, "Gamma_sigma_k requires 1 <= k <= n");
    ConeSpec c;
    c.kind_ = Kind::gamma_sigma_k;
    c.dim_ = n;
    c.k_ = k;
    return c;
}

std::string ConeSpec::describe() const {
    if (kind_ == Kind::gamma_delta) return "Gamma_delta(delta=" + std::to_string(delta_) + ")";
    return "Gamma_sigma_" + std::to_string(k_);
}

ConeMargin gamma_delta_margin(const EigenTuple& lambda, double delta, double tolerance) {
    const int n = lambda.dim();
    if (!(delta > -1.0 / n)) {
        throw Error(ErrorKind::invalid_input, "Gamma_delta requires delta > -1/n");
    }
    const double s = lambda.sum();
    const double worst = lambda.min() + delta * s;
    return ConeMargin::classify(worst / std::max(lambda.norm(), kMarginScaleFloor), tolerance);
}

ConeMargin gamma_sigmak_margin(const EigenTuple& lambda, int k, double tolerance) {
    const int n = lambda.dim();
    if (k < 1 || k > n) throw Error(ErrorKind::invalid_input, "Gamma_sigma_k requires 1 <= k <= n");
    const double scale = std::max(lambda.norm(), kMarginScaleFloor);
    // Normalizing the tuple first keeps sigma_j in range for tiny or huge inputs.
    const EigenTuple unit = lambda.scaled(1.0 / scale);
    const auto e = elementary_symmetric(unit.values());
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= k; ++j) {
        worst = std::min(worst, e[static_cast<std::size_t>(j)] / binomial(n, j));
    }
    return ConeMargin::classify(worst, tolerance);
}

ConeMargin cone_margin(const EigenTuple& lambda, const ConeSpec& cone, double tolerance) {
    if (lambda.dim() != cone.dim()) {
        throw Error(ErrorKind::invalid_input, "eigen tuple dimension does not match cone");
    }
    if (cone.kind() == ConeSpec::Kind::gamma_delta) {
        return gamma_delta_margin(lambda, cone.delta(), tolerance);
    }
    return gamma_sigmak_margin(lambda, cone.k(), tolerance);
}

Rational delta_of_k(int n, int k) {
    if (n < 3) throw Error(ErrorKind::domain, "delta(k,n) requires n >= 3");
    if (2 * k <= n || k > n) {
        throw Error(ErrorKind::domain, "delta(k,n) requires n/2 < k <= n (got n=" +
                                           std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    return Rational(n - k, static_cast<std::int64_t>(n) * (k - 1));
}

ExponentTable exponents(int n, const Rational& delta) {
    if (n < 3) throw Error(ErrorKind::domain, "exponents require n >= 3");
    if (delta.is_infinite() || delta < Rational(0) || !(delta < Rational(1, n - 2))) {
        throw Error(ErrorKind::domain,
                    "delta = " + delta.to_string() + " outside [0, 1/(n-2)) for n = " +
                        std::to_string(n));
    }
    ExponentTable t;
    t.n = n;
    t.delta = delta;
    const Rational one(1);
    t.gamma = (one + Rational(2 - n) * delta) / (one + delta);
    t.beta = t.gamma / Rational(2);
    t.alpha = one / t.beta;
    if (delta.is_zero()) {
        t.p0 = Rational::infinity();
        t.p_delta = Rational::infinity();
    } else {
        t.p0 = Rational(2) + one / delta;
        t.p_delta = Rational(n) * (one + delta) / (Rational(n - 1) * delta);
    }
    t.delta0 = (one + Rational(2 - n) * delta) / Rational(2);
    return t;
}

Rational tau_threshold(int n, int k) { return Rational(2 * (n - k), n); }

Rational gamma_tau(int n, int k, const Rational& tau) {
    if (n < 3 || 2 * k <= n || k > n) {
        throw Error(ErrorKind::domain, "gamma_tau requires n >= 3 and n/2 < k <= n");
    }
    if (!(tau > tau_threshold(n, k)) || tau > Rational(1)) {
        throw Error(ErrorKind::domain, "tau = " + tau.to_string() + " outside (tau0, 1] with tau0 = " +
                                           tau_threshold(n, k).to_string());
    }
    const Rational nn(n);
    const Rational kk(k);
    const Rational num = Rational(n - 2) * (Rational(2 * k - 2 * n) + nn * tau);
    const Rational den = Rational(n - 2 * k) + kk * nn - nn * tau;
    return num / den;
}

RicciBound ricci_from_schouten(const EigenTuple& schouten, int n, double delta) {
    if (n < 3) throw Error(ErrorKind::domain, "Schouten tensor requires n >= 3");
    if (schouten.dim() != n) throw Error(ErrorKind::invalid_input, "eigen tuple dimension != n");
    const double s1 = schouten.sum();
    std::array<double, kMaxDim> ric{};
    for (int i = 0; i < n; ++i) ric[static_cast<std::size_t>(i)] = (n - 2) * schouten[i] + s1;
    RicciBound out;
    out.ricci = EigenTuple(std::span<const double>(ric.data(), static_cast<std::size_t>(n)));
    out.margin = out.ricci.min() - (1.0 + (2.0 - n) * delta) * s1;
    return out;
}

InclusionReport inclusion_sample_test(int n, int k, std::int64_t sample_count, std::uint64_t seed,
                                      double tolerance) {
    InclusionReport rep;
    rep.n = n;
    rep.k = k;
    rep.delta = delta_of_k(n, k);
    rep.tolerance = tolerance;
    rep.seed = seed;
    rep.min_margin = std::numeric_limits<double>::infinity();
    const double delta = rep.delta.to_double();

    Rng rng(seed);
    std::array<double, kMaxDim> buf{};
    constexpr std::int64_t kCheckEvery = 100000;
    while (rep.samples < sample_count) {
        for (int i = 0; i < n; ++i) buf[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
        ++rep.draws;
        const EigenTuple lambda(std::span<const double>(buf.data(), static_cast<std::size_t>(n)));
        if (gamma_sigmak_margin(lambda, k, 0.0).verdict != ConeVerdict::strict_interior) {
            if (rep.draws % kCheckEvery == 0 &&
                static_cast<double>(rep.samples) < 1e-4 * static_cast<double>(rep.draws)) {
                throw Error(ErrorKind::sampling_failure,
                            "acceptance rate " +
                                std::to_string(static_cast<double>(rep.samples) /
                                               static_cast<double>(rep.draws)) +
                                " below 1e-4 after " + std::to_string(rep.draws) + " draws");
            }
            continue;
        }
        ++rep.samples;
        const ConeMargin m = gamma_delta_margin(lambda, delta, tolerance);
        if (m.margin < rep.min_margin) {
            rep.min_margin = m.margin;
            rep.worst = lambda;
        }
        if (m.margin < -tolerance) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

}  // namespace deltacone
