#pragma once

// Radially symmetric conformal factors u(r) on flat space: the two-block
// Schouten spectrum, closed-form model profiles, and an RK4 integrator for
// sigma_k^{1/k}(A_u) = f exp(-2u) and its quotient analogue.

#include <iosfwd>
#include <variant>
#include <vector>

#include "deltacone/analysis.hpp"

namespace deltacone {

struct RadialSpectrum {
    double radial = 0.0;      // u'' + u'^2 / 2
    double tangential = 0.0;  // u'/r - u'^2 / 2, multiplicity n-1
};

/// Throws Error(domain) for r <= 0.
RadialSpectrum radial_schouten(double u, double du, double d2u, double r);

/// Full spectrum (radial, tangential x (n-1)).
EigenTuple radial_spectrum(const RadialSpectrum& s, int n);

/// Closed-form radial profiles, summed: c r^a, c log r, c log((1+r^2)/2), constant.
class RadialModel {
public:
    struct Power {
        double coeff = 1.0;
        double exponent = 1.0;
    };
    struct Log {
        double coeff = 2.0;
    };
    struct Stereographic {
        double coeff = 1.0;
    };
    struct Constant {
        double value = 0.0;
    };
    using Term = std::variant<Power, Log, Stereographic, Constant>;

    RadialModel() = default;
    static RadialModel power(double exponent, double coeff = 1.0);
    static RadialModel log(double coeff = 2.0);
    static RadialModel stereographic(double coeff = 1.0);
    static RadialModel constant(double value);

    RadialModel& operator+=(const RadialModel& o);
    friend RadialModel operator+(RadialModel a, const RadialModel& b) { return a += b; }

    const std::vector<Term>& terms() const noexcept { return terms_; }

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;

private:
    std::vector<Term> terms_;
};

struct RadialProfile {
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> d2u;

    std::size_t size() const noexcept { return r.size(); }
    /// Samples `count` log-spaced radii over [r_min, r_max].
    static RadialProfile sample(const RadialModel& model, double r_min, double r_max, std::size_t count);
};

/// sigma_k(A_u) = (f e^{-2u})^k, or sigma_k = (f e^{-2u})^{k-l} sigma_l for quotients.
struct SigmaKOp {
    int k = 1;
};
struct QuotientOp {
    int k = 2;
    int l = 1;
};
using RadialOperator = std::variant<SigmaKOp, QuotientOp>;

struct RadialInitial {
    double r = 1.0;
    double u = 0.0;
    double du = 0.0;
};

struct RadialSolveOptions {
    double step = 1e-3;  // in t = log r
    double degeneracy_tol = kDefaultBoundaryTol;
};

/// u'' solving the operator equation at (r, u, u'). Throws Error(degeneracy)
/// when the equation stops being solvable for u'' (tangential block leaves
/// Gamma_{k-1}, or a vanishing coefficient of lambda_rad).
double radial_second_derivative(const RadialOperator& op, double f, int n, double r, double u, double du,
                                double degeneracy_tol = kDefaultBoundaryTol);

/// Integrates from `init.r` to `r_end` (either direction) with RK4 in log r.
RadialProfile radial_ode_solve(const RadialOperator& op, double f, int n, const RadialInitial& init,
                               double r_end, const RadialSolveOptions& opt = {});

/// Requires r_min <= r_max / 16; throws Error(resolution) otherwise.
SingularityVerdict classify_radial(const RadialProfile& profile, const ClassifyOptions& opt = {});

/// int exp(-n u) |S^{n-1}| r^{n-1} dr with the dyadic excision trend
/// (trapezoid rule in r over the profile samples).
IntegralTrend radial_volume(const RadialProfile& profile, int n, double exponent_tol = 0.05);

/// CSV with header r,u,du,d2u.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);

}  // namespace deltacone
