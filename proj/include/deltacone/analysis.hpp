#pragma once

// Estimators and inequality checks on sampled fields: oscillation and Holder
// fits, excision trends for singular integrals, the singularity dichotomy,
// scale-invariant bounds, the p0-Laplacian and the Hessian eigenvalue lemma.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltacone/fields.hpp"
#include "deltacone/grid.hpp"
#include "deltacone/symmat.hpp"

namespace deltacone {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of y - (slope x + intercept)
    std::size_t points = 0;
};

/// Ordinary least squares; requires at least two distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------- barrier

struct BarrierReport {
    double gamma = 0.0;
    double radius = 0.0;
    double oscillation = 0.0;
    double tolerance = 0.0;   // absolute slack added to the bound
    std::size_t checked = 0;
    double max_excess = 0.0;  // max_x [W(x) - W(y) - bound(x)], <= tolerance on pass
    std::size_t worst_node = 0;
    std::vector<NodeMargin> precondition_failures;
    bool precondition_ok = false;
    bool pass = false;
};

/// W(x) - W(y) <= osc_{B_R(y)} W (|x-y|/R)^gamma + tau R^2 on the active
/// nodes of B_R(y). W(y) is `w_at_y` when given, else the generator's value or
/// the node at y. `tau` < 0 selects fd_cone_tolerance(h).
BarrierReport barrier_oscillation_check(const ScalarField& w, double delta, const Vector& y,
                                        double radius, double tau = -1.0,
                                        DerivativeSource source = DerivativeSource::automatic,
                                        std::optional<double> w_at_y = std::nullopt);

// ---------------------------------------------------------------- Holder

struct HolderEstimate {
    double exponent = 0.0;
    double seminorm = 0.0;  // K in osc_r <= K r^exponent
    double residual = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<double> radii;
    std::vector<double> oscillations;
    bool constant_field = false;  // exponent is +inf
};

/// Least-squares fit of log osc_{B_r(y)} W against log r over r = r_max 2^-j,
/// r >= 2h. r_max <= 0 uses the distance from y to the outer sphere. W(y)
/// joins every ball when known (`w_at_y`, the generator, or a node at y).
/// Throws Error(resolution) with fewer than four radii.
HolderEstimate holder_exponent(const ScalarField& w, const Vector& y, double r_max = 0.0,
                               std::optional<double> w_at_y = std::nullopt);

/// With v(O) = 0 and osc_r v <= K r^gamma, u = (2/gamma) log v obeys
/// u <= 2 log d + (2/gamma) log K. Reports max_x [u - 2 log d] against that C.
struct GrowthConsistency {
    double bound = 0.0;
    double max_excess = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
GrowthConsistency holder_growth_check(const ScalarField& v, double gamma, const HolderEstimate& est,
                                      double tolerance = 1e-9);

// ---------------------------------------------------------------- excision trends

enum class TrendVerdict { converging, log_diverging, power_diverging };
const char* to_string(TrendVerdict v) noexcept;

struct ShellIncrement {
    double r_inner = 0.0;
    double r_outer = 0.0;
    double increment = 0.0;
};

struct IntegralTrend {
    double value = 0.0;       // over the whole domain
    std::vector<double> excisions;
    std::vector<double> values;  // integral over d >= excisions[j]
    std::vector<ShellIncrement> shells;
    double exponent = 0.0;    // increments ~ r^exponent
    double rate = 0.0;        // -exponent when diverging, else 0
    double exponent_tol = 0.05;
    TrendVerdict verdict = TrendVerdict::converging;
};

struct TrendOptions {
    double exponent_tol = 0.05;
    /// Smallest excision as a multiple of h.
    double min_excision_h = 2.0;
    DerivativeSource source = DerivativeSource::automatic;
};

/// Classifies shell increments over dyadic radii; needs at least three shells.
IntegralTrend classify_increments(std::vector<ShellIncrement> shells, double exponent_tol);

using NodeIntegrand = std::function<double(std::size_t node)>;
/// Midpoint quadrature of `integrand` h^n over nested excisions r0 2^-j.
/// Nodes where `integrand` is NaN are skipped.
IntegralTrend excision_trend(const GridDomain& domain, const NodeIntegrand& integrand,
                             const TrendOptions& opt);

/// int |grad W|^p with the excision trend.
IntegralTrend w1p_norm(const ScalarField& w, double p, const TrendOptions& opt = {});

/// int exp(-n u) with the excision trend.
IntegralTrend volume_integral(const ScalarField& u, const TrendOptions& opt = {});

/// int_{B_R} exp(-n u) for growing R (each R <= r0); increments between
/// consecutive balls classify convergence at infinity (exponent < -tol).
struct GrowingBallsReport {
    std::vector<double> radii;
    std::vector<double> values;
    double value = 0.0;  // at the largest radius
    double tail_exponent = 0.0;
    bool converging = false;
};
GrowingBallsReport volume_growing_balls(const ScalarField& u, std::span<const double> radii,
                                        double exponent_tol = 0.05);

/// int |grad v|^n with the excision trend.
IntegralTrend grad_v_ln_norm(const ScalarField& v, const TrendOptions& opt = {});

// ---------------------------------------------------------------- dichotomy

enum class SingularityClass { bounded_extendable, greens_rate, indeterminate };
const char* to_string(SingularityClass c) noexcept;

struct ShellStats {
    double r_inner = 0.0;
    double r_outer = 0.0;
    std::size_t count = 0;
    double mean_log_d = 0.0;
    double mean_u = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    double min_psi = 0.0;  // psi = u - 2 log d
    double max_psi = 0.0;
};

struct ClassifyOptions {
    double slope_tol = 0.05;
    double deviation_window = 1.0;
    /// Upper bound on the slope of inner shell minima for a bounded verdict.
    double minima_slope_tol = 0.1;
    std::size_t min_shells = 4;
};

struct SingularityVerdict {
    SingularityClass verdict = SingularityClass::indeterminate;
    double slope = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;
    double sup_deviation = 0.0;   // max |psi - mean psi|
    double sup_abs_psi = 0.0;     // observed constant in |u - 2 log d| <= C
    double minima_slope = 0.0;
    double min_u = 0.0;
    std::vector<ShellStats> shells;
    std::vector<std::string> notes;
};

/// Sample-based core: shells (r_outer 2^-(j+1), r_outer 2^-j] down to r_floor.
SingularityVerdict singularity_classify_samples(std::span<const double> d, std::span<const double> u,
                                                double r_outer, double r_floor,
                                                const ClassifyOptions& opt = {});

/// Shells down to max(r_exc, h). Throws Error(resolution) with too few shells.
SingularityVerdict singularity_classify(const ScalarField& u, const ClassifyOptions& opt = {});

// ---------------------------------------------------------------- scale invariance

struct ScaleInvariantReport {
    int order = 1;
    double sup = 0.0;
    double inf = 0.0;
    std::vector<double> shell_radii;  // outer radius per dyadic shell
    std::vector<double> shell_sups;
    double growth_tol = 0.1;
    bool pass = false;
};

/// order 1: d |grad u|; order 2: d^2 (|hess u|_F + |grad u|^2). Passes when
/// finite and the innermost shell sup exceeds the outer shells' by at most
/// `growth_tol` (relative).
ScaleInvariantReport scale_invariant_check(const ScalarField& u, int order,
                                           DerivativeSource source = DerivativeSource::automatic,
                                           double growth_tol = 0.1);

// ---------------------------------------------------------------- p-Laplacian

struct NodeValue {
    std::size_t node = 0;
    double value = 0.0;
};

struct PLaplacianReport {
    double delta = 0.0;
    double mu = 0.0;
    double p0 = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;       // condition on the Hessian not met
    double max_abs_divergence = 0.0;
    double min_slack = std::numeric_limits<double>::infinity();  // div + C|dv|^{p0-2} v + tol
    std::size_t violations = 0;
    std::vector<NodeValue> divergence;  // per checked node
    bool pass = false;
};

/// div(|grad v|^{p0-2} grad v) by flux differencing at face midpoints.
double p_laplacian_at(const ScalarField& v, std::size_t node, double p);

/// Requires delta > 0 (Error(domain) otherwise) and v > 0.
PLaplacianReport p_laplacian_defect(const ScalarField& v, double delta, double mu,
                                    DerivativeSource source = DerivativeSource::automatic);

// ---------------------------------------------------------------- eigenvalue bounds

struct EigenBoundsReport {
    bool precondition_ok = false;
    double lower = 0.0;       // -delta lap v - mu v
    double upper = 0.0;       // [1 + (n-1) delta] lap v + (n-1) mu v
    double c0 = 0.0;          // 1 / (1 + (n-1) delta)
    double c1 = 0.0;          // mu [n/(1+n delta) + (n-1)/(1+(n-1) delta)]
    double laplacian = 0.0;
    double op_norm = 0.0;     // max |nu_j|
    double min_slack = 0.0;   // smallest slack over the three inequalities
    bool pass = false;
};

/// Checks the eigenvalue bounds and lap v >= c0 |hess v|_op - c1 v at one
/// point where hess v + delta lap v g + mu v g >= -tol. Requires mu >= 0.
EigenBoundsReport hessian_eigen_bounds(const SymTensor& hess_v, double v, double delta, double mu,
                                       double tol = 1e-9);

struct EigenBoundsFieldReport {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    bool pass = false;
};
EigenBoundsFieldReport hessian_eigen_bounds_field(const ScalarField& v, double delta, double mu,
                                                  DerivativeSource source = DerivativeSource::automatic);

}  // namespace deltacone
