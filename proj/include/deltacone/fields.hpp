#pragma once

// Operations on sampled fields: centered finite differences, spherical
// mollification, the Lambda-lift, inversion coordinates, and CSV I/O.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "deltacone/cones.hpp"
#include "deltacone/grid.hpp"

namespace deltacone {

/// Central differences; throws Error(stencil) naming the node when the
/// stencil touches an inactive node.
Vector fd_gradient(const ScalarField& f, std::size_t node);
SymTensor fd_hessian(const ScalarField& f, std::size_t node);
/// Trace of fd_hessian using only the axis stencil.
double fd_laplacian(const ScalarField& f, std::size_t node);

enum class DerivativeSource { automatic, exact, finite_difference };
const char* to_string(DerivativeSource s) noexcept;

/// Gradient/Hessian either from the analytic generator or by finite
/// differences. `automatic` prefers exact derivatives when available.
Vector field_gradient(const ScalarField& f, std::size_t node, DerivativeSource source);
SymTensor field_hessian(const ScalarField& f, std::size_t node, DerivativeSource source);
/// True when `source` resolves to finite differences for this field.
bool uses_finite_differences(const ScalarField& f, DerivativeSource source);

/// Default FD cone tolerance 10 h^2 * scale.
double fd_cone_tolerance(double h, double scale = 1.0);

/// Spherical bump: rho = 1 on |x| < 1, quintic smoothstep down to 0 on
/// [1, 2], 0 beyond; normalized to unit integral in dimension `dim`.
class MollifierSpec {
public:
    MollifierSpec(int dim, double scale);

    int dim() const noexcept { return dim_; }
    double scale() const noexcept { return scale_; }
    double normalization() const noexcept { return normalization_; }

    /// Unnormalized radial profile in s = |x| (plateau 1, support 2).
    static double profile(double s) noexcept;
    /// Normalized density rho(x) / integral at |x| = s (unscaled variable).
    double density(double s) const noexcept { return profile(s) / normalization_; }
    /// int rho(s) s^{n-1} |S^{n-1}| ds by midpoint quadrature.
    static double integral(int dim, std::size_t intervals = 200000);

private:
    int dim_;
    double scale_;
    double normalization_;
};

/// W_h(x) = sum_y w(x - y) W(y) with w the lattice-normalized weights of
/// rho((x-y)/h_m). Output nodes are those whose whole support (radius 2 h_m)
/// is active in W. Throws Error(invalid_input) if h_m < 2h and
/// Error(empty_domain) if no node is eligible.
ScalarField mollify(const ScalarField& w, const MollifierSpec& rho);

struct NodeMargin {
    std::size_t node = 0;
    double margin = 0.0;
};

struct MollifiedConeReport {
    double delta = 0.0;
    double mollifier_scale = 0.0;
    double tolerance = 0.0;
    std::size_t input_nodes = 0;
    std::size_t output_nodes = 0;
    double min_input_margin = 0.0;
    double min_output_margin = 0.0;
    std::vector<NodeMargin> input_failures;  // nodes failing the precondition
    bool precondition_ok = false;
    bool pass = false;
};

/// Checks Gamma_delta membership of the FD Hessian before and after
/// mollification. `tolerance` is applied to normalized margins.
MollifiedConeReport mollified_hessian_cone_check(const ScalarField& w, double delta,
                                                 const MollifierSpec& rho, double tolerance);

using TensorFieldFn = std::function<SymTensor(const Vector&)>;

struct LiftResult {
    ScalarField field;  // v + Lambda |x - O|^2
    double lambda = 0.0;
};

/// Lambda = safety + max_x beta v(x) ||A(x)||_op / 2, so that
/// 2 Lambda I - beta v A is positive semidefinite. Requires v > 0.
LiftResult lambda_lift(const ScalarField& v, const TensorFieldFn& schouten, double beta,
                       double safety);

/// z = x / |x|^2. Throws Error(domain) for x = 0.
Vector invert_coordinates(const Vector& x);

struct InversionReport {
    int dim = 0;
    int points = 0;
    double max_pullback_deviation = 0.0;
    double max_involution_error = 0.0;
    double tolerance = 1e-9;
    bool pass = false;
};

/// Pulls g_* = |x|^{-4} delta back through the inversion at random points
/// with 0 < |x| < r0, using a central-difference Jacobian, and measures the
/// deviation from the identity.
InversionReport pullback_flat_check(int dim, double r0, int points, std::uint64_t seed,
                                    double tolerance = 1e-9);

/// Psi = u - 2 log|x - O|.
ScalarField psi_field(const ScalarField& u);

/// CSV layout:
///   n,h,r0,rexc,cx1..cxn
///   <values>
///   i1..in,value
///   <one row per active node, indices relative to the center>
/// Values are written in shortest round-trip form.
void write_field_csv(std::ostream& os, const ScalarField& f);
/// Throws Error(invalid_input) listing missing active nodes, out-of-lattice
/// or duplicated rows.
ScalarField read_field_csv(std::istream& is);

}  // namespace deltacone
