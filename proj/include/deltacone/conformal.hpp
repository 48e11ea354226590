#pragma once

// Pointwise conformal geometry in flat working coordinates: Schouten tensor,
// the conformal change A_u, the curvature-operator catalog F, and the
// v = exp(beta u) transform that turns admissibility into delta-convexity.
//
// Eigenvalues are always taken with respect to the background metric, which
// is the identity in the stored coordinates.

#include <string>

#include "deltacone/cones.hpp"
#include "deltacone/symmat.hpp"

namespace deltacone {

/// A = (Ric - R/(2(n-1)) g) / (n-2). Throws Error(domain) for n < 3.
SymTensor schouten_from_ricci(const SymTensor& ricci, double scalar_curvature);
/// Inverse of schouten_from_ricci: Ric = (n-2) A + tr(A) g.
SymTensor ricci_tensor_from_schouten(const SymTensor& schouten);
/// A^tau = (Ric - tau R/(2(n-1)) g) / (n-2).
SymTensor schouten_tau_from_ricci(const SymTensor& ricci, double scalar_curvature, double tau);

struct ConformalPointData {
    SymTensor A;       // background Schouten tensor
    Vector grad_u;
    SymTensor hess_u;
    double u = 0.0;
};

/// A_u = A + hess u + du (x) du - |grad u|^2 g / 2.
SymTensor conformal_change(const ConformalPointData& p);

/// A^tau_u = A^tau + hess u + (1-tau)/(n-2) (lap u) g + du (x) du - (2-tau)/2 |grad u|^2 g,
/// with p.A holding the background A^tau.
SymTensor conformal_change_tau(const ConformalPointData& p, double tau);

class CurvatureOperator {
public:
    enum class Kind { sigma_k, quotient, sigma_k_tau, det_delta };

    /// sigma_k^{1/k} on Gamma_{sigma_k}.
    static CurvatureOperator sigma_k(int n, int k);
    /// (sigma_k / sigma_l)^{1/(k-l)} on Gamma_{sigma_k}, 1 <= l < k.
    static CurvatureOperator quotient(int n, int k, int l);
    /// sigma_k^{1/k} of the A^tau eigenvalues; requires k > n/2 and tau0 < tau <= 1.
    static CurvatureOperator sigma_k_tau(int n, int k, double tau);
    /// (prod_i (lambda_i + delta sum lambda))^{1/n} on Gamma_delta.
    static CurvatureOperator det_delta(int n, double delta);

    Kind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    int k() const noexcept { return k_; }
    int l() const noexcept { return l_; }
    double tau() const noexcept { return tau_; }
    double delta() const noexcept { return delta_; }
    ConeSpec domain_cone() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::sigma_k;
    int dim_ = 0;
    int k_ = 0;
    int l_ = 0;
    double tau_ = 1.0;
    double delta_ = 0.0;
};

/// Evaluates F on lambda. Returns exactly 0 when lambda lies on the domain
/// boundary within `tolerance` (normalized); throws Error(domain) naming the
/// cone when lambda lies outside its closure.
double evaluate_F(const CurvatureOperator& op, const EigenTuple& lambda,
                  double tolerance = kDefaultBoundaryTol);

enum class Admissibility { strictly_admissible, admissible_degenerate, inadmissible };
const char* to_string(Admissibility a) noexcept;

Admissibility admissibility_classify(const EigenTuple& lambda_au, const ConeSpec& cone,
                                     double tolerance = kDefaultBoundaryTol);

/// v = exp(beta u), beta > 0.
double v_transform(double u, double beta);
/// u = log(v) / beta; throws Error(domain) for v <= 0.
double u_of_v(double v, double beta);

/// hess v + beta v A.
SymTensor hessian_v_cone_form(const SymTensor& A, double beta, double v, const SymTensor& hess_v);

/// ((1 + n delta)/(1 + delta)) dv (x) dv - |grad v|^2 g.
SymTensor gradient_tensor(const Vector& grad_v, double delta);
/// Its spectrum: ((n-1) delta/(1+delta), -1, ..., -1) |grad v|^2.
EigenTuple gradient_tensor_eigenvalues(int n, double delta, double grad_norm);

/// A_v = A + alpha hess v / v + (alpha^2 - alpha) dv (x) dv / v^2 - alpha^2 |grad v|^2 / (2 v^2) g.
/// Throws Error(domain) for v <= 0.
SymTensor a_v_formula(double v, const Vector& grad_v, const SymTensor& hess_v, const SymTensor& A,
                      double alpha);

/// L w = lap w - (n-2)/(4(n-1)) R w.
double conformal_laplacian_defect(double w, double lap_w, double scalar_curvature, int n);

}  // namespace deltacone
