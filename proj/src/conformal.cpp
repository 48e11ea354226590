#include "deltacone/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "deltacone/error.hpp"

namespace deltacone {

namespace {

void require_schouten_dim(int n) {
    if (n < 3) throw Error(ErrorKind::domain, "Schouten tensor requires n >= 3");
}

}  // namespace

SymTensor schouten_from_ricci(const SymTensor& ricci, double scalar_curvature) {
    return schouten_tau_from_ricci(ricci, scalar_curvature, 1.0);
}

SymTensor schouten_tau_from_ricci(const SymTensor& ricci, double scalar_curvature, double tau) {
    const int n = ricci.dim();
    require_schouten_dim(n);
    SymTensor a = ricci - SymTensor::identity(n) * (tau * scalar_curvature / (2.0 * (n - 1)));
    return a * (1.0 / (n - 2));
}

SymTensor ricci_tensor_from_schouten(const SymTensor& schouten) {
    const int n = schouten.dim();
    require_schouten_dim(n);
    return schouten * static_cast<double>(n - 2) + SymTensor::identity(n) * schouten.trace();
}

SymTensor conformal_change(const ConformalPointData& p) {
    const int n = p.A.dim();
    return p.A + p.hess_u + SymTensor::outer(p.grad_u) -
           SymTensor::identity(n) * (0.5 * p.grad_u.norm_squared());
}

SymTensor conformal_change_tau(const ConformalPointData& p, double tau) {
    const int n = p.A.dim();
    require_schouten_dim(n);
    const double lap = p.hess_u.trace();
    const double shift = (1.0 - tau) / (n - 2) * lap - 0.5 * (2.0 - tau) * p.grad_u.norm_squared();
    return p.A + p.hess_u + SymTensor::outer(p.grad_u) + SymTensor::identity(n) * shift;
}

// ---------------------------------------------------------------- operators

CurvatureOperator CurvatureOperator::sigma_k(int n, int k) {
    if (k < 1 || k > n || n > kMaxDim) {
        throw Error(ErrorKind::invalid_input, "sigma_k operator requires 1 <= k <= n");
    }
    CurvatureOperator op;
    op.kind_ = Kind::sigma_k;
    op.dim_ = n;
    op.k_ = k;
    return op;
}

CurvatureOperator CurvatureOperator::quotient(int n, int k, int l) {
    if (k < 1 || k > n || l < 1 || l >= k || n > kMaxDim) {
        throw Error(ErrorKind::invalid_input, "quotient operator requires 1 <= l < k <= n");
    }
    CurvatureOperator op;
    op.kind_ = Kind::quotient;
    op.dim_ = n;
    op.k_ = k;
    op.l_ = l;
    return op;
}

CurvatureOperator CurvatureOperator::sigma_k_tau(int n, int k, double tau) {
    if (n < 3 || 2 * k <= n || k > n || n > kMaxDim) {
        throw Error(ErrorKind::invalid_input, "sigma_k^tau operator requires n >= 3, n/2 < k <= n");
    }
    const double tau0 = 2.0 * (n - k) / n;
    if (!(tau > tau0) || tau > 1.0) {
        throw Error(ErrorKind::domain, "sigma_k^tau operator requires tau0 < tau <= 1 (tau0 = " +
                                           std::to_string(tau0) + ")");
    }
    CurvatureOperator op;
    op.kind_ = Kind::sigma_k_tau;
    op.dim_ = n;
    op.k_ = k;
    op.tau_ = tau;
    return op;
}

CurvatureOperator CurvatureOperator::det_delta(int n, double delta) {
    if (n < 1 || n > kMaxDim || !(delta > -1.0 / n)) {
        throw Error(ErrorKind::invalid_input, "det_delta operator requires delta > -1/n");
    }
    CurvatureOperator op;
    op.kind_ = Kind::det_delta;
    op.dim_ = n;
    op.delta_ = delta;
    return op;
}

ConeSpec CurvatureOperator::domain_cone() const {
    if (kind_ == Kind::det_delta) return ConeSpec::gamma_delta(dim_, delta_);
    return ConeSpec::gamma_sigma_k(dim_, k_);
}

std::string CurvatureOperator::describe() const {
    switch (kind_) {
        case Kind::sigma_k: return "sigma_" + std::to_string(k_) + "^(1/" + std::to_string(k_) + ")";
        case Kind::quotient:
            return "(sigma_" + std::to_string(k_) + "/sigma_" + std::to_string(l_) + ")^(1/" +
                   std::to_string(k_ - l_) + ")";
        case Kind::sigma_k_tau:
            return "sigma_" + std::to_string(k_) + "^(1/" + std::to_string(k_) +
                   ")(A^tau), tau=" + std::to_string(tau_);
        case Kind::det_delta: return "det^(1/n)(lambda + delta tr), delta=" + std::to_string(delta_);
    }
    return "?";
}

double evaluate_F(const CurvatureOperator& op, const EigenTuple& lambda, double tolerance) {
    if (lambda.dim() != op.dim()) {
        throw Error(ErrorKind::invalid_input, "eigen tuple dimension does not match operator");
    }
    const int n = lambda.dim();
    const ConeSpec cone = op.domain_cone();
    const ConeMargin m = cone_margin(lambda, cone, tolerance);
    if (m.verdict == ConeVerdict::exterior) {
        throw Error(ErrorKind::domain, "eigenvalues outside the closure of " + cone.describe() +
                                           " (margin " + std::to_string(m.margin) + ")");
    }
    if (m.verdict == ConeVerdict::boundary) return 0.0;

    switch (op.kind()) {
        case CurvatureOperator::Kind::sigma_k:
        case CurvatureOperator::Kind::sigma_k_tau:
            return std::pow(sigma_k(lambda, op.k()), 1.0 / op.k());
        case CurvatureOperator::Kind::quotient: {
            const auto e = elementary_symmetric(lambda.values());
            return std::pow(e[static_cast<std::size_t>(op.k())] / e[static_cast<std::size_t>(op.l())],
                            1.0 / (op.k() - op.l()));
        }
        case CurvatureOperator::Kind::det_delta: {
            const double s = lambda.sum();
            // Product of n-th roots keeps the result in range.
            double f = 1.0;
            for (int i = 0; i < n; ++i) f *= std::pow(lambda[i] + op.delta() * s, 1.0 / n);
            return f;
        }
    }
    return 0.0;
}

const char* to_string(Admissibility a) noexcept {
    switch (a) {
        case Admissibility::strictly_admissible: return "strictly-admissible";
        case Admissibility::admissible_degenerate: return "admissible-degenerate";
        case Admissibility::inadmissible: return "inadmissible";
    }
    return "?";
}

Admissibility admissibility_classify(const EigenTuple& lambda_au, const ConeSpec& cone,
                                     double tolerance) {
    switch (cone_margin(lambda_au, cone, tolerance).verdict) {
        case ConeVerdict::strict_interior: return Admissibility::strictly_admissible;
        case ConeVerdict::boundary: return Admissibility::admissible_degenerate;
        case ConeVerdict::exterior: return Admissibility::inadmissible;
    }
    return Admissibility::inadmissible;
}

// ---------------------------------------------------------------- v transform

double v_transform(double u, double beta) {
    if (!(beta > 0.0)) throw Error(ErrorKind::domain, "v transform requires beta > 0");
    return std::exp(beta * u);
}

double u_of_v(double v, double beta) {
    if (!(beta > 0.0)) throw Error(ErrorKind::domain, "v transform requires beta > 0");
    if (!(v > 0.0)) throw Error(ErrorKind::domain, "u_of_v requires v > 0");
    return std::log(v) / beta;
}

SymTensor hessian_v_cone_form(const SymTensor& A, double beta, double v, const SymTensor& hess_v) {
    if (!(v > 0.0)) throw Error(ErrorKind::domain, "cone form requires v > 0");
    return hess_v + A * (beta * v);
}

SymTensor gradient_tensor(const Vector& grad_v, double delta) {
    const int n = grad_v.dim();
    return SymTensor::outer(grad_v) * ((1.0 + n * delta) / (1.0 + delta)) -
           SymTensor::identity(n) * grad_v.norm_squared();
}

EigenTuple gradient_tensor_eigenvalues(int n, double delta, double grad_norm) {
    const double g2 = grad_norm * grad_norm;
    std::array<double, kMaxDim> vals{};
    vals[0] = (n - 1) * delta / (1.0 + delta) * g2;
    for (int i = 1; i < n; ++i) vals[static_cast<std::size_t>(i)] = -g2;
    return EigenTuple(std::span<const double>(vals.data(), static_cast<std::size_t>(n)));
}

SymTensor a_v_formula(double v, const Vector& grad_v, const SymTensor& hess_v, const SymTensor& A,
                      double alpha) {
    if (!(v > 0.0)) throw Error(ErrorKind::domain, "A_v formula requires v > 0");
    const int n = A.dim();
    const double inv_v2 = 1.0 / (v * v);
    return A + hess_v * (alpha / v) + SymTensor::outer(grad_v) * ((alpha * alpha - alpha) * inv_v2) -
           SymTensor::identity(n) * (0.5 * alpha * alpha * grad_v.norm_squared() * inv_v2);
}

double conformal_laplacian_defect(double w, double lap_w, double scalar_curvature, int n) {
    if (!(w > 0.0)) throw Error(ErrorKind::domain, "conformal Laplacian check requires w > 0");
    require_schouten_dim(n);
    return lap_w - (n - 2.0) / (4.0 * (n - 1.0)) * scalar_curvature * w;
}

}  // namespace deltacone
