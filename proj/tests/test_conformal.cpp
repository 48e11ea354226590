#include <doctest.h>

#include <cmath>

#include "deltacone/conformal.hpp"
#include "deltacone/error.hpp"
#include "deltacone/random.hpp"

using namespace deltacone;

namespace {

double max_abs(const SymTensor& s) {
    double m = 0.0;
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = i; j < s.dim(); ++j) m = std::max(m, std::abs(s(i, j)));
    }
    return m;
}

// Derivatives of c * log((1 + |x|^2) / 2), written out by hand.
ConformalPointData stereographic_point(const Vector& x) {
    const int n = x.dim();
    const double q = 1.0 + x.norm_squared();
    ConformalPointData p;
    p.A = SymTensor(n);
    p.u = std::log(q / 2.0);
    p.grad_u = x * (2.0 / q);
    p.hess_u = SymTensor(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) p.hess_u.set(i, j, (i == j ? 2.0 / q : 0.0) - 4.0 * x[i] * x[j] / (q * q));
    }
    return p;
}

ConformalPointData log_point(const Vector& x) {
    const int n = x.dim();
    const double r2 = x.norm_squared();
    ConformalPointData p;
    p.A = SymTensor(n);
    p.u = std::log(r2);
    p.grad_u = x * (2.0 / r2);
    p.hess_u = SymTensor(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) p.hess_u.set(i, j, (i == j ? 2.0 / r2 : 0.0) - 4.0 * x[i] * x[j] / (r2 * r2));
    }
    return p;
}

}  // namespace

TEST_CASE("Schouten tensor from Ricci") {
    const SymTensor a = schouten_from_ricci(SymTensor::identity(4) * 3.0, 12.0);
    CHECK(max_abs(a - SymTensor::identity(4) * 0.5) < 1e-15);
    CHECK(max_abs(schouten_from_ricci(SymTensor(3), 0.0)) == 0.0);
    const SymTensor b = schouten_from_ricci(SymTensor::identity(3) * 2.0, 6.0);
    CHECK(max_abs(b - SymTensor::identity(3) * 0.5) < 1e-15);
    CHECK_THROWS_AS(schouten_from_ricci(SymTensor::identity(2), 2.0), Error);

    Rng rng(4);
    SymTensor ric(5);
    for (int i = 0; i < 5; ++i) {
        for (int j = i; j < 5; ++j) ric.set(i, j, rng.normal());
    }
    CHECK(max_abs(ricci_tensor_from_schouten(schouten_from_ricci(ric, ric.trace())) - ric) < 1e-13);
    CHECK(max_abs(schouten_tau_from_ricci(ric, ric.trace(), 1.0) - schouten_from_ricci(ric, ric.trace())) < 1e-15);
}

TEST_CASE("conformal change on model factors") {
    ConformalPointData c;
    c.A = SymTensor::identity(3) * 0.3;
    c.grad_u = Vector(3);
    c.hess_u = SymTensor(3);
    CHECK(max_abs(conformal_change(c) - c.A) == 0.0);

    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        Vector x(4);
        for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-2, 2);
        CHECK(max_abs(conformal_change(log_point(x))) < 1e-12 / x.norm_squared());

        const SymTensor s = conformal_change(stereographic_point(x));
        const double q = 1.0 + x.norm_squared();
        const EigenTuple e = eigenvalues(s);
        for (int i = 0; i < 4; ++i) CHECK(e[i] == doctest::Approx(2.0 / (q * q)).epsilon(1e-12));
    }
}

TEST_CASE("curvature operators") {
    CHECK(evaluate_F(CurvatureOperator::sigma_k(3, 2), EigenTuple{1, 1, 1}) == doctest::Approx(std::sqrt(3.0)));
    CHECK(evaluate_F(CurvatureOperator::quotient(3, 2, 1), EigenTuple{1, 1, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(evaluate_F(CurvatureOperator::sigma_k(3, 2), EigenTuple{3, -1, -1}), Error);
    CHECK(evaluate_F(CurvatureOperator::sigma_k(3, 2), EigenTuple{2, 2, -1}) == 0.0);

    // Hessian spectrum of |x|^gamma: gamma (gamma - 1), gamma, gamma (times r^{gamma-2}).
    for (int n = 3; n <= 6; ++n) {
        const double delta = 0.5 / (n - 2);
        const double gamma = (1.0 + (2.0 - n) * delta) / (1.0 + delta);
        std::vector<double> l(static_cast<std::size_t>(n), gamma);
        l[0] = gamma * (gamma - 1.0);
        CHECK(evaluate_F(CurvatureOperator::det_delta(n, delta), EigenTuple(std::span<const double>(l))) == 0.0);
    }
    CHECK_THROWS_AS(CurvatureOperator::sigma_k_tau(4, 3, 0.5), Error);
    CHECK_THROWS_AS(CurvatureOperator::quotient(4, 2, 2), Error);
}

TEST_CASE("admissibility") {
    CHECK(admissibility_classify(EigenTuple{0.5, 0.5, 0.5, 0.5}, ConeSpec::gamma_sigma_k(4, 2)) ==
          Admissibility::strictly_admissible);
    CHECK(admissibility_classify(EigenTuple{0, 0, 0}, ConeSpec::gamma_sigma_k(3, 2)) ==
          Admissibility::admissible_degenerate);
    CHECK(admissibility_classify(EigenTuple{3, -1, -1}, ConeSpec::gamma_sigma_k(3, 2)) ==
          Admissibility::inadmissible);
}

TEST_CASE("v transform") {
    CHECK(v_transform(0.0, 0.3) == 1.0);
    CHECK(v_transform(2.0, 0.5) == doctest::Approx(std::exp(1.0)));
    const double gamma = 0.5, r = 1.7;
    CHECK(v_transform(2.0 * std::log(r), gamma / 2.0) == doctest::Approx(std::pow(r, gamma)));
    CHECK(u_of_v(v_transform(1.3, 0.4), 0.4) == doctest::Approx(1.3));
    CHECK_THROWS_AS(u_of_v(0.0, 1.0), Error);
    CHECK_THROWS_AS(u_of_v(-1.0, 1.0), Error);
}

TEST_CASE("cone form of the transformed Hessian") {
    SymTensor h(3);
    h.set(0, 1, 0.7);
    h.set(2, 2, -1.0);
    CHECK(max_abs(hessian_v_cone_form(SymTensor(3), 0.25, 2.0, h) - h) == 0.0);

    // v = |x|^gamma sits on the boundary of Gamma_delta.
    for (int n = 3; n <= 6; ++n) {
        const double delta = 0.7 / (n - 2);
        const double gamma = (1.0 + (2.0 - n) * delta) / (1.0 + delta);
        std::vector<double> l(static_cast<std::size_t>(n), gamma);
        l[0] = gamma * (gamma - 1.0);
        CHECK(std::abs(gamma_delta_margin(EigenTuple(std::span<const double>(l)), delta).margin) < 1e-14);
    }

    const EigenTuple g = gradient_tensor_eigenvalues(3, 1.0 / 3.0, 1.0);
    CHECK(g[0] == doctest::Approx(-1.0));
    CHECK(g[1] == doctest::Approx(-1.0));
    CHECK(g[2] == doctest::Approx(0.5));
    const EigenTuple direct = eigenvalues(gradient_tensor(Vector{0.6, 0.0, 0.8}, 1.0 / 3.0));
    for (int i = 0; i < 3; ++i) CHECK(direct[i] == doctest::Approx(g[i]));
}

TEST_CASE("A_v agrees with A_u under v = exp(beta u)") {
    Rng rng(21);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 4);
        ConformalPointData p;
        p.A = SymTensor(n);
        p.hess_u = SymTensor(n);
        p.grad_u = Vector(n);
        for (int i = 0; i < n; ++i) {
            p.grad_u[i] = rng.uniform(-1, 1);
            for (int j = i; j < n; ++j) {
                p.A.set(i, j, rng.uniform(-1, 1));
                p.hess_u.set(i, j, rng.uniform(-1, 1));
            }
        }
        p.u = rng.uniform(-1, 1);
        const double beta = rng.uniform(0.1, 1.0);
        const double v = std::exp(beta * p.u);
        const Vector gv = p.grad_u * (beta * v);
        const SymTensor hv = (p.hess_u + SymTensor::outer(p.grad_u) * beta) * (beta * v);
        const SymTensor av = a_v_formula(v, gv, hv, p.A, 1.0 / beta);
        CHECK(max_abs(av - conformal_change(p)) < 1e-10);

        // hess v + beta v A = beta v (A_u + (beta - 1) du du + |du|^2 g / 2)
        const SymTensor lhs = hessian_v_cone_form(p.A, beta, v, hv);
        const SymTensor rhs = (conformal_change(p) + SymTensor::outer(p.grad_u) * (beta - 1.0) +
                               SymTensor::identity(n) * (0.5 * p.grad_u.norm_squared())) *
                              (beta * v);
        CHECK(max_abs(lhs - rhs) < 1e-10);
    }
    CHECK_THROWS_AS(a_v_formula(0.0, Vector(3), SymTensor(3), SymTensor(3), 2.0), Error);
}

TEST_CASE("A_v of the fundamental solution vanishes") {
    const int n = 3;
    const double gamma = 0.5;
    const Vector x{0.3, -0.4, 1.1};
    const double r = x.norm();
    const double v = std::pow(r, gamma);
    const Vector gv = x * (gamma * std::pow(r, gamma - 2.0));
    SymTensor hv(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            hv.set(i, j, gamma * std::pow(r, gamma - 2.0) *
                             ((i == j ? 1.0 : 0.0) + (gamma - 2.0) * x[i] * x[j] / (r * r)));
        }
    }
    CHECK(max_abs(a_v_formula(v, gv, hv, SymTensor(n), 2.0 / gamma)) < 1e-14);
    CHECK(max_abs(a_v_formula(3.0, Vector(n), SymTensor(n), SymTensor::identity(n), 2.0) - SymTensor::identity(n)) ==
          0.0);
}

TEST_CASE("conformal Laplacian defect") {
    CHECK(conformal_laplacian_defect(2.0, 0.0, 0.0, 3) == 0.0);
    CHECK(conformal_laplacian_defect(1.0, 0.0, 6.0, 3) == doctest::Approx(-6.0 / 8.0));
    // w = exp(-(n-2)|x|^2/2) at the origin: lap w = -n(n-2).
    CHECK(conformal_laplacian_defect(1.0, -3.0, 0.0, 3) < 0.0);
}
