#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "deltacone/cones.hpp"
#include "deltacone/error.hpp"
#include "deltacone/random.hpp"

using namespace deltacone;

namespace {

double raw_delta_margin(const std::vector<double>& l, double delta) {
    double s = 0.0, sq = 0.0;
    for (double x : l) {
        s += x;
        sq += x * x;
    }
    double m = INFINITY;
    for (double x : l) m = std::min(m, x + delta * s);
    return m / std::sqrt(sq);
}

bool in_sigma_k(const std::vector<double>& l, int k) {
    // Newton's identities as an independent route to sigma_1..sigma_k.
    const int n = static_cast<int>(l.size());
    std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0), e(static_cast<std::size_t>(n + 1), 0.0);
    for (int j = 1; j <= n; ++j) {
        for (double x : l) p[static_cast<std::size_t>(j)] += std::pow(x, j);
    }
    e[0] = 1.0;
    for (int j = 1; j <= k; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) {
            acc += (i % 2 ? 1.0 : -1.0) * e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i)];
        }
        e[static_cast<std::size_t>(j)] = acc / j;
        if (!(e[static_cast<std::size_t>(j)] > 1e-12)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("delta(k, n)") {
    CHECK(delta_of_k(4, 3) == Rational(1, 8));
    CHECK(delta_of_k(3, 2) == Rational(1, 3));
    CHECK(delta_of_k(5, 5) == Rational(0));
    CHECK_THROWS_AS(delta_of_k(4, 2), Error);
    CHECK_THROWS_AS(delta_of_k(2, 2), Error);
}

TEST_CASE("exponent table") {
    const ExponentTable a = exponents(4, Rational(1, 8));
    CHECK(a.gamma == Rational(2, 3));
    CHECK(a.beta == Rational(1, 3));
    CHECK(a.p0 == Rational(10));
    CHECK(a.p_delta == Rational(12));

    const ExponentTable b = exponents(3, Rational(1, 3));
    CHECK(b.gamma == Rational(1, 2));
    CHECK(b.beta == Rational(1, 4));
    CHECK(b.p0 == Rational(5));
    CHECK(b.p_delta == Rational(6));

    for (int n = 3; n <= 8; ++n) {
        const ExponentTable z = exponents(n, Rational(0));
        CHECK(z.gamma == Rational(1));
        CHECK(z.beta == Rational(1, 2));
        CHECK(z.p0.is_infinite());
        CHECK(z.p_delta.is_infinite());
    }
    CHECK_THROWS_AS(exponents(3, Rational(1)), Error);
    CHECK_THROWS_AS(exponents(3, Rational(-1, 10)), Error);
    CHECK_THROWS_AS(exponents(2, Rational(0)), Error);
}

TEST_CASE("exponent identities for every admissible (n, k)") {
    for (int n = 3; n <= 8; ++n) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            const ExponentTable t = exponents(n, delta_of_k(n, k));
            CHECK(t.gamma == Rational(2) - Rational(n, k));
            CHECK(t.beta * Rational(2) == t.gamma);
            CHECK(t.delta0 * Rational(2) == Rational(1) + Rational(2 - n) * t.delta);
            if (k < n) {
                CHECK(t.p_delta == Rational(n * k, n - k));
                CHECK(t.p_delta == Rational(n) * (t.p0 - Rational(1)) / Rational(n - 1));
            }
        }
    }
}

TEST_CASE("gamma_tau") {
    CHECK(gamma_tau(4, 3, Rational(1)) == Rational(2, 3));
    CHECK(gamma_tau(4, 3, Rational(3, 4)) == Rational(2, 7));
    CHECK(tau_threshold(4, 3) == Rational(1, 2));
    const Rational near = gamma_tau(4, 3, Rational(1, 2) + Rational(1, 1000000));
    CHECK(near > Rational(0));
    CHECK(near < Rational(1, 10000));
    CHECK_THROWS_AS(gamma_tau(4, 3, Rational(1, 2)), Error);
    CHECK_THROWS_AS(gamma_tau(4, 3, Rational(3, 2)), Error);
    for (int n = 3; n <= 8; ++n) {
        for (int k = n / 2 + 1; k <= n; ++k) CHECK(gamma_tau(n, k, Rational(1)) == Rational(2) - Rational(n, k));
    }
}

TEST_CASE("Gamma_delta margins") {
    const ConeMargin a = gamma_delta_margin(EigenTuple{1, 1, 1}, 1.0 / 3.0);
    CHECK(a.margin == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK(a.verdict == ConeVerdict::strict_interior);

    const ConeMargin b = gamma_delta_margin(EigenTuple{-0.4, 1, 1}, 0.25);
    CHECK(std::abs(b.margin) < 1e-15);
    CHECK(b.verdict == ConeVerdict::boundary);

    const ConeMargin c = gamma_delta_margin(EigenTuple{-1, 1, 1}, 0.25);
    CHECK(c.verdict == ConeVerdict::exterior);
    CHECK(c.margin == doctest::Approx((-1.0 + 0.25) / std::sqrt(3.0)));

    CHECK(gamma_delta_margin(EigenTuple{0, 0, 0}, 0.25).verdict == ConeVerdict::boundary);
}

TEST_CASE("Gamma_delta margin is scale invariant and matches a direct formula") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 6);
        std::vector<double> l(static_cast<std::size_t>(n));
        for (double& x : l) x = rng.uniform(-1, 1);
        const double delta = rng.uniform(0.0, 1.0 / (n - 2));
        const EigenTuple e{std::span<const double>(l)};
        const double m = gamma_delta_margin(e, delta).margin;
        CHECK(m == doctest::Approx(raw_delta_margin(l, delta)).epsilon(1e-12));
        CHECK(gamma_delta_margin(e.scaled(37.0), delta).margin == doctest::Approx(m).epsilon(1e-12));
    }
}

TEST_CASE("Gamma_sigma_k margins") {
    CHECK(gamma_sigmak_margin(EigenTuple{1, 1, 1}, 2).verdict == ConeVerdict::strict_interior);
    CHECK(gamma_sigmak_margin(EigenTuple{2, 2, -1}, 2).verdict == ConeVerdict::boundary);
    CHECK(gamma_sigmak_margin(EigenTuple{3, -1, -1}, 2).verdict == ConeVerdict::exterior);
    CHECK_THROWS_AS(ConeSpec::gamma_sigma_k(3, 4), Error);
    CHECK_THROWS_AS(ConeSpec::gamma_delta(3, -0.5), Error);
}

TEST_CASE("sigma_k cone sits inside Gamma_delta(k, n)") {
    for (int n : {3, 4, 5}) {
        for (int k = n / 2 + 1; k <= n; ++k) {
            const double delta = delta_of_k(n, k).to_double();
            Rng rng(1000 + 10 * n + k);
            int accepted = 0;
            double worst = INFINITY;
            while (accepted < 5000) {
                std::vector<double> l(static_cast<std::size_t>(n));
                for (double& x : l) x = rng.uniform(-1, 1);
                if (!in_sigma_k(l, k)) continue;
                ++accepted;
                worst = std::min(worst, raw_delta_margin(l, delta));
            }
            CHECK(worst >= -1e-9);
        }
    }
    CHECK(std::abs(gamma_delta_margin(EigenTuple{2, 2, -1}, 1.0 / 3.0).margin) <= 1e-12);
    const ConeMargin ray = gamma_delta_margin(EigenTuple{1, 1, 1, 1}, delta_of_k(4, 3).to_double());
    CHECK(ray.verdict == ConeVerdict::strict_interior);
    CHECK(gamma_sigmak_margin(EigenTuple{1, 1, 1, 1}, 3).verdict == ConeVerdict::strict_interior);
}

TEST_CASE("inclusion_sample_test reports no violations") {
    const InclusionReport r = inclusion_sample_test(3, 2, 20000, 9);
    CHECK(r.pass);
    CHECK(r.violations == 0);
    CHECK(r.samples == 20000);
    CHECK(r.min_margin >= -1e-9);
    const InclusionReport again = inclusion_sample_test(3, 2, 20000, 9);
    CHECK(again.min_margin == r.min_margin);
}

TEST_CASE("Ricci from Schouten") {
    const RicciBound a = ricci_from_schouten(EigenTuple{0.5, 0.5, 0.5, 0.5}, 4, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(a.ricci[i] == doctest::Approx(3.0));
    CHECK(a.margin == doctest::Approx(1.0));

    const RicciBound z = ricci_from_schouten(EigenTuple{0, 0, 0}, 3, 0.2);
    CHECK(z.margin == 0.0);

    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 4);
        const double delta = rng.uniform(0.0, 1.0 / (n - 2));
        std::vector<double> l(static_cast<std::size_t>(n));
        for (double& x : l) x = rng.uniform(0.0, 1.0);
        double rest = 0.0;
        for (std::size_t i = 1; i < l.size(); ++i) rest += l[i];
        l[0] = -delta * rest / (1.0 + delta);  // lambda_min + delta * S = 0
        const double s = rest + l[0];
        const RicciBound b = ricci_from_schouten(EigenTuple(std::span<const double>(l)), n, delta);
        CHECK(std::abs(b.margin) < 1e-12 * (1.0 + std::abs(s)));
    }
}
