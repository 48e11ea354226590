#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "deltacone/error.hpp"
#include "deltacone/radial.hpp"
#include "deltacone/random.hpp"

using namespace deltacone;

namespace {

double choose(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

double stereo(double r) { return std::log((1.0 + r * r) / 2.0); }
double stereo_d1(double r) { return 2.0 * r / (1.0 + r * r); }

// sigma_j of (a, t, ..., t) with t repeated m times.
double sigma_two_block(double a, double t, int m, int j) {
    return choose(m, j) * std::pow(t, j) + a * choose(m, j - 1) * std::pow(t, j - 1);
}

}  // namespace

TEST_CASE("radial Schouten spectrum") {
    const RadialSpectrum a = radial_schouten(2 * std::log(0.7), 2 / 0.7, -2 / 0.49, 0.7);
    CHECK(std::abs(a.radial) < 1e-14);
    CHECK(std::abs(a.tangential) < 1e-14);
    const RadialSpectrum c = radial_schouten(3.0, 0.0, 0.0, 2.0);
    CHECK(c.radial == 0.0);
    CHECK(c.tangential == 0.0);
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
        const RadialModel m = RadialModel::stereographic();
        const RadialSpectrum s = radial_schouten(m.value(r), m.d1(r), m.d2(r), r);
        const double expect = 2.0 / ((1 + r * r) * (1 + r * r));
        CHECK(s.radial == doctest::Approx(expect).epsilon(1e-13));
        CHECK(s.tangential == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK_THROWS_AS(radial_schouten(0, 0, 0, 0.0), Error);
    const EigenTuple e = radial_spectrum(RadialSpectrum{-1.0, 2.0}, 4);
    CHECK(e.dim() == 4);
    CHECK(e[0] == -1.0);
    CHECK(e[3] == 2.0);
}

TEST_CASE("f = 0 keeps the Green's profile") {
    for (int n : {3, 4, 5}) {
        for (int k = 1; k <= n; ++k) {
            const RadialProfile p = radial_ode_solve(SigmaKOp{k}, 0.0, n, RadialInitial{1.0, 0.0, 2.0}, 0.1);
            CHECK(p.r.front() == doctest::Approx(0.1));
            CHECK(p.r.back() == doctest::Approx(1.0));
            double worst = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p.u[i] - 2.0 * std::log(p.r[i])));
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("f = 0 profiles have sigma_k = 0 along the solution") {
    Rng rng(13);
    int runs = 0;
    while (runs < 40) {
        const int n = 3 + static_cast<int>(rng.next() % 3);
        const int k = 2 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - 1));
        const double du = rng.uniform(0.1, 1.9);  // tangential block u'/r - u'^2/2 > 0 at r = 1
        RadialProfile p;
        try {
            p = radial_ode_solve(SigmaKOp{k}, 0.0, n, RadialInitial{1.0, 0.0, du}, 0.5);
        } catch (const Error&) {
            continue;
        }
        ++runs;
        for (std::size_t i = 0; i < p.size(); i += 25) {
            const RadialSpectrum s = radial_schouten(p.u[i], p.du[i], p.d2u[i], p.r[i]);
            const double scale = std::pow(std::abs(s.radial) + std::abs(s.tangential), k);
            CHECK(std::abs(sigma_two_block(s.radial, s.tangential, n - 1, k)) <= 1e-9 * (1.0 + scale));
        }
    }
}

TEST_CASE("stereographic profile solves the sigma_k equation") {
    for (int n : {3, 4, 5}) {
        for (int k = 1; k <= n; ++k) {
            const double f = 0.5 * std::pow(choose(n, k), 1.0 / k);
            const RadialProfile p = radial_ode_solve(SigmaKOp{k}, f, n, RadialInitial{0.5, stereo(0.5), stereo_d1(0.5)}, 2.0);
            double worst = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p.u[i] - stereo(p.r[i])));
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("stereographic profile solves the quotient equation") {
    for (int n : {3, 4, 5}) {
        for (int k = 2; k <= n; ++k) {
            for (int l = 1; l < k; ++l) {
                const double f = 0.5 * std::pow(choose(n, k) / choose(n, l), 1.0 / (k - l));
                const RadialProfile p =
                    radial_ode_solve(QuotientOp{k, l}, f, n, RadialInitial{2.0, stereo(2.0), stereo_d1(2.0)}, 0.5);
                double worst = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p.u[i] - stereo(p.r[i])));
                CHECK(worst < 1e-6);
            }
        }
    }
}

TEST_CASE("degenerate initial data") {
    // u' = -1 at r = 1: tangential eigenvalue -3/2, sigma_{k-1} of the block < 0.
    CHECK_THROWS_AS(radial_second_derivative(SigmaKOp{2}, 1.0, 3, 1.0, 0.0, -1.0), Error);
    try {
        (void)radial_ode_solve(SigmaKOp{3}, 0.5, 4, RadialInitial{1.0, 0.0, -1.0}, 2.0);
        FAIL("expected degeneracy");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degeneracy);
    }
    CHECK_THROWS_AS(radial_second_derivative(SigmaKOp{2}, 0.0, 3, 1.0, 0.0, -1.0), Error);
}

TEST_CASE("radial classification and volume") {
    const RadialProfile g = RadialProfile::sample(RadialModel::log() + RadialModel::constant(0.3), 1e-3, 1.0, 400);
    const SingularityVerdict vg = classify_radial(g);
    CHECK(vg.verdict == SingularityClass::greens_rate);
    CHECK(vg.slope == doctest::Approx(2.0).epsilon(0.01));
    CHECK(classify_radial(RadialProfile::sample(RadialModel::stereographic(), 1e-3, 1.0, 400)).verdict ==
          SingularityClass::bounded_extendable);
    CHECK(classify_radial(RadialProfile::sample(RadialModel::log(1.0), 1e-3, 1.0, 400)).verdict ==
          SingularityClass::indeterminate);
    CHECK_THROWS_AS(classify_radial(RadialProfile::sample(RadialModel::log(), 0.5, 1.0, 50)), Error);

    const IntegralTrend ball = radial_volume(RadialProfile::sample(RadialModel::constant(0.0), 1e-4, 1.0, 2000), 3);
    CHECK(ball.value == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-3));
    CHECK(ball.verdict == TrendVerdict::converging);
    const IntegralTrend sing = radial_volume(g, 3);
    CHECK(sing.verdict == TrendVerdict::power_diverging);

    std::ostringstream os;
    write_profile_csv(os, RadialProfile::sample(RadialModel::power(2.0), 0.5, 1.0, 3));
    CHECK(os.str().rfind("r,u,du,d2u\n", 0) == 0);
}
