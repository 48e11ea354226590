#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "deltacone/error.hpp"
#include "deltacone/random.hpp"
#include "deltacone/rational.hpp"
#include "deltacone/symmat.hpp"

using namespace deltacone;

namespace {

// sigma_k by summing products over all k-subsets.
double sigma_brute(const std::vector<double>& v, int k) {
    const int n = static_cast<int>(v.size());
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) prod *= v[static_cast<std::size_t>(i)];
        }
        total += prod;
    }
    return total;
}

// det(M - t I) for a dense 3x3 matrix.
double char_poly3(const SymTensor& m, double t) {
    const double a = m(0, 0) - t, b = m(0, 1), c = m(0, 2);
    const double d = m(1, 1) - t, e = m(1, 2), f = m(2, 2) - t;
    return a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
}

}  // namespace

TEST_CASE("eigenvalues of small matrices") {
    const EigenTuple id = eigenvalues(SymTensor::identity(3));
    for (int i = 0; i < 3; ++i) CHECK(id[i] == doctest::Approx(1.0));

    const std::vector<double> diag{3, 1, 2};
    const EigenTuple d = eigenvalues(SymTensor::diagonal(diag));
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(2.0));
    CHECK(d[2] == doctest::Approx(3.0));

    SymTensor swap(2);
    swap.set(0, 1, 1.0);
    const EigenTuple s = eigenvalues(swap);
    CHECK(s[0] == doctest::Approx(-1.0));
    CHECK(s[1] == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        SymTensor m(3);
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) m.set(i, j, rng.uniform(-2, 2));
        }
        const EigenTuple e = eigenvalues(m);
        const double scale = 1.0 + m.frobenius_norm() * m.frobenius_norm() * m.frobenius_norm();
        for (int i = 0; i < 3; ++i) CHECK(std::abs(char_poly3(m, e[i])) < 1e-11 * scale);
        CHECK(e[0] + e[1] + e[2] == doctest::Approx(m.trace()).epsilon(1e-12));
        CHECK(e[0] <= e[1]);
        CHECK(e[1] <= e[2]);
    }
}

TEST_CASE("eigen decomposition reassembles the matrix") {
    Rng rng(5);
    for (int n = 1; n <= kMaxDim; ++n) {
        SymTensor m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
        }
        const EigenDecomposition ed = eigen_decompose(m);
        CHECK(ed.vectors.orthogonality_defect() < 1e-12);
        const SymTensor back = spectral_assemble(ed.values, ed.vectors);
        CHECK((back - m).frobenius_norm() < 1e-12 * (1.0 + m.frobenius_norm()));
    }
}

TEST_CASE("non-finite input is rejected") {
    SymTensor m = SymTensor::identity(3);
    m.set(0, 1, std::nan(""));
    CHECK_THROWS_AS(eigenvalues(m), Error);
}

TEST_CASE("elementary symmetric functions") {
    const std::vector<double> ones{1, 1, 1};
    const std::vector<double> v{1, 2, 3};
    CHECK(sigma_k(ones, 2) == doctest::Approx(3.0));
    CHECK(sigma_k(v, 2) == doctest::Approx(11.0));
    CHECK(sigma_k(v, 3) == doctest::Approx(6.0));
    CHECK_THROWS_AS(sigma_k(v, 0), Error);
    CHECK_THROWS_AS(sigma_k(v, 4), Error);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % kMaxDim);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& e : x) e = rng.uniform(-3, 3);
        for (int k = 1; k <= n; ++k) CHECK(sigma_k(x, k) == doctest::Approx(sigma_brute(x, k)).epsilon(1e-10));
    }
}

TEST_CASE("spectral assembly") {
    CHECK((spectral_assemble(EigenTuple{1, 1, 1}, Frame::identity(3)) - SymTensor::identity(3)).frobenius_norm() <
          1e-15);
    const SymTensor r = spectral_assemble(EigenTuple{-1, 1}, Frame::plane_rotation(2, 0, 1, std::numbers::pi / 4));
    CHECK(r(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(r(0, 1)) == doctest::Approx(1.0));
    const SymTensor d = spectral_assemble(EigenTuple{0, 2}, Frame::identity(2));
    CHECK(d(0, 0) == 0.0);
    CHECK(d(1, 1) == 2.0);

    Frame bad = Frame::identity(2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(spectral_assemble(EigenTuple{0, 1}, bad), Error);
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1) / Rational(4) == Rational(1, 4));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("-2.5e-1") == Rational(-1, 4));
    CHECK(Rational::parse("7/21") == Rational(1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(5) < Rational::infinity());
    CHECK(Rational::infinity().to_string() == "inf");
    CHECK(Rational(3, 8).to_double() == 0.375);
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
    CHECK_THROWS_AS(Rational::infinity() - Rational::infinity(), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
    CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(2), Error);
}

TEST_CASE("rng is reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
