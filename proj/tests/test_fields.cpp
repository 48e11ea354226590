#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "deltacone/error.hpp"
#include "deltacone/fields.hpp"

using namespace deltacone;

namespace {

GridDomain ball(int n, double r0, double h, double r_exc = 0.0) {
    return GridDomain::punctured_ball(Vector(n), r0, r_exc, h);
}

SymTensor x_squared_hessian(int n) { return SymTensor::identity(n) * 2.0; }

double max_abs(const SymTensor& s) {
    double m = 0.0;
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = i; j < s.dim(); ++j) m = std::max(m, std::abs(s(i, j)));
    }
    return m;
}

}  // namespace

TEST_CASE("punctured ball lattice") {
    const GridDomain d = ball(3, 1.0, 0.25);
    CHECK(d.half_width() == 4);
    CHECK(d.box_size() == 9u * 9u * 9u);
    std::size_t brute = 0;
    for (int i = -4; i <= 4; ++i) {
        for (int j = -4; j <= 4; ++j) {
            for (int k = -4; k <= 4; ++k) {
                const int s = i * i + j * j + k * k;
                if (s > 0 && s <= 16) ++brute;
            }
        }
    }
    CHECK(d.active_count() == brute);
    const std::size_t c = d.flat_index(MultiIndex{0, 0, 0});
    CHECK_FALSE(d.active(c));
    CHECK(d.distance(c) == 0.0);

    const GridDomain a = ball(3, 1.0, 0.125, 0.5);
    for (std::size_t node : a.active_nodes()) CHECK(a.distance(node) >= 0.5);
    CHECK_THROWS_AS(ball(3, 0.1, 0.25), Error);
    CHECK_THROWS_AS(GridDomain::punctured_ball(Vector(3), 1.0, 1.5, 0.1), Error);
}

TEST_CASE("finite differences on polynomials are exact") {
    const GridDomain d = ball(3, 1.0, 0.125);
    const ScalarField q = ScalarField::sample(d, AnalyticField::power(Vector(3), 2.0));
    const ScalarField lin = ScalarField::sample(d, AnalyticField::linear(0.5, Vector{1.0, -2.0, 0.25}));
    int checked = 0;
    for (std::size_t node : d.active_nodes()) {
        if (!d.is_interior(node)) continue;
        ++checked;
        CHECK(max_abs(fd_hessian(q, node) - x_squared_hessian(3)) < 1e-10);
        CHECK(max_abs(fd_hessian(lin, node)) < 1e-10);
        const Vector g = fd_gradient(lin, node);
        CHECK(g[0] == doctest::Approx(1.0));
        CHECK(g[1] == doctest::Approx(-2.0));
        CHECK(fd_laplacian(q, node) == doctest::Approx(6.0));
    }
    CHECK(checked > 1000);
}

TEST_CASE("FD Hessian of a radial power converges at second order") {
    const double gamma = 0.5;
    double prev = 0.0;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const GridDomain d = GridDomain::punctured_ball(Vector(3), 1.5, 0.5, h);
        const ScalarField w = ScalarField::sample(d, AnalyticField::power(Vector(3), gamma));
        const std::size_t node = d.flat_index(MultiIndex{static_cast<int>(std::lround(1.0 / h)), 0, 0});
        const EigenTuple e = eigenvalues(fd_hessian(w, node));
        const double err = std::max({std::abs(e[0] + 0.25), std::abs(e[1] - 0.5), std::abs(e[2] - 0.5)});
        if (prev > 0.0) CHECK(prev / err > 3.5);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("stencil errors name the node") {
    const GridDomain d = ball(3, 1.0, 0.125, 0.3);
    const ScalarField w = ScalarField::sample(d, AnalyticField::power(Vector(3), 2.0));
    bool thrown = false;
    for (std::size_t node : d.active_nodes()) {
        if (d.is_interior(node)) continue;
        try {
            (void)fd_hessian(w, node);
        } catch (const Error& e) {
            thrown = true;
            CHECK(e.kind() == ErrorKind::stencil);
            CHECK(std::string(e.what()).find("(") != std::string::npos);
        }
        break;
    }
    CHECK(thrown);
}

TEST_CASE("derivative source selection") {
    const GridDomain d = ball(3, 1.0, 0.125);
    const ScalarField w = ScalarField::sample(d, AnalyticField::power(Vector(3), 0.5));
    CHECK_FALSE(uses_finite_differences(w, DerivativeSource::automatic));
    CHECK(uses_finite_differences(w, DerivativeSource::finite_difference));
    const ScalarField raw = ScalarField::from_values(d, w.values());
    CHECK(uses_finite_differences(raw, DerivativeSource::automatic));
    const std::size_t node = d.flat_index(MultiIndex{3, 1, 0});
    CHECK_THROWS_AS(field_hessian(raw, node, DerivativeSource::exact), Error);
    CHECK(fd_cone_tolerance(0.1) == doctest::Approx(0.1));
}

TEST_CASE("mollifier normalization") {
    CHECK(MollifierSpec::profile(0.5) == 1.0);
    CHECK(MollifierSpec::profile(2.5) == 0.0);
    CHECK(MollifierSpec::profile(1.5) == doctest::Approx(0.5));
    // Closed form for the quintic ramp: integral of s^{n-1} over [0,1] plus
    // the ramp part computed here by Simpson's rule.
    for (int n : {2, 3, 4}) {
        const int m = 20000;
        double ramp = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double s = 1.0 + static_cast<double>(i) / m;
            const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            ramp += w * MollifierSpec::profile(s) * std::pow(s, n - 1);
        }
        ramp /= 3.0 * m;
        const double area = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
        CHECK(MollifierSpec::integral(n) == doctest::Approx(area * (1.0 / n + ramp)).epsilon(1e-8));
    }
}

TEST_CASE("mollification reproduces constants, linear and quadratic fields") {
    const double h = 1.0 / 16;
    const GridDomain d = GridDomain::punctured_ball(Vector(3), 1.0, 0.25, h);
    const MollifierSpec rho(3, 2 * h);

    const ScalarField c = ScalarField::sample(d, AnalyticField::constant(3, 1.75));
    const ScalarField ch = mollify(c, rho);
    CHECK(ch.domain().active_count() > 0);
    for (std::size_t node : ch.domain().active_nodes()) CHECK(std::abs(ch[node] - 1.75) < 1e-12);

    const ScalarField l = ScalarField::sample(d, AnalyticField::linear(0.3, Vector{1.0, -0.5, 2.0}));
    const ScalarField lh = mollify(l, rho);
    for (std::size_t node : lh.domain().active_nodes()) CHECK(std::abs(lh[node] - l[node]) < 1e-12);

    // Second moment of the discrete normalized weights, built independently.
    const int reach = static_cast<int>(std::floor(2.0 * rho.scale() / h));
    double wsum = 0.0, m2 = 0.0;
    for (int i = -reach; i <= reach; ++i) {
        for (int j = -reach; j <= reach; ++j) {
            for (int k = -reach; k <= reach; ++k) {
                const double r = h * std::sqrt(double(i * i + j * j + k * k));
                const double w = MollifierSpec::profile(r / rho.scale());
                wsum += w;
                m2 += w * r * r;
            }
        }
    }
    m2 /= wsum;
    const ScalarField q = ScalarField::sample(d, AnalyticField::power(Vector(3), 2.0));
    const ScalarField qh = mollify(q, rho);
    for (std::size_t node : qh.domain().active_nodes()) CHECK(std::abs(qh[node] - q[node] - m2) < 1e-12);

    CHECK_THROWS_AS(mollify(q, MollifierSpec(3, 1.5 * h)), Error);
    CHECK_THROWS_AS(mollify(q, MollifierSpec(3, 0.5)), Error);
}

TEST_CASE("mollified cone check") {
    const double h = 1.0 / 16;
    const GridDomain d = GridDomain::punctured_ball(Vector(3), 1.0, 0.25, h);
    const ScalarField q = ScalarField::sample(d, AnalyticField::power(Vector(3), 2.0));
    const MollifiedConeReport r = mollified_hessian_cone_check(q, 0.2, MollifierSpec(3, 2 * h), 1e-10);
    CHECK(r.precondition_ok);
    CHECK(r.pass);
    CHECK(r.min_input_margin > 0.0);
    CHECK(r.min_output_margin > 0.0);

    SymTensor m(3);
    m.set(0, 0, 1.0);
    m.set(1, 1, -3.0);
    m.set(2, 2, 1.0);
    const ScalarField saddle = ScalarField::sample(d, AnalyticField::quadratic(0.0, Vector(3), m));
    const MollifiedConeReport s = mollified_hessian_cone_check(saddle, 0.2, MollifierSpec(3, 2 * h), 1e-10);
    CHECK_FALSE(s.precondition_ok);
    CHECK_FALSE(s.input_failures.empty());
    CHECK(s.input_failures.front().margin < 0.0);
}

TEST_CASE("Lambda lift") {
    const GridDomain d = ball(3, 1.0, 0.125);
    const ScalarField v = ScalarField::sample(d, AnalyticField::power(Vector(3), 0.5));
    const auto flat = [](const Vector& x) { return SymTensor(x.dim()); };
    const LiftResult a = lambda_lift(v, flat, 0.25, 0.1);
    CHECK(a.lambda == doctest::Approx(0.1));
    for (std::size_t node : d.active_nodes()) {
        CHECK(a.field[node] == doctest::Approx(v[node] + 0.1 * d.distance(node) * d.distance(node)));
    }
    const LiftResult b = lambda_lift(v, flat, 0.25, 0.0);
    for (std::size_t node : d.active_nodes()) CHECK(b.field[node] == v[node]);

    const ScalarField two = ScalarField::sample(d, AnalyticField::constant(3, 2.0));
    const auto sphere = [](const Vector& x) { return SymTensor::identity(x.dim()) * 0.5; };
    CHECK(lambda_lift(two, sphere, 0.5, 0.1).lambda == doctest::Approx(0.35));
}

TEST_CASE("inversion") {
    const Vector u{0.6, 0.0, 0.8};
    const Vector z = invert_coordinates(u);
    for (int i = 0; i < 3; ++i) CHECK(z[i] == doctest::Approx(u[i]));
    const Vector t = invert_coordinates(Vector{2.0, 0.0, 0.0});
    CHECK(t[0] == 0.5);
    CHECK(t[1] == 0.0);
    CHECK_THROWS_AS(invert_coordinates(Vector(3)), Error);
    const InversionReport r = pullback_flat_check(3, 1.0, 100, 7);
    CHECK(r.pass);
    CHECK(r.max_pullback_deviation <= 1e-9);
}

TEST_CASE("psi of the model log field vanishes") {
    const GridDomain d = ball(3, 1.0, 0.125);
    const ScalarField u = ScalarField::sample(d, AnalyticField::log_singular(Vector(3)));
    const ScalarField psi = psi_field(u);
    for (std::size_t node : d.active_nodes()) CHECK(std::abs(psi[node]) < 1e-14);
}

TEST_CASE("field CSV round trip") {
    const GridDomain d = GridDomain::punctured_ball(Vector{0.5, -1.0, 0.0}, 1.0, 0.25, 0.125);
    const ScalarField w = ScalarField::sample(d, AnalyticField::stereographic(Vector{0.5, -1.0, 0.0}));
    std::stringstream ss;
    write_field_csv(ss, w);
    const std::string text = ss.str();
    std::istringstream is(text);
    const ScalarField back = read_field_csv(is);
    CHECK(back.domain().dim() == 3);
    CHECK(back.domain().h() == 0.125);
    CHECK(back.domain().r_exc() == 0.25);
    CHECK(back.domain().active_count() == d.active_count());
    for (std::size_t node : d.active_nodes()) CHECK(back[node] == w[node]);
    CHECK_FALSE(back.has_exact_derivatives());
}

TEST_CASE("field CSV validation") {
    const GridDomain d = ball(3, 1.0, 0.25);
    const ScalarField w = ScalarField::sample(d, AnalyticField::power(Vector(3), 1.0));
    std::stringstream ss;
    write_field_csv(ss, w);
    std::vector<std::string> lines;
    for (std::string line; std::getline(ss, line);) lines.push_back(line);
    const auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& l : v) s += l + "\n";
        return s;
    };
    const auto read = [](const std::string& s) {
        std::istringstream is(s);
        return read_field_csv(is);
    };

    auto missing = lines;
    missing.erase(missing.begin() + 5);
    try {
        (void)read(join(missing));
        FAIL("missing node accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_input);
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }

    auto dup = lines;
    dup.push_back(lines[5]);
    CHECK_THROWS_AS(read(join(dup)), Error);

    auto outside = lines;
    outside.push_back("9,0,0,1");
    CHECK_THROWS_AS(read(join(outside)), Error);

    auto bad_value = lines;
    bad_value[5] = bad_value[5].substr(0, bad_value[5].rfind(',')) + ",oops";
    CHECK_THROWS_AS(read(join(bad_value)), Error);

    CHECK_THROWS_AS(read("n,h\n3\n"), Error);
}
