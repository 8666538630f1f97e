#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <limits>

#include "hardyop/geometry.hpp"
#include "oracles.hpp"

using namespace hardyop;

namespace {
const QuadratureScheme kCircle4096{SchemeKind::DeterministicCircle, 4096, 0};
const QuadratureScheme kSphere2e5{SchemeKind::MonteCarloSphere, 200000, 7};
}  // namespace

TEST_CASE("deterministic circle nodes are roots of unity") {
    const auto nodes = sample_sphere(1, {SchemeKind::DeterministicCircle, 4, 0});
    REQUIRE(nodes.size() == 4);
    CHECK(std::abs(nodes[0][0] - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(nodes[1][0] - Complex{0, 1}) < 1e-15);
    CHECK(std::abs(nodes[2][0] - Complex{-1, 0}) < 1e-15);
    CHECK(std::abs(nodes[3][0] - Complex{0, -1}) < 1e-15);
}

TEST_CASE("monte carlo nodes are reproducible bit-for-bit") {
    const QuadratureScheme s{SchemeKind::MonteCarloSphere, 1000, 7};
    const auto a = sample_sphere(2, s);
    const auto b = sample_sphere(2, s);
    REQUIRE(a.flat.size() == b.flat.size());
    CHECK(std::memcmp(a.flat.data(), b.flat.data(), a.flat.size() * sizeof(Complex)) == 0);
}

TEST_CASE("monte carlo nodes lie on the sphere and are coordinate-symmetric") {
    const auto nodes = sample_sphere(2, {SchemeKind::MonteCarloSphere, 100000, 7});
    for (std::size_t i = 0; i < nodes.size(); i += 999)
        CHECK(std::abs(norm(nodes[i]) - 1.0) < 1e-12);
    // E|z_1|^2 = 1/n by symmetry
    const auto r = integrate_boundary(
        nodes, [](std::span<const Complex> z) { return Complex{sq_abs(z[0]), 0.0}; }, true);
    CHECK(std::abs(r.real() - 0.5) < 3.0 * r.std_error);
}

TEST_CASE("deterministic scheme rejects n > 1") {
    CHECK_THROWS_AS(sample_sphere(2, kCircle4096), InvalidSchemeError);
    CHECK_THROWS_AS(sample_sphere(0, kSphere2e5), InvalidSchemeError);
    CHECK_THROWS_AS(sample_sphere(1, {SchemeKind::DeterministicCircle, 0, 0}),
                    InvalidSchemeError);
}

TEST_CASE("integration: constants are exact, nonzero powers cancel") {
    const auto nodes = sample_sphere(1, kCircle4096);
    const Complex c{2.5, -1.0};
    const auto rc = integrate_boundary(nodes, [&](std::span<const Complex>) { return c; });
    CHECK(rc.value == c);
    for (int k : {1, 2, 7, 100}) {
        const auto rk = integrate_boundary(nodes, [&](std::span<const Complex> z) {
            Complex p{1.0, 0.0};
            for (int e = 0; e < k; ++e) p *= z[0];
            return p;
        });
        CHECK(std::abs(rk.value) < 1e-12);
    }
}

TEST_CASE("integration: |xi_1|^4 moment on the two-sphere") {
    const auto nodes = sample_sphere(2, kSphere2e5);
    const auto r = integrate_boundary(
        nodes,
        [](std::span<const Complex> z) { return Complex{sq_abs(z[0]) * sq_abs(z[0]), 0.0}; },
        true);
    const double expected = oracles::coordinate_moment(2, 2);  // 1/3
    CHECK(expected == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(r.real() - expected) < 4.0 * r.std_error);
}

TEST_CASE("integration flags a non-finite integrand with the node index") {
    const auto nodes = sample_sphere(1, {SchemeKind::DeterministicCircle, 16, 0});
    CHECK_THROWS_WITH_AS(
        integrate_boundary(nodes,
                           [](std::span<const Complex> z) {
                               return z[0].real() > 0.99
                                          ? Complex{std::numeric_limits<double>::quiet_NaN(), 0}
                                          : Complex{1.0, 0.0};
                           }),
        "integrate_boundary: non-finite integrand at node 0", QuadratureDomainError);
}

TEST_CASE("rotation invariance of the boundary integral") {
    const auto nodes = sample_sphere(2, {SchemeKind::MonteCarloSphere, 100000, 21});
    // f(z) = |z_1 + 0.3 z_2|^2 and its pullback under the unitary swap
    const auto f = [](std::span<const Complex> z) {
        return Complex{sq_abs(z[0] + 0.3 * z[1]), 0.0};
    };
    const auto fU = [&](std::span<const Complex> z) {
        const CVec u{z[1], z[0]};
        return f(u);
    };
    const auto a = integrate_boundary(nodes, f, true);
    const auto b = integrate_boundary(nodes, fU, true);
    CHECK(std::abs(a.real() - b.real()) < 3.0 * (a.std_error + b.std_error));
}

TEST_CASE("ball point membership check") {
    CHECK_NOTHROW(BallPoint::checked({Complex{0.6, 0.0}, Complex{0.0, 0.8}}));
    CHECK_THROWS_AS(BallPoint::checked({Complex{0.8, 0.0}, Complex{0.0, 0.8}}),
                    QuadratureDomainError);
    CHECK_THROWS_AS(BallPoint::checked({}), DimensionError);
}

TEST_CASE("window membership") {
    const auto xi = CVec{Complex{1.0, 0.0}};
    SUBCASE("h = 2 contains the closed disk except the antipode") {
        const auto w = CarlesonWindow::checked(xi, 2.0);
        CHECK(window_contains(w, CVec{Complex{0.0, 0.0}}));
        CHECK(window_contains(w, CVec{Complex{0.0, 1.0}}));
        CHECK(window_contains(w, CVec{Complex{0.99, 0.0}}));
        CHECK_FALSE(window_contains(w, CVec{Complex{-1.0, 0.0}}));  // |1-(-1)| = 2
    }
    SUBCASE("narrow window misses the center") {
        const auto w = CarlesonWindow::checked(xi, 0.1);
        CHECK_FALSE(window_contains(w, CVec{Complex{0.0, 0.0}}));
    }
    SUBCASE("radial point (1 - h/2) xi lies inside") {
        for (double h : {0.3, 0.05}) {
            const auto w = CarlesonWindow::checked(xi, h);
            CHECK(window_contains(w, CVec{Complex{1.0 - h / 2, 0.0}}));
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(CarlesonWindow::checked(CVec{Complex{0.5, 0.0}}, 0.5),
                        QuadratureDomainError);
        CHECK_THROWS_AS(CarlesonWindow::checked(xi, 0.0), InvalidSchemeError);
        CHECK_THROWS_AS(CarlesonWindow::checked(xi, 2.5), InvalidSchemeError);
    }
}

TEST_CASE("window mass on the circle matches the arc-length oracle") {
    const auto nodes = sample_sphere(1, kCircle4096);
    const CVec xi{Complex{1.0, 0.0}};
    const double m = sigma_window_mass(xi, 0.5, nodes);
    CHECK(oracles::circle_window_arc(0.5) == doctest::Approx(0.16086).epsilon(1e-3));
    CHECK(m == doctest::Approx(oracles::circle_window_arc(0.5)).epsilon(2e-3));

    SUBCASE("full aperture covers everything except at most one node") {
        const double full = sigma_window_mass(xi, 2.0, nodes);
        CHECK(full >= 1.0 - 1.5 / 4096.0);
    }
}

TEST_CASE("window mass is monotone in the aperture") {
    const auto nodes = sample_sphere(2, {SchemeKind::MonteCarloSphere, 20000, 3});
    const auto centers = sample_sphere(2, {SchemeKind::MonteCarloSphere, 5, 99});
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const auto xi = centers[c];
        double prev = 0.0;
        for (double h : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
            const double m = sigma_window_mass(CVec(xi.begin(), xi.end()), h, nodes);
            CHECK(m >= prev);
            prev = m;
        }
    }
}

TEST_CASE("log window mass scales like n * log h") {
    std::vector<double> hs{0.5, 0.35, 0.2, 0.1, 0.05};
    SUBCASE("disk") {
        const auto nodes = sample_sphere(1, kCircle4096);
        std::vector<double> lx, ly;
        for (double h : hs) {
            lx.push_back(std::log(h));
            ly.push_back(std::log(sigma_window_mass(CVec{Complex{1, 0}}, h, nodes)));
        }
        CHECK(std::abs(oracles::ls_slope(lx, ly) - 1.0) < 0.15);
    }
    SUBCASE("two-ball") {
        const auto nodes = sample_sphere(2, kSphere2e5);
        const CVec xi{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
        std::vector<double> lx, ly;
        for (double h : hs) {
            lx.push_back(std::log(h));
            ly.push_back(std::log(sigma_window_mass(xi, h, nodes)));
        }
        CHECK(std::abs(oracles::ls_slope(lx, ly) - 2.0) < 0.15);
    }
}

TEST_CASE("identical schemes give bit-identical integrals") {
    const auto run = [] {
        const auto nodes = sample_sphere(2, {SchemeKind::MonteCarloSphere, 50000, 123});
        return integrate_boundary(
                   nodes,
                   [](std::span<const Complex> z) {
                       return Complex{std::exp(z[0].real()) * sq_abs(z[1]), 0.0};
                   },
                   true)
            .real();
    };
    const double a = run();
    const double b = run();
    CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
}
