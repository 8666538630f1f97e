#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hardyop/symbols.hpp"
#include "oracles.hpp"

using namespace hardyop;

namespace {

const NodeSet kCircle = sample_sphere(1, {SchemeKind::DeterministicCircle, 2048, 0});

Symbol poly1(std::initializer_list<Complex> coeffs) {
    PolynomialSymbol p(1);
    int k = 0;
    for (Complex c : coeffs) p.set(MultiIndex{{k++}}, c);
    return Symbol(std::move(p));
}

}  // namespace

TEST_CASE("constant symbols evaluate to the constant everywhere") {
    const Symbol c = Symbol::constant(2, Complex{1.5, -2.0});
    const CVec z{Complex{0.1, 0.2}, Complex{-0.3, 0.0}};
    CHECK(c.eval(z) == Complex{1.5, -2.0});
}

TEST_CASE("evaluation rejects dimension mismatches") {
    const Symbol c = Symbol::constant(2, Complex{1.0, 0.0});
    const CVec z{Complex{0.1, 0.0}};
    CHECK_THROWS_AS(c.eval(z), DimensionError);
}

TEST_CASE("blaschke factors vanish at their zeros and are unimodular on the circle") {
    const Symbol b = Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.0));
    CHECK(std::abs(b.eval1(Complex{0.5, 0.0})) < 1e-15);

    const Complex zb = std::polar(1.0, std::numbers::pi / 3);
    const Complex direct = (zb - 0.5) / (1.0 - 0.5 * zb);
    CHECK(std::abs(b.eval1(zb) - direct) < 1e-15);
    CHECK(std::abs(std::abs(b.eval1(zb)) - 1.0) < 1e-12);

    // boundary unimodularity across validation nodes
    const Symbol b2 = Symbol(BlaschkeSymbol::checked(
        {Complex{0.5, 0.0}, Complex{-0.2, 0.6}, Complex{0.0, -0.85}}, 1.3));
    for (std::size_t i = 0; i < kCircle.size(); i += 7)
        CHECK(std::abs(std::abs(b2.eval(kCircle[i])) - 1.0) < 1e-10);

    CHECK_THROWS_AS(BlaschkeSymbol::checked({Complex{1.0, 0.0}}, 0.0),
                    QuadratureDomainError);
}

TEST_CASE("evaluation is linear in the coefficient map") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolynomialSymbol a(2), b(2);
    for (const MultiIndex& alpha : indices_up_to(2, 3)) {
        a.set(alpha, Complex{u(rng), u(rng)});
        b.set(alpha, Complex{u(rng), u(rng)});
    }
    const Complex s{0.7, -0.3};
    const PolynomialSymbol combo = a + b.scaled(s);
    for (int t = 0; t < 20; ++t) {
        const CVec z{Complex{0.4 * u(rng), 0.4 * u(rng)}, Complex{0.4 * u(rng), 0.4 * u(rng)}};
        const Complex lhs = combo.eval(z);
        const Complex rhs = a.eval(z) + s * b.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("self-map validation") {
    SUBCASE("identity passes for every n") {
        for (std::size_t n : {1u, 2u, 3u}) {
            BallSelfMap id = identity_map(n);
            const auto nodes =
                n == 1 ? kCircle : sample_sphere(n, {SchemeKind::MonteCarloSphere, 5000, 1});
            const auto rep = id.validate(nodes);
            CHECK(rep.ok);
            CHECK(rep.worst_modulus == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(id.validated());
        }
    }
    SUBCASE("2z is rejected with the worst node reported") {
        BallSelfMap twice({poly1({0.0, 2.0})});
        const auto rep = twice.validate(kCircle);
        CHECK_FALSE(rep.ok);
        CHECK(rep.worst_modulus == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_FALSE(twice.validated());
    }
    SUBCASE("((1+z1)/2, z2/2) is a self-map of the two-ball") {
        PolynomialSymbol c1(2), c2(2);
        c1.set(zero_index(2), Complex{0.5, 0.0});
        c1.set(unit_index(2, 0), Complex{0.5, 0.0});
        c2.set(unit_index(2, 1), Complex{0.5, 0.0});
        BallSelfMap phi({Symbol(c1), Symbol(c2)});
        const auto nodes = sample_sphere(2, {SchemeKind::MonteCarloSphere, 20000, 2});
        const auto rep = phi.validate(nodes);
        CHECK(rep.ok);
        // dense-grid oracle: max |(1+z1)/2|^2 + |z2|^2/4 over the sphere is 1
        const double oracle = par::max(nodes.size(), [&](std::size_t i) {
            const auto z = nodes[i];
            return sq_abs(0.5 + 0.5 * z[0]) + 0.25 * sq_abs(z[1]);
        });
        CHECK(rep.worst_modulus == doctest::Approx(std::sqrt(oracle)).epsilon(1e-12));
        CHECK(rep.worst_modulus <= 1.0 + 1e-9);
    }
}

TEST_CASE("radial scaling") {
    SUBCASE("identity scales to z/2") {
        BallSelfMap id = identity_map(1);
        id.validate(kCircle);
        const BallSelfMap half = id.radial_scale(0.5);
        CHECK(half.validated());
        const Complex z{0.3, 0.4};
        CHECK(std::abs(half.components()[0].eval1(z) - z * 0.5) < 1e-15);
    }
    SUBCASE("staged r -> 1 converges pointwise") {
        const Symbol b = Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.4));
        BallSelfMap phi({b});
        phi.validate(kCircle);
        const Complex z{0.2, -0.6};
        double prev_gap = 1e9;
        for (double r : {0.9, 0.99, 0.999, 0.9999}) {
            const auto scaled = phi.radial_scale(r);
            const double gap =
                std::abs(scaled.components()[0].eval1(z) - phi.components()[0].eval1(z));
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-3);
    }
    SUBCASE("scaled blaschke stays strictly inside") {
        const Symbol b = Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.0));
        BallSelfMap phi({b});
        phi.validate(kCircle);
        const auto scaled = phi.radial_scale(0.9);
        const double sup = par::max(kCircle.size(), [&](std::size_t i) {
            return scaled.modulus_at(kCircle[i]);
        });
        // grid oracle: max over |z| = 0.9 of |B|
        const double oracle = oracles::disk_grid_max(
            [](Complex z) { return std::abs((z - 0.5) / (1.0 - 0.5 * z)); }, 0.9);
        CHECK(sup == doctest::Approx(oracle).epsilon(1e-3));
        CHECK(sup < 1.0);
    }
    SUBCASE("r outside (0,1) is rejected") {
        BallSelfMap id = identity_map(1);
        CHECK_THROWS_AS(id.radial_scale(1.0), PreconditionError);
        CHECK_THROWS_AS(id.radial_scale(0.0), PreconditionError);
    }
}

TEST_CASE("powers") {
    const Symbol b = Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.7));
    SUBCASE("m = 0 is the constant one") {
        const Symbol one = b.pow(0);
        CHECK(one.eval1(Complex{0.3, 0.1}) == Complex{1.0, 0.0});
    }
    SUBCASE("m = 1 is the identity on evaluations") {
        const Complex z{0.2, 0.5};
        CHECK(b.pow(1).eval1(z) == b.eval1(z));
    }
    SUBCASE("boundary powers stay unimodular") {
        const Symbol b8 = b.pow(8);
        for (std::size_t i = 0; i < kCircle.size(); i += 13)
            CHECK(std::abs(std::abs(b8.eval(kCircle[i])) - 1.0) < 1e-10);
    }
    SUBCASE("power matches repeated multiplication up to m = 16") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const Symbol p = poly1({Complex{0.3, 0.1}, Complex{-0.2, 0.0}, Complex{0.1, 0.4}});
        for (int m : {2, 5, 16}) {
            const Symbol pm = p.pow(m);
            for (int t = 0; t < 10; ++t) {
                const Complex z{0.6 * u(rng), 0.6 * u(rng)};
                Complex rep{1.0, 0.0};
                for (int i = 0; i < m; ++i) rep *= p.eval1(z);
                const Complex direct = pm.eval1(z);
                CHECK(std::abs(direct - rep) <= 1e-12 * std::max(1.0, std::abs(rep)));
            }
        }
    }
}

TEST_CASE("multi-index enumeration is complete and ordered") {
    const auto idx = indices_up_to(2, 3);
    CHECK(idx.size() == 10);  // C(3+2,2)
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    for (const auto& a : idx) CHECK(a.order() <= 3);
}
