// Compares the OpenMP kernels against the serial reference on the hot loops:
// boundary quadrature, Berezin grid evaluation, window-mass scanning, and
// boundary-function expansion.
#include <chrono>
#include <cstdio>

#include "hardyop/carleson.hpp"
#include "hardyop/serialize.hpp"

using namespace hardyop;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Row {
    const char* name;
    double serial_s;
    double parallel_s;
    double rel_diff;
};

template <class F>
Row run(const char* name, F&& work) {
    par::set_parallel(false);
    auto t0 = clock_type::now();
    const double serial_value = work();
    const double serial_s = seconds_since(t0);

    par::set_parallel(true);
    t0 = clock_type::now();
    const double parallel_value = work();
    const double parallel_s = seconds_since(t0);

    const double scale = std::max(std::abs(serial_value), std::abs(parallel_value));
    return {name, serial_s, parallel_s,
            scale > 0.0 ? std::abs(serial_value - parallel_value) / scale : 0.0};
}

}  // namespace

int main() {
    std::vector<Row> rows;

    const QuadratureScheme big{SchemeKind::DeterministicCircle, 1 << 21, 1};
    const QuadratureScheme mc{SchemeKind::MonteCarloSphere, 400000, 5};

    PolynomialSymbol psi_poly(1);
    psi_poly.set(MultiIndex{{0}}, Complex{0.5, 0.0});
    psi_poly.set(MultiIndex{{1}}, Complex{0.5, 0.0});
    const Symbol psi(psi_poly);
    PolynomialSymbol phi_poly(1);
    phi_poly.set(MultiIndex{{2}}, Complex{1.0, 0.0});
    BallSelfMap phi({Symbol(phi_poly)});
    {
        const NodeSet nodes = sample_sphere(1, {SchemeKind::DeterministicCircle, 4096, 0});
        phi.validate(nodes);
    }

    rows.push_back(run("boundary quadrature (2^21 circle nodes)", [&] {
        const NodeSet nodes = sample_sphere(1, big);
        return integrate_boundary(nodes, [&](std::span<const Complex> z) {
                   return Complex{sq_abs(psi.eval(z)), 0.0};
               })
            .real();
    }));

    rows.push_back(run("sphere sampling + moment (4e5 nodes, n=2)", [&] {
        const NodeSet nodes = sample_sphere(2, mc);
        return integrate_boundary(
                   nodes,
                   [](std::span<const Complex> z) { return Complex{sq_abs(z[0]), 0.0}; },
                   true)
            .real();
    }));

    rows.push_back(run("berezin sup (5 shells x 24 dirs, 2^17 atoms)", [&] {
        const QuadratureScheme s{SchemeKind::DeterministicCircle, 1 << 17, 2};
        return berezin_sup(psi, phi, 2.0, 2.0, s).sup;
    }));

    rows.push_back(run("window-mass scan (128 centers x 5 apertures)", [&] {
        const QuadratureScheme s{SchemeKind::DeterministicCircle, 1 << 17, 3};
        const auto mu = build_pullback(psi, phi, 2.0, s);
        return box_constant(mu, 1.0).value;
    }));

    rows.push_back(run("expansion to degree 48 (8192 nodes)", [&] {
        const NodeSet nodes = sample_sphere(1, {SchemeKind::DeterministicCircle, 8192, 0});
        const auto e = expand_boundary_function(
            [&](std::span<const Complex> z) { return psi.eval(z) * phi.eval(z)[0]; }, 1, 48,
            nodes);
        return e.h2_norm();
    }));

    std::printf("%-46s %10s %10s %9s %12s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
                "rel-diff");
    for (const Row& r : rows)
        std::printf("%-46s %10.3f %10.3f %8.2fx %12.2e\n", r.name, r.serial_s, r.parallel_s,
                    r.serial_s / std::max(r.parallel_s, 1e-9), r.rel_diff);
    std::printf("workers: %d\n", par::worker_count());
    return 0;
}
