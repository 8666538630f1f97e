#include "hardyop/geometry.hpp"

#include <numbers>
#include <random>

namespace hardyop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Box-Muller on top of mt19937_64. std::normal_distribution is
// implementation-defined, which would break the bit-for-bit node
// reproducibility contract across standard libraries.
struct GaussianStream {
    std::mt19937_64 rng;
    bool have_spare = false;
    double spare = 0.0;

    explicit GaussianStream(std::uint64_t seed) : rng(seed) {}

    double uniform01() {
        // (0,1]: avoids log(0)
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    }

    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }
};

}  // namespace

BallPoint BallPoint::checked(CVec c, double tol) {
    if (c.empty()) throw DimensionError("BallPoint: dimension must be >= 1");
    BallPoint p{std::move(c)};
    if (p.modulus() > 1.0 + tol)
        throw QuadratureDomainError("BallPoint: |z| = " + std::to_string(p.modulus()) +
                                    " outside the closed ball");
    return p;
}

std::string to_string(SchemeKind k) {
    return k == SchemeKind::DeterministicCircle ? "deterministic-circle"
                                                : "monte-carlo-sphere";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
    if (s == "deterministic-circle") return SchemeKind::DeterministicCircle;
    if (s == "monte-carlo-sphere") return SchemeKind::MonteCarloSphere;
    throw InvalidSchemeError("unknown scheme kind: " + s);
}

NodeSet sample_sphere(std::size_t n, const QuadratureScheme& scheme) {
    if (n < 1) throw InvalidSchemeError("sample_sphere: dimension must be >= 1");
    if (scheme.samples < 1) throw InvalidSchemeError("sample_sphere: sample_count must be >= 1");

    NodeSet nodes;
    nodes.dim = n;
    nodes.flat.resize(n * scheme.samples);

    if (scheme.kind == SchemeKind::DeterministicCircle) {
        if (n != 1)
            throw InvalidSchemeError("deterministic-circle scheme is only valid for n = 1");
        const std::size_t N = scheme.samples;
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
        for (long long k = 0; k < static_cast<long long>(N); ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(N);
            nodes.flat[static_cast<std::size_t>(k)] = Complex{std::cos(a), std::sin(a)};
        }
        return nodes;
    }

    // Monte Carlo: one Gaussian stream per fixed-size chunk, seeded from
    // (seed, chunk), so the node set does not depend on the thread count.
    const std::size_t N = scheme.samples;
    const std::size_t nchunk = (N + par::kChunk - 1) / par::kChunk;
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
    for (long long c = 0; c < static_cast<long long>(nchunk); ++c) {
        GaussianStream g(splitmix64(scheme.seed + 0x517cc1b727220a95ULL *
                                                      (static_cast<std::uint64_t>(c) + 1)));
        const std::size_t lo = static_cast<std::size_t>(c) * par::kChunk;
        const std::size_t hi = std::min(lo + par::kChunk, N);
        for (std::size_t i = lo; i < hi; ++i) {
            double r2 = 0.0;
            Complex* z = nodes.flat.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double re = g.next();
                const double im = g.next();
                z[j] = Complex{re, im};
                r2 += re * re + im * im;
            }
            const double inv = 1.0 / std::sqrt(r2);
            for (std::size_t j = 0; j < n; ++j) z[j] *= inv;
        }
    }
    return nodes;
}

CarlesonWindow CarlesonWindow::checked(CVec center, double h, double tol) {
    if (center.empty()) throw DimensionError("CarlesonWindow: dimension must be >= 1");
    if (!(h > 0.0) || h > 2.0)
        throw InvalidSchemeError("CarlesonWindow: aperture must lie in (0, 2]");
    const double m = norm(center);
    if (std::abs(m - 1.0) > tol)
        throw QuadratureDomainError("CarlesonWindow: center must be a unit vector, |xi| = " +
                                    std::to_string(m));
    return CarlesonWindow{std::move(center), h};
}

double sigma_window_mass(std::span<const Complex> xi, double h, const NodeSet& nodes) {
    const std::size_t N = nodes.size();
    if (N == 0) return 0.0;
    const auto count = par::sum<long long>(N, [&](std::size_t i) -> long long {
        return std::abs(Complex{1.0, 0.0} - inner(nodes[i], xi)) < h ? 1 : 0;
    });
    return static_cast<double>(count) / static_cast<double>(N);
}

}  // namespace hardyop
