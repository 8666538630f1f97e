#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hardyop/errors.hpp"
#include "hardyop/parallel.hpp"

namespace hardyop {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Membership tolerance for the closed unit ball and the unit sphere.
inline constexpr double kBoundaryTol = 1e-12;

inline double sq_abs(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// Hermitian inner product <z,w> = sum_j z_j * conj(w_j).
inline Complex inner(std::span<const Complex> z, std::span<const Complex> w) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

inline double norm_sq(std::span<const Complex> z) {
    double s = 0.0;
    for (const Complex& c : z) s += sq_abs(c);
    return s;
}

inline double norm(std::span<const Complex> z) { return std::sqrt(norm_sq(z)); }

/// A point of the closed unit ball of C^n.
struct BallPoint {
    CVec coords;

    static BallPoint checked(CVec c, double tol = kBoundaryTol);
    std::size_t dim() const { return coords.size(); }
    std::span<const Complex> view() const { return coords; }
    double modulus() const { return norm(coords); }
};

enum class SchemeKind {
    DeterministicCircle,  // n = 1 only: uniform angles
    MonteCarloSphere,     // any n: seeded sigma-uniform draws
};

std::string to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct QuadratureScheme {
    SchemeKind kind = SchemeKind::MonteCarloSphere;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    bool operator==(const QuadratureScheme&) const = default;
};

/// Flat storage for a set of points of equal dimension.
struct NodeSet {
    std::size_t dim = 0;
    std::vector<Complex> flat;

    std::size_t size() const { return dim == 0 ? 0 : flat.size() / dim; }
    std::span<const Complex> operator[](std::size_t i) const {
        return {flat.data() + i * dim, dim};
    }
};

/// Sigma-uniform boundary nodes. Deterministic-circle nodes are the N-th
/// roots of unity; Monte Carlo nodes are normalized complex Gaussian vectors
/// (rotation invariant in distribution for every n). Identical
/// (kind, samples, seed) reproduce the node set bit-for-bit.
NodeSet sample_sphere(std::size_t n, const QuadratureScheme& scheme);

struct IntegralResult {
    Complex value{0.0, 0.0};
    double std_error = 0.0;  // 0 for deterministic schemes
    std::size_t samples = 0;

    double real() const { return value.real(); }
};

namespace detail {
struct MeanAcc {
    Complex s1{0.0, 0.0};
    double s2 = 0.0;
    long long bad = -1;  // first node index with a non-finite value
};

template <class F>
MeanAcc accumulate_mean(const NodeSet& nodes, F&& f) {
    return par::reduce(
        nodes.size(), MeanAcc{},
        [&](MeanAcc& acc, std::size_t i) {
            const Complex v = f(nodes[i]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                if (acc.bad < 0) acc.bad = static_cast<long long>(i);
                return;
            }
            acc.s1 += v;
            acc.s2 += sq_abs(v);
        },
        [](MeanAcc& total, const MeanAcc& part) {
            total.s1 += part.s1;
            total.s2 += part.s2;
            if (total.bad < 0) total.bad = part.bad;
        });
}
}  // namespace detail

/// Mean of f over the node set (sigma has total mass 1), with a standard
/// error estimate when the node set came from a Monte Carlo scheme.
/// Throws QuadratureDomainError naming the first node where f is non-finite.
template <class F>
IntegralResult integrate_boundary(const NodeSet& nodes, F&& f, bool monte_carlo = false) {
    const std::size_t n = nodes.size();
    if (n == 0) throw InvalidSchemeError("integrate_boundary: empty node set");
    const auto acc = detail::accumulate_mean(nodes, f);
    if (acc.bad >= 0)
        throw QuadratureDomainError("integrate_boundary: non-finite integrand at node " +
                                    std::to_string(acc.bad));
    IntegralResult out;
    out.samples = n;
    out.value = acc.s1 / static_cast<double>(n);
    if (monte_carlo && n > 1) {
        const double var =
            std::max(0.0, acc.s2 / static_cast<double>(n) - sq_abs(out.value));
        out.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return out;
}

template <class F>
IntegralResult integrate_boundary(std::size_t n, F&& f, const QuadratureScheme& scheme) {
    const NodeSet nodes = sample_sphere(n, scheme);
    return integrate_boundary(nodes, std::forward<F>(f),
                              scheme.kind == SchemeKind::MonteCarloSphere);
}

/// Nonisotropic boundary window S_h(xi) = { z : |1 - <z,xi>| < h }.
struct CarlesonWindow {
    CVec center;      // unit vector
    double aperture;  // h in (0, 2]

    static CarlesonWindow checked(CVec center, double h, double tol = kBoundaryTol);
};

inline bool window_contains(const CarlesonWindow& w, std::span<const Complex> z) {
    return std::abs(Complex{1.0, 0.0} - inner(z, w.center)) < w.aperture;
}

inline bool window_contains(const CarlesonWindow& w, const BallPoint& z) {
    return window_contains(w, z.view());
}

/// Sigma-mass of S_h(xi) on a fixed boundary node set, by node counting.
/// Monotone nondecreasing in h for a fixed node set.
double sigma_window_mass(std::span<const Complex> xi, double h, const NodeSet& nodes);

}  // namespace hardyop
