#pragma once

#include <functional>
#include <optional>

#include "hardyop/symbols.hpp"

namespace hardyop {

/// ||z^alpha||_2^2 = (n-1)! alpha! / (n-1+|alpha|)!, in log-Gamma form
/// (plain factorials overflow near |alpha| ~ 170).
double monomial_h2_norm_sq(const MultiIndex& alpha, std::size_t n);

/// Truncated homogeneous expansion: coefficients c(alpha) for |alpha| <= d.
class HardyExpansion {
  public:
    HardyExpansion(std::size_t n, int degree) : n_(n), degree_(degree) {
        if (n < 1) throw DimensionError("HardyExpansion: dimension must be >= 1");
        if (degree < 0) throw DimensionError("HardyExpansion: degree must be >= 0");
    }

    std::size_t dim() const { return n_; }
    int degree() const { return degree_; }
    const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }

    void set(MultiIndex alpha, Complex c);
    Complex coeff(const MultiIndex& alpha) const;

    double h2_norm_sq() const;
    double h2_norm() const;

    /// R_m: keeps the homogeneous layers of degree > m.
    HardyExpansion truncate_tail(int m) const;
    /// Q_m: keeps the homogeneous layers of degree <= m.
    HardyExpansion truncate_head(int m) const;

    /// H^2 mass of the top homogeneous layer |alpha| = degree, the reported
    /// truncation-error proxy.
    double top_layer_mass() const;

    Complex eval(std::span<const Complex> z) const;

  private:
    std::size_t n_;
    int degree_;
    std::map<MultiIndex, Complex> coeffs_;
};

/// Default expansion degree cutoffs.
int default_expansion_degree(std::size_t n);

using BoundaryFn = std::function<Complex(std::span<const Complex>)>;

inline BoundaryFn as_fn(const Symbol& s) {
    return [s](std::span<const Complex> z) { return s.eval(z); };
}

/// Default radius schedule for H^p norms; r = 1 is included because every
/// symbol in this library extends continuously to the closed ball.
std::span<const double> default_radius_schedule();

struct SliceSample {
    double r = 0.0;
    double integral = 0.0;  // mean of |f(r xi)|^p
    double std_error = 0.0;
};

struct NormResult {
    double value = 0.0;
    double std_error = 0.0;
    std::vector<SliceSample> slices;
    bool slices_monotone = true;
};

/// ||f||_p via slice integrals over the radius schedule. Slice means are
/// mathematically nondecreasing in r; the flag records whether the computed
/// slices respect that within quadrature error.
NormResult hp_norm(const BoundaryFn& f, double p, const NodeSet& nodes, bool monte_carlo,
                   std::span<const double> radii = default_radius_schedule());

/// Boundary maximization (maximum principle).
double sup_norm(const BoundaryFn& f, const NodeSet& nodes);

/// Finite-degree realization of the orthogonal projection onto H^2:
/// c(alpha) = <f, z^alpha> / ||z^alpha||_2^2 by boundary quadrature.
/// Exact (within 1e-12) for n = 1 polynomials of degree <= d under a
/// deterministic scheme with N > 2d.
HardyExpansion expand_boundary_function(const BoundaryFn& f, std::size_t n, int d,
                                        const NodeSet& nodes);

/// Unit-norm H^p test function f_w(z) = (1-|w|^2)^{n/p} / (1-<z,w>)^{2n/p}.
/// 1 - <z,w> has positive real part on |z| <= 1, |w| < 1, so the principal
/// branch of the fractional power is safe.
struct TestKernel {
    CVec w;
    double p = 2.0;

    static TestKernel checked(CVec w, double p);
    std::size_t dim() const { return w.size(); }
    Complex eval(std::span<const Complex> z) const;
};

/// ||f_w||_p computed by quadrature; must be 1 within scheme tolerance.
NormResult test_kernel_norm_check(const TestKernel& k, const NodeSet& nodes,
                                  bool monte_carlo);

/// Worst ratio |f(z)| (1-|z|^2)^{n/p} / ||f||_p over the probe points;
/// must be <= 1 + tol for f in H^p.
double growth_bound_check(const BoundaryFn& f, double p, std::span<const BallPoint> probes,
                          const NodeSet& nodes, bool monte_carlo);

struct RadialGap {
    double r = 0.0;
    double sup_gap = 0.0;  // sup over |z| <= 1-delta of |f(z) - f(rz)|
};

/// Uniform radial convergence on the closed sub-ball |z| <= 1-delta, probed
/// on a radial x angular grid. Gaps tend to 0 as r -> 1.
std::vector<RadialGap> radial_convergence_check(const BoundaryFn& f, std::size_t n,
                                                double delta, std::span<const double> radii,
                                                const NodeSet& directions);

}  // namespace hardyop
