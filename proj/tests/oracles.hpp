// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

/// coefficient convolution: (a * b)[k] = sum a[i] b[k-i]
inline std::vector<Complex> poly_mul(const std::vector<Complex>& a,
                                     const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<Complex> poly_pow(std::vector<Complex> a, int m) {
    std::vector<Complex> out{Complex{1.0, 0.0}};
    for (int i = 0; i < m; ++i) out = poly_mul(out, a);
    return out;
}

inline Complex poly_eval(const std::vector<Complex>& a, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
}

/// sigma-measure of the circle arc { |1 - e^{i t}| < h }
inline double circle_window_arc(double h) {
    if (h >= 2.0) return 1.0;
    return std::acos(1.0 - h * h / 2.0) / std::numbers::pi;
}

/// boundary moment on the sphere: int |xi_1|^{2m} dsigma = m! (n-1)! / (n-1+m)!
inline double coordinate_moment(int m, int n) {
    double v = 1.0;
    for (int j = 1; j <= m; ++j) v *= static_cast<double>(j) / (n - 1 + j);
    return v;
}

/// least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

/// dense grid maximum of f over the closed disk of given radius
template <class F>
double disk_grid_max(F&& f, double radius, int angular = 256, int radial = 33) {
    double best = 0.0;
    for (int ri = 0; ri < radial; ++ri) {
        const double rho = radius * ri / (radial - 1);
        for (int ai = 0; ai < angular; ++ai) {
            const double a = 2.0 * std::numbers::pi * ai / angular;
            best = std::max(best, f(std::polar(rho, a)));
        }
    }
    return best;
}

}  // namespace oracles
