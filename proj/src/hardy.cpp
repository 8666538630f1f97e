#include "hardyop/hardy.hpp"

#include <array>
#include <cmath>

namespace hardyop {

double monomial_h2_norm_sq(const MultiIndex& alpha, std::size_t n) {
    if (alpha.dim() != n) throw DimensionError("monomial_h2_norm_sq: index dimension");
    double lg = std::lgamma(static_cast<double>(n));
    for (int e : alpha.exp) {
        if (e < 0) throw DimensionError("monomial_h2_norm_sq: negative exponent");
        lg += std::lgamma(static_cast<double>(e) + 1.0);
    }
    lg -= std::lgamma(static_cast<double>(n) + static_cast<double>(alpha.order()));
    return std::exp(lg);
}

void HardyExpansion::set(MultiIndex alpha, Complex c) {
    if (alpha.dim() != n_) throw DimensionError("HardyExpansion::set: index dimension");
    if (alpha.order() > degree_)
        throw DimensionError("HardyExpansion::set: |alpha| exceeds the degree cutoff");
    if (c == Complex{0.0, 0.0})
        coeffs_.erase(alpha);
    else
        coeffs_[std::move(alpha)] = c;
}

Complex HardyExpansion::coeff(const MultiIndex& alpha) const {
    const auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

double HardyExpansion::h2_norm_sq() const {
    double s = 0.0;
    for (const auto& [alpha, c] : coeffs_) s += sq_abs(c) * monomial_h2_norm_sq(alpha, n_);
    return s;
}

double HardyExpansion::h2_norm() const { return std::sqrt(h2_norm_sq()); }

HardyExpansion HardyExpansion::truncate_tail(int m) const {
    if (m < 0) throw DimensionError("truncate_tail: m must be >= 0");
    HardyExpansion out(n_, degree_);
    for (const auto& [alpha, c] : coeffs_)
        if (alpha.order() > m) out.set(alpha, c);
    return out;
}

HardyExpansion HardyExpansion::truncate_head(int m) const {
    if (m < 0) throw DimensionError("truncate_head: m must be >= 0");
    HardyExpansion out(n_, degree_);
    for (const auto& [alpha, c] : coeffs_)
        if (alpha.order() <= m) out.set(alpha, c);
    return out;
}

double HardyExpansion::top_layer_mass() const {
    double s = 0.0;
    for (const auto& [alpha, c] : coeffs_)
        if (alpha.order() == degree_) s += sq_abs(c) * monomial_h2_norm_sq(alpha, n_);
    return s;
}

Complex HardyExpansion::eval(std::span<const Complex> z) const {
    if (z.size() != n_) throw DimensionError("HardyExpansion::eval: point dimension");
    Complex acc{0.0, 0.0};
    for (const auto& [alpha, c] : coeffs_) {
        Complex t = c;
        for (std::size_t j = 0; j < n_; ++j)
            for (int e = 0; e < alpha.exp[j]; ++e) t *= z[j];
        acc += t;
    }
    return acc;
}

int default_expansion_degree(std::size_t n) {
    if (n == 1) return 12;
    if (n == 2) return 8;
    return 5;
}

std::span<const double> default_radius_schedule() {
    static constexpr std::array<double, 4> radii{0.9, 0.99, 0.999, 1.0};
    return radii;
}

NormResult hp_norm(const BoundaryFn& f, double p, const NodeSet& nodes, bool monte_carlo,
                   std::span<const double> radii) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw PreconditionError("hp_norm: p must lie in (0, inf)");
    if (radii.empty()) throw PreconditionError("hp_norm: empty radius schedule");

    NormResult out;
    CVec scaled(nodes.dim);
    double best = 0.0, best_se = 0.0;
    for (double r : radii) {
        if (!(r > 0.0) || r > 1.0)
            throw PreconditionError("hp_norm: radii must lie in (0, 1]");
        const auto slice = integrate_boundary(
            nodes,
            [&](std::span<const Complex> xi) {
                CVec rz(xi.size());
                for (std::size_t j = 0; j < xi.size(); ++j) rz[j] = r * xi[j];
                return Complex{std::pow(std::abs(f(rz)), p), 0.0};
            },
            monte_carlo);
        out.slices.push_back({r, slice.real(), slice.std_error});
        if (slice.real() >= best) {
            best = slice.real();
            best_se = slice.std_error;
        }
    }
    for (std::size_t i = 0; i + 1 < out.slices.size(); ++i) {
        const double tol = 3.0 * (out.slices[i].std_error + out.slices[i + 1].std_error) +
                           1e-10 * std::abs(out.slices[i].integral);
        if (out.slices[i + 1].integral < out.slices[i].integral - tol)
            out.slices_monotone = false;
    }
    out.value = std::pow(best, 1.0 / p);
    // delta method: se(x^(1/p)) = se(x) * x^(1/p - 1) / p
    out.std_error =
        best > 0.0 ? best_se * std::pow(best, 1.0 / p - 1.0) / p : std::pow(best_se, 1.0 / p);
    return out;
}

double sup_norm(const BoundaryFn& f, const NodeSet& nodes) {
    return par::max(nodes.size(), [&](std::size_t i) { return std::abs(f(nodes[i])); });
}

HardyExpansion expand_boundary_function(const BoundaryFn& f, std::size_t n, int d,
                                        const NodeSet& nodes) {
    if (nodes.dim != n) throw DimensionError("expand_boundary_function: node dimension");
    const std::size_t N = nodes.size();

    // evaluate f once over the nodes
    std::vector<Complex> fv(N);
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
    for (long long i = 0; i < static_cast<long long>(N); ++i) {
        const Complex v = f(nodes[static_cast<std::size_t>(i)]);
        fv[static_cast<std::size_t>(i)] = v;
    }
    for (std::size_t i = 0; i < N; ++i)
        if (!std::isfinite(fv[i].real()) || !std::isfinite(fv[i].imag()))
            throw QuadratureDomainError(
                "expand_boundary_function: non-finite value at node " + std::to_string(i));

    HardyExpansion out(n, d);
    const auto alphas = indices_up_to(n, d);
    for (const MultiIndex& alpha : alphas) {
        const Complex ip = par::sum<Complex>(N, [&](std::size_t i) {
            const auto z = nodes[i];
            Complex mono{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                for (int e = 0; e < alpha.exp[j]; ++e) mono *= z[j];
            return fv[i] * std::conj(mono);
        }) / static_cast<double>(N);
        const Complex c = ip / monomial_h2_norm_sq(alpha, n);
        if (std::abs(c) > 0.0) out.set(alpha, c);
    }
    return out;
}

TestKernel TestKernel::checked(CVec w, double p) {
    if (w.empty()) throw DimensionError("TestKernel: dimension must be >= 1");
    if (!(p > 0.0)) throw PreconditionError("TestKernel: p must be positive");
    if (!(norm(w) < 1.0))
        throw QuadratureDomainError("TestKernel: center must satisfy |w| < 1");
    return TestKernel{std::move(w), p};
}

Complex TestKernel::eval(std::span<const Complex> z) const {
    if (z.size() != w.size()) throw DimensionError("TestKernel::eval: point dimension");
    const double n = static_cast<double>(w.size());
    const double a = 1.0 - norm_sq(w);
    const Complex base = Complex{1.0, 0.0} - inner(z, w);
    return std::pow(a, n / p) * std::pow(base, -2.0 * n / p);
}

NormResult test_kernel_norm_check(const TestKernel& k, const NodeSet& nodes,
                                  bool monte_carlo) {
    return hp_norm([&](std::span<const Complex> z) { return k.eval(z); }, k.p, nodes,
                   monte_carlo);
}

double growth_bound_check(const BoundaryFn& f, double p, std::span<const BallPoint> probes,
                          const NodeSet& nodes, bool monte_carlo) {
    const double nf = hp_norm(f, p, nodes, monte_carlo).value;
    if (!(nf > 0.0)) throw PreconditionError("growth_bound_check: zero H^p norm");
    const double n = static_cast<double>(nodes.dim);
    double worst = 0.0;
    for (const BallPoint& z : probes) {
        const double mod = z.modulus();
        if (!(mod < 1.0)) throw PreconditionError("growth_bound_check: probe not interior");
        const double ratio =
            std::abs(f(z.view())) * std::pow(1.0 - mod * mod, n / p) / nf;
        worst = std::max(worst, ratio);
    }
    return worst;
}

std::vector<RadialGap> radial_convergence_check(const BoundaryFn& f, std::size_t n,
                                                double delta, std::span<const double> radii,
                                                const NodeSet& directions) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw PreconditionError("radial_convergence_check: delta must lie in (0, 1)");
    if (directions.dim != n)
        throw DimensionError("radial_convergence_check: direction dimension");

    // probe grid: directions x radial levels filling |z| <= 1-delta
    constexpr int kLevels = 16;
    std::vector<RadialGap> out;
    for (double r : radii) {
        const double sup = par::max(directions.size() * kLevels, [&](std::size_t idx) {
            const std::size_t i = idx / kLevels;
            const int l = static_cast<int>(idx % kLevels);
            const double rho =
                (1.0 - delta) * static_cast<double>(l + 1) / static_cast<double>(kLevels);
            const auto xi = directions[i];
            CVec z(n), rz(n);
            for (std::size_t j = 0; j < n; ++j) {
                z[j] = rho * xi[j];
                rz[j] = r * z[j];
            }
            return std::abs(f(z) - f(rz));
        });
        out.push_back({r, sup});
    }
    return out;
}

}  // namespace hardyop
