#include "hardyop/carleson.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace hardyop {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

NodeSet sample_centers(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (n == 1) {
        QuadratureScheme s{SchemeKind::DeterministicCircle, count, seed};
        return sample_sphere(1, s);
    }
    return sample_sphere(n, {SchemeKind::MonteCarloSphere, count, seed});
}

/// window masses of one center for every aperture in the grid, one pass
/// over the atoms
std::vector<double> center_masses(const EmpiricalPullbackMeasure& mu,
                                  std::span<const Complex> xi,
                                  std::span<const double> h_grid) {
    using Acc = std::vector<double>;
    return par::reduce(
        mu.size(), Acc(h_grid.size(), 0.0),
        [&](Acc& acc, std::size_t i) {
            const double t = std::abs(Complex{1.0, 0.0} - inner(mu.atoms[i], xi));
            for (std::size_t k = 0; k < h_grid.size(); ++k)
                if (t < h_grid[k]) acc[k] += mu.weights[i];
        },
        [](Acc& tot, const Acc& p) {
            for (std::size_t k = 0; k < tot.size(); ++k) tot[k] += p[k];
        });
}

void check_h_grid(std::span<const double> h_grid) {
    if (h_grid.empty()) throw PreconditionError("aperture grid must be nonempty");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0) || h_grid[i] > 2.0)
            throw PreconditionError("apertures must lie in (0, 2]");
        if (i > 0 && !(h_grid[i] < h_grid[i - 1]))
            throw PreconditionError("aperture grid must be strictly decreasing");
    }
}

/// growth factors across the last three steps of a positive sequence;
/// "divergent" when every factor exceeds 2
std::pair<std::vector<double>, bool> tail_divergence(std::span<const double> values) {
    std::vector<double> growth;
    bool divergent = values.size() >= 2;
    const std::size_t first = values.size() >= 4 ? values.size() - 3 : 1;
    for (std::size_t i = first; i < values.size(); ++i) {
        const double prev = values[i - 1];
        const double g = prev > 0.0
                             ? values[i] / prev
                             : (values[i] > 0.0 ? std::numeric_limits<double>::infinity()
                                                : 1.0);
        growth.push_back(g);
        if (!(g > 2.0)) divergent = false;
    }
    return {growth, divergent};
}

double berezin_kernel(std::span<const Complex> w, std::span<const Complex> z,
                      double exponent, double one_minus_z2_pow) {
    const double denom = std::abs(Complex{1.0, 0.0} - inner(w, z));
    return one_minus_z2_pow / std::pow(denom, 2.0 * exponent);
}

}  // namespace

std::span<const double> default_h_schedule() {
    static constexpr std::array<double, 5> h{1.6, 0.4, 0.1, 0.025, 0.00625};
    return h;
}

std::span<const double> default_berezin_shells() {
    static constexpr std::array<double, 5> s{0.0, 0.5, 0.9, 0.99, 0.999};
    return s;
}

std::span<const double> default_boundary_radii() {
    static constexpr std::array<double, 4> r{0.9, 0.99, 0.999, 0.9999};
    return r;
}

BoxConstant box_constant(const EmpiricalPullbackMeasure& mu, double beta,
                         std::span<const double> h_grid, std::size_t center_count,
                         std::uint64_t seed) {
    if (mu.size() == 0) throw PreconditionError("box_constant: empty measure");
    if (!(beta >= 1.0)) throw PreconditionError("box_constant: beta must be >= 1");
    check_h_grid(h_grid);

    const double n = static_cast<double>(mu.atoms.dim);
    const NodeSet centers = sample_centers(mu.atoms.dim, center_count, seed);

    BoxConstant out;
    std::vector<double> sup_per_h(h_grid.size(), 0.0);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const auto masses = center_masses(mu, centers[c], h_grid);
        for (std::size_t k = 0; k < h_grid.size(); ++k) {
            const double v = masses[k] / std::pow(h_grid[k], n * beta);
            sup_per_h[k] = std::max(sup_per_h[k], v);
            if (v > out.value) {
                out.value = v;
                const auto xi = centers[c];
                out.argmax_center.assign(xi.begin(), xi.end());
                out.argmax_h = h_grid[k];
            }
        }
    }
    for (std::size_t k = 0; k < h_grid.size(); ++k)
        out.profile.emplace_back(h_grid[k], sup_per_h[k]);
    std::tie(out.tail_growth, out.divergent) = tail_divergence(sup_per_h);
    return out;
}

VanishingProfile vanishing_profile(const EmpiricalPullbackMeasure& mu, double beta,
                                   std::span<const double> h_grid, std::size_t center_count,
                                   std::uint64_t seed) {
    const BoxConstant box = box_constant(mu, beta, h_grid, center_count, seed);
    VanishingProfile out;
    out.profile = box.profile;
    const std::size_t k = out.profile.size();
    if (k >= 3) {
        const double a = out.profile[k - 3].second;
        const double b = out.profile[k - 2].second;
        const double c = out.profile[k - 1].second;
        out.vanishing = (b <= a + 1e-15) && (c <= b + 1e-15) &&
                        (c < 0.1 * box.value || box.value == 0.0);
    } else {
        out.vanishing = out.profile.back().second == 0.0;
    }
    return out;
}

BerezinSup berezin_sup(const Symbol& psi, const BallSelfMap& phi, double p, double q,
                       const QuadratureScheme& scheme, std::span<const double> shells,
                       std::size_t directions) {
    if (!(p > 0.0) || !(q > 0.0))
        throw PreconditionError("berezin_sup: p and q must be positive");
    const std::size_t n = phi.dim();
    const double exponent = static_cast<double>(n) * q / p;

    const EmpiricalPullbackMeasure mu = build_pullback(psi, phi, q, scheme);

    // fresh evaluations for the boundary-integral route
    const NodeSet nodes = sample_sphere(n, scheme);
    const std::size_t N = nodes.size();
    NodeSet images;
    images.dim = n;
    images.flat.resize(N * n);
    std::vector<double> wq(N);
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
    for (long long i = 0; i < static_cast<long long>(N); ++i) {
        const auto xi = nodes[static_cast<std::size_t>(i)];
        phi.eval(xi, {images.flat.data() + static_cast<std::size_t>(i) * n, n});
        wq[static_cast<std::size_t>(i)] = std::pow(std::abs(psi.eval(xi)), q);
    }

    const NodeSet dirs = sample_centers(n, directions, mix64(scheme.seed + 3));

    BerezinSup out;
    for (double r : shells) {
        double shell_sup = 0.0;
        for (std::size_t d = 0; d < (r == 0.0 ? std::size_t{1} : dirs.size()); ++d) {
            CVec z(n);
            const auto dir = dirs[d];
            for (std::size_t j = 0; j < n; ++j) z[j] = r * dir[j];
            const double zpow = std::pow(1.0 - r * r, exponent);

            const double atom_sum = par::sum<double>(mu.size(), [&](std::size_t i) {
                return mu.weights[i] * berezin_kernel(mu.atoms[i], z, exponent, zpow);
            });
            const double boundary_sum = par::sum<double>(N, [&](std::size_t i) {
                return wq[i] * berezin_kernel(images[i], z, exponent, zpow);
            }) / static_cast<double>(N);

            const double scale = std::max(std::abs(atom_sum), std::abs(boundary_sum));
            const double rel =
                scale > 0.0 ? std::abs(atom_sum - boundary_sum) / scale : 0.0;
            out.worst_two_way_rel = std::max(out.worst_two_way_rel, rel);
            if (rel > 1e-10)
                throw InternalConsistencyError(
                    "berezin_sup: atom-sum and boundary-integral routes disagree by " +
                    std::to_string(rel) + " at |z| = " + std::to_string(r));

            if (atom_sum > shell_sup) shell_sup = atom_sum;
            if (atom_sum > out.sup) {
                out.sup = atom_sum;
                out.argmax = z;
            }
        }
        out.shell_sups.emplace_back(r, shell_sup);
    }
    std::vector<double> sups;
    for (const auto& [r, s] : out.shell_sups) sups.push_back(s);
    std::tie(out.tail_growth, out.divergent) = tail_divergence(sups);
    return out;
}

BoundaryTrace berezin_boundary_trace(const Symbol& psi, const BallSelfMap& phi, double p,
                                     double q, const QuadratureScheme& scheme,
                                     std::span<const double> radii,
                                     std::size_t directions) {
    if (radii.empty()) throw PreconditionError("berezin_boundary_trace: empty radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw PreconditionError("berezin_boundary_trace: radii must increase");

    const std::size_t n = phi.dim();
    const double exponent = static_cast<double>(n) * q / p;

    // deterministic circle quadrature needs enough nodes to resolve the
    // kernel's coefficient decay at the finest radius
    QuadratureScheme s = scheme;
    if (s.kind == SchemeKind::DeterministicCircle) {
        const double finest = radii.back();
        const auto needed = static_cast<std::size_t>(std::ceil(30.0 / (1.0 - finest)));
        s.samples = std::max(s.samples, needed);
    }
    const EmpiricalPullbackMeasure mu = build_pullback(psi, phi, q, s);
    const NodeSet dirs = sample_centers(n, directions, mix64(s.seed + 3));

    BoundaryTrace out;
    for (double r : radii) {
        const double zpow = std::pow(1.0 - r * r, exponent);
        double sup = 0.0;
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            CVec z(n);
            const auto dir = dirs[d];
            for (std::size_t j = 0; j < n; ++j) z[j] = r * dir[j];
            const double v = par::sum<double>(mu.size(), [&](std::size_t i) {
                return mu.weights[i] * berezin_kernel(mu.atoms[i], z, exponent, zpow);
            });
            sup = std::max(sup, v);
        }
        out.trace.emplace_back(r, sup);
    }
    std::vector<double> values;
    for (const auto& [r, v] : out.trace) values.push_back(v);
    const TrendLimit lim = trend_limit(values);
    out.limit = lim.value;
    out.limit_unc = lim.uncertainty;
    out.trend = lim.trend;
    out.limit_qroot = std::pow(std::max(0.0, out.limit), 1.0 / q);
    return out;
}

BoundaryMass boundary_mass_check(const EmpiricalPullbackMeasure& mu,
                                 std::span<const double> eps) {
    if (eps.empty()) throw PreconditionError("boundary_mass_check: empty schedule");
    BoundaryMass out;
    for (double e : eps) {
        const double m = par::sum<double>(mu.size(), [&](std::size_t i) {
            return norm(mu.atoms[i]) >= 1.0 - e ? mu.weights[i] : 0.0;
        });
        out.profile.emplace_back(e, m);
    }
    const std::size_t k = out.profile.size();
    out.limit = k >= 2 ? 0.5 * (out.profile[k - 1].second + out.profile[k - 2].second)
                       : out.profile.back().second;
    out.limit_unc =
        k >= 2 ? 0.5 * std::abs(out.profile[k - 1].second - out.profile[k - 2].second)
               : 0.0;
    return out;
}

CarlesonReport equivalence_report(const Symbol& psi, const BallSelfMap& phi, double p,
                                  double q, const QuadratureScheme& scheme) {
    if (!(p > 0.0) || !(q >= p) || !std::isfinite(q))
        throw PreconditionError("equivalence_report: need 0 < p <= q < inf");

    CarlesonReport rep;
    rep.setting = {p, q, phi.dim()};
    rep.beta = q / p;
    rep.scheme = scheme;

    const EmpiricalPullbackMeasure mu = build_pullback(psi, phi, q, scheme);
    rep.box = box_constant(mu, rep.beta, default_h_schedule(), 128, mix64(scheme.seed + 1));
    rep.vanishing =
        vanishing_profile(mu, rep.beta, default_h_schedule(), 128, mix64(scheme.seed + 1));
    rep.berezin = berezin_sup(psi, phi, p, q, scheme);
    rep.boundary = berezin_boundary_trace(psi, phi, p, q, scheme);

    // direct embedding estimate: max ||W f||_q over unit-H^p test functions
    const std::size_t n = phi.dim();
    const NodeSet nodes = sample_sphere(n, scheme);
    const bool mc = scheme.kind == SchemeKind::MonteCarloSphere;
    const NodeSet dirs = sample_centers(n, n == 1 ? 4 : 8, mix64(scheme.seed + 7));

    const auto image_norm = [&](const BoundaryFn& f) {
        return hp_norm(
                   [&](std::span<const Complex> z) { return psi.eval(z) * f(phi.eval(z)); },
                   q, nodes, mc, std::array<double, 1>{1.0})
            .value;
    };

    std::vector<double> kernel_sups;
    for (double rho : {0.0, 0.5, 0.9, 0.99, 0.999}) {
        double sup = 0.0;
        for (std::size_t d = 0; d < (rho == 0.0 ? std::size_t{1} : dirs.size()); ++d) {
            CVec w(n);
            const auto dir = dirs[d];
            for (std::size_t j = 0; j < n; ++j) w[j] = rho * dir[j];
            const TestKernel kern = TestKernel::checked(w, p);
            sup = std::max(sup, image_norm([kern](std::span<const Complex> z) {
                return kern.eval(z);
            }));
        }
        rep.corpus_kernel_trace.emplace_back(rho, sup);
        kernel_sups.push_back(sup);
        rep.corpus_norm = std::max(rep.corpus_norm, sup);
    }
    std::mt19937_64 rng(mix64(scheme.seed + 13));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 6; ++t) {
        PolynomialSymbol poly(n);
        for (const MultiIndex& alpha : indices_up_to(n, 3))
            poly.set(alpha, Complex{u(rng), u(rng)});
        const double np =
            hp_norm([&](std::span<const Complex> z) { return poly.eval(z); }, p, nodes, mc)
                .value;
        const PolynomialSymbol unit = poly.scaled(Complex{1.0 / np, 0.0});
        rep.corpus_norm = std::max(rep.corpus_norm, image_norm([unit](std::span<const Complex> z) {
            return unit.eval(z);
        }));
    }

    // divergence of the embedding route is classified on ||W f_w||_q^q,
    // the same normalization the other two indicators use
    std::vector<double> powered;
    for (double v : kernel_sups) powered.push_back(std::pow(v, q));
    rep.corpus_divergent = tail_divergence(powered).second;

    const bool box_div = rep.box.divergent;
    rep.indicators_agree = (box_div == rep.berezin.divergent) &&
                           (box_div == rep.corpus_divergent);
    rep.bounded = !box_div && !rep.berezin.divergent && !rep.corpus_divergent;
    rep.citations = {"carleson:box-constant", "carleson:berezin-sup",
                     "carleson:embedding-corpus", "carleson:indicator-equivalence"};
    return rep;
}

CompactnessVerdict compactness_verdict(const Setting& setting, const CarlesonReport& report) {
    if (!(setting.p > 1.0) || !(setting.q >= setting.p) || !std::isfinite(setting.q))
        throw PreconditionError(
            "compactness_verdict: Carleson route needs 1 < p <= q < inf");
    CompactnessVerdict v;
    v.criterion = "compact-iff-vanishing-berezin-boundary-limit:hp-to-hq";
    if (!report.bounded) {
        v.state = CompactnessVerdict::State::NonCompact;
        v.criterion = "not-bounded:hp-to-hq";
        v.deciding_value = report.berezin.sup;
        return v;
    }
    v.deciding_value = report.boundary.limit;
    v.uncertainty = report.boundary.limit_unc;
    if (report.boundary.trend == TrendClass::Vanishing)
        v.state = CompactnessVerdict::State::Compact;
    else if (report.boundary.trend == TrendClass::Plateau)
        v.state = v.deciding_value > 2.0 * v.uncertainty + 1e-12
                      ? CompactnessVerdict::State::NonCompact
                      : CompactnessVerdict::State::Compact;
    else
        v.state = CompactnessVerdict::State::Inconclusive;
    return v;
}

}  // namespace hardyop
