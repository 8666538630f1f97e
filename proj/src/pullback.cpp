#include "hardyop/pullback.hpp"

#include <array>

namespace hardyop {

EmpiricalPullbackMeasure EmpiricalPullbackMeasure::from_atoms(double q, NodeSet atoms,
                                                              std::vector<double> weights) {
    if (atoms.size() != weights.size())
        throw DimensionError("EmpiricalPullbackMeasure: atom/weight count mismatch");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw QuadratureDomainError("EmpiricalPullbackMeasure: invalid weight");
    EmpiricalPullbackMeasure mu;
    mu.q = q;
    mu.atoms = std::move(atoms);
    mu.weights = std::move(weights);
    mu.total_mass =
        par::sum<double>(mu.weights.size(), [&](std::size_t i) { return mu.weights[i]; });
    return mu;
}

EmpiricalPullbackMeasure build_pullback(const Symbol& psi, const BallSelfMap& phi, double q,
                                        const QuadratureScheme& scheme) {
    if (!(q > 0.0)) throw PreconditionError("build_pullback: q must be positive");
    if (!phi.validated())
        throw PreconditionError("build_pullback: self-map has not been validated");
    if (psi.dim() != phi.dim()) throw DimensionError("build_pullback: psi/phi dimension");

    const NodeSet nodes = sample_sphere(phi.dim(), scheme);
    const std::size_t N = nodes.size();
    const std::size_t n = phi.dim();

    EmpiricalPullbackMeasure mu;
    mu.q = q;
    mu.atoms.dim = n;
    mu.atoms.flat.resize(N * n);
    mu.weights.resize(N);
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
    for (long long i = 0; i < static_cast<long long>(N); ++i) {
        const auto xi = nodes[static_cast<std::size_t>(i)];
        phi.eval(xi, {mu.atoms.flat.data() + static_cast<std::size_t>(i) * n, n});
        mu.weights[static_cast<std::size_t>(i)] =
            std::pow(std::abs(psi.eval(xi)), q) / static_cast<double>(N);
    }
    mu.total_mass = par::sum<double>(N, [&](std::size_t i) { return mu.weights[i]; });
    mu.psi = psi;
    mu.phi = phi;
    mu.scheme = scheme;
    return mu;
}

PullbackIntegral integrate_pullback(const EmpiricalPullbackMeasure& mu,
                                    const std::function<double(std::span<const Complex>)>& g) {
    const std::size_t N = mu.size();
    struct Acc {
        double s = 0.0;
        long long bad = -1;
    };
    const Acc atom = par::reduce(
        N, Acc{},
        [&](Acc& a, std::size_t i) {
            const double gv = g(mu.atoms[i]);
            if (gv < 0.0 || !std::isfinite(gv)) {
                if (a.bad < 0) a.bad = static_cast<long long>(i);
                return;
            }
            a.s += mu.weights[i] * gv;
        },
        [](Acc& t, const Acc& p) {
            t.s += p.s;
            if (t.bad < 0) t.bad = p.bad;
        });
    if (atom.bad >= 0)
        throw QuadratureDomainError("integrate_pullback: negative or non-finite g at atom " +
                                    std::to_string(atom.bad));

    PullbackIntegral out;
    out.atom_sum = atom.s;

    if (mu.psi && mu.phi) {
        // recompute from provenance: regenerated nodes, fresh symbol evaluations
        const NodeSet nodes = sample_sphere(mu.phi->dim(), mu.scheme);
        out.boundary_sum = par::sum<double>(nodes.size(), [&](std::size_t i) {
            const auto xi = nodes[i];
            const CVec w = mu.phi->eval(xi);
            return std::pow(std::abs(mu.psi->eval(xi)), mu.q) * g(w);
        }) / static_cast<double>(nodes.size());
    } else {
        out.boundary_sum = out.atom_sum;
    }
    const double scale = std::max(std::abs(out.atom_sum), std::abs(out.boundary_sum));
    out.rel_diff = scale > 0.0 ? std::abs(out.atom_sum - out.boundary_sum) / scale : 0.0;
    return out;
}

std::span<const double> default_eps_schedule() {
    static constexpr std::array<double, 6> eps{0.1, 0.05, 0.02, 0.01, 0.005, 0.002};
    return eps;
}

ExtremeSetProfile extreme_profile(const Symbol& psi, const BallSelfMap& phi, double q,
                                  std::span<const double> eps_schedule,
                                  const QuadratureScheme& scheme) {
    if (eps_schedule.empty()) throw PreconditionError("extreme_profile: empty schedule");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0) || !(eps_schedule[i] < 1.0))
            throw PreconditionError("extreme_profile: eps must lie in (0, 1)");
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
            throw PreconditionError("extreme_profile: schedule must be strictly decreasing");
    }
    const NodeSet nodes = sample_sphere(phi.dim(), scheme);
    const std::size_t N = nodes.size();
    if (N == 0) throw InvalidSchemeError("extreme_profile: empty node set");

    // |phi| and |psi|^q per node, computed once
    std::vector<double> mod(N), wq(N);
#pragma omp parallel for schedule(static) if (par::parallel_enabled())
    for (long long i = 0; i < static_cast<long long>(N); ++i) {
        const auto xi = nodes[static_cast<std::size_t>(i)];
        mod[static_cast<std::size_t>(i)] = phi.modulus_at(xi);
        wq[static_cast<std::size_t>(i)] = std::pow(std::abs(psi.eval(xi)), q);
    }

    ExtremeSetProfile prof;
    double last_se = 0.0;
    for (double eps : eps_schedule) {
        struct Acc {
            double cnt = 0.0, mass = 0.0, mass2 = 0.0;
        };
        const Acc a = par::reduce(
            N, Acc{},
            [&](Acc& acc, std::size_t i) {
                if (mod[i] >= 1.0 - eps) {
                    acc.cnt += 1.0;
                    acc.mass += wq[i];
                    acc.mass2 += wq[i] * wq[i];
                }
            },
            [](Acc& t, const Acc& p) {
                t.cnt += p.cnt;
                t.mass += p.mass;
                t.mass2 += p.mass2;
            });
        prof.eps.push_back(eps);
        prof.sigma_mass.push_back(a.cnt / static_cast<double>(N));
        prof.mu_mass.push_back(a.mass / static_cast<double>(N));
        if (scheme.kind == SchemeKind::MonteCarloSphere) {
            const double mean = a.mass / static_cast<double>(N);
            const double var = std::max(0.0, a.mass2 / static_cast<double>(N) - mean * mean);
            last_se = std::sqrt(var / static_cast<double>(N));
        }
    }

    const auto extrapolate = [&](const std::vector<double>& v, double& lim, double& unc) {
        const std::size_t k = v.size();
        if (k == 1) {
            lim = v[0];
            unc = last_se;
            return;
        }
        lim = 0.5 * (v[k - 1] + v[k - 2]);
        unc = 0.5 * std::abs(v[k - 1] - v[k - 2]) + last_se;
    };
    extrapolate(prof.sigma_mass, prof.sigma_limit, prof.sigma_limit_unc);
    extrapolate(prof.mu_mass, prof.mu_limit, prof.mu_limit_unc);
    return prof;
}

MassEstimate pullback_extreme_mass(const ExtremeSetProfile& profile) {
    return {profile.mu_limit, profile.mu_limit_unc};
}

}  // namespace hardyop
