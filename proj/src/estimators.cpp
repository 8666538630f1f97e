#include "hardyop/estimators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace hardyop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Trace profile_trace(const ExtremeSetProfile& prof) {
    Trace t;
    t.label = "extreme-mass-profile";
    for (std::size_t i = 0; i < prof.eps.size(); ++i)
        t.points.emplace_back(prof.eps[i], prof.mu_mass[i]);
    return t;
}

/// interval image of [x-u, x+u] under t -> t^(1/q), clamped at 0
Bound root_bound(double x, double u, double q, std::string provenance) {
    const double lo = std::pow(std::max(0.0, x - u), 1.0 / q);
    const double hi = std::pow(std::max(0.0, x + u), 1.0 / q);
    return Bound{std::pow(std::max(0.0, x), 1.0 / q), 0.5 * (hi - lo),
                 std::move(provenance)};
}

}  // namespace

std::string to_string(TrendClass t) {
    switch (t) {
        case TrendClass::Vanishing: return "vanishing";
        case TrendClass::Plateau: return "plateau";
        case TrendClass::Undecided: return "undecided";
    }
    return "unknown";
}

TrendLimit trend_limit(std::span<const double> seq) {
    if (seq.empty()) return {0.0, 0.0, TrendClass::Undecided};
    if (seq.size() == 1) return {seq[0], seq[0], TrendClass::Undecided};
    const double a = seq[seq.size() - 2];
    const double b = seq[seq.size() - 1];
    if (a <= 0.0 && b <= 0.0) return {0.0, 0.0, TrendClass::Vanishing};
    const double rho = a > 0.0 ? b / a : 2.0;
    if (rho <= 0.75) return {0.0, b, TrendClass::Vanishing};
    if (rho >= 0.90)
        return {0.5 * (a + b), 0.5 * std::abs(a - b), TrendClass::Plateau};
    return {0.5 * b, 0.5 * b, TrendClass::Undecided};
}

std::string to_string(OperatorRegime r) {
    switch (r) {
        case OperatorRegime::SupToH2: return "sup-to-h2";
        case OperatorRegime::SupToHq: return "sup-to-hq";
        case OperatorRegime::HpToHqLower: return "hp-to-hq-lower";
        case OperatorRegime::HpToHqInterp: return "hp-to-hq-interp";
        case OperatorRegime::HpToSup: return "hp-to-sup";
        case OperatorRegime::HpToHqCarleson: return "hp-to-hq-carleson";
    }
    return "unknown";
}

bool EstimateReport::ordering_ok() const {
    const auto value = [](const std::optional<Bound>& b) { return b ? b->value : 0.0; };
    if ((lower && lower->value < -lower->uncertainty) ||
        (upper && upper->value < -upper->uncertainty) ||
        (exact && exact->value < -exact->uncertainty))
        return false;
    if (lower && exact &&
        value(lower) > exact->value + lower->uncertainty + exact->uncertainty + 1e-12)
        return false;
    if (exact && upper &&
        exact->value > upper->value + exact->uncertainty + upper->uncertainty + 1e-12)
        return false;
    if (lower && upper &&
        lower->value > upper->value + lower->uncertainty + upper->uncertainty + 1e-12)
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// staged search
// ---------------------------------------------------------------------------

namespace {

std::vector<CVec> global_directions(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::vector<CVec> dirs;
    dirs.reserve(count);
    if (n == 1) {
        for (std::size_t k = 0; k < count; ++k) {
            const double a =
                2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            dirs.push_back({Complex{std::cos(a), std::sin(a)}});
        }
        return dirs;
    }
    const NodeSet nodes =
        sample_sphere(n, {SchemeKind::MonteCarloSphere, count, seed});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto v = nodes[i];
        dirs.emplace_back(v.begin(), v.end());
    }
    return dirs;
}

CVec perturb_direction(const CVec& d, double eta, std::mt19937_64& rng) {
    const std::size_t n = d.size();
    if (n == 1) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double a = std::arg(d[0]) + eta * std::numbers::pi * u(rng);
        return {Complex{std::cos(a), std::sin(a)}};
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec out(n);
    double r2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = d[j] + eta * Complex{u(rng), u(rng)};
        r2 += sq_abs(out[j]);
    }
    const double inv = 1.0 / std::sqrt(r2);
    for (Complex& c : out) c *= inv;
    return out;
}

}  // namespace

StagedSearchResult staged_ratio_search(const RatioFn& ratio, std::size_t n,
                                       const SearchBudget& budget, const RegionFn& region) {
    StagedSearchResult res;
    res.region_hit = false;
    res.sup = 0.0;

    struct Candidate {
        double value;
        CVec dir;
    };
    std::vector<Candidate> seeds;

    std::mt19937_64 rng(mix64(budget.seed));

    for (int stage = 0; stage < budget.stages; ++stage) {
        // directions for this stage
        std::vector<CVec> dirs;
        if (stage == 0 || seeds.empty()) {
            dirs = global_directions(n, budget.directions, mix64(budget.seed + 17));
        } else {
            const double eta = std::pow(3.0, -stage);
            for (const Candidate& c : seeds) {
                dirs.push_back(c.dir);
                for (std::size_t j = 0; j + 1 < budget.local; ++j)
                    dirs.push_back(perturb_direction(c.dir, eta, rng));
            }
        }

        // radii: interior sweep at stage 0, then a geometric approach to the
        // boundary, stage s covering 1-10^-s .. 1-10^-(s+1)
        std::vector<double> radii;
        if (stage == 0) {
            for (std::size_t j = 0; j < budget.radial; ++j)
                radii.push_back(0.9 * static_cast<double>(j) /
                                static_cast<double>(budget.radial - 1));
        } else {
            const double lo = std::pow(10.0, -static_cast<double>(stage));
            const double hi = std::pow(10.0, -static_cast<double>(stage + 1));
            for (std::size_t j = 0; j < budget.radial; ++j) {
                const double t =
                    static_cast<double>(j) / static_cast<double>(budget.radial - 1);
                radii.push_back(1.0 - lo * std::pow(hi / lo, t));
            }
        }

        const std::size_t total = dirs.size() * radii.size();
        struct Best {
            double v = -kInf;
            std::size_t idx = 0;
            bool hit = false;
        };
        const Best best = par::reduce(
            total, Best{},
            [&](Best& acc, std::size_t i) {
                const std::size_t di = i / radii.size();
                const double r = radii[i % radii.size()];
                CVec z(n);
                for (std::size_t j = 0; j < n; ++j) z[j] = r * dirs[di][j];
                if (region && !region(z)) return;
                acc.hit = true;
                const double v = ratio(z);
                if (std::isfinite(v) && v > acc.v) {
                    acc.v = v;
                    acc.idx = i;
                }
            },
            [](Best& t, const Best& p) {
                t.hit = t.hit || p.hit;
                if (p.v > t.v) {
                    t.v = p.v;
                    t.idx = p.idx;
                }
            });

        if (best.hit) res.region_hit = true;
        const double stage_sup = best.hit && best.v > 0.0 ? best.v : 0.0;
        res.stage_sups.push_back(stage_sup);

        if (best.hit && best.v > res.sup) {
            res.sup = best.v;
            const std::size_t di = best.idx / radii.size();
            const double r = radii[best.idx % radii.size()];
            res.argmax.resize(n);
            for (std::size_t j = 0; j < n; ++j) res.argmax[j] = r * dirs[di][j];
        }

        // keep the best directions for refinement: rank one candidate per
        // direction by its best value over this stage's radii
        std::vector<Candidate> ranked;
        for (std::size_t di = 0; di < dirs.size(); ++di) {
            double v = -kInf;
            bool hit = false;
            for (double r : radii) {
                CVec z(n);
                for (std::size_t j = 0; j < n; ++j) z[j] = r * dirs[di][j];
                if (region && !region(z)) continue;
                hit = true;
                v = std::max(v, ratio(z));
            }
            if (hit && std::isfinite(v)) ranked.push_back({v, dirs[di]});
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
        if (ranked.size() > budget.top_k) ranked.resize(budget.top_k);
        seeds = std::move(ranked);
    }

    // plateau analysis over the last three stage-to-stage growth factors
    const std::size_t S = res.stage_sups.size();
    bool all_grow = S >= 4;
    for (std::size_t i = S >= 4 ? S - 3 : 1; i < S; ++i) {
        const double prev = res.stage_sups[i - 1];
        const double g = prev > 0.0 ? res.stage_sups[i] / prev
                                    : (res.stage_sups[i] > 0.0 ? kInf : 1.0);
        res.tail_growth.push_back(g);
        if (!(g > 2.0)) all_grow = false;
    }
    res.grows_unbounded = all_grow && res.region_hit;
    return res;
}

// ---------------------------------------------------------------------------
// estimators
// ---------------------------------------------------------------------------

EstimateReport essnorm_exact_hinf_h2(const Symbol& psi, const BallSelfMap& phi,
                                     const QuadratureScheme& scheme,
                                     std::span<const double> eps) {
    const auto prof = extreme_profile(psi, phi, 2.0, eps, scheme);
    const auto mass = pullback_extreme_mass(prof);

    EstimateReport rep;
    rep.setting = {kInf, 2.0, phi.dim()};
    rep.regime = OperatorRegime::SupToH2;
    rep.scheme = scheme;
    rep.exact = root_bound(mass.value, mass.uncertainty, 2.0,
                           "sqrt of extreme pullback mass (q = 2)");
    rep.traces.push_back(profile_trace(prof));
    rep.citations = {"essnorm:exact:sup-to-h2:extreme-mass-sqrt"};
    return rep;
}

EstimateReport essnorm_bounds_hinf_hq(const Symbol& psi, const BallSelfMap& phi, double q,
                                      const QuadratureScheme& scheme,
                                      std::span<const double> eps) {
    if (!(q > 1.0) || !std::isfinite(q))
        throw PreconditionError("essnorm_bounds_hinf_hq: q must lie in (1, inf)");
    const auto prof = extreme_profile(psi, phi, q, eps, scheme);
    const auto mass = pullback_extreme_mass(prof);
    const Bound root = root_bound(mass.value, mass.uncertainty, q, "");

    EstimateReport rep;
    rep.setting = {kInf, q, phi.dim()};
    rep.regime = OperatorRegime::SupToHq;
    rep.scheme = scheme;
    rep.lower = Bound{0.5 * root.value, 0.5 * root.uncertainty,
                      "half of extreme pullback mass^(1/q)"};
    rep.upper = Bound{2.0 * root.value, 2.0 * root.uncertainty,
                      "twice extreme pullback mass^(1/q)"};
    rep.traces.push_back(profile_trace(prof));
    rep.citations = {"essnorm:bracket:sup-to-hq:half-to-double-extreme-mass"};
    if (q == 2.0) {
        rep.exact = essnorm_exact_hinf_h2(psi, phi, scheme, eps).exact;
        rep.citations.push_back("essnorm:exact:sup-to-h2:extreme-mass-sqrt");
    }
    return rep;
}

EstimateReport essnorm_lower_hp_hq(const Symbol& psi, const BallSelfMap& phi, double p,
                                   double q, const QuadratureScheme& scheme,
                                   std::span<const double> eps, const Symbol* witness) {
    if (!(p > 1.0)) throw PreconditionError("essnorm_lower_hp_hq: p must exceed 1");
    if (!(q > 0.0) || !std::isfinite(q))
        throw PreconditionError("essnorm_lower_hp_hq: q must lie in (0, inf)");
    if (phi.dim() != 1)
        throw GatedFeatureError(
            "essnorm_lower_hp_hq: inner-function witnesses are constructive only on the "
            "disk (n = 1)");

    const auto prof = extreme_profile(psi, phi, q, eps, scheme);
    const auto mass = pullback_extreme_mass(prof);

    EstimateReport rep;
    rep.setting = {p, q, 1};
    rep.regime = OperatorRegime::HpToHqLower;
    rep.scheme = scheme;
    rep.lower = root_bound(mass.value, mass.uncertainty, q,
                           "extreme pullback mass^(1/q); exponent q throughout");
    rep.traces.push_back(profile_trace(prof));

    // witness trace: ||psi * (g o phi)^m||_q over the node set, g inner
    const Symbol g = witness ? *witness : Symbol(PolynomialSymbol::coordinate(1, 0));
    const NodeSet nodes = sample_sphere(1, scheme);
    const bool mc = scheme.kind == SchemeKind::MonteCarloSphere;
    Trace wt;
    wt.label = "witness-image-norms";
    for (int m : {1, 2, 4, 8, 16, 32}) {
        const Symbol gm = g.pow(m);
        const auto norm = hp_norm(
            [&](std::span<const Complex> z) {
                return psi.eval(z) * gm.eval(phi.eval(z));
            },
            q, nodes, mc, std::array<double, 1>{1.0});
        wt.points.emplace_back(static_cast<double>(m), norm.value);
    }
    rep.traces.push_back(std::move(wt));
    rep.citations = {"essnorm:lower:hp-to-hq:extreme-mass-root",
                     "witness:inner-function-powers"};
    return rep;
}

EstimateReport essnorm_upper_interp(const Symbol& psi, const BallSelfMap& phi, double p,
                                    double q, double r,
                                    std::optional<double> projection_norm,
                                    const QuadratureScheme& scheme,
                                    std::span<const double> eps) {
    if (!(1.0 < q && q < p && std::isfinite(p)))
        throw PreconditionError("essnorm_upper_interp: need 1 < q < p < inf");
    if (!(r > q)) throw PreconditionError("essnorm_upper_interp: need r > q");
    double proj = 1.0;
    if (q == 2.0) {
        proj = 1.0;  // orthogonal projection
    } else if (projection_norm) {
        proj = *projection_norm;
    } else {
        throw PreconditionError(
            "essnorm_upper_interp: projection norm required for q != 2");
    }

    const std::size_t n = phi.dim();
    const NodeSet nodes = sample_sphere(n, scheme);
    const bool mc = scheme.kind == SchemeKind::MonteCarloSphere;

    // corpus of unit-H^p test functions: kernels f_w plus normalized
    // random polynomials
    Trace corpus;
    corpus.label = "corpus-image-norms";
    double best = 0.0;
    std::size_t idx = 0;
    const auto record = [&](const BoundaryFn& f) {
        const double img = hp_norm(
            [&](std::span<const Complex> z) { return psi.eval(z) * f(phi.eval(z)); }, r,
            nodes, mc).value;
        corpus.points.emplace_back(static_cast<double>(idx++), img);
        best = std::max(best, img);
    };

    const auto dirs = global_directions(n, n == 1 ? 6 : 12, mix64(scheme.seed + 5));
    for (double rho : {0.0, 0.3, 0.6, 0.8, 0.9}) {
        for (std::size_t d = 0; d < (rho == 0.0 ? std::size_t{1} : dirs.size()); ++d) {
            CVec w(n);
            for (std::size_t j = 0; j < n; ++j) w[j] = rho * dirs[d][j];
            const TestKernel k = TestKernel::checked(w, p);
            record([k](std::span<const Complex> z) { return k.eval(z); });
        }
    }
    std::mt19937_64 rng(mix64(scheme.seed + 99));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 8; ++t) {
        PolynomialSymbol poly(n);
        for (const MultiIndex& alpha : indices_up_to(n, 3))
            poly.set(alpha, Complex{u(rng), u(rng)});
        const double np =
            hp_norm([&](std::span<const Complex> z) { return poly.eval(z); }, p, nodes, mc)
                .value;
        const PolynomialSymbol unit = poly.scaled(Complex{1.0 / np, 0.0});
        record([unit](std::span<const Complex> z) { return unit.eval(z); });
    }

    const auto prof = extreme_profile(psi, phi, q, eps, scheme);
    const double sigma_pow =
        std::pow(std::max(0.0, prof.sigma_limit), (r - q) / (q * r));
    const double sigma_pow_hi =
        std::pow(std::max(0.0, prof.sigma_limit + prof.sigma_limit_unc), (r - q) / (q * r));

    EstimateReport rep;
    rep.setting = {p, q, n};
    rep.regime = OperatorRegime::HpToHqInterp;
    rep.scheme = scheme;
    rep.upper = Bound{proj * best * sigma_pow, proj * best * (sigma_pow_hi - sigma_pow),
                      "heuristic: projection norm x corpus-max ||W||_{p,r} x "
                      "sigma(E)^((r-q)/(qr)); the corpus max under-estimates the true "
                      "operator norm"};
    rep.traces.push_back(std::move(corpus));
    Trace sig;
    sig.label = "sigma-extreme-profile";
    for (std::size_t i = 0; i < prof.eps.size(); ++i)
        sig.points.emplace_back(prof.eps[i], prof.sigma_mass[i]);
    rep.traces.push_back(std::move(sig));
    rep.citations = {"essnorm:upper:hp-to-hq:interpolated-projection-heuristic"};
    return rep;
}

BoundednessReport boundedness_hp_hinf(const Symbol& psi, const BallSelfMap& phi, double p,
                                      const SearchBudget& budget) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw PreconditionError("boundedness_hp_hinf: p must lie in (0, inf)");
    const double n = static_cast<double>(phi.dim());
    const RatioFn ratio = [&, n, p](std::span<const Complex> z) {
        const double m = phi.modulus_at(z);
        const double denom = std::max(1.0 - m * m, 1e-300);
        return std::abs(psi.eval(z)) / std::pow(denom, n / p);
    };
    BoundednessReport rep;
    rep.setting = {p, kInf, phi.dim()};
    rep.search = staged_ratio_search(ratio, phi.dim(), budget);
    rep.sup = rep.search.sup;
    rep.argmax = rep.search.argmax;
    rep.bounded = !rep.search.grows_unbounded;
    rep.citations = {"bounded:hp-to-sup:kernel-ratio-sup"};
    return rep;
}

std::span<const double> default_delta_schedule() {
    static constexpr std::array<double, 4> deltas{0.1, 0.03, 0.01, 0.003};
    return deltas;
}

EstimateReport essnorm_bounds_hp_hinf(const Symbol& psi, const BallSelfMap& phi, double p,
                                      const BoundednessReport& bounded,
                                      std::span<const double> deltas,
                                      const SearchBudget& budget) {
    if (!(p > 1.0)) throw PreconditionError("essnorm_bounds_hp_hinf: p must exceed 1");
    if (!bounded.bounded)
        throw PreconditionError(
            "essnorm_bounds_hp_hinf: operator classified unbounded; the bracket "
            "requires a bounded operator");
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] < deltas[i - 1]))
            throw PreconditionError("essnorm_bounds_hp_hinf: deltas must decrease");

    const double n = static_cast<double>(phi.dim());
    const RatioFn ratio = [&, n, p](std::span<const Complex> z) {
        const double m = phi.modulus_at(z);
        const double denom = std::max(1.0 - m * m, 1e-300);
        return std::abs(psi.eval(z)) / std::pow(denom, n / p);
    };

    Trace lt;
    lt.label = "delta-region-sup";
    std::vector<double> L;
    for (double delta : deltas) {
        const RegionFn region = [&phi, delta](std::span<const Complex> z) {
            return 1.0 - phi.modulus_at(z) < delta;
        };
        const auto sr = staged_ratio_search(ratio, phi.dim(), budget, region);
        const double val = sr.region_hit ? sr.sup : 0.0;  // empty region: limit set to 0
        L.push_back(val);
        lt.points.emplace_back(delta, val);
    }

    const TrendLimit lim = trend_limit(L);

    EstimateReport rep;
    rep.setting = {p, kInf, phi.dim()};
    rep.regime = OperatorRegime::HpToSup;
    rep.trace_trend = lim.trend;
    rep.lower = Bound{lim.value, lim.uncertainty,
                      "boundary-ratio limit (" + to_string(lim.trend) + " tail)"};
    rep.upper = Bound{2.0 * lim.value, 2.0 * lim.uncertainty,
                      "twice the boundary-ratio limit"};
    rep.traces.push_back(std::move(lt));
    rep.citations = {"essnorm:bracket:hp-to-sup:boundary-ratio-limit"};
    return rep;
}

TruncationTrace truncated_image_trace(const Symbol& psi, const BallSelfMap& phi, int k,
                                      const Symbol& g, std::span<const int> ms, int d,
                                      const QuadratureScheme& scheme) {
    if (phi.dim() != 1)
        throw GatedFeatureError("truncated_image_trace: gated to the disk (n = 1)");
    if (k < 0 || d <= k) throw PreconditionError("truncated_image_trace: need 0 <= k < d");

    const NodeSet nodes = sample_sphere(1, scheme);
    const bool mc = scheme.kind == SchemeKind::MonteCarloSphere;

    // g must be inner: unimodular on the circle
    const double gmax = par::max(
        nodes.size(), [&](std::size_t i) { return std::abs(g.eval(nodes[i])); });
    const double gmin = -par::max(
        nodes.size(), [&](std::size_t i) { return -std::abs(g.eval(nodes[i])); });
    if (gmax > 1.0 + 1e-8 || gmin < 1.0 - 1e-8)
        throw PreconditionError("truncated_image_trace: witness symbol is not inner");

    TruncationTrace out;
    out.k = k;

    // measured interior contraction: max |g o phi| on the closed disk of
    // radius 1/(2n) = 1/2
    {
        constexpr int kAng = 128, kRad = 17;
        out.contraction = par::max(kAng * kRad, [&](std::size_t idx) {
            const int ai = static_cast<int>(idx) / kRad;
            const int ri = static_cast<int>(idx) % kRad;
            const double rho = 0.5 * static_cast<double>(ri) / (kRad - 1);
            const double a = 2.0 * std::numbers::pi * ai / kAng;
            const Complex z = std::polar(rho, a);
            return std::abs(g.eval1(phi.components()[0].eval1(z)));
        });
    }

    for (int m : ms) {
        const Symbol gm = g.pow(m);
        const BoundaryFn f = [&](std::span<const Complex> z) {
            return psi.eval(z) * gm.eval(phi.eval(z));
        };
        const auto expansion = expand_boundary_function(f, 1, d, nodes);
        const double total =
            integrate_boundary(nodes, [&](std::span<const Complex> z) {
                return Complex{sq_abs(f(z)), 0.0};
            }, mc).real();
        const double mass = expansion.h2_norm_sq();
        const double tail = std::max(0.0, total - mass);
        out.tail_fraction = std::max(out.tail_fraction, total > 0.0 ? tail / total : 0.0);
        if (total > 0.0 && tail > 0.01 * total)
            throw BudgetError("truncated_image_trace: degree budget d = " +
                              std::to_string(d) + " leaves " + std::to_string(tail / total) +
                              " of the image mass unexpanded at m = " + std::to_string(m));
        out.ms.push_back(m);
        out.q_norms.push_back(expansion.truncate_head(k).h2_norm());
        out.r_norms.push_back(expansion.truncate_tail(k).h2_norm());
        out.image_norms.push_back(std::sqrt(total));
    }
    return out;
}

std::string to_string(CompactnessVerdict::State s) {
    switch (s) {
        case CompactnessVerdict::State::Compact: return "compact";
        case CompactnessVerdict::State::NonCompact: return "non-compact";
        case CompactnessVerdict::State::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

CompactnessVerdict compactness_verdict(const EstimateReport& report) {
    CompactnessVerdict v;
    const auto decide = [&](double value, double unc, bool sufficient) {
        v.deciding_value = value;
        v.uncertainty = unc;
        if (value > 2.0 * unc + 1e-12) {
            v.state = CompactnessVerdict::State::NonCompact;
        } else if (value <= 2.0 * unc && sufficient) {
            v.state = CompactnessVerdict::State::Compact;
        } else {
            v.state = CompactnessVerdict::State::Inconclusive;
        }
    };
    switch (report.regime) {
        case OperatorRegime::SupToH2:
            if (!report.exact)
                throw PreconditionError("compactness_verdict: missing exact value");
            v.criterion = "compact-iff-zero-extreme-mass:sup-to-h2";
            decide(report.exact->value, report.exact->uncertainty, true);
            return v;
        case OperatorRegime::SupToHq:
            if (!report.upper || !report.lower)
                throw PreconditionError("compactness_verdict: missing bracket");
            v.criterion = "compact-iff-zero-extreme-mass:sup-to-hq";
            decide(report.lower->value, report.lower->uncertainty,
                   report.upper->value <= 2.0 * report.upper->uncertainty);
            return v;
        case OperatorRegime::HpToSup: {
            if (!report.lower || !report.upper)
                throw PreconditionError("compactness_verdict: missing bracket");
            v.criterion = "compact-iff-zero-boundary-ratio-limit:hp-to-sup";
            v.deciding_value = report.lower->value;
            v.uncertainty = report.lower->uncertainty;
            const TrendClass trend = report.trace_trend.value_or(TrendClass::Undecided);
            if (trend == TrendClass::Vanishing)
                v.state = CompactnessVerdict::State::Compact;
            else if (trend == TrendClass::Plateau)
                v.state = v.deciding_value > 2.0 * v.uncertainty + 1e-12
                              ? CompactnessVerdict::State::NonCompact
                              : CompactnessVerdict::State::Compact;
            else
                v.state = CompactnessVerdict::State::Inconclusive;
            return v;
        }
        case OperatorRegime::HpToHqLower:
            if (!report.lower)
                throw PreconditionError("compactness_verdict: missing lower bound");
            // necessary condition only: a positive lower bound rules
            // compactness out, a vanishing one decides nothing
            v.criterion = "noncompact-if-positive-extreme-mass:hp-to-hq";
            v.deciding_value = report.lower->value;
            v.uncertainty = report.lower->uncertainty;
            v.state = report.lower->value > 2.0 * report.lower->uncertainty + 1e-12
                          ? CompactnessVerdict::State::NonCompact
                          : CompactnessVerdict::State::Inconclusive;
            return v;
        default:
            throw PreconditionError(
                "compactness_verdict: regime requires the Carleson-report overload");
    }
}

}  // namespace hardyop
