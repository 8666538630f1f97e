#include "hardyop/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>

namespace hardyop::cli {

using io::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const double> pick(const std::vector<double>& user, std::span<const double> def) {
    return user.empty() ? def : std::span<const double>(user);
}

void require_monotone(const std::vector<double>& v, bool increasing, const char* what) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        const bool ok = increasing ? v[i] > v[i - 1] : v[i] < v[i - 1];
        if (!ok)
            throw ConfigError(std::string(what) + " schedule must be strictly " +
                              (increasing ? "increasing" : "decreasing"));
    }
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

struct Checker {
    json rows = json::array();
    bool all_pass = true;

    void upper(const std::string& suite, const std::string& name, double observed,
               double threshold) {
        const bool pass = observed <= threshold;
        rows.push_back(json{{"suite", suite},
                            {"check", name},
                            {"observed", observed},
                            {"threshold", threshold},
                            {"margin", threshold - observed},
                            {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

struct DiskCorpus {
    std::vector<std::pair<std::string, Symbol>> psis;
    std::vector<std::pair<std::string, BallSelfMap>> phis;
};

Symbol disk_poly(std::initializer_list<Complex> coeffs) {
    PolynomialSymbol p(1);
    int k = 0;
    for (Complex c : coeffs) p.set(MultiIndex{{k++}}, c);
    return Symbol(std::move(p));
}

BallSelfMap disk_map(Symbol s, const NodeSet& nodes) {
    BallSelfMap m({std::move(s)});
    m.validate(nodes);
    return m;
}

DiskCorpus make_corpus(const NodeSet& nodes) {
    DiskCorpus c;
    c.psis.emplace_back("one", Symbol::constant(1, 1.0));
    c.psis.emplace_back("(1+z)/2", disk_poly({0.5, 0.5}));
    c.psis.emplace_back("z", disk_poly({0.0, 1.0}));

    c.phis.emplace_back("identity", disk_map(disk_poly({0.0, 1.0}), nodes));
    c.phis.emplace_back("z/2", disk_map(disk_poly({0.0, 0.5}), nodes));
    c.phis.emplace_back("z^2", disk_map(disk_poly({0.0, 0.0, 1.0}), nodes));
    c.phis.emplace_back(
        "blaschke{0.5}",
        disk_map(Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.0)), nodes));
    return c;
}

void suite_pullback_identity(Checker& ck, const DiskCorpus& corpus,
                             const QuadratureScheme& scheme) {
    const std::vector<std::pair<std::string, std::function<double(std::span<const Complex>)>>>
        gs = {
            {"g=1", [](std::span<const Complex>) { return 1.0; }},
            {"g=|w|^2", [](std::span<const Complex> w) { return norm_sq(w); }},
            {"g=1/(1+|w|^2)", [](std::span<const Complex> w) { return 1.0 / (1.0 + norm_sq(w)); }},
        };
    const double qs[] = {1.0, 2.0, 4.0};
    std::size_t combo = 0;
    for (const auto& [pname, psi] : corpus.psis) {
        for (const auto& [fname, phi] : corpus.phis) {
            const double q = qs[combo % 3];
            const auto& [gname, g] = gs[combo / 4 % 3];
            const auto two = integrate_pullback(build_pullback(psi, phi, q, scheme), g);
            ck.upper("pullback-identity",
                     "psi=" + pname + " phi=" + fname + " q=" + std::to_string(q) + " " +
                         gname,
                     two.rel_diff, 1e-10);
            ++combo;
        }
    }
}

void suite_parseval(Checker& ck, const NodeSet& nodes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        PolynomialSymbol poly(1);
        HardyExpansion exp(1, 5);
        for (int k = 0; k <= 5; ++k) {
            const Complex c{u(rng), u(rng)};
            poly.set(MultiIndex{{k}}, c);
            exp.set(MultiIndex{{k}}, c);
        }
        const double h2 = exp.h2_norm();
        const double quad =
            hp_norm([&](std::span<const Complex> z) { return poly.eval(z); }, 2.0, nodes,
                    false)
                .value;
        ck.upper("parseval", "random-poly-" + std::to_string(t), std::abs(h2 - quad) / h2,
                 1e-8);
    }
}

void suite_kernel_norms(Checker& ck, const NodeSet& disk_nodes, std::size_t mc_samples,
                        std::uint64_t seed, double tol_mc) {
    const std::vector<std::pair<std::string, CVec>> centers = {
        {"w=0", {Complex{0.0, 0.0}}},
        {"w=0.3", {Complex{0.3, 0.0}}},
        {"w=0.7e^{i pi/5}", {std::polar(0.7, std::numbers::pi / 5)}},
        {"w=0.95", {Complex{0.95, 0.0}}},
    };
    for (double p : {1.0, 2.0, 4.0}) {
        for (const auto& [name, w] : centers) {
            const auto k = TestKernel::checked(w, p);
            const auto res = test_kernel_norm_check(k, disk_nodes, false);
            ck.upper("kernel-norm", name + " p=" + std::to_string(p),
                     std::abs(res.value - 1.0), 1e-6);
        }
    }
    // Monte Carlo route on the two-ball
    const NodeSet ball2 =
        sample_sphere(2, {SchemeKind::MonteCarloSphere, mc_samples, seed + 2});
    const std::vector<std::pair<std::string, CVec>> centers2 = {
        {"w=(0.3,0.2i)", {Complex{0.3, 0.0}, Complex{0.0, 0.2}}},
        {"w=(0.6,0)", {Complex{0.6, 0.0}, Complex{0.0, 0.0}}},
    };
    for (double p : {2.0, 4.0}) {
        for (const auto& [name, w] : centers2) {
            const auto k = TestKernel::checked(w, p);
            const auto res = test_kernel_norm_check(k, ball2, true);
            const double thr =
                std::isnan(tol_mc) ? 4.0 * res.std_error + 1e-4 : tol_mc;
            ck.upper("kernel-norm", "mc " + name + " p=" + std::to_string(p),
                     std::abs(res.value - 1.0), thr);
        }
    }
}

void suite_growth_bound(Checker& ck, const NodeSet& nodes, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<BallPoint> probes;
    for (int i = 0; i < 40; ++i) {
        const double r = 0.99 * std::sqrt(0.5 * (u(rng) + 1.0));
        probes.push_back(BallPoint::checked({std::polar(r, std::numbers::pi * u(rng))}));
    }
    for (double p : {1.0, 2.0, 4.0}) {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            PolynomialSymbol poly(1);
            for (int k = 0; k <= 5; ++k) poly.set(MultiIndex{{k}}, Complex{u(rng), u(rng)});
            worst = std::max(
                worst, growth_bound_check(
                           [&](std::span<const Complex> z) { return poly.eval(z); }, p,
                           probes, nodes, false));
        }
        ck.upper("growth-bound", "10 polys, 40 points, p=" + std::to_string(p), worst,
                 1.0 + 1e-6);
    }
}

void suite_radial_convergence(Checker& ck, const QuadratureScheme& scheme) {
    const NodeSet directions = sample_sphere(1, {scheme.kind, 64, scheme.seed});
    const std::array<double, 3> radii{0.9, 0.99, 0.999};
    const std::vector<std::pair<std::string, Symbol>> fs = {
        {"const", Symbol::constant(1, Complex{2.5, 0.0})},
        {"z", disk_poly({0.0, 1.0})},
        {"blaschke{0.5}", Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}}, 0.0))},
    };
    const double final_thr[] = {1e-14, 5.1e-4, 0.05};
    std::size_t fi = 0;
    for (const auto& [name, f] : fs) {
        const auto gaps = radial_convergence_check(as_fn(f), 1, 0.5, radii, directions);
        double worst_increase = 0.0;
        for (std::size_t i = 1; i < gaps.size(); ++i)
            worst_increase = std::max(worst_increase, gaps[i].sup_gap - gaps[i - 1].sup_gap);
        ck.upper("radial-convergence", name + " monotone", worst_increase, 1e-12);
        ck.upper("radial-convergence", name + " final gap", gaps.back().sup_gap,
                 final_thr[fi++]);
    }
}

void suite_truncation_decay(Checker& ck, const QuadratureScheme& scheme) {
    const NodeSet nodes = sample_sphere(1, scheme);
    PolynomialSymbol phi_poly(1);
    phi_poly.set(MultiIndex{{0}}, Complex{0.5, 0.0});
    phi_poly.set(MultiIndex{{2}}, Complex{0.04, 0.0});
    BallSelfMap phi({Symbol(std::move(phi_poly))});
    phi.validate(nodes);
    const Symbol g = disk_poly({0.0, 1.0});
    const std::array<int, 8> ms{1, 2, 3, 4, 5, 6, 7, 8};
    const auto tr = truncated_image_trace(Symbol::constant(1, 1.0), phi, 4, g, ms, 40,
                                          scheme);
    double worst = 0.0;
    for (std::size_t i = 1; i < tr.q_norms.size(); ++i) {
        const double ratio = tr.q_norms[i] / tr.q_norms[i - 1];
        worst = std::max(worst, std::abs(ratio / tr.contraction - 1.0));
    }
    ck.upper("truncation-decay", "per-step ratio vs interior contraction", worst, 0.2);
    ck.upper("truncation-decay", "unexpanded tail fraction", tr.tail_fraction, 0.01);
}

}  // namespace

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

void JobConfig::validate() const {
    if (!(p > 0.0)) throw ConfigError("p must be positive");
    if (!(q > 0.0)) throw ConfigError("q must be positive");
    require_monotone(eps_schedule, false, "eps");
    require_monotone(h_schedule, false, "h");
    require_monotone(delta_schedule, false, "delta");
    require_monotone(radii, true, "radii");
    for (double e : eps_schedule)
        if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("eps entries must lie in (0, 1)");
    for (double h : h_schedule)
        if (!(h > 0.0) || h > 2.0) throw ConfigError("h entries must lie in (0, 2]");
    for (double r : radii)
        if (!(r > 0.0) || !(r < 1.0)) throw ConfigError("radii must lie in (0, 1)");
}

QuadratureScheme JobConfig::scheme_for(std::size_t n, std::size_t default_samples) const {
    QuadratureScheme s;
    s.kind = (n == 1 && !force_mc) ? SchemeKind::DeterministicCircle
                                   : SchemeKind::MonteCarloSphere;
    s.samples = samples != 0 ? samples : default_samples;
    s.seed = seed;
    return s;
}

json JobConfig::to_json() const {
    json j{{"command", command},
           {"p", io::exponent_to_json(p)},
           {"q", io::exponent_to_json(q)},
           {"samples", samples},
           {"seed", seed},
           {"force_mc", force_mc},
           {"out_dir", out_dir}};
    if (!pair_file.empty()) j["pair"] = pair_file;
    if (!eps_schedule.empty()) j["eps_schedule"] = eps_schedule;
    if (!h_schedule.empty()) j["h_schedule"] = h_schedule;
    if (!delta_schedule.empty()) j["delta_schedule"] = delta_schedule;
    if (!radii.empty()) j["radii"] = radii;
    if (!std::isnan(tol_mc)) j["tol_mc"] = tol_mc;
    return j;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

namespace {

struct LoadedPair {
    Symbol psi;
    BallSelfMap phi;
    QuadratureScheme scheme;  // kind resolved from the pair's dimension
};

LoadedPair load_validated_pair(const JobConfig& cfg, std::size_t det_samples,
                               std::size_t mc_samples) {
    if (cfg.pair_file.empty()) throw ConfigError(cfg.command + " requires --pair FILE");
    auto [psi, phi] = io::load_pair_file(cfg.pair_file);
    const QuadratureScheme scheme =
        cfg.scheme_for(phi.dim(), phi.dim() == 1 && !cfg.force_mc ? det_samples : mc_samples);
    const NodeSet nodes = sample_sphere(phi.dim(), scheme);
    const auto report = phi.validate(nodes);
    if (!report.ok)
        throw ConfigError("pair file " + cfg.pair_file +
                          ": phi is not a self-map of the ball (worst |phi| = " +
                          std::to_string(report.worst_modulus) + ")");
    return {std::move(psi), std::move(phi), scheme};
}

}  // namespace

CommandResult cmd_verify(const JobConfig& cfg) {
    cfg.validate();
    const QuadratureScheme scheme = cfg.scheme_for(1, 4096);
    if (scheme.kind != SchemeKind::DeterministicCircle)
        throw ConfigError("verify runs its deterministic disk suites; drop --mc");
    const NodeSet nodes = sample_sphere(1, scheme);
    const DiskCorpus corpus = make_corpus(nodes);

    Checker ck;
    suite_pullback_identity(ck, corpus, scheme);
    suite_parseval(ck, nodes, scheme.seed);
    suite_kernel_norms(ck, nodes, cfg.samples != 0 ? cfg.samples : 20000, scheme.seed,
                       cfg.tol_mc);
    suite_growth_bound(ck, nodes, scheme.seed);
    suite_radial_convergence(ck, scheme);
    suite_truncation_decay(ck, scheme);

    if (!cfg.pair_file.empty()) {
        const auto pair = load_validated_pair(cfg, 4096, 20000);
        const auto two = integrate_pullback(
            build_pullback(pair.psi, pair.phi, 2.0, pair.scheme),
            [](std::span<const Complex>) { return 1.0; });
        ck.upper("pullback-identity", "user pair, q=2, g=1", two.rel_diff, 1e-10);
    }

    CommandResult res;
    res.payload = json{{"config", cfg.to_json()},
                       {"scheme", io::to_json(scheme)},
                       {"checks", ck.rows},
                       {"all_pass", ck.all_pass}};
    res.exit_code = ck.all_pass ? 0 : 1;
    return res;
}

CommandResult cmd_bounded(const JobConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(cfg.p)) throw ConfigError("bounded requires a finite p");
    const auto pair = load_validated_pair(cfg, 4096, 20000);
    SearchBudget budget;
    budget.seed = cfg.seed;
    const auto rep = boundedness_hp_hinf(pair.psi, pair.phi, cfg.p, budget);

    CommandResult res;
    res.payload = json{{"config", cfg.to_json()}, {"boundedness", io::to_json(rep)}};
    return res;
}

CommandResult cmd_essnorm(const JobConfig& cfg) {
    cfg.validate();
    const bool p_inf = std::isinf(cfg.p);
    const bool q_inf = std::isinf(cfg.q);

    CommandResult res;
    res.payload["config"] = cfg.to_json();

    if (p_inf && !q_inf && cfg.q == 2.0) {
        const auto pair = load_validated_pair(cfg, 8192, 100000);
        const auto rep = essnorm_exact_hinf_h2(pair.psi, pair.phi, pair.scheme,
                                               pick(cfg.eps_schedule, default_eps_schedule()));
        res.payload["estimate"] = io::to_json(rep);
        res.payload["verdict"] = io::to_json(compactness_verdict(rep));
        return res;
    }
    if (p_inf && !q_inf && cfg.q > 1.0) {
        const auto pair = load_validated_pair(cfg, 8192, 100000);
        const auto rep = essnorm_bounds_hinf_hq(pair.psi, pair.phi, cfg.q, pair.scheme,
                                                pick(cfg.eps_schedule, default_eps_schedule()));
        res.payload["estimate"] = io::to_json(rep);
        res.payload["verdict"] = io::to_json(compactness_verdict(rep));
        return res;
    }
    if (!p_inf && q_inf && cfg.p > 1.0) {
        const auto pair = load_validated_pair(cfg, 4096, 20000);
        SearchBudget budget;
        budget.seed = cfg.seed;
        const auto bounded = boundedness_hp_hinf(pair.psi, pair.phi, cfg.p, budget);
        res.payload["boundedness"] = io::to_json(bounded);
        if (!bounded.bounded) {
            res.payload["note"] =
                "operator classified unbounded; essential-norm bracket not applicable";
            return res;
        }
        const auto rep = essnorm_bounds_hp_hinf(
            pair.psi, pair.phi, cfg.p, bounded,
            pick(cfg.delta_schedule, default_delta_schedule()), budget);
        res.payload["estimate"] = io::to_json(rep);
        res.payload["verdict"] = io::to_json(compactness_verdict(rep));
        return res;
    }
    if (!p_inf && !q_inf && cfg.p > 1.0) {
        const auto pair = load_validated_pair(cfg, 8192, 100000);
        if (pair.phi.dim() != 1)
            throw ConfigError(
                "essnorm: the H^p -> H^q lower bound is gated to the disk (n = 1); "
                "nearest covered regimes: sup-norm domain (--p inf), or --q inf");
        const auto rep = essnorm_lower_hp_hq(pair.psi, pair.phi, cfg.p, cfg.q, pair.scheme,
                                             pick(cfg.eps_schedule, default_eps_schedule()));
        res.payload["estimate"] = io::to_json(rep);
        res.payload["verdict"] = io::to_json(compactness_verdict(rep));
        return res;
    }
    throw ConfigError(
        "essnorm: exponent regime (p = " + std::to_string(cfg.p) + ", q = " +
        std::to_string(cfg.q) +
        ") is not implemented; covered regimes: p = inf with q > 1 (exact at q = 2, "
        "factor-2 bracket otherwise), 1 < p with q = inf (boundary-ratio bracket), "
        "1 < p with finite q on the disk (lower bound)");
}

CommandResult cmd_carleson(const JobConfig& cfg) {
    cfg.validate();
    if (!(std::isfinite(cfg.p) && std::isfinite(cfg.q)))
        throw ConfigError("carleson requires finite exponents 0 < p <= q");
    if (!(cfg.p <= cfg.q)) throw ConfigError("carleson requires p <= q");
    const auto pair = load_validated_pair(cfg, 32768, 100000);

    const auto rep = equivalence_report(pair.psi, pair.phi, cfg.p, cfg.q, pair.scheme);
    const auto mu = build_pullback(pair.psi, pair.phi, cfg.q, pair.scheme);
    const auto bm = boundary_mass_check(mu, pick(cfg.eps_schedule, default_eps_schedule()));

    CommandResult res;
    res.payload["config"] = cfg.to_json();
    res.payload["carleson"] = io::to_json(rep);
    json bm_rows = json::array();
    for (const auto& [e, m] : bm.profile) bm_rows.push_back(json::array({e, m}));
    res.payload["boundary_mass"] = json{{"profile", bm_rows},
                                        {"limit", bm.limit},
                                        {"limit_uncertainty", bm.limit_unc}};
    if (cfg.p > 1.0)
        res.payload["verdict"] = io::to_json(compactness_verdict(rep.setting, rep));
    res.artifacts["carleson_box.csv"] = io::trace_csv("h", "sup", rep.vanishing.profile);
    res.artifacts["carleson_berezin.csv"] =
        io::trace_csv("r", "berezin_sup", rep.boundary.trace);
    res.exit_code = rep.indicators_agree ? 0 : 1;
    return res;
}

CommandResult cmd_report(const JobConfig& cfg) {
    cfg.validate();
    CommandResult res;
    res.payload["config"] = cfg.to_json();

    const auto essnorm = cmd_essnorm(cfg);
    res.payload["essnorm"] = essnorm.payload;
    res.exit_code = std::max(res.exit_code, essnorm.exit_code);

    if (std::isfinite(cfg.p) && std::isfinite(cfg.q) && cfg.p <= cfg.q) {
        const auto carleson = cmd_carleson(cfg);
        res.payload["carleson"] = carleson.payload;
        for (const auto& [name, text] : carleson.artifacts) res.artifacts[name] = text;
        res.exit_code = std::max(res.exit_code, carleson.exit_code);
    }
    return res;
}

CommandResult dispatch(const JobConfig& cfg) {
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "essnorm") return cmd_essnorm(cfg);
    if (cfg.command == "carleson") return cmd_carleson(cfg);
    if (cfg.command == "bounded") return cmd_bounded(cfg);
    if (cfg.command == "report") return cmd_report(cfg);
    throw ConfigError("unknown command: " + cfg.command);
}

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

namespace {

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity") return kInf;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("exponent must be a number or \"inf\"");
    }
}

void add_common(CLI::App* sub, JobConfig& cfg, std::string& p_str, std::string& q_str) {
    sub->add_option("--pair", cfg.pair_file, "symbol pair file (JSON)");
    sub->add_option("--p", p_str, "domain exponent (number or \"inf\")");
    sub->add_option("--q", q_str, "target exponent (number or \"inf\")");
    sub->add_option("--samples", cfg.samples, "quadrature sample count (0 = default)");
    sub->add_option("--seed", cfg.seed, "RNG seed recorded in every output");
    sub->add_flag("--mc", cfg.force_mc, "Monte Carlo sampling even on the disk");
    sub->add_option("--schedule-eps", cfg.eps_schedule, "extreme-set eps schedule");
    sub->add_option("--schedule-h", cfg.h_schedule, "Carleson aperture schedule");
    sub->add_option("--schedule-delta", cfg.delta_schedule, "boundary-distance schedule");
    sub->add_option("--schedule-radii", cfg.radii, "radius schedule");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--tol-mc", cfg.tol_mc, "override Monte Carlo suite tolerances");
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"weighted composition operators between Hardy spaces on the unit ball"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string p_str = "inf", q_str = "2";
    for (const char* name : {"verify", "essnorm", "carleson", "bounded", "report"}) {
        auto* sub = app.add_subcommand(
            name, std::string("run the ") + name + " command");
        add_common(sub, cfg, p_str, q_str);
        sub->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.p = parse_exponent(p_str);
        cfg.q = parse_exponent(q_str);
        const CommandResult res = dispatch(cfg);

        std::filesystem::create_directories(cfg.out_dir);
        const std::string main_path =
            (std::filesystem::path(cfg.out_dir) / (cfg.command + ".json")).string();
        io::write_file_atomic(main_path, res.payload.dump(2) + "\n");
        for (const auto& [name, text] : res.artifacts)
            io::write_file_atomic(
                (std::filesystem::path(cfg.out_dir) / name).string(), text);

        std::cout << cfg.command << ": wrote " << main_path;
        for (const auto& [name, text] : res.artifacts) std::cout << ", " << name;
        std::cout << " (exit " << res.exit_code << ")\n";
        return res.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hardyop::cli
