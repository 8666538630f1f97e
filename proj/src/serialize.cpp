#include "hardyop/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hardyop::io {

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("expected a complex number as [re, im]");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

json cvec_to_json(std::span<const Complex> v) {
    json out = json::array();
    for (const Complex& c : v) out.push_back(complex_to_json(c));
    return out;
}

CVec cvec_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("expected an array of complex numbers");
    CVec out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

json bound_to_json(const Bound& b) {
    return json{{"value", b.value}, {"uncertainty", b.uncertainty},
                {"provenance", b.provenance}};
}

json traces_to_json(std::span<const Trace> traces) {
    json out = json::array();
    for (const Trace& t : traces) {
        json pts = json::array();
        for (const auto& [x, y] : t.points) pts.push_back(json::array({x, y}));
        out.push_back(json{{"label", t.label}, {"points", pts}});
    }
    return out;
}

json rows_to_json(std::span<const std::pair<double, double>> rows) {
    json out = json::array();
    for (const auto& [x, y] : rows) out.push_back(json::array({x, y}));
    return out;
}

json setting_to_json(const Setting& s) {
    return json{{"p", exponent_to_json(s.p)}, {"q", exponent_to_json(s.q)}, {"n", s.n}};
}

}  // namespace

json exponent_to_json(double p) {
    if (std::isinf(p)) return json("inf");
    return json(p);
}

double exponent_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError("exponent string must be \"inf\"");
    }
    return j.get<double>();
}

json to_json(const QuadratureScheme& s) {
    return json{{"kind", to_string(s.kind)}, {"samples", s.samples}, {"seed", s.seed}};
}

QuadratureScheme scheme_from_json(const json& j) {
    QuadratureScheme s;
    s.kind = scheme_kind_from_string(j.at("kind").get<std::string>());
    s.samples = j.at("samples").get<std::size_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

json to_json(const CarlesonWindow& w) {
    return json{{"center", cvec_to_json(w.center)}, {"h", w.aperture}};
}

CarlesonWindow window_from_json(const json& j) {
    return CarlesonWindow::checked(cvec_from_json(j.at("center")), j.at("h").get<double>());
}

json to_json(const Symbol& s) {
    json out;
    out["n"] = s.dim();
    if (const auto* p = s.poly()) {
        out["kind"] = "poly";
        json terms = json::array();
        for (const auto& [alpha, c] : p->terms()) {
            terms.push_back(json{{"alpha", alpha.exp}, {"re", c.real()}, {"im", c.imag()}});
        }
        out["terms"] = terms;
    } else {
        const auto* b = s.blaschke();
        out["kind"] = "blaschke";
        out["zeros"] = cvec_to_json(b->zeros);
        out["theta"] = b->theta;
    }
    if (s.prescale() != 1.0) out["prescale"] = s.prescale();
    return out;
}

Symbol symbol_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("symbol must be a JSON object");
    const auto n = j.at("n").get<std::size_t>();
    const auto kind = j.at("kind").get<std::string>();
    std::optional<Symbol> sym;
    if (kind == "poly") {
        PolynomialSymbol p(n);
        for (const auto& t : j.at("terms")) {
            MultiIndex alpha{t.at("alpha").get<std::vector<int>>()};
            p.set(std::move(alpha),
                  Complex{t.at("re").get<double>(), t.at("im").get<double>()});
        }
        sym = Symbol(std::move(p));
    } else if (kind == "blaschke") {
        if (n != 1) throw ConfigError("blaschke symbols require n = 1");
        sym = Symbol(BlaschkeSymbol::checked(cvec_from_json(j.at("zeros")),
                                             j.at("theta").get<double>()));
    } else {
        throw ConfigError("unknown symbol kind: " + kind);
    }
    if (j.contains("prescale")) {
        const double r = j.at("prescale").get<double>();
        if (!(r > 0.0) || !(r < 1.0)) throw ConfigError("prescale must lie in (0, 1)");
        sym = sym->radial(r);
    }
    return *sym;
}

json pair_to_json(const Symbol& psi, const BallSelfMap& phi) {
    json comps = json::array();
    for (const Symbol& c : phi.components()) comps.push_back(to_json(c));
    return json{{"psi", to_json(psi)}, {"phi", comps}};
}

std::pair<Symbol, BallSelfMap> pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("psi") || !j.contains("phi"))
        throw ConfigError("pair file must contain \"psi\" and \"phi\"");
    Symbol psi = symbol_from_json(j.at("psi"));
    std::vector<Symbol> comps;
    for (const auto& c : j.at("phi")) comps.push_back(symbol_from_json(c));
    BallSelfMap phi(std::move(comps));
    if (psi.dim() != phi.dim()) throw ConfigError("psi/phi dimension mismatch in pair file");
    return {std::move(psi), std::move(phi)};
}

std::pair<Symbol, BallSelfMap> load_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pair file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("pair file " + path + ": " + e.what());
    }
    return pair_from_json(j);
}

json to_json(const HardyExpansion& e) {
    json coeffs = json::array();
    for (const auto& [alpha, c] : e.coeffs())
        coeffs.push_back(json{{"alpha", alpha.exp}, {"re", c.real()}, {"im", c.imag()}});
    return json{{"n", e.dim()}, {"d", e.degree()}, {"coeffs", coeffs}};
}

HardyExpansion expansion_from_json(const json& j) {
    HardyExpansion e(j.at("n").get<std::size_t>(), j.at("d").get<int>());
    for (const auto& t : j.at("coeffs"))
        e.set(MultiIndex{t.at("alpha").get<std::vector<int>>()},
              Complex{t.at("re").get<double>(), t.at("im").get<double>()});
    return e;
}

json to_json(const EmpiricalPullbackMeasure& mu) {
    json atoms = json::array();
    for (std::size_t i = 0; i < mu.size(); ++i)
        atoms.push_back(json{{"loc", cvec_to_json(mu.atoms[i])}, {"w", mu.weights[i]}});
    return json{{"q", mu.q}, {"atoms", atoms}, {"total_mass", mu.total_mass}};
}

EmpiricalPullbackMeasure measure_from_json(const json& j) {
    NodeSet atoms;
    std::vector<double> weights;
    for (const auto& a : j.at("atoms")) {
        const CVec loc = cvec_from_json(a.at("loc"));
        if (atoms.dim == 0) atoms.dim = loc.size();
        if (loc.size() != atoms.dim) throw ConfigError("measure atoms of mixed dimension");
        atoms.flat.insert(atoms.flat.end(), loc.begin(), loc.end());
        weights.push_back(a.at("w").get<double>());
    }
    return EmpiricalPullbackMeasure::from_atoms(j.at("q").get<double>(), std::move(atoms),
                                                std::move(weights));
}

json to_json(const ExtremeSetProfile& p) {
    json rows = json::array();
    for (std::size_t i = 0; i < p.eps.size(); ++i)
        rows.push_back(json::array({p.eps[i], p.sigma_mass[i], p.mu_mass[i]}));
    return json{{"rows", rows},
                {"columns", json::array({"eps", "sigma_mass", "mu_mass"})},
                {"sigma_limit", p.sigma_limit},
                {"sigma_limit_uncertainty", p.sigma_limit_unc},
                {"mu_limit", p.mu_limit},
                {"mu_limit_uncertainty", p.mu_limit_unc}};
}

json to_json(const EstimateReport& r) {
    json out{{"setting", setting_to_json(r.setting)},
             {"regime", to_string(r.regime)},
             {"criterion_citations", r.citations},
             {"scheme", to_json(r.scheme)},
             {"witnesses", traces_to_json(r.traces)}};
    double unc = 0.0;
    if (r.lower) {
        out["lower"] = bound_to_json(*r.lower);
        unc = std::max(unc, r.lower->uncertainty);
    }
    if (r.upper) {
        out["upper"] = bound_to_json(*r.upper);
        unc = std::max(unc, r.upper->uncertainty);
    }
    if (r.exact) {
        out["exact"] = bound_to_json(*r.exact);
        unc = std::max(unc, r.exact->uncertainty);
    }
    out["uncertainty"] = unc;
    if (r.trace_trend) out["trace_trend"] = to_string(*r.trace_trend);
    return out;
}

json to_json(const BoundednessReport& r) {
    return json{{"setting", setting_to_json(r.setting)},
                {"sup", r.sup},
                {"argmax", cvec_to_json(r.argmax)},
                {"bounded", r.bounded},
                {"stage_sups", r.search.stage_sups},
                {"tail_growth", r.search.tail_growth},
                {"criterion_citations", r.citations}};
}

json to_json(const CarlesonReport& r) {
    json box{{"value", r.box.value},
             {"argmax_center", cvec_to_json(r.box.argmax_center)},
             {"argmax_h", r.box.argmax_h},
             {"profile", rows_to_json(r.box.profile)},
             {"tail_growth", r.box.tail_growth},
             {"divergent", r.box.divergent}};
    json berezin{{"sup", r.berezin.sup},
                 {"argmax", cvec_to_json(r.berezin.argmax)},
                 {"shell_sups", rows_to_json(r.berezin.shell_sups)},
                 {"divergent", r.berezin.divergent},
                 {"worst_two_way_rel", r.berezin.worst_two_way_rel}};
    json boundary{{"trace", rows_to_json(r.boundary.trace)},
                  {"limit", r.boundary.limit},
                  {"limit_uncertainty", r.boundary.limit_unc},
                  {"trend", to_string(r.boundary.trend)},
                  {"limit_qroot", r.boundary.limit_qroot}};
    return json{{"setting", setting_to_json(r.setting)},
                {"beta", r.beta},
                {"box", box},
                {"vanishing",
                 json{{"profile", rows_to_json(r.vanishing.profile)},
                      {"vanishing", r.vanishing.vanishing}}},
                {"berezin", berezin},
                {"boundary", boundary},
                {"corpus_norm", r.corpus_norm},
                {"corpus_kernel_trace", rows_to_json(r.corpus_kernel_trace)},
                {"corpus_divergent", r.corpus_divergent},
                {"indicators_agree", r.indicators_agree},
                {"bounded", r.bounded},
                {"criterion_citations", r.citations},
                {"scheme", to_json(r.scheme)}};
}

json to_json(const CompactnessVerdict& v) {
    return json{{"verdict", to_string(v.state)},
                {"criterion", v.criterion},
                {"deciding_value", v.deciding_value},
                {"uncertainty", v.uncertainty}};
}

std::string trace_csv(const std::string& xname, const std::string& yname,
                      std::span<const std::pair<double, double>> rows) {
    std::ostringstream out;
    out.precision(17);
    out << xname << "," << yname << "\n";
    for (const auto& [x, y] : rows) out << x << "," << y << "\n";
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp);
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("cannot move " + tmp + " to " + path);
}

}  // namespace hardyop::io
