#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hardyop/cli.hpp"

using namespace hardyop;
using cli::JobConfig;
using io::json;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}

const char* kIdentityPair = R"({
  "psi": {"n": 1, "kind": "poly", "terms": [{"alpha": [0], "re": 1.0, "im": 0.0}]},
  "phi": [{"n": 1, "kind": "poly", "terms": [{"alpha": [1], "re": 1.0, "im": 0.0}]}]
})";

const char* kHalfPair = R"({
  "psi": {"n": 1, "kind": "poly", "terms": [{"alpha": [0], "re": 1.0, "im": 0.0}]},
  "phi": [{"n": 1, "kind": "poly", "terms": [{"alpha": [1], "re": 0.5, "im": 0.0}]}]
})";

JobConfig base_config(const char* command) {
    JobConfig cfg;
    cfg.command = command;
    cfg.samples = 2048;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    JobConfig cfg = base_config("verify");
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("exponents must be positive") {
        cfg.p = 0.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("schedules must be strictly monotone") {
        cfg.eps_schedule = {0.1, 0.1};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg.eps_schedule = {0.1, 0.05};
        cfg.h_schedule = {0.5, 0.7};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("eps range") {
        cfg.eps_schedule = {1.5, 0.5};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("symbol serialization round-trips") {
    SUBCASE("polynomial") {
        PolynomialSymbol p(2);
        p.set(MultiIndex{{1, 2}}, Complex{0.25, -0.5});
        p.set(MultiIndex{{0, 0}}, Complex{1.0, 0.0});
        const Symbol s(p);
        const Symbol back = io::symbol_from_json(io::to_json(s));
        const CVec z{Complex{0.3, 0.1}, Complex{-0.2, 0.4}};
        CHECK(back.eval(z) == s.eval(z));
    }
    SUBCASE("blaschke with prescale") {
        const Symbol s =
            Symbol(BlaschkeSymbol::checked({Complex{0.5, 0.0}, Complex{0.1, -0.3}}, 0.7))
                .radial(0.9);
        const Symbol back = io::symbol_from_json(io::to_json(s));
        const CVec z{Complex{0.6, -0.2}};
        CHECK(std::abs(back.eval(z) - s.eval(z)) < 1e-15);
    }
    SUBCASE("pair files") {
        const std::string path = write_temp("wco_pair_ok.json", kIdentityPair);
        auto [psi, phi] = io::load_pair_file(path);
        CHECK(psi.dim() == 1);
        CHECK(phi.dim() == 1);
        const CVec z{Complex{0.3, 0.2}};
        CHECK(phi.components()[0].eval(z) == z[0]);
    }
    SUBCASE("corrupt pair files carry a parse diagnostic") {
        const std::string path = write_temp("wco_pair_bad.json", "{ not json");
        CHECK_THROWS_AS(io::load_pair_file(path), ConfigError);
        CHECK_THROWS_AS(io::load_pair_file("/nonexistent/q.json"), ConfigError);
        const std::string missing =
            write_temp("wco_pair_missing.json", R"({"psi": null})");
        CHECK_THROWS_AS(io::load_pair_file(missing), ConfigError);
    }
}

TEST_CASE("scheme and measure serialization") {
    const QuadratureScheme s{SchemeKind::MonteCarloSphere, 1234, 99};
    CHECK(io::scheme_from_json(io::to_json(s)) == s);

    NodeSet atoms;
    atoms.dim = 1;
    atoms.flat = {Complex{0.5, 0.1}, Complex{-0.2, 0.0}};
    const auto mu = EmpiricalPullbackMeasure::from_atoms(2.0, atoms, {0.25, 0.75});
    const auto back = io::measure_from_json(io::to_json(mu));
    CHECK(back.q == mu.q);
    CHECK(back.total_mass == doctest::Approx(mu.total_mass));
    CHECK(back.atoms.flat == mu.atoms.flat);

    CHECK(io::exponent_from_json(io::exponent_to_json(
              std::numeric_limits<double>::infinity())) ==
          std::numeric_limits<double>::infinity());
    CHECK(io::exponent_from_json(io::exponent_to_json(2.5)) == 2.5);
}

TEST_CASE("verify command") {
    JobConfig cfg = base_config("verify");
    SUBCASE("default corpus passes with exit 0") {
        const auto res = cli::cmd_verify(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.payload.at("all_pass").get<bool>());
        // every check row carries its margin
        for (const auto& row : res.payload.at("checks"))
            CHECK(row.contains("margin"));
    }
    SUBCASE("payloads are byte-identical across runs with the same seed") {
        const auto a = cli::cmd_verify(cfg);
        const auto b = cli::cmd_verify(cfg);
        CHECK(a.payload.dump() == b.payload.dump());
    }
    SUBCASE("tightened Monte Carlo tolerance fails in a controlled way") {
        cfg.tol_mc = 1e-15;
        const auto res = cli::cmd_verify(cfg);
        CHECK(res.exit_code == 1);
        CHECK_FALSE(res.payload.at("all_pass").get<bool>());
        bool saw_mc_failure = false;
        for (const auto& row : res.payload.at("checks")) {
            if (!row.at("pass").get<bool>()) {
                saw_mc_failure = true;
                CHECK(row.at("margin").get<double>() < 0.0);
            }
        }
        CHECK(saw_mc_failure);
    }
    SUBCASE("a valid user pair joins the identity suite") {
        cfg.pair_file = write_temp("wco_pair_half.json", kHalfPair);
        const auto res = cli::cmd_verify(cfg);
        CHECK(res.exit_code == 0);
    }
    SUBCASE("a corrupt user pair is a usage error") {
        cfg.pair_file = write_temp("wco_pair_bad2.json", "tralala");
        CHECK_THROWS_AS(cli::cmd_verify(cfg), ConfigError);
    }
}

TEST_CASE("essnorm command dispatch") {
    JobConfig cfg = base_config("essnorm");
    cfg.pair_file = write_temp("wco_pair_id.json", kIdentityPair);
    SUBCASE("sup-norm domain into H^2: exact value 1 for the identity pair") {
        const auto res = cli::cmd_essnorm(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.payload.at("estimate").at("exact").at("value").get<double>() ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.payload.at("verdict").at("verdict").get<std::string>() == "non-compact");
        // seeds and citations are embedded
        CHECK(res.payload.at("estimate").at("scheme").contains("seed"));
        CHECK_FALSE(res.payload.at("estimate").at("criterion_citations").empty());
    }
    SUBCASE("sup-norm domain into H^4: factor-2 bracket") {
        cfg.q = 4.0;
        const auto res = cli::cmd_essnorm(cfg);
        CHECK(res.payload.at("estimate").at("lower").at("value").get<double>() ==
              doctest::Approx(0.5).epsilon(1e-9));
        CHECK(res.payload.at("estimate").at("upper").at("value").get<double>() ==
              doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("H^2 into the sup norm: compact interior pair") {
        cfg.pair_file = write_temp("wco_pair_half2.json", kHalfPair);
        cfg.p = 2.0;
        cfg.q = std::numeric_limits<double>::infinity();
        const auto res = cli::cmd_essnorm(cfg);
        CHECK(res.payload.at("estimate").at("upper").at("value").get<double>() == 0.0);
        CHECK(res.payload.at("verdict").at("verdict").get<std::string>() == "compact");
    }
    SUBCASE("uncovered regimes name the covered ones") {
        cfg.p = 0.5;
        cfg.q = 0.5;
        CHECK_THROWS_WITH_AS(cli::cmd_essnorm(cfg),
                             doctest::Contains("not implemented"), ConfigError);
    }
    SUBCASE("missing pair file is a usage error") {
        cfg.pair_file.clear();
        CHECK_THROWS_AS(cli::cmd_essnorm(cfg), ConfigError);
    }
}

TEST_CASE("bounded and carleson commands") {
    JobConfig cfg = base_config("bounded");
    cfg.pair_file = write_temp("wco_pair_half3.json", kHalfPair);
    cfg.p = 2.0;
    SUBCASE("bounded: closed-form supremum for phi = z/2") {
        const auto res = cli::cmd_bounded(cfg);
        CHECK(res.payload.at("boundedness").at("bounded").get<bool>());
        CHECK(res.payload.at("boundedness").at("sup").get<double>() ==
              doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-3));
    }
    SUBCASE("carleson: coherent indicators and plot artifacts") {
        cfg.command = "carleson";
        cfg.q = 4.0;
        cfg.samples = 8192;
        const auto res = cli::cmd_carleson(cfg);
        CHECK(res.exit_code == 0);
        CHECK(res.payload.at("carleson").at("indicators_agree").get<bool>());
        CHECK(res.payload.at("carleson").at("bounded").get<bool>());
        REQUIRE(res.artifacts.count("carleson_box.csv") == 1);
        REQUIRE(res.artifacts.count("carleson_berezin.csv") == 1);
        CHECK(res.artifacts.at("carleson_box.csv").substr(0, 6) == "h,sup\n");
    }
    SUBCASE("carleson rejects p > q") {
        cfg.command = "carleson";
        cfg.p = 4.0;
        cfg.q = 2.0;
        CHECK_THROWS_AS(cli::cmd_carleson(cfg), ConfigError);
    }
}

TEST_CASE("report command bundles the applicable routes") {
    JobConfig cfg = base_config("report");
    cfg.pair_file = write_temp("wco_pair_half4.json", kHalfPair);
    cfg.p = 2.0;
    cfg.q = 2.0;
    cfg.samples = 8192;
    const auto res = cli::cmd_report(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.payload.contains("essnorm"));
    CHECK(res.payload.contains("carleson"));
    CHECK(res.payload.at("carleson").at("carleson").at("bounded").get<bool>());
}

TEST_CASE("dispatch rejects unknown commands") {
    JobConfig cfg = base_config("frobnicate");
    CHECK_THROWS_AS(cli::dispatch(cfg), ConfigError);
}
