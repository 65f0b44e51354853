#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "qedsim/runner.hpp"

using namespace qedsim;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qedsim_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const RunConfig cfg = parse_config(R"({
        "experiment": "surface",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 1.0}
    })");
    CHECK(cfg.cutoffs == std::vector<int>{40});
    CHECK(cfg.surface.grid_min == -5.0);
    CHECK(cfg.surface.grid_max == 5.0);
    CHECK(cfg.surface.grid_points == 401);
    CHECK(cfg.model.omega == 1.0);
    CHECK(cfg.evolution.method == StepMethod::Unitary4); // auto, closed
}

TEST_CASE("validation errors name the offending field") {
    // negative frequency
    try {
        parse_config(R"({"experiment":"surface","model":{"variant":"beta_e","omega":-2.0}})");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("omega") != std::string::npos);
    }

    // mutually exclusive parameters for the chosen variant
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "surface",
        "model": {"variant": "beta_e", "Omega": 1.0, "E3": 1.0}
    })"),
                    ConfigError);

    // unknown key with a suggestion
    try {
        parse_config(R"({"experiment":"surface","model":{"variant":"beta_e","Omeag":1.0}})");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("Omeag") != std::string::npos);
        CHECK(msg.find("did you mean 'Omega'") != std::string::npos);
    }

    // syntax error carries the line number
    try {
        parse_config("{\n  \"experiment\": oops\n}");
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    // missing required section
    CHECK_THROWS_AS(parse_config(R"({"experiment":"surface"})"), ConfigError);

    // experiment/variant mismatch
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "zitter",
        "model": {"variant": "beta_e"}
    })"),
                    ConfigError);

    // wrong cutoff count
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "surface",
        "model": {"variant": "epsilon_e"},
        "space": {"cutoffs": [12]}
    })"),
                    ConfigError);
}

TEST_CASE("run artifacts: conical-loop manifest carries the pi phase") {
    const fs::path dir = temp_dir("berry");
    const std::string config = R"({
        "experiment": "berry",
        "model": {"variant": "epsilon_e", "Omega": 0.0, "g": 1.0},
        "berry": {"radius": 1.0, "n_points": 512, "branch": 0}
    })";
    const RunOutcome out = run_config_text(config, dir);
    REQUIRE(out.exit_code == 0);
    const Json manifest = Json::parse(read_file(out.manifest_path));
    CHECK(std::abs(std::abs(manifest["results"]["phase"].get<double>()) - std::numbers::pi) <= 1e-3);

    // round-trip: the echoed config re-parses to an equal RunConfig
    const RunConfig original = parse_config(config);
    const RunConfig echoed = config_from_json(manifest["config"]);
    CHECK(original == echoed);
}

TEST_CASE("run artifacts: single-mode gauge manifest is abelian") {
    const fs::path dir = temp_dir("gauge");
    const RunOutcome out = run_config_text(R"({
        "experiment": "gauge",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 0.7}
    })",
                                           dir);
    REQUIRE(out.exit_code == 0);
    const Json manifest = Json::parse(read_file(out.manifest_path));
    CHECK(manifest["results"]["classification"] == "abelian");
    CHECK(manifest["results"]["rewrite_residual"].get<double>() <= 1e-10);

    const std::string csv = read_file(out.csv_path);
    CHECK(csv.rfind("classification,max_commutator_norm,rewrite_residual\n", 0) == 0);
    CHECK(csv.find("abelian") != std::string::npos);
}

TEST_CASE("same config produces bitwise-identical artifacts") {
    const std::string config = R"({
        "experiment": "evolve",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 0.4},
        "space": {"cutoffs": [10]},
        "evolution": {"t_max": 4.0, "n_steps": 800, "record_every": 20},
        "initial": {"alpha": 0.8, "atom_level": 2}
    })";
    const fs::path d1 = temp_dir("det1");
    const fs::path d2 = temp_dir("det2");
    const RunOutcome a = run_config_text(config, d1);
    const RunOutcome b = run_config_text(config, d2);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(read_file(a.csv_path) == read_file(b.csv_path));
    CHECK(read_file(a.manifest_path) == read_file(b.manifest_path));
}

TEST_CASE("exit codes: validation failures and numerical aborts") {
    const fs::path dir = temp_dir("codes");

    const RunOutcome bad = run_config_text("{ not json", dir);
    CHECK(bad.exit_code == 2);

    // unstable explicit step: t_max/n_steps far outside the stability arc
    const RunOutcome blowup = run_config_text(R"({
        "experiment": "evolve",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 0.0},
        "space": {"cutoffs": [24]},
        "evolution": {"t_max": 2000.0, "n_steps": 400, "method": "rk4"},
        "initial": {"alpha": 2.0, "atom_level": 2}
    })",
                                              dir);
    CHECK(blowup.exit_code == 3);
    CHECK(!fs::exists(dir / "results.csv"));
    CHECK(!fs::exists(dir / "results.csv.tmp"));
}

TEST_CASE("trajectory CSV has the documented header and 17-digit numbers") {
    const fs::path dir = temp_dir("traj");
    const RunOutcome out = run_config_text(R"({
        "experiment": "evolve",
        "model": {"variant": "epsilon_e", "Omega": 0.5, "g": 0.2},
        "space": {"cutoffs": [6, 6]},
        "evolution": {"t_max": 1.0, "n_steps": 100, "record_every": 50},
        "initial": {"alpha": 0.5, "atom_level": 2}
    })",
                                           dir);
    REQUIRE(out.exit_code == 0);
    const std::string csv = read_file(out.csv_path);
    CHECK(csv.rfind("t,W,X,Y,n_x,n_y,trace\n", 0) == 0);
    CHECK(csv.find("0.99999999999") != std::string::npos); // trace column, full precision
}

TEST_CASE("presets parse, validate and carry their documented experiments") {
    REQUIRE(presets().size() == 5);
    for (const Preset& p : presets()) {
        const RunConfig cfg = config_from_json(p.config);
        CHECK(!cfg.experiment.empty());
    }
    CHECK(find_preset("hall-desk").config["experiment"] == "hall");
    CHECK(find_preset("nonabelian-pair").config["experiment"] == "nonabelian");
    CHECK_THROWS_AS(find_preset("no-such-preset"), ConfigError);
}

TEST_CASE("hbar_display rescales energy-valued outputs only") {
    const fs::path d1 = temp_dir("hbar1");
    const fs::path d2 = temp_dir("hbar2");
    const std::string base = R"({
        "experiment": "minima",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 1.0})";
    const RunOutcome plain = run_config_text(base + "}", d1);
    const RunOutcome scaled =
        run_config_text(base + R"(, "output": {"hbar_display": 2.0}})", d2);
    REQUIRE(plain.exit_code == 0);
    REQUIRE(scaled.exit_code == 0);
    const Json mp = Json::parse(read_file(plain.manifest_path));
    const Json ms = Json::parse(read_file(scaled.manifest_path));
    // well depth scales, location and threshold (a coupling, not an energy) do not
    CHECK(ms["results"]["minima"][0]["value"].get<double>() ==
          doctest::Approx(2.0 * mp["results"]["minima"][0]["value"].get<double>()));
    CHECK(ms["results"]["minima"][0]["p"] == mp["results"]["minima"][0]["p"]);
    CHECK(ms["results"]["g_star_derived"] == mp["results"]["g_star_derived"]);

    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "minima",
        "model": {"variant": "beta_e"},
        "output": {"hbar_display": 0.0}
    })"),
                    ConfigError);
}

TEST_CASE("every experiment runs end to end through the runner") {
    const std::vector<std::pair<std::string, std::string>> configs{
        {"minima", R"({"experiment":"minima","model":{"variant":"epsilon_e","Omega":0.5,"g":1.0}})"},
        {"classify", R"({"experiment":"classify","model":{"variant":"renner_teller","E3":1.0,"g":1.0}})"},
        {"force", R"({"experiment":"force","model":{"variant":"epsilon_e","Omega":0.7,"g":0.4}})"},
        {"diracjc",
         R"({"experiment":"diracjc","model":{"variant":"dirac_oscillator","c":1.0,"mass":1.0},
             "space":{"cutoffs":[8,8]}})"},
        {"nonabelian",
         R"({"experiment":"nonabelian","model":{"variant":"epsilon_e","Omega":1.0,"g":0.3},
             "space":{"cutoffs":[6,6]},
             "evolution":{"t_max":5.0,"n_steps":500,"record_every":10},
             "nonabelian":{"alpha":1.0,"direction":"both"}})"},
        {"hall",
         R"({"experiment":"hall","model":{"variant":"epsilon_e","Omega":0.2,"g":0.1},
             "space":{"cutoffs":[6,6]},
             "evolution":{"t_max":10.0,"n_steps":1000,"record_every":10},
             "hall":{"alpha":1.0,"atom_level":2}})"},
        {"zitter",
         R"({"experiment":"zitter","model":{"variant":"dirac_limit","Omega":1.0,"g":0.2},
             "space":{"cutoffs":[6,6]},
             "evolution":{"t_max":80.0,"n_steps":8000,"record_every":10},
             "zitter":{"seed_alpha":0.3,"seed_level":2}})"},
        {"surface_diabatic",
         R"({"experiment":"surface","model":{"variant":"beta_e","Omega":1.0,"g":1.0},
             "surface":{"kind":"diabatic","grid_points":11}})"},
    };
    for (const auto& [tag, text] : configs) {
        CAPTURE(tag);
        const RunOutcome out = run_config_text(text, temp_dir("exp_" + tag));
        CHECK(out.exit_code == 0);
        if (out.exit_code != 0) { CAPTURE(out.error); continue; }
        const Json manifest = Json::parse(read_file(out.manifest_path));
        CHECK(manifest.contains("results"));
        CHECK(fs::exists(out.csv_path));
    }

    // hall manifest carries the rotation scalar; its CSV has the n_y column
    const RunOutcome hall = run_config_text(
        R"({"experiment":"hall","model":{"variant":"epsilon_e","Omega":0.2,"g":0.1},
            "space":{"cutoffs":[6,6]},
            "evolution":{"t_max":10.0,"n_steps":1000,"record_every":10},
            "hall":{"alpha":1.0,"atom_level":2}})",
        temp_dir("hall_scalar"));
    REQUIRE(hall.exit_code == 0);
    const Json m = Json::parse(read_file(hall.manifest_path));
    CHECK(m["results"].contains("swept_area"));
    CHECK(m["results"].contains("transfer_ratio"));
    CHECK(read_file(hall.csv_path).rfind("t,W,X,Y,n_x,n_y,trace\n", 0) == 0);
}

TEST_CASE("custom observable lists must keep the CSV schema columns") {
    CHECK_THROWS_AS(parse_config(R"({
        "experiment": "hall",
        "model": {"variant": "epsilon_e", "Omega": 0.2, "g": 0.1},
        "evolution": {"observables": ["W", "X"]}
    })"),
                    ConfigError);
    CHECK_NOTHROW(parse_config(R"({
        "experiment": "hall",
        "model": {"variant": "epsilon_e", "Omega": 0.2, "g": 0.1},
        "evolution": {"observables": ["W", "X", "Y", "n_x", "n_y", "trace", "purity"]}
    })"));
}

TEST_CASE("config equality tracks the resolved json") {
    const std::string text = R"({
        "experiment": "minima",
        "model": {"variant": "beta_e", "Omega": 1.0, "g": 1.0}
    })";
    const RunConfig a = parse_config(text);
    const RunConfig b = parse_config(text);
    CHECK(a == b);
    RunConfig c = parse_config(text);
    c.model.g = 2.0;
    CHECK(!(a == c));
}
