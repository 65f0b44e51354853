#include "qedsim/config.hpp"

#include <algorithm>
#include <cmath>

namespace qedsim {

namespace {

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

[[noreturn]] void unknown_key(const std::string& section, const std::string& key,
                              const std::vector<std::string>& known) {
    std::string best;
    int best_d = 1000;
    for (const auto& k : known) {
        const int d = edit_distance(key, k);
        if (d < best_d) { best_d = d; best = k; }
    }
    std::string msg = "config: unknown key '" + key + "' in [" + section + "]";
    if (best_d <= 3) msg += "; did you mean '" + best + "'?";
    throw ConfigError(msg);
}

void check_keys(const Json& obj, const std::string& section,
                const std::vector<std::string>& known) {
    if (!obj.is_object()) throw ConfigError("config: [" + section + "] must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            unknown_key(section, it.key(), known);
}

double get_number(const Json& obj, const std::string& section, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("config: " + section + "." + key + " must be a number");
    return v.get<double>();
}

long get_integer(const Json& obj, const std::string& section, const std::string& key,
                 long fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError("config: " + section + "." + key + " must be an integer");
    return v.get<long>();
}

std::string get_string(const Json& obj, const std::string& section, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError("config: " + section + "." + key + " must be a string");
    return v.get<std::string>();
}

ModelVariant variant_from(const std::string& s) {
    for (ModelVariant v : {ModelVariant::BetaE, ModelVariant::EpsilonE, ModelVariant::RennerTeller,
                           ModelVariant::DiracLimit, ModelVariant::DiracOscillator})
        if (s == variant_name(v)) return v;
    throw ConfigError("config: model.variant '" + s +
                      "' is not one of beta_e, epsilon_e, renner_teller, dirac_limit, dirac_oscillator");
}

StepMethod method_from(const std::string& s) {
    if (s == "rk4") return StepMethod::RungeKutta4;
    if (s == "unitary4") return StepMethod::Unitary4;
    if (s == "adaptive54") return StepMethod::Adaptive54;
    throw ConfigError("config: evolution.method '" + s + "' is not one of auto, rk4, unitary4, adaptive54");
}

void check_variant_for_experiment(const RunConfig& cfg) {
    const ModelVariant v = cfg.model.variant;
    auto need = [&](std::initializer_list<ModelVariant> allowed) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
            throw ConfigError("config: experiment '" + cfg.experiment +
                              "' does not support model.variant '" + variant_name(v) + "'");
    };
    if (cfg.experiment == "surface") need({ModelVariant::BetaE, ModelVariant::EpsilonE,
                                           ModelVariant::RennerTeller, ModelVariant::DiracLimit});
    else if (cfg.experiment == "minima") need({ModelVariant::BetaE, ModelVariant::EpsilonE});
    else if (cfg.experiment == "gauge") need({ModelVariant::BetaE, ModelVariant::EpsilonE,
                                              ModelVariant::RennerTeller});
    else if (cfg.experiment == "berry" || cfg.experiment == "classify")
        need({ModelVariant::EpsilonE, ModelVariant::RennerTeller});
    else if (cfg.experiment == "nonabelian" || cfg.experiment == "hall" || cfg.experiment == "force")
        need({ModelVariant::EpsilonE});
    else if (cfg.experiment == "zitter") need({ModelVariant::DiracLimit});
    else if (cfg.experiment == "diracjc") need({ModelVariant::DiracOscillator});
}

} // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> kList{"surface", "minima", "gauge",  "berry",
                                                "classify", "evolve", "nonabelian", "hall",
                                                "zitter",  "diracjc", "force"};
    return kList;
}

RunConfig parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config syntax error: ") + e.what());
    }
    return config_from_json(j);
}

RunConfig config_from_json(const Json& j) {
    check_keys(j, "top level",
               {"model", "space", "loss", "evolution", "experiment", "surface", "berry", "initial",
                "nonabelian", "hall", "zitter", "diracjc", "output"});
    if (!j.contains("model")) throw ConfigError("config: missing required section [model]");
    if (!j.contains("experiment")) throw ConfigError("config: missing required field 'experiment'");

    RunConfig cfg;

    // ---- model
    {
        const Json& m = j.at("model");
        check_keys(m, "model", {"variant", "omega", "Omega", "g", "E3", "c", "mass"});
        if (!m.contains("variant")) throw ConfigError("config: missing required field model.variant");
        cfg.model.variant = variant_from(get_string(m, "model", "variant", ""));
        cfg.model.omega = get_number(m, "model", "omega", 1.0);
        cfg.model.g = get_number(m, "model", "g", 0.0);
        const bool two_level = cfg.model.variant == ModelVariant::BetaE ||
                               cfg.model.variant == ModelVariant::EpsilonE ||
                               cfg.model.variant == ModelVariant::DiracLimit;
        if (m.contains("Omega") || two_level)
            cfg.model.Omega = get_number(m, "model", "Omega", 1.0);
        if (m.contains("E3") || cfg.model.variant == ModelVariant::RennerTeller)
            cfg.model.e3 = get_number(m, "model", "E3", 1.0);
        if (m.contains("c") || cfg.model.variant == ModelVariant::DiracOscillator)
            cfg.model.c = get_number(m, "model", "c", 1.0);
        if (m.contains("mass") || cfg.model.variant == ModelVariant::DiracOscillator)
            cfg.model.mass = get_number(m, "model", "mass", 1.0);
        try {
            validate(cfg.model);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: [model] invalid: ") + e.what());
        }
    }

    const SpaceShape shape = required_space(cfg.model.variant);

    // ---- experiment selector (needed for space defaults)
    cfg.experiment = j.at("experiment").is_string()
                         ? j.at("experiment").get<std::string>()
                         : throw ConfigError("config: 'experiment' must be a string");
    if (std::find(known_experiments().begin(), known_experiments().end(), cfg.experiment) ==
        known_experiments().end()) {
        std::string msg = "config: unknown experiment '" + cfg.experiment + "' (one of";
        for (const auto& e : known_experiments()) msg += " " + e;
        throw ConfigError(msg + ")");
    }

    // ---- space
    {
        // identity-check experiments default to small cutoffs; the checks they
        // run are cutoff-independent and dense products scale as D^3
        int default_cutoff = 40;
        if (cfg.experiment == "gauge") default_cutoff = 12;
        if (cfg.experiment == "force") default_cutoff = 10;
        cfg.cutoffs.assign(shape.n_modes, default_cutoff);
        if (j.contains("space")) {
            const Json& s = j.at("space");
            check_keys(s, "space", {"cutoffs"});
            if (s.contains("cutoffs")) {
                const Json& c = s.at("cutoffs");
                if (!c.is_array()) throw ConfigError("config: space.cutoffs must be an array");
                if (c.size() != shape.n_modes)
                    throw ConfigError("config: space.cutoffs needs " + std::to_string(shape.n_modes) +
                                      " entries for variant " + variant_name(cfg.model.variant));
                cfg.cutoffs.clear();
                for (const Json& v : c) {
                    if (!v.is_number_integer())
                        throw ConfigError("config: space.cutoffs entries must be integers");
                    cfg.cutoffs.push_back(v.get<int>());
                    if (cfg.cutoffs.back() < 2)
                        throw ConfigError("config: space.cutoffs entries must be >= 2");
                }
            }
        }
    }

    // ---- loss
    {
        cfg.loss.kappa.assign(shape.n_modes, 0.0);
        if (j.contains("loss")) {
            const Json& l = j.at("loss");
            check_keys(l, "loss", {"kappa", "gamma", "lower_level", "upper_level"});
            if (l.contains("kappa")) {
                const Json& k = l.at("kappa");
                if (!k.is_array()) throw ConfigError("config: loss.kappa must be an array");
                if (k.size() != shape.n_modes)
                    throw ConfigError("config: loss.kappa needs one entry per mode");
                cfg.loss.kappa.clear();
                for (const Json& v : k) {
                    if (!v.is_number()) throw ConfigError("config: loss.kappa entries must be numbers");
                    cfg.loss.kappa.push_back(v.get<double>());
                    if (cfg.loss.kappa.back() < 0.0)
                        throw ConfigError("config: loss.kappa entries must be >= 0");
                }
            }
            cfg.loss.gamma_atom = get_number(l, "loss", "gamma", 0.0);
            if (cfg.loss.gamma_atom < 0.0) throw ConfigError("config: loss.gamma must be >= 0");
            cfg.loss.lower_level = static_cast<int>(get_integer(l, "loss", "lower_level", 2));
            cfg.loss.upper_level = static_cast<int>(get_integer(l, "loss", "upper_level", 1));
        }
    }

    // ---- evolution
    {
        std::string method = "auto";
        cfg.evolution = EvolutionConfig{};
        cfg.evolution.t_max = 10.0;
        cfg.evolution.n_steps = 0;
        if (j.contains("evolution")) {
            const Json& e = j.at("evolution");
            check_keys(e, "evolution",
                       {"t_max", "n_steps", "method", "abs_tol", "rel_tol", "record_every",
                        "observables"});
            cfg.evolution.t_max = get_number(e, "evolution", "t_max", 10.0);
            cfg.evolution.n_steps = get_integer(e, "evolution", "n_steps", 0);
            method = get_string(e, "evolution", "method", "auto");
            cfg.evolution.abs_tol = get_number(e, "evolution", "abs_tol", 1e-10);
            cfg.evolution.rel_tol = get_number(e, "evolution", "rel_tol", 1e-8);
            cfg.evolution.record_every = get_integer(e, "evolution", "record_every", 1);
            if (e.contains("observables")) {
                const Json& o = e.at("observables");
                if (!o.is_array()) throw ConfigError("config: evolution.observables must be an array");
                for (const Json& v : o) {
                    if (!v.is_string())
                        throw ConfigError("config: evolution.observables entries must be strings");
                    cfg.evolution.observables.push_back(v.get<std::string>());
                }
            }
        }
        if (cfg.evolution.t_max < 0.0) throw ConfigError("config: evolution.t_max must be >= 0");
        if (cfg.evolution.n_steps < 0) throw ConfigError("config: evolution.n_steps must be >= 0");
        // auto step: omega * dt <= 0.05
        if (cfg.evolution.n_steps == 0)
            cfg.evolution.n_steps = std::max<long>(
                1, static_cast<long>(std::ceil(cfg.evolution.t_max * cfg.model.omega / 0.05)));
        if (method == "auto")
            cfg.evolution.method = cfg.loss.any() ? StepMethod::RungeKutta4 : StepMethod::Unitary4;
        else
            cfg.evolution.method = method_from(method);
        if (cfg.evolution.method == StepMethod::Unitary4 && cfg.loss.any())
            throw ConfigError("config: evolution.method unitary4 applies to closed (lossless) runs only");
        try {
            cfg.evolution.check();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: [evolution] invalid: ") + e.what());
        }
    }

    // ---- experiment sections
    if (j.contains("surface")) {
        const Json& s = j.at("surface");
        check_keys(s, "surface", {"kind", "grid_min", "grid_max", "grid_points"});
        cfg.surface.kind = get_string(s, "surface", "kind", "adiabatic");
        if (cfg.surface.kind != "adiabatic" && cfg.surface.kind != "diabatic")
            throw ConfigError("config: surface.kind must be 'adiabatic' or 'diabatic'");
        cfg.surface.grid_min = get_number(s, "surface", "grid_min", -5.0);
        cfg.surface.grid_max = get_number(s, "surface", "grid_max", 5.0);
        cfg.surface.grid_points = get_integer(s, "surface", "grid_points", 401);
        if (cfg.surface.grid_points < 3)
            throw ConfigError("config: surface.grid_points must be >= 3");
        if (!(cfg.surface.grid_max > cfg.surface.grid_min))
            throw ConfigError("config: surface.grid_max must exceed surface.grid_min");
    }

    if (j.contains("berry")) {
        const Json& b = j.at("berry");
        check_keys(b, "berry", {"center_x", "center_y", "radius", "n_points", "branch"});
        cfg.berry.center_x = get_number(b, "berry", "center_x", 0.0);
        cfg.berry.center_y = get_number(b, "berry", "center_y", 0.0);
        cfg.berry.radius = get_number(b, "berry", "radius", 1.0);
        cfg.berry.n_points = static_cast<int>(get_integer(b, "berry", "n_points", 512));
        cfg.berry.branch = static_cast<int>(get_integer(b, "berry", "branch", 0));
        if (!(cfg.berry.radius > 0.0)) throw ConfigError("config: berry.radius must be positive");
        if (cfg.berry.n_points < 16) throw ConfigError("config: berry.n_points must be >= 16");
    }

    if (j.contains("initial")) {
        const Json& i = j.at("initial");
        check_keys(i, "initial", {"alpha", "alpha_phase", "mode", "atom_level"});
        cfg.initial.alpha = get_number(i, "initial", "alpha", 2.0);
        cfg.initial.alpha_phase = get_number(i, "initial", "alpha_phase", 0.0);
        cfg.initial.mode = get_string(i, "initial", "mode", "x");
        cfg.initial.atom_level = static_cast<int>(get_integer(i, "initial", "atom_level", 1));
    }

    if (j.contains("nonabelian")) {
        const Json& nsec = j.at("nonabelian");
        check_keys(nsec, "nonabelian", {"direction", "alpha", "phase_override"});
        cfg.nonabelian.direction = get_string(nsec, "nonabelian", "direction", "both");
        if (cfg.nonabelian.direction != "cw" && cfg.nonabelian.direction != "ccw" &&
            cfg.nonabelian.direction != "both")
            throw ConfigError("config: nonabelian.direction must be cw, ccw or both");
        cfg.nonabelian.alpha = get_number(nsec, "nonabelian", "alpha", 2.0);
        if (nsec.contains("phase_override"))
            cfg.nonabelian.phase_override = get_number(nsec, "nonabelian", "phase_override", 0.0);
    }

    if (j.contains("hall")) {
        const Json& hsec = j.at("hall");
        check_keys(hsec, "hall", {"atom_level", "alpha"});
        cfg.hall.atom_level = static_cast<int>(get_integer(hsec, "hall", "atom_level", 2));
        cfg.hall.alpha = get_number(hsec, "hall", "alpha", 2.0);
        if (cfg.hall.atom_level != 1 && cfg.hall.atom_level != 2)
            throw ConfigError("config: hall.atom_level must be 1 or 2");
    }

    if (j.contains("zitter")) {
        const Json& z = j.at("zitter");
        check_keys(z, "zitter", {"seed_alpha", "seed_level"});
        cfg.zitter.seed_alpha = get_number(z, "zitter", "seed_alpha", 0.3);
        cfg.zitter.seed_level = static_cast<int>(get_integer(z, "zitter", "seed_level", 2));
    }

    if (j.contains("diracjc")) {
        const Json& djc = j.at("diracjc");
        check_keys(djc, "diracjc", {"jc_cutoff"});
        cfg.diracjc.jc_cutoff = static_cast<int>(get_integer(djc, "diracjc", "jc_cutoff", 0));
        if (cfg.diracjc.jc_cutoff < 0)
            throw ConfigError("config: diracjc.jc_cutoff must be >= 0");
    }

    if (j.contains("output")) {
        const Json& o = j.at("output");
        check_keys(o, "output", {"csv", "manifest", "hbar_display"});
        cfg.csv_name = get_string(o, "output", "csv", "results.csv");
        cfg.manifest_name = get_string(o, "output", "manifest", "manifest.json");
        cfg.hbar_display = get_number(o, "output", "hbar_display", 1.0);
        if (!(cfg.hbar_display > 0.0))
            throw ConfigError("config: output.hbar_display must be positive");
    }

    check_variant_for_experiment(cfg);

    // evolve-family CSVs have fixed columns; a custom observable list must
    // still provide them
    const bool trajectory_experiment = cfg.experiment == "evolve" || cfg.experiment == "nonabelian" ||
                                       cfg.experiment == "hall" || cfg.experiment == "zitter";
    if (trajectory_experiment && !cfg.evolution.observables.empty()) {
        std::vector<std::string> needed{"W", "X", "n_x", "trace"};
        if (shape.n_modes == 2) {
            needed.push_back("Y");
            needed.push_back("n_y");
        }
        for (const std::string& name : needed)
            if (std::find(cfg.evolution.observables.begin(), cfg.evolution.observables.end(),
                          name) == cfg.evolution.observables.end())
                throw ConfigError("config: evolution.observables must keep the CSV column '" + name +
                                  "' for the " + cfg.experiment + " experiment");
    }

    // sanity of the loss lowering operator against the resolved space
    try {
        cfg.loss.check(cfg.make_model_space());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: [loss] invalid: ") + e.what());
    }
    return cfg;
}

SpaceDescriptor RunConfig::make_model_space() const {
    return make_space(cutoffs, required_space(model.variant).atom_levels);
}

Json RunConfig::to_json() const {
    Json m{{"variant", variant_name(model.variant)}, {"omega", model.omega}, {"g", model.g}};
    if (model.Omega) m["Omega"] = *model.Omega;
    if (model.e3) m["E3"] = *model.e3;
    if (model.c) m["c"] = *model.c;
    if (model.mass) m["mass"] = *model.mass;

    Json ev{{"t_max", evolution.t_max},
            {"n_steps", evolution.n_steps},
            {"method", method_name(evolution.method)},
            {"abs_tol", evolution.abs_tol},
            {"rel_tol", evolution.rel_tol},
            {"record_every", evolution.record_every},
            {"observables", evolution.observables}};

    Json nsec{{"direction", nonabelian.direction}, {"alpha", nonabelian.alpha}};
    if (nonabelian.phase_override) nsec["phase_override"] = *nonabelian.phase_override;

    return Json{
        {"model", m},
        {"space", Json{{"cutoffs", cutoffs}}},
        {"loss", Json{{"kappa", loss.kappa},
                      {"gamma", loss.gamma_atom},
                      {"lower_level", loss.lower_level},
                      {"upper_level", loss.upper_level}}},
        {"evolution", ev},
        {"experiment", experiment},
        {"surface", Json{{"kind", surface.kind},
                         {"grid_min", surface.grid_min},
                         {"grid_max", surface.grid_max},
                         {"grid_points", surface.grid_points}}},
        {"berry", Json{{"center_x", berry.center_x},
                       {"center_y", berry.center_y},
                       {"radius", berry.radius},
                       {"n_points", berry.n_points},
                       {"branch", berry.branch}}},
        {"initial", Json{{"alpha", initial.alpha},
                         {"alpha_phase", initial.alpha_phase},
                         {"mode", initial.mode},
                         {"atom_level", initial.atom_level}}},
        {"nonabelian", nsec},
        {"hall", Json{{"atom_level", hall.atom_level}, {"alpha", hall.alpha}}},
        {"zitter", Json{{"seed_alpha", zitter.seed_alpha}, {"seed_level", zitter.seed_level}}},
        {"diracjc", Json{{"jc_cutoff", diracjc.jc_cutoff}}},
        {"output", Json{{"csv", csv_name}, {"manifest", manifest_name}, {"hbar_display", hbar_display}}},
    };
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> kPresets = [] {
        std::vector<Preset> p;
        p.push_back({"beta-double-well",
                     "single-mode Jahn-Teller minima and displacement threshold",
                     Json{{"experiment", "minima"},
                          {"model", {{"variant", "beta_e"}, {"omega", 1.0}, {"Omega", 1.0}, {"g", 1.0}}}}});
        p.push_back({"nonabelian-pair",
                     "clockwise vs anti-clockwise coherent-state loop, closed system",
                     Json{{"experiment", "nonabelian"},
                          {"model", {{"variant", "epsilon_e"}, {"omega", 1.0}, {"Omega", 1.0}, {"g", 0.3}}},
                          {"space", {{"cutoffs", {16, 16}}}},
                          {"evolution",
                           {{"t_max", 40.0}, {"n_steps", 8000}, {"record_every", 10}, {"method", "unitary4"}}},
                          {"nonabelian", {{"direction", "both"}, {"alpha", 2.0}}}}});
        p.push_back({"hall-desk",
                     "transverse mode-swap run at desk scale",
                     Json{{"experiment", "hall"},
                          {"model", {{"variant", "epsilon_e"}, {"omega", 1.0}, {"Omega", 0.2}, {"g", 0.1}}},
                          {"space", {{"cutoffs", {16, 16}}}},
                          {"evolution",
                           {{"t_max", 500.0}, {"n_steps", 50000}, {"record_every", 50}, {"method", "unitary4"}}},
                          {"hall", {{"atom_level", 2}, {"alpha", 2.0}}}}});
        p.push_back({"rt-berry-null",
                     "three-level glancing-intersection loop with vanishing geometric phase",
                     Json{{"experiment", "berry"},
                          {"model", {{"variant", "renner_teller"}, {"omega", 1.0}, {"E3", 1.0}, {"g", 1.0}}},
                          {"berry",
                           {{"center_x", 0.0}, {"center_y", 0.0}, {"radius", 1.0}, {"n_points", 512}, {"branch", 0}}}}});
        p.push_back({"dirac-jc",
                     "spin-less Dirac oscillator spectrum against its Jaynes-Cummings form",
                     Json{{"experiment", "diracjc"},
                          {"model", {{"variant", "dirac_oscillator"}, {"omega", 1.0}, {"c", 1.0}, {"mass", 1.0}}},
                          {"space", {{"cutoffs", {20, 20}}}},
                          {"diracjc", {{"jc_cutoff", 40}}}}});
        return p;
    }();
    return kPresets;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p;
    std::string msg = "unknown preset '" + name + "' (available:";
    for (const Preset& p : presets()) msg += " " + p.name;
    throw ConfigError(msg + ")");
}

} // namespace qedsim
