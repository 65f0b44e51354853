// config.hpp — Declarative run configuration: JSON parsing with strict key
// checking, defaulting, and the shipped experiment presets.

#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "qedsim/dynamics.hpp"
#include "qedsim/model.hpp"

namespace qedsim {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment per run; sections not used by the selected experiment may
// still be present and are validated and echoed.
struct RunConfig {
    ModelSpec model;
    std::vector<int> cutoffs; // resolved, one per required mode (default 40)
    LossSpec loss;
    EvolutionConfig evolution; // n_steps resolved (omega * dt <= 0.05 when auto)
    std::string experiment;

    struct Surface {
        std::string kind = "adiabatic";
        double grid_min = -5.0;
        double grid_max = 5.0;
        long grid_points = 401;
    } surface;

    struct Berry {
        double center_x = 0.0;
        double center_y = 0.0;
        double radius = 1.0;
        int n_points = 512;
        int branch = 0;
    } berry;

    struct Initial {
        double alpha = 2.0;
        double alpha_phase = 0.0;
        std::string mode = "x";
        int atom_level = 1;
    } initial;

    struct NonAbelian {
        std::string direction = "both"; // cw | ccw | both
        double alpha = 2.0;
        std::optional<double> phase_override;
    } nonabelian;

    struct Hall {
        int atom_level = 2;
        double alpha = 2.0;
    } hall;

    struct Zitter {
        double seed_alpha = 0.3;
        int seed_level = 2;
    } zitter;

    struct DiracJc {
        int jc_cutoff = 0; // 0 -> sum of mode cutoffs
    } diracjc;

    std::string csv_name = "results.csv";
    std::string manifest_name = "manifest.json";
    // display-only scale applied to energy-valued outputs (surface branches,
    // well depths, spectrum levels and deviations, trembling gap/frequency);
    // internal units keep hbar = 1
    double hbar_display = 1.0;

    Json to_json() const;
    SpaceDescriptor make_model_space() const;

    friend bool operator==(const RunConfig& a, const RunConfig& b) {
        return a.to_json() == b.to_json();
    }
};

// Parses and validates the documented JSON format. Throws ConfigError with
// the syntax line number, the offending key (with a nearest-key suggestion),
// or the missing/invalid field.
RunConfig parse_config(const std::string& text);
RunConfig config_from_json(const Json& j);

const std::vector<std::string>& known_experiments();

struct Preset {
    std::string name;
    std::string description;
    Json config;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

} // namespace qedsim
