#include "qedsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "qedsim/gauge.hpp"
#include "qedsim/geometry.hpp"
#include "qedsim/version.hpp"

namespace qedsim {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_row(const std::vector<double>& vals) {
    std::string row;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) row += ',';
        row += format_number(vals[i]);
    }
    return row;
}

std::vector<std::string> trajectory_columns(const SpaceDescriptor& space) {
    if (space.n_modes() == 1) return {"t", "W", "X", "n_x", "trace"};
    return {"t", "W", "X", "Y", "n_x", "n_y", "trace"};
}

void append_trajectory_rows(std::string& csv, const TrajectoryRecord& rec,
                            const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        std::vector<double> row{rec.times[i]};
        for (std::size_t c = 1; c < cols.size(); ++c) row.push_back(rec.at(cols[c])[i]);
        csv += csv_row(row) + "\n";
    }
}

Json stats_json(const IntegratorStats& st) {
    return Json{{"method", st.method},
                {"dt", st.dt},
                {"steps_taken", st.steps_taken},
                {"steps_rejected", st.steps_rejected},
                {"conservation_drift", st.conservation_drift},
                {"min_eigenvalue", st.min_eigenvalue},
                {"aborted", st.aborted},
                {"abort_reason", st.abort_reason}};
}

std::vector<double> linspace(double lo, double hi, long n) {
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

void check_lindblad_outcome(const TrajectoryRecord& rec) {
    if (rec.stats.aborted) throw NumericalError(rec.stats.abort_reason, rec.stats.abort_step);
}

struct Artifacts {
    std::string csv;
    Json results;
};

Artifacts run_surface(const RunConfig& cfg) {
    const std::vector<double> axis =
        linspace(cfg.surface.grid_min, cfg.surface.grid_max, cfg.surface.grid_points);
    const std::size_t n_axes = required_space(cfg.model.variant).n_modes;
    std::vector<std::vector<double>> axes(n_axes, axis);
    const SurfaceGrid grid = cfg.surface.kind == "adiabatic"
                                 ? adiabatic_surfaces(cfg.model, axes)
                                 : diabatic_surfaces(cfg.model, axes);

    const bool three = grid.branches.size() == 3;
    Artifacts art;
    art.csv = n_axes == 1 ? "P,V_minus,V_plus" : "P_x,P_y,V_minus,V_plus";
    if (three) art.csv += ",V_zero";
    art.csv += "\n";
    const std::size_t rows = grid.branches[0].size();
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> row;
        if (n_axes == 1) {
            row.push_back(axis[i]);
        } else {
            row.push_back(axis[i / axis.size()]);
            row.push_back(axis[i % axis.size()]);
        }
        const double hb = cfg.hbar_display;
        row.push_back(hb * grid.branches[0][i]);
        row.push_back(hb * grid.branches[three ? 2 : 1][i]);
        if (three) row.push_back(hb * grid.branches[1][i]);
        art.csv += csv_row(row) + "\n";
    }
    art.results = {{"kind", cfg.surface.kind},
                   {"branches", grid.branches.size()},
                   {"grid_points_per_axis", cfg.surface.grid_points}};
    return art;
}

Artifacts run_minima(const RunConfig& cfg) {
    const MinimaReport rep = locate_minima(cfg.model);
    const double hb = cfg.hbar_display;
    const double p1 = rep.minima.size() > 0 ? rep.minima[0].first : std::nan("");
    const double v1 = rep.minima.size() > 0 ? hb * rep.minima[0].second : std::nan("");
    const double p2 = rep.minima.size() > 1 ? rep.minima[1].first : std::nan("");
    const double v2 = rep.minima.size() > 1 ? hb * rep.minima[1].second : std::nan("");

    Artifacts art;
    art.csv = "regime,n_minima,p_1,v_1,p_2,v_2,g_star_derived,g_star_literature\n";
    art.csv += std::string(regime_name(rep.regime)) + "," + std::to_string(rep.minima.size()) + "," +
               csv_row({p1, v1, p2, v2, rep.threshold_g_derived, rep.threshold_g_literature}) + "\n";
    art.results = {{"regime", regime_name(rep.regime)},
                   {"g_star_derived", rep.threshold_g_derived},
                   {"g_star_literature", rep.threshold_g_literature}};
    Json mins = Json::array();
    for (const auto& [p, v] : rep.minima) mins.push_back(Json{{"p", p}, {"value", hb * v}});
    art.results["minima"] = mins;
    return art;
}

Artifacts run_gauge(const RunConfig& cfg) {
    const SpaceDescriptor space = cfg.make_model_space();
    const GaugeReport rep = extract_gauge_potentials(cfg.model, &space);

    Artifacts art;
    art.csv = "classification,max_commutator_norm,rewrite_residual\n";
    art.csv += std::string(gauge_class_name(rep.classification)) + "," +
               csv_row({rep.max_commutator_norm, rep.rewrite_residual}) + "\n";
    art.results = {{"classification", gauge_class_name(rep.classification)},
                   {"max_commutator_norm", rep.max_commutator_norm},
                   {"rewrite_residual", rep.rewrite_residual},
                   {"components", rep.component_labels}};
    return art;
}

Artifacts run_berry(const RunConfig& cfg) {
    LoopSpec loop;
    loop.center_x = cfg.berry.center_x;
    loop.center_y = cfg.berry.center_y;
    loop.radius = cfg.berry.radius;
    loop.n_points = cfg.berry.n_points;
    loop.branch = cfg.berry.branch;
    const BerryPhaseResult res = berry_phase(cfg.model, loop);

    Artifacts art;
    art.csv = "phase,phase_raw,richardson_error,min_gap,n_points\n";
    art.csv += csv_row({res.phase, res.phase_raw, res.richardson_error, res.min_gap,
                        static_cast<double>(res.n_points)}) +
               "\n";
    art.results = {{"phase", res.phase},
                   {"phase_raw", res.phase_raw},
                   {"richardson_error", res.richardson_error},
                   {"min_gap", res.min_gap},
                   {"n_points", res.n_points}};
    return art;
}

Artifacts run_classify(const RunConfig& cfg) {
    const IntersectionReport rep = classify_intersection(cfg.model);
    Artifacts art;
    art.csv = "classification,gap_at_origin,fitted_exponent\n";
    art.csv += std::string(intersection_name(rep.type)) + "," +
               csv_row({rep.gap_at_origin, rep.fitted_exponent}) + "\n";
    art.results = {{"classification", intersection_name(rep.type)},
                   {"gap_at_origin", rep.gap_at_origin},
                   {"fitted_exponent", rep.fitted_exponent}};
    return art;
}

Artifacts run_force(const RunConfig& cfg) {
    const ForceReport rep = heisenberg_force(cfg.model, cfg.make_model_space());
    Artifacts art;
    art.csv = "fx_X,fx_sigma_y,fx_Py_sigma_z,fy_Y,fy_sigma_x,fy_Px_sigma_z,fx_residual,fy_residual\n";
    art.csv += csv_row({rep.fx_coefficients[0], rep.fx_coefficients[1], rep.fx_coefficients[2],
                        rep.fy_coefficients[0], rep.fy_coefficients[1], rep.fy_coefficients[2],
                        rep.fx_residual, rep.fy_residual}) +
               "\n";
    art.results = {{"fx_coefficients", rep.fx_coefficients},
                   {"fy_coefficients", rep.fy_coefficients},
                   {"fx_residual", rep.fx_residual},
                   {"fy_residual", rep.fy_residual}};
    return art;
}

Artifacts run_diracjc(const RunConfig& cfg) {
    const JcMatchReport rep =
        dirac_oscillator_jc_match(cfg.model, cfg.make_model_space(), cfg.diracjc.jc_cutoff);
    Artifacts art;
    const double hb = cfg.hbar_display;
    art.csv = "level,jc_value,deviation\n";
    for (std::size_t i = 0; i < rep.jc_levels.size(); ++i)
        art.csv += std::to_string(i) + "," +
                   csv_row({hb * rep.jc_levels[i], hb * rep.deviations[i]}) + "\n";
    art.results = {{"matched_levels", rep.matched_levels}, {"max_dev", hb * rep.max_dev}};
    return art;
}

Artifacts run_evolve(const RunConfig& cfg) {
    const SpaceDescriptor space = cfg.make_model_space();
    const Complex alpha =
        cfg.initial.alpha * std::exp(Complex(0.0, 1.0) * cfg.initial.alpha_phase);
    const QuantumState psi0 = product_ket(space, cfg.initial.atom_level, {{cfg.initial.mode, alpha}});
    const OperatorMatrix h = build_hamiltonian(cfg.model, space);
    const TrajectoryRecord rec = cfg.loss.any() ? evolve_lindblad(h, psi0, cfg.loss, cfg.evolution)
                                                : evolve_schrodinger(h, psi0, cfg.evolution);
    check_lindblad_outcome(rec);

    Artifacts art;
    const std::vector<std::string> cols = trajectory_columns(space);
    for (std::size_t c = 0; c < cols.size(); ++c) art.csv += (c ? "," : "") + cols[c];
    art.csv += "\n";
    append_trajectory_rows(art.csv, rec, cols);
    art.results = {{"integrator", stats_json(rec.stats)}, {"n_records", rec.times.size()}};
    return art;
}

Artifacts run_nonabelian(const RunConfig& cfg) {
    const SpaceDescriptor space = cfg.make_model_space();
    auto one = [&](LoopDirection dir) {
        TrajectoryRecord r = run_nonabelian_loop(cfg.model, space, dir, cfg.nonabelian.alpha,
                                                 cfg.loss, cfg.evolution,
                                                 cfg.nonabelian.phase_override);
        check_lindblad_outcome(r);
        return r;
    };

    Artifacts art;
    if (cfg.nonabelian.direction == "both") {
        const TrajectoryRecord cw = one(LoopDirection::Clockwise);
        const TrajectoryRecord ccw = one(LoopDirection::CounterClockwise);
        double max_diff = 0.0;
        const auto& wcw = cw.at("W");
        const auto& wccw = ccw.at("W");
        art.csv = "t,W_cw,W_ccw\n";
        for (std::size_t i = 0; i < cw.times.size(); ++i) {
            max_diff = std::max(max_diff, std::abs(wcw[i] - wccw[i]));
            art.csv += csv_row({cw.times[i], wcw[i], wccw[i]}) + "\n";
        }
        art.results = {{"max_abs_w_difference", max_diff}, {"integrator", stats_json(cw.stats)}};
    } else {
        const TrajectoryRecord rec = one(cfg.nonabelian.direction == "cw"
                                             ? LoopDirection::Clockwise
                                             : LoopDirection::CounterClockwise);
        const std::vector<std::string> cols = trajectory_columns(space);
        for (std::size_t c = 0; c < cols.size(); ++c) art.csv += (c ? "," : "") + cols[c];
        art.csv += "\n";
        append_trajectory_rows(art.csv, rec, cols);
        art.results = {{"integrator", stats_json(rec.stats)}};
    }
    return art;
}

Artifacts run_hall(const RunConfig& cfg) {
    const SpaceDescriptor space = cfg.make_model_space();
    const HallResult res = run_hall_experiment(cfg.model, space, cfg.hall.atom_level,
                                               cfg.hall.alpha, cfg.loss, cfg.evolution);
    check_lindblad_outcome(res.record);

    Artifacts art;
    const std::vector<std::string> cols = trajectory_columns(space);
    for (std::size_t c = 0; c < cols.size(); ++c) art.csv += (c ? "," : "") + cols[c];
    art.csv += "\n";
    append_trajectory_rows(art.csv, res.record, cols);
    art.results = {{"swept_area", res.swept_area},
                   {"transfer_ratio", res.transfer_ratio},
                   {"integrator", stats_json(res.record.stats)}};
    return art;
}

Artifacts run_zitter(const RunConfig& cfg) {
    const SpaceDescriptor space = cfg.make_model_space();
    const ZitterResult res = zitterbewegung_probe(cfg.model, space, cfg.zitter.seed_alpha,
                                                  cfg.zitter.seed_level, cfg.evolution);

    Artifacts art;
    const std::vector<std::string> cols = trajectory_columns(space);
    for (std::size_t c = 0; c < cols.size(); ++c) art.csv += (c ? "," : "") + cols[c];
    art.csv += "\n";
    append_trajectory_rows(art.csv, res.record, cols);
    art.results = {{"dominant_frequency", cfg.hbar_display * res.dominant_frequency},
                   {"branch_gap", cfg.hbar_display * res.branch_gap},
                   {"relative_mismatch",
                    std::abs(res.dominant_frequency - std::abs(res.branch_gap)) /
                        std::abs(res.branch_gap)},
                   {"integrator", stats_json(res.record.stats)}};
    return art;
}

} // namespace

RunOutcome run_experiment(const RunConfig& cfg, const fs::path& out_dir) {
    RunOutcome out;
    out.csv_path = out_dir / cfg.csv_name;
    out.manifest_path = out_dir / cfg.manifest_name;
    const fs::path csv_tmp = out.csv_path.string() + ".tmp";
    const fs::path man_tmp = out.manifest_path.string() + ".tmp";

    auto cleanup = [&] {
        std::error_code ec;
        fs::remove(csv_tmp, ec);
        fs::remove(man_tmp, ec);
    };

    try {
        Artifacts art;
        if (cfg.experiment == "surface") art = run_surface(cfg);
        else if (cfg.experiment == "minima") art = run_minima(cfg);
        else if (cfg.experiment == "gauge") art = run_gauge(cfg);
        else if (cfg.experiment == "berry") art = run_berry(cfg);
        else if (cfg.experiment == "classify") art = run_classify(cfg);
        else if (cfg.experiment == "force") art = run_force(cfg);
        else if (cfg.experiment == "diracjc") art = run_diracjc(cfg);
        else if (cfg.experiment == "evolve") art = run_evolve(cfg);
        else if (cfg.experiment == "nonabelian") art = run_nonabelian(cfg);
        else if (cfg.experiment == "hall") art = run_hall(cfg);
        else if (cfg.experiment == "zitter") art = run_zitter(cfg);
        else throw ConfigError("config: unknown experiment '" + cfg.experiment + "'");

        out.manifest = Json{{"tool", "qedsim"},
                            {"version", kVersion},
                            {"experiment", cfg.experiment},
                            {"config", cfg.to_json()},
                            {"results", art.results},
                            {"outputs", Json{{"csv", cfg.csv_name}}}};

        fs::create_directories(out_dir);
        {
            std::ofstream f(csv_tmp, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + csv_tmp.string());
            f << art.csv;
        }
        {
            std::ofstream f(man_tmp, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + man_tmp.string());
            f << out.manifest.dump(2) << "\n";
        }
        fs::rename(csv_tmp, out.csv_path);
        fs::rename(man_tmp, out.manifest_path);
        out.exit_code = 0;
    } catch (const NumericalError& e) {
        cleanup();
        out.exit_code = 3;
        out.error = e.what();
    } catch (const ConfigError& e) {
        cleanup();
        out.exit_code = 2;
        out.error = e.what();
    } catch (const std::invalid_argument& e) {
        cleanup();
        out.exit_code = 2;
        out.error = e.what();
    } catch (const std::exception& e) {
        cleanup();
        out.exit_code = 3;
        out.error = e.what();
    }
    return out;
}

RunOutcome run_config_text(const std::string& text, const fs::path& out_dir) {
    RunConfig cfg;
    try {
        cfg = parse_config(text);
    } catch (const std::exception& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.error = e.what();
        return out;
    }
    return run_experiment(cfg, out_dir);
}

} // namespace qedsim
