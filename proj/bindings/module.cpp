// Python bindings for the core operations: model Hamiltonians, surfaces,
// gauge reports, geometric phases and the dynamics presets.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qedsim/dynamics.hpp"
#include "qedsim/gauge.hpp"
#include "qedsim/geometry.hpp"
#include "qedsim/runner.hpp"
#include "qedsim/version.hpp"

namespace py = pybind11;
using namespace qedsim;

namespace {

ModelSpec model_from_kwargs(const std::string& variant, double omega, double g,
                            std::optional<double> Omega, std::optional<double> e3,
                            std::optional<double> c, std::optional<double> mass) {
    ModelSpec spec;
    bool ok = false;
    for (ModelVariant v : {ModelVariant::BetaE, ModelVariant::EpsilonE, ModelVariant::RennerTeller,
                           ModelVariant::DiracLimit, ModelVariant::DiracOscillator})
        if (variant == variant_name(v)) {
            spec.variant = v;
            ok = true;
        }
    if (!ok) throw std::invalid_argument("unknown model variant '" + variant + "'");
    spec.omega = omega;
    spec.g = g;
    spec.Omega = Omega;
    spec.e3 = e3;
    spec.c = c;
    spec.mass = mass;
    validate(spec);
    return spec;
}

py::dict record_to_dict(const TrajectoryRecord& rec) {
    py::dict series;
    for (const auto& [name, values] : rec.series) series[name.c_str()] = values;
    py::dict stats;
    stats["method"] = rec.stats.method;
    stats["dt"] = rec.stats.dt;
    stats["steps_taken"] = rec.stats.steps_taken;
    stats["conservation_drift"] = rec.stats.conservation_drift;
    stats["aborted"] = rec.stats.aborted;
    stats["abort_reason"] = rec.stats.abort_reason;
    py::dict out;
    out["times"] = rec.times;
    out["series"] = series;
    out["stats"] = stats;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cavity-QED quadrature simulator core";
    m.attr("__version__") = kVersion;

    py::class_<SpaceDescriptor>(m, "Space")
        .def(py::init([](std::vector<int> cutoffs, int atom_levels) {
                 return make_space(std::move(cutoffs), atom_levels);
             }),
             py::arg("cutoffs"), py::arg("atom_levels") = 2)
        .def_property_readonly("dim", &SpaceDescriptor::dim)
        .def_property_readonly("atom_levels", &SpaceDescriptor::atom_levels)
        .def("__repr__", [](const SpaceDescriptor& s) {
            std::string r = "Space(cutoffs=[";
            for (std::size_t k = 0; k < s.n_modes(); ++k)
                r += (k ? "," : "") + std::to_string(s.mode(k).cutoff);
            return r + "], atom_levels=" + std::to_string(s.atom_levels()) + ")";
        });

    py::class_<ModelSpec>(m, "Model")
        .def(py::init(&model_from_kwargs), py::arg("variant"), py::arg("omega") = 1.0,
             py::arg("g") = 0.0, py::arg("Omega") = std::nullopt, py::arg("E3") = std::nullopt,
             py::arg("c") = std::nullopt, py::arg("mass") = std::nullopt)
        .def_property_readonly("variant",
                               [](const ModelSpec& s) { return std::string(variant_name(s.variant)); })
        .def_readonly("omega", &ModelSpec::omega)
        .def_readonly("g", &ModelSpec::g);

    m.def(
        "build_hamiltonian",
        [](const ModelSpec& spec, const SpaceDescriptor& space) {
            return build_hamiltonian(spec, space).matrix();
        },
        py::arg("model"), py::arg("space"));

    m.def(
        "annihilator",
        [](const SpaceDescriptor& space, const std::string& label) {
            return make_annihilator(space, label).matrix();
        },
        py::arg("space"), py::arg("mode") = "x");

    m.def(
        "quadratures",
        [](const SpaceDescriptor& space, const std::string& label) {
            auto [x, p] = make_quadratures(space, label);
            return py::make_tuple(x.matrix(), p.matrix());
        },
        py::arg("space"), py::arg("mode") = "x");

    m.def(
        "coherent_ket",
        [](const SpaceDescriptor& space, const std::string& label, Complex alpha, int atom_level) {
            return coherent_ket(space, label, alpha, atom_level).ket();
        },
        py::arg("space"), py::arg("mode") = "x", py::arg("alpha") = 0.0, py::arg("atom_level") = 1);

    m.def(
        "adiabatic_surfaces",
        [](const ModelSpec& spec, const std::vector<std::vector<double>>& axes) {
            const SurfaceGrid g = adiabatic_surfaces(spec, axes);
            return py::make_tuple(g.axes, g.branches);
        },
        py::arg("model"), py::arg("axes"));

    m.def(
        "diabatic_surfaces",
        [](const ModelSpec& spec, const std::vector<std::vector<double>>& axes) {
            const SurfaceGrid g = diabatic_surfaces(spec, axes);
            return py::make_tuple(g.axes, g.branches);
        },
        py::arg("model"), py::arg("axes"));

    m.def("locate_minima", [](const ModelSpec& spec) {
        const MinimaReport rep = locate_minima(spec);
        py::dict d;
        d["regime"] = regime_name(rep.regime);
        d["minima"] = rep.minima;
        d["g_star_derived"] = rep.threshold_g_derived;
        d["g_star_literature"] = rep.threshold_g_literature;
        return d;
    });

    m.def(
        "gauge_report",
        [](const ModelSpec& spec) {
            const GaugeReport rep = extract_gauge_potentials(spec);
            py::dict d;
            d["components"] = rep.components;
            d["labels"] = rep.component_labels;
            d["scalar_potential"] = rep.scalar_potential;
            d["commutators"] = rep.commutators;
            d["classification"] = gauge_class_name(rep.classification);
            d["max_commutator_norm"] = rep.max_commutator_norm;
            d["rewrite_residual"] = rep.rewrite_residual;
            return d;
        },
        py::arg("model"));

    m.def("gauge_rewrite_residual", &gauge_rewrite_residual, py::arg("model"), py::arg("space"));

    m.def(
        "berry_phase",
        [](const ModelSpec& spec, double center_x, double center_y, double radius, int n_points,
           int branch) {
            LoopSpec loop{center_x, center_y, radius, n_points, branch};
            const BerryPhaseResult res = berry_phase(spec, loop);
            py::dict d;
            d["phase"] = res.phase;
            d["richardson_error"] = res.richardson_error;
            d["min_gap"] = res.min_gap;
            return d;
        },
        py::arg("model"), py::arg("center_x") = 0.0, py::arg("center_y") = 0.0,
        py::arg("radius") = 1.0, py::arg("n_points") = 512, py::arg("branch") = 0);

    m.def("classify_intersection", [](const ModelSpec& spec) {
        return std::string(intersection_name(classify_intersection(spec).type));
    });

    m.def(
        "heisenberg_force",
        [](const ModelSpec& spec, const SpaceDescriptor& space) {
            const ForceReport rep = heisenberg_force(spec, space);
            py::dict d;
            d["fx_coefficients"] = rep.fx_coefficients;
            d["fy_coefficients"] = rep.fy_coefficients;
            d["fx_residual"] = rep.fx_residual;
            d["fy_residual"] = rep.fy_residual;
            return d;
        },
        py::arg("model"), py::arg("space"));

    m.def(
        "dirac_jc_match",
        [](const ModelSpec& spec, const SpaceDescriptor& space, int jc_cutoff) {
            const JcMatchReport rep = dirac_oscillator_jc_match(spec, space, jc_cutoff);
            py::dict d;
            d["matched_levels"] = rep.matched_levels;
            d["max_dev"] = rep.max_dev;
            d["jc_levels"] = rep.jc_levels;
            d["deviations"] = rep.deviations;
            return d;
        },
        py::arg("model"), py::arg("space"), py::arg("jc_cutoff") = 0);

    py::class_<LossSpec>(m, "Losses")
        .def(py::init([](std::vector<double> kappa, double gamma, int lower, int upper) {
                 LossSpec l;
                 l.kappa = std::move(kappa);
                 l.gamma_atom = gamma;
                 l.lower_level = lower;
                 l.upper_level = upper;
                 return l;
             }),
             py::arg("kappa") = std::vector<double>{}, py::arg("gamma") = 0.0,
             py::arg("lower_level") = 2, py::arg("upper_level") = 1);

    py::class_<EvolutionConfig>(m, "Evolution")
        .def(py::init([](double t_max, long n_steps, const std::string& method, double abs_tol,
                         double rel_tol, long record_every) {
                 EvolutionConfig cfg;
                 cfg.t_max = t_max;
                 cfg.n_steps = n_steps;
                 if (method == "rk4") cfg.method = StepMethod::RungeKutta4;
                 else if (method == "unitary4") cfg.method = StepMethod::Unitary4;
                 else if (method == "adaptive54") cfg.method = StepMethod::Adaptive54;
                 else throw std::invalid_argument("method must be rk4, unitary4 or adaptive54");
                 cfg.abs_tol = abs_tol;
                 cfg.rel_tol = rel_tol;
                 cfg.record_every = record_every;
                 return cfg;
             }),
             py::arg("t_max"), py::arg("n_steps"), py::arg("method") = "rk4",
             py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-8, py::arg("record_every") = 1);

    m.def(
        "evolve_schrodinger",
        [](const Matrix& h, const Vector& psi0, const SpaceDescriptor& space,
           const EvolutionConfig& cfg) {
            return record_to_dict(
                evolve_schrodinger(OperatorMatrix(space, h), QuantumState(space, psi0), cfg));
        },
        py::arg("h"), py::arg("psi0"), py::arg("space"), py::arg("config"));

    m.def(
        "evolve_lindblad",
        [](const Matrix& h, const Vector& psi0, const SpaceDescriptor& space, const LossSpec& losses,
           const EvolutionConfig& cfg) {
            return record_to_dict(
                evolve_lindblad(OperatorMatrix(space, h), QuantumState(space, psi0), losses, cfg));
        },
        py::arg("h"), py::arg("psi0"), py::arg("space"), py::arg("losses"), py::arg("config"));

    m.def(
        "run_nonabelian_loop",
        [](const ModelSpec& spec, const SpaceDescriptor& space, const std::string& direction,
           double alpha, const LossSpec& losses, const EvolutionConfig& cfg) {
            const LoopDirection dir = direction == "cw" ? LoopDirection::Clockwise
                                                        : LoopDirection::CounterClockwise;
            return record_to_dict(run_nonabelian_loop(spec, space, dir, alpha, losses, cfg));
        },
        py::arg("model"), py::arg("space"), py::arg("direction"), py::arg("alpha"),
        py::arg("losses") = LossSpec{}, py::arg("config"));

    m.def(
        "run_hall_experiment",
        [](const ModelSpec& spec, const SpaceDescriptor& space, int atom_level, double alpha,
           const LossSpec& losses, const EvolutionConfig& cfg) {
            const HallResult res = run_hall_experiment(spec, space, atom_level, alpha, losses, cfg);
            py::dict d = record_to_dict(res.record);
            d["swept_area"] = res.swept_area;
            d["transfer_ratio"] = res.transfer_ratio;
            return d;
        },
        py::arg("model"), py::arg("space"), py::arg("atom_level"), py::arg("alpha"),
        py::arg("losses") = LossSpec{}, py::arg("config"));

    m.def(
        "zitterbewegung_probe",
        [](const ModelSpec& spec, const SpaceDescriptor& space, double seed_alpha, int seed_level,
           const EvolutionConfig& cfg) {
            const ZitterResult res = zitterbewegung_probe(spec, space, seed_alpha, seed_level, cfg);
            py::dict d = record_to_dict(res.record);
            d["dominant_frequency"] = res.dominant_frequency;
            d["branch_gap"] = res.branch_gap;
            return d;
        },
        py::arg("model"), py::arg("space"), py::arg("seed_alpha") = 0.3, py::arg("seed_level") = 2,
        py::arg("config"));

    m.def(
        "run_config",
        [](const std::string& config_text, const std::string& out_dir) {
            const RunOutcome out = run_config_text(config_text, out_dir);
            py::dict d;
            d["exit_code"] = out.exit_code;
            d["error"] = out.error;
            d["csv_path"] = out.csv_path.string();
            d["manifest_path"] = out.manifest_path.string();
            return d;
        },
        py::arg("config_text"), py::arg("out_dir"));
}
