#include "qedsim/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qedsim {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

std::string mode_suffix(const SpaceDescriptor& space, std::size_t k) {
    return space.mode(k).label;
}

std::string quadrature_name(const SpaceDescriptor& space, std::size_t k) {
    const std::string& label = space.mode(k).label;
    if (label == "x") return "X";
    if (label == "y") return "Y";
    return "X_" + label;
}

Matrix inversion_block(int levels) {
    Matrix w = Matrix::Zero(levels, levels);
    w(0, 0) = 1.0;
    w(1, 1) = -1.0;
    return w;
}


std::string summarize_model(const ModelSpec& spec) {
    std::string s = variant_name(spec.variant);
    auto add = [&](const char* k, double v) { s += std::string(" ") + k + "=" + std::to_string(v); };
    add("omega", spec.omega);
    if (spec.Omega) add("Omega", *spec.Omega);
    if (spec.e3) add("E3", *spec.e3);
    add("g", spec.g);
    if (spec.c) add("c", *spec.c);
    if (spec.mass) add("mass", *spec.mass);
    return s;
}

std::string summarize_space(const SpaceDescriptor& space) {
    std::string s = "levels=" + std::to_string(space.atom_levels());
    for (const Mode& m : space.modes()) s += " " + m.label + ":" + std::to_string(m.cutoff);
    return s;
}

struct Observable {
    enum class Kind { Expectation, Trace, Purity };
    std::string name;
    Kind kind = Kind::Expectation;
    Matrix op;
};

Matrix quadrature_x_full(const SpaceDescriptor& space, std::size_t k) {
    const Matrix a = lowering_block(space.mode(k).cutoff);
    return embed_mode_op(space, k, ((a + a.adjoint()) / std::sqrt(2.0)).eval()).matrix();
}

std::vector<Observable> build_observables(const SpaceDescriptor& space,
                                          const std::vector<std::string>& names) {
    std::vector<Observable> obs;
    for (const std::string& name : names) {
        if (name == "trace") {
            obs.push_back({name, Observable::Kind::Trace, {}});
            continue;
        }
        if (name == "purity") {
            obs.push_back({name, Observable::Kind::Purity, {}});
            continue;
        }
        if (name == "W") {
            obs.push_back({name, Observable::Kind::Expectation,
                           embed_atomic_op(space, inversion_block(space.atom_levels())).matrix()});
            continue;
        }
        bool found = false;
        for (std::size_t k = 0; k < space.n_modes(); ++k) {
            if (name == quadrature_name(space, k)) {
                obs.push_back({name, Observable::Kind::Expectation, quadrature_x_full(space, k)});
                found = true;
                break;
            }
            if (name == "n_" + mode_suffix(space, k)) {
                obs.push_back({name, Observable::Kind::Expectation,
                               make_number_op(space, space.mode(k).label).matrix()});
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("evolve: unknown observable '" + name + "'");
    }
    return obs;
}

std::vector<long> record_steps(long n_steps, long record_every) {
    std::vector<long> idx{0};
    for (long i = record_every; i <= n_steps; i += record_every) idx.push_back(i);
    if (idx.back() != n_steps) idx.push_back(n_steps);
    return idx;
}

// ------------------------------------------------------------- fixed RK4 step

template <class State, class Rhs>
void rk4_step(const Rhs& f, State& y, double dt, State& k1, State& k2, State& k3, State& k4,
              State& tmp) {
    f(y, k1);
    tmp = y + (0.5 * dt) * k1;
    f(tmp, k2);
    tmp = y + (0.5 * dt) * k2;
    f(tmp, k3);
    tmp = y + dt * k3;
    f(tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// --------------------------------------------------- adaptive Dormand-Prince

template <class State>
double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc =
            atol + rtol * std::max(std::abs(*(y0.data() + i)), std::abs(*(y1.data() + i)));
        m = std::max(m, std::abs(*(err.data() + i)) / sc);
    }
    return m;
}

// Integrates y from t0 to t1 with the 5(4) embedded pair; returns work stats
// through the counters. The step size persists across calls via dt_io.
template <class State, class Rhs>
void adaptive_span(const Rhs& f, State& y, double t0, double t1, double atol, double rtol,
                   double& dt_io, long& accepted, long& rejected) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, tmp = y, ynew = y, err = y;
    double t = t0;
    double dt = dt_io > 0 ? dt_io : (t1 - t0) / 16.0;
    f(y, k1);
    while (t < t1) {
        dt = std::min(dt, t1 - t);
        if (dt < 1e-14 * std::max(1.0, std::abs(t1)))
            throw NumericalError("adaptive step size underflow", accepted);
        tmp = y + dt * (a21 * k1);
        f(tmp, k2);
        tmp = y + dt * (a31 * k1 + a32 * k2);
        f(tmp, k3);
        tmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
        f(tmp, k4);
        tmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(tmp, k5);
        tmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(tmp, k6);
        ynew = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(ynew, k7);
        err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, ynew, atol, rtol);
        if (en <= 1.0) {
            t += dt;
            y.swap(ynew);
            k1.swap(k7); // first-same-as-last
            ++accepted;
        } else {
            ++rejected;
        }
        const double fac = en > 0 ? 0.9 * std::pow(en, -0.2) : 5.0;
        dt *= std::clamp(fac, 0.2, 5.0);
    }
    dt_io = dt;
}

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

} // namespace

bool LossSpec::any() const {
    if (gamma_atom > 0.0) return true;
    return std::any_of(kappa.begin(), kappa.end(), [](double k) { return k > 0.0; });
}

void LossSpec::check(const SpaceDescriptor& space) const {
    if (!kappa.empty() && kappa.size() != space.n_modes())
        throw std::invalid_argument("LossSpec: need one kappa per mode (or none)");
    for (double k : kappa)
        if (k < 0.0) throw std::invalid_argument("LossSpec: kappa must be >= 0");
    if (gamma_atom < 0.0) throw std::invalid_argument("LossSpec: gamma_atom must be >= 0");
    const int m = space.atom_levels();
    if (lower_level < 1 || lower_level > m || upper_level < 1 || upper_level > m ||
        lower_level == upper_level)
        throw std::invalid_argument("LossSpec: lowering operator levels out of range");
}

const char* method_name(StepMethod m) {
    switch (m) {
        case StepMethod::RungeKutta4: return "rk4";
        case StepMethod::Unitary4: return "unitary4";
        case StepMethod::Adaptive54: return "adaptive54";
    }
    return "?";
}

void EvolutionConfig::check() const {
    if (t_max < 0.0) throw std::invalid_argument("EvolutionConfig: t_max must be >= 0");
    if (n_steps < 1) throw std::invalid_argument("EvolutionConfig: n_steps must be >= 1");
    if (record_every < 1) throw std::invalid_argument("EvolutionConfig: record_every must be >= 1");
    if (method == StepMethod::Adaptive54 && (abs_tol <= 0.0 || rel_tol <= 0.0))
        throw std::invalid_argument("EvolutionConfig: adaptive tolerances must be positive");
}

const std::vector<double>& TrajectoryRecord::at(const std::string& name) const {
    auto it = series.find(name);
    if (it == series.end())
        throw std::out_of_range("TrajectoryRecord: no series named '" + name + "'");
    return it->second;
}

std::vector<std::string> default_observables(const SpaceDescriptor& space) {
    std::vector<std::string> names{"W"};
    for (std::size_t k = 0; k < space.n_modes(); ++k) names.push_back(quadrature_name(space, k));
    for (std::size_t k = 0; k < space.n_modes(); ++k) names.push_back("n_" + mode_suffix(space, k));
    names.push_back("purity");
    names.push_back("trace");
    return names;
}

TrajectoryRecord evolve_schrodinger(const OperatorMatrix& h, const QuantumState& psi0,
                                    const EvolutionConfig& cfg) {
    if (!psi0.is_ket())
        throw std::invalid_argument("evolve_schrodinger: initial state must be a ket");
    if (!(h.space() == psi0.space()))
        throw std::invalid_argument("evolve_schrodinger: state and Hamiltonian spaces differ");
    cfg.check();
    if (cfg.method == StepMethod::Adaptive54 && cfg.t_max > 0 && cfg.n_steps < 1)
        throw std::invalid_argument("evolve_schrodinger: adaptive method still needs a record grid");

    const SpaceDescriptor& space = h.space();
    const std::vector<std::string> names =
        cfg.observables.empty() ? default_observables(space) : cfg.observables;
    const std::vector<Observable> obs = build_observables(space, names);

    TrajectoryRecord rec;
    rec.stats.method = method_name(cfg.method);
    rec.space_summary = summarize_space(space);
    for (const auto& o : obs) rec.series[o.name] = {};

    Vector psi = psi0.ket();
    auto record = [&](double t, long step) {
        if (!all_finite(psi))
            throw NumericalError("evolve_schrodinger: NaN/Inf at step " + std::to_string(step), step);
        rec.times.push_back(t);
        const double norm = psi.norm();
        rec.stats.conservation_drift = std::max(rec.stats.conservation_drift, std::abs(norm - 1.0));
        for (const auto& o : obs) {
            double v = 0.0;
            switch (o.kind) {
                case Observable::Kind::Trace: v = norm * norm; break;
                case Observable::Kind::Purity: v = norm * norm * norm * norm; break;
                case Observable::Kind::Expectation:
                    v = (psi.adjoint() * o.op * psi)(0).real();
                    break;
            }
            rec.series[o.name].push_back(v);
        }
    };

    record(0.0, 0);
    if (cfg.t_max == 0.0) {
        rec.stats.dt = 0.0;
        rec.final_ket = psi;
        return rec;
    }

    const double dt = cfg.t_max / cfg.n_steps;
    rec.stats.dt = dt;
    const std::vector<long> marks = record_steps(cfg.n_steps, cfg.record_every);

    switch (cfg.method) {
        case StepMethod::RungeKutta4: {
            const Matrix& hm = h.matrix();
            auto rhs = [&](const Vector& y, Vector& out) { out.noalias() = -kI * (hm * y); };
            Vector k1 = psi, k2 = psi, k3 = psi, k4 = psi, tmp = psi;
            std::size_t mark = 1;
            for (long i = 1; i <= cfg.n_steps; ++i) {
                rk4_step(rhs, psi, dt, k1, k2, k3, k4, tmp);
                ++rec.stats.steps_taken;
                if (mark < marks.size() && marks[mark] == i) {
                    record(i * dt, i);
                    ++mark;
                }
            }
            break;
        }
        case StepMethod::Unitary4: {
            // (2,2)-Pade approximant of exp(-iH dt): exactly norm-preserving,
            // fourth-order accurate; the factorization is reused every step.
            const Index d = space.dim();
            const Matrix z = Complex(0.0, -dt) * h.matrix();
            const Matrix z2 = (z * z).eval();
            const Matrix mplus = Matrix::Identity(d, d) + 0.5 * z + z2 / 12.0;
            const Matrix mminus = Matrix::Identity(d, d) - 0.5 * z + z2 / 12.0;
            Eigen::PartialPivLU<Matrix> lu(mminus);
            std::size_t mark = 1;
            for (long i = 1; i <= cfg.n_steps; ++i) {
                psi = lu.solve((mplus * psi).eval());
                ++rec.stats.steps_taken;
                if (mark < marks.size() && marks[mark] == i) {
                    record(i * dt, i);
                    ++mark;
                }
            }
            break;
        }
        case StepMethod::Adaptive54: {
            const Matrix& hm = h.matrix();
            auto rhs = [&](const Vector& y, Vector& out) { out.noalias() = -kI * (hm * y); };
            double dt_live = 0.0;
            for (std::size_t mark = 1; mark < marks.size(); ++mark) {
                adaptive_span(rhs, psi, marks[mark - 1] * dt, marks[mark] * dt, cfg.abs_tol,
                              cfg.rel_tol, dt_live, rec.stats.steps_taken, rec.stats.steps_rejected);
                record(marks[mark] * dt, marks[mark]);
            }
            break;
        }
    }
    rec.final_ket = psi;
    return rec;
}

TrajectoryRecord evolve_lindblad(const OperatorMatrix& h, const QuantumState& rho0,
                                 const LossSpec& losses, const EvolutionConfig& cfg) {
    if (!(h.space() == rho0.space()))
        throw std::invalid_argument("evolve_lindblad: state and Hamiltonian spaces differ");
    cfg.check();
    const SpaceDescriptor& space = h.space();
    losses.check(space);
    if (cfg.method == StepMethod::Unitary4)
        throw std::invalid_argument("evolve_lindblad: unitary4 is a ket-only method; use rk4 or adaptive54");

    struct Collapse {
        double rate;
        Matrix op;
        Matrix weight; // op† op
    };
    std::vector<Collapse> collapses;
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
        const double kap = k < losses.kappa.size() ? losses.kappa[k] : 0.0;
        if (kap > 0.0) {
            Matrix a = make_annihilator(space, space.mode(k).label).matrix();
            Matrix w = (a.adjoint() * a).eval();
            collapses.push_back({kap, std::move(a), std::move(w)});
        }
    }
    if (losses.gamma_atom > 0.0) {
        Matrix sm = make_atomic_projector(space, losses.lower_level, losses.upper_level).matrix();
        Matrix w = (sm.adjoint() * sm).eval();
        collapses.push_back({losses.gamma_atom, std::move(sm), std::move(w)});
    }

    const Matrix& hm = h.matrix();
    auto rhs = [&](const Matrix& r, Matrix& out) {
        out.noalias() = -kI * (hm * r);
        out.noalias() += kI * (r * hm);
        for (const Collapse& c : collapses) {
            out.noalias() += c.rate * (c.op * r * c.op.adjoint());
            out.noalias() -= (0.5 * c.rate) * (c.weight * r);
            out.noalias() -= (0.5 * c.rate) * (r * c.weight);
        }
    };

    const std::vector<std::string> names =
        cfg.observables.empty() ? default_observables(space) : cfg.observables;
    const std::vector<Observable> obs = build_observables(space, names);

    TrajectoryRecord rec;
    rec.stats.method = method_name(cfg.method);
    rec.space_summary = summarize_space(space);
    for (const auto& o : obs) rec.series[o.name] = {};

    Matrix rho = rho0.density();
    const std::vector<long> marks =
        cfg.t_max == 0.0 ? std::vector<long>{0} : record_steps(cfg.n_steps, cfg.record_every);
    const long check_stride = std::max<std::size_t>(1, marks.size() / 16);

    auto record = [&](double t, long step, std::size_t mark_index) -> bool {
        if (!all_finite(rho))
            throw NumericalError("evolve_lindblad: NaN/Inf at step " + std::to_string(step), step);
        rec.times.push_back(t);
        const double tr = rho.trace().real();
        rec.stats.conservation_drift = std::max(rec.stats.conservation_drift, std::abs(tr - 1.0));
        for (const auto& o : obs) {
            double v = 0.0;
            switch (o.kind) {
                case Observable::Kind::Trace: v = tr; break;
                case Observable::Kind::Purity: v = rho.squaredNorm(); break;
                case Observable::Kind::Expectation: v = (o.op * rho).trace().real(); break;
            }
            rec.series[o.name].push_back(v);
        }
        const bool is_last = mark_index + 1 == marks.size();
        if (mark_index % check_stride == 0 || is_last) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
            const double mn = es.eigenvalues().minCoeff();
            rec.stats.min_eigenvalue = std::min(rec.stats.min_eigenvalue, mn);
            if (mn < -1e-6) {
                rec.stats.aborted = true;
                rec.stats.abort_step = step;
                rec.stats.abort_reason =
                    "density eigenvalue " + std::to_string(mn) + " below -1e-6 at step " +
                    std::to_string(step);
                return false;
            }
        }
        return true;
    };

    if (!record(0.0, 0, 0)) {
        rec.final_density = rho;
        return rec;
    }
    if (cfg.t_max == 0.0) {
        rec.final_density = rho;
        return rec;
    }

    const double dt = cfg.t_max / cfg.n_steps;
    rec.stats.dt = dt;

    if (cfg.method == StepMethod::RungeKutta4) {
        Matrix k1 = rho, k2 = rho, k3 = rho, k4 = rho, tmp = rho;
        std::size_t mark = 1;
        for (long i = 1; i <= cfg.n_steps && mark < marks.size(); ++i) {
            rk4_step(rhs, rho, dt, k1, k2, k3, k4, tmp);
            rho = (0.5 * (rho + rho.adjoint())).eval();
            ++rec.stats.steps_taken;
            if (marks[mark] == i) {
                if (!record(i * dt, i, mark)) break;
                ++mark;
            }
        }
    } else { // Adaptive54
        double dt_live = 0.0;
        for (std::size_t mark = 1; mark < marks.size(); ++mark) {
            adaptive_span(rhs, rho, marks[mark - 1] * dt, marks[mark] * dt, cfg.abs_tol,
                          cfg.rel_tol, dt_live, rec.stats.steps_taken, rec.stats.steps_rejected);
            rho = (0.5 * (rho + rho.adjoint())).eval();
            if (!record(marks[mark] * dt, marks[mark], mark)) break;
        }
    }
    rec.final_density = rho;
    return rec;
}

namespace {

TrajectoryRecord run_two_mode(const ModelSpec& spec, const SpaceDescriptor& space,
                              const QuantumState& psi0, const LossSpec& losses,
                              const EvolutionConfig& cfg) {
    const OperatorMatrix h = build_hamiltonian(spec, space);
    TrajectoryRecord rec = losses.any() ? evolve_lindblad(h, psi0, losses, cfg)
                                        : evolve_schrodinger(h, psi0, cfg);
    rec.model_summary = summarize_model(spec);
    rec.space_summary = summarize_space(space);
    return rec;
}

} // namespace

TrajectoryRecord run_nonabelian_loop(const ModelSpec& spec, const SpaceDescriptor& space,
                                     LoopDirection direction, double alpha_mag,
                                     const LossSpec& losses, const EvolutionConfig& cfg,
                                     std::optional<double> phase_override) {
    validate(spec);
    if (spec.variant != ModelVariant::EpsilonE)
        throw std::invalid_argument("run_nonabelian_loop: requires the epsilon_e variant");
    // At phi in {0, ±pi/2, pi} the clockwise and anti-clockwise starts are
    // images of each other under the sigma_z Pi_x Pi_y symmetry of the
    // Hamiltonian, so the inversion cannot tell the directions apart; the
    // default quarter-turn phases stay off those axes.
    const double phi = phase_override
                           ? *phase_override
                           : (direction == LoopDirection::CounterClockwise ? 0.25 * kPi : -0.25 * kPi);
    const Complex alpha = alpha_mag * std::exp(kI * phi);
    const QuantumState psi0 = product_ket(space, 2, {{"x", alpha}});
    return run_two_mode(spec, space, psi0, losses, cfg);
}

HallResult run_hall_experiment(const ModelSpec& spec, const SpaceDescriptor& space,
                               int atom_level, double alpha_mag, const LossSpec& losses,
                               const EvolutionConfig& cfg) {
    validate(spec);
    if (spec.variant != ModelVariant::EpsilonE)
        throw std::invalid_argument("run_hall_experiment: requires the epsilon_e variant");
    if (atom_level != 1 && atom_level != 2)
        throw std::invalid_argument("run_hall_experiment: atom_level must be 1 or 2");

    HallResult res;
    res.record = run_two_mode(spec, space, product_ket(space, atom_level, {{"x", alpha_mag}}),
                              losses, cfg);

    const auto& x = res.record.at("X");
    const auto& y = res.record.at("Y");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        res.swept_area += 0.5 * (x[i] * (y[i + 1] - y[i]) - y[i] * (x[i + 1] - x[i]));

    const auto& ny = res.record.at("n_y");
    const auto& nx = res.record.at("n_x");
    const double ny_max = ny.empty() ? 0.0 : *std::max_element(ny.begin(), ny.end());
    res.transfer_ratio = nx.front() > 0.0 ? ny_max / nx.front() : 0.0;
    return res;
}

ZitterResult zitterbewegung_probe(const ModelSpec& spec, const SpaceDescriptor& space,
                                  double seed_alpha, int seed_level, const EvolutionConfig& cfg) {
    validate(spec);
    if (spec.variant != ModelVariant::DiracLimit)
        throw std::invalid_argument("zitterbewegung_probe: requires the dirac_limit variant");
    require_compatible(spec, space);

    const OperatorMatrix h = build_hamiltonian(spec, space);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("zitterbewegung_probe: eigensolve failed");

    const Vector seed = product_ket(space, seed_level, {{"x", seed_alpha}}).ket();
    const Matrix wz = embed_atomic_op(space, inversion_block(space.atom_levels())).matrix();

    int best_low = -1;
    double ov_low = -1.0;
    std::vector<std::pair<double, int>> upper_candidates; // (overlap, index)
    for (Index i = 0; i < space.dim(); ++i) {
        const Vector v = es.eigenvectors().col(i);
        const double ov = std::norm((v.adjoint() * seed)(0));
        const double sz = (v.adjoint() * wz * v)(0).real();
        if (sz >= 0.0) {
            upper_candidates.emplace_back(ov, static_cast<int>(i));
        } else if (ov > ov_low) {
            ov_low = ov;
            best_low = static_cast<int>(i);
        }
    }
    if (best_low < 0 || ov_low <= 0.0 || upper_candidates.empty())
        throw std::runtime_error("zitterbewegung_probe: could not select one eigenvector per branch");

    // best-overlap upper partner that actually interferes in <X>; parity-even
    // partners have an exactly vanishing matrix element and carry no signal
    const Matrix xfull = quadrature_x_full(space, 0);
    const Vector x_low = xfull * es.eigenvectors().col(best_low);
    std::sort(upper_candidates.begin(), upper_candidates.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int best_up = -1;
    for (const auto& [ov, idx] : upper_candidates) {
        if (ov <= 0.0) break;
        if (std::abs((es.eigenvectors().col(idx).adjoint() * x_low)(0)) > 1e-8) {
            best_up = idx;
            break;
        }
    }
    if (best_up < 0)
        throw std::runtime_error(
            "zitterbewegung_probe: no upper-branch candidate carries <X> interference with the "
            "selected lower eigenvector");

    ZitterResult res;
    res.upper_index = best_up;
    res.lower_index = best_low;
    res.branch_gap = es.eigenvalues()(best_up) - es.eigenvalues()(best_low);
    if (std::abs(res.branch_gap) <= 1e-8)
        throw std::runtime_error("zitterbewegung_probe: selected branches are degenerate");

    auto phase_fixed = [&](int i) {
        Vector v = es.eigenvectors().col(i);
        const Complex c = (v.adjoint() * seed)(0);
        return (v * (c / std::abs(c))).eval();
    };
    const Vector vu = phase_fixed(best_up);
    const Vector vl = phase_fixed(best_low);

    Vector psi = ((vu + vl) / std::sqrt(2.0)).eval();
    res.record = evolve_schrodinger(h, QuantumState(space, psi), cfg);
    res.record.model_summary = summarize_model(spec);
    res.record.space_summary = summarize_space(space);

    res.dominant_frequency = dominant_frequency(res.record.times, res.record.at("X"));
    return res;
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 8 || times.size() != n)
        throw std::invalid_argument("dominant_frequency: need at least 8 uniform samples");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw std::invalid_argument("dominant_frequency: non-increasing time grid");

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> x(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
        x[i] = (values[i] - mean) * w;
        var += x[i] * x[i];
    }
    if (var < 1e-24)
        throw std::runtime_error("dominant_frequency: signal has no oscillating component");

    auto power = [&](double omega) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i] * std::exp(Complex(0.0, -omega * i * dt));
        return std::norm(s);
    };

    const double nyquist = kPi / dt;
    const double domega = 2.0 * kPi / (4.0 * n * dt); // 4x zero-pad density
    double best_w = domega, best_p = -1.0;
    for (double w = domega; w < nyquist; w += domega) {
        const double p = power(w);
        if (p > best_p) { best_p = p; best_w = w; }
    }

    // golden-section refinement of the peak
    double a = std::max(domega / 2, best_w - domega), b = std::min(nyquist, best_w + domega);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = power(c), fd = power(d);
    while (b - a > 1e-9 * best_w) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a); fc = power(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a); fd = power(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace qedsim
