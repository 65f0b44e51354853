// dynamics.hpp — Closed (Schrodinger) and open (Lindblad) propagation with
// observable recording, plus the canned loop-direction, Hall and trembling-
// motion experiments.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qedsim/model.hpp"
#include "qedsim/states.hpp"

namespace qedsim {

// Cavity decay per mode and atomic spontaneous emission; the atomic lowering
// operator is |lower><upper| (1-based levels).
struct LossSpec {
    std::vector<double> kappa; // per mode; empty means all zero
    double gamma_atom = 0.0;
    int lower_level = 2;
    int upper_level = 1;

    bool any() const;
    void check(const SpaceDescriptor& space) const;
};

enum class StepMethod { RungeKutta4, Unitary4, Adaptive54 };

const char* method_name(StepMethod m);

// Fixed-step methods take n_steps strides of t_max / n_steps; the adaptive
// method uses the same grid as record targets and controls its internal step
// with abs_tol/rel_tol. record_every thins the recorded samples.
struct EvolutionConfig {
    double t_max = 10.0;
    long n_steps = 1;
    StepMethod method = StepMethod::RungeKutta4;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    long record_every = 1;
    std::vector<std::string> observables; // empty -> default set for the space

    void check() const;
};

struct IntegratorStats {
    std::string method;
    double dt = 0.0;
    long steps_taken = 0;
    long steps_rejected = 0;
    double conservation_drift = 0.0; // max |norm-1| (closed) or |trace-1| (open)
    double min_eigenvalue = 0.0;     // most negative density eigenvalue seen (open)
    bool aborted = false;
    std::string abort_reason;
    long abort_step = -1;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> series;
    std::string model_summary;
    std::string space_summary;
    IntegratorStats stats;
    std::optional<Vector> final_ket;    // closed runs
    std::optional<Matrix> final_density; // open runs

    const std::vector<double>& at(const std::string& name) const;
};

struct NumericalError : std::runtime_error {
    NumericalError(const std::string& what, long step_index)
        : std::runtime_error(what), step(step_index) {}
    long step;
};

// Default observable names for a space: W, X/Y, n_x/n_y, purity, trace.
std::vector<std::string> default_observables(const SpaceDescriptor& space);

TrajectoryRecord evolve_schrodinger(const OperatorMatrix& h, const QuantumState& psi0,
                                    const EvolutionConfig& cfg);

// d rho/dt = -i[H, rho] + sum_k kappa_k D[a_k] rho + gamma D[sigma_-] rho,
// D[L] rho = L rho L† - {L†L, rho}/2. rho is re-Hermitized every step; kets
// are promoted to density matrices. A density eigenvalue below -1e-6 stops
// the run and sets the abort flag in stats instead of throwing.
TrajectoryRecord evolve_lindblad(const OperatorMatrix& h, const QuantumState& rho0,
                                 const LossSpec& losses, const EvolutionConfig& cfg);

enum class LoopDirection { Clockwise, CounterClockwise };

// Initial state: coherent alpha_mag e^{i phi} in mode x, vacuum in y, atom in
// its lower level |2>. phi = +pi/4 (counter-clockwise) or -pi/4 (clockwise)
// displaces both quadratures and sets the circulation sense; phase_override
// replaces phi. Multiples of pi/2 are direction-blind: those starts map onto
// each other under the sigma_z Pi_x Pi_y symmetry of the Hamiltonian and give
// identical inversion traces.
TrajectoryRecord run_nonabelian_loop(const ModelSpec& spec, const SpaceDescriptor& space,
                                     LoopDirection direction, double alpha_mag,
                                     const LossSpec& losses, const EvolutionConfig& cfg,
                                     std::optional<double> phase_override = std::nullopt);

struct HallResult {
    TrajectoryRecord record;
    double swept_area = 0.0;     // 1/2 sum (<X> d<Y> - <Y> d<X>) over the trajectory
    double transfer_ratio = 0.0; // max_t <n_y> / <n_x>(0)
};

HallResult run_hall_experiment(const ModelSpec& spec, const SpaceDescriptor& space,
                               int atom_level, double alpha_mag, const LossSpec& losses,
                               const EvolutionConfig& cfg);

struct ZitterResult {
    TrajectoryRecord record;
    double dominant_frequency = 0.0; // spectral peak of mean-removed <X>(t), angular units
    double branch_gap = 0.0;         // eigenvalue gap of the superposed branches
    int upper_index = -1;
    int lower_index = -1;
};

// Prepares an equal superposition of the best-overlap upper-branch and
// lower-branch eigenvectors (branch sign from <sigma_z>), seeded by a small
// coherent state in mode x with the atom in seed_level.
ZitterResult zitterbewegung_probe(const ModelSpec& spec, const SpaceDescriptor& space,
                                  double seed_alpha, int seed_level, const EvolutionConfig& cfg);

// Angular frequency of the dominant spectral peak of a uniformly sampled
// signal: Hann-windowed coarse scan refined by golden-section on |DFT|^2.
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values);

} // namespace qedsim
