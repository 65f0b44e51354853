// geometry.hpp — Geometric-phase and intersection analysis: discrete
// Wilson-loop Berry phases of the momentum-parametrized atomic eigenvectors,
// conical/glancing/avoided classification, and the Heisenberg force check.

#pragma once

#include <array>

#include "qedsim/model.hpp"

namespace qedsim {

// Circle in momentum space; samples are theta_i = 2 pi i / n_points and the
// loop is closed back onto the first sample. branch is a 0-based index into
// the ascending adiabatic branches.
struct LoopSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 1.0;
    int n_points = 64;
    int branch = 0;
};

struct BerryPhaseResult {
    double phase = 0.0;            // Richardson-extrapolated from n and 2n points, in (-pi, pi]
    double phase_raw = 0.0;        // plain n-point Wilson-loop value
    double richardson_error = 0.0; // |gamma_n - gamma_2n| / 3
    double min_gap = 0.0;          // smallest branch gap met along the loop
    int n_points = 0;
};

// gamma = -arg prod_i <u(theta_i)|u(theta_{i+1})>, gauge independent because
// each eigenvector enters once as bra and once as ket.
BerryPhaseResult berry_phase(const ModelSpec& spec, const LoopSpec& loop);

enum class IntersectionType { Conical, Glancing, Avoided };

const char* intersection_name(IntersectionType t);

struct IntersectionReport {
    IntersectionType type;
    double gap_at_origin = 0.0;
    double fitted_exponent = 0.0; // log-log slope of the splitting over rho in [1e-4, 1e-2]; 0 when Avoided
};

IntersectionReport classify_intersection(const ModelSpec& spec);

// F = -(1/hbar^2) [H, [H, r]] per component, with dA/dt = +i/hbar [H, A]; this
// sign is fixed by the g = 0 limit F_x = -omega^2 X. Coefficients come from a
// least-squares decomposition on the interior Fock block (two levels below
// every cutoff), where the truncated double commutator is exact.
struct ForceReport {
    // basis {X, sigma_y, P_y sigma_z} for F_x and {Y, sigma_x, P_x sigma_z} for F_y
    std::array<double, 3> fx_coefficients{};
    std::array<double, 3> fy_coefficients{};
    double fx_residual = 0.0; // interior max-norm of F_x minus its decomposition
    double fy_residual = 0.0;
    Matrix fx;
    Matrix fy;
};

ForceReport heisenberg_force(const ModelSpec& spec, const SpaceDescriptor& space);

} // namespace qedsim
