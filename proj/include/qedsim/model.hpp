// model.hpp — Model Hamiltonians in the field-quadrature representation,
// adiabatic/diabatic surfaces, and lower-surface minima analysis.
//
// Conventions: hbar = 1, all frequencies in one arbitrary energy unit.
// Atomic levels are |1>..|M> with sigma_z = |1><1| - |2><2|; with the
// two-level splitting term (Omega/2) sigma_z the lower state is |2>.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qedsim/operators.hpp"
#include "qedsim/states.hpp"

namespace qedsim {

enum class ModelVariant { BetaE, EpsilonE, RennerTeller, DiracLimit, DiracOscillator };

const char* variant_name(ModelVariant v);

// Which Hamiltonian to build plus its physical parameters. Variant-required
// fields must be present and all others absent; validate() enforces this.
//
//   BetaE:           1 mode, 2 levels;  omega, Omega, g
//   EpsilonE:        2 modes, 2 levels; omega, Omega, g
//   RennerTeller:    2 modes, 3 levels; omega, e3, g  (E1 = E2 = 0 fixed)
//   DiracLimit:      2 modes, 2 levels; omega, Omega, g (no quadrature kinetic term)
//   DiracOscillator: 2 modes, 2 levels; omega, c, mass
struct ModelSpec {
    ModelVariant variant = ModelVariant::BetaE;
    double omega = 1.0;
    double g = 0.0;
    std::optional<double> Omega;
    std::optional<double> e3;
    std::optional<double> c;
    std::optional<double> mass;
};

void validate(const ModelSpec& spec);

struct SpaceShape {
    std::size_t n_modes;
    int atom_levels;
};
SpaceShape required_space(ModelVariant v);

void require_compatible(const ModelSpec& spec, const SpaceDescriptor& space);

// Full Hamiltonian on the truncated space. The free-field part is built from
// the truncated quadratures, omega (P^2 + X^2)/2, so the harmonic ladder is
// exact everywhere except at the Fock-cutoff edge.
OperatorMatrix build_hamiltonian(const ModelSpec& spec, const SpaceDescriptor& space);

// Momentum-parametrized atomic sub-matrix h(P): the part of H multiplying the
// field identity once the kinetic-analog term is removed. M x M.
Matrix atomic_matrix(const ModelSpec& spec, double px, double py = 0.0);

// Coefficient of the kinetic-analog term added to every surface branch
// (omega/2 for the Jahn-Teller variants, 0 for the Dirac limit).
double kinetic_prefactor(const ModelSpec& spec);

struct SurfaceGrid {
    enum class Kind { Adiabatic, Diabatic };
    Kind kind = Kind::Adiabatic;
    std::vector<std::vector<double>> axes;      // 1 axis (P) or 2 axes (P_x, P_y)
    // branch-major values; for 2 axes row-major over the meshgrid
    // (index = i_x * len(axis_y) + i_y). Adiabatic branches are ascending
    // pointwise; diabatic branches keep their functional identity and may cross.
    std::vector<std::vector<double>> branches;
};

// Branch values by numeric eigendecomposition of h(P) at each grid point.
SurfaceGrid adiabatic_surfaces(const ModelSpec& spec, const std::vector<std::vector<double>>& axes);

// Diagonal of h(P) in the basis that diagonalizes the momentum coupling
// (the bare atomic basis when g = 0), plus the kinetic-analog term.
SurfaceGrid diabatic_surfaces(const ModelSpec& spec, const std::vector<std::vector<double>>& axes);

enum class WellRegime { SingleWell, DoubleWell, Sombrero };

const char* regime_name(WellRegime r);

struct MinimaReport {
    WellRegime regime;
    // (P location, value) pairs; for Sombrero the single entry holds the ring
    // radius. Values are from analytic stationarity of the lower adiabatic
    // branch, cross-checked internally against golden-section refinement.
    std::vector<std::pair<double, double>> minima;
    double threshold_g_derived;    // sqrt(omega * Omega / 2), from stationarity
    double threshold_g_literature; // sqrt(omega * Omega) / 2, quoted elsewhere
};

MinimaReport locate_minima(const ModelSpec& spec);

// Spectral comparison between the two-mode spin-less Dirac-oscillator
// realization and the single-mode Jaynes-Cummings form it maps onto
// (exact when mass * omega = 1 in quadrature units). Levels are compared in
// |E| order; deviations are distances to the nearest two-mode eigenvalue.
struct JcMatchReport {
    int matched_levels = 0; // consecutive JC levels matched within 1e-8
    double max_dev = 0.0;   // max deviation over the matched window
    std::vector<double> jc_levels;
    std::vector<double> deviations;
};

JcMatchReport dirac_oscillator_jc_match(const ModelSpec& spec, const SpaceDescriptor& space,
                                        int jc_cutoff = 0 /* 0 -> sum of mode cutoffs */);

} // namespace qedsim
