// gauge.hpp — Effective gauge potentials of the Jahn-Teller variants: the
// atomic-subspace vector components A_k, the scalar potential, their pairwise
// commutators, and the exact rewrite of H as sum_k omega ((P_k - A_k)^2/2 +
// X_k^2/2) + sum_j E_j |j><j| + Phi.

#pragma once

#include <string>
#include <vector>

#include "qedsim/model.hpp"

namespace qedsim {

enum class GaugeClass { Abelian, NonAbelian };

struct GaugeReport {
    std::vector<std::string> component_labels; // mode label per component
    std::vector<Matrix> components;            // A_k on the atomic subspace
    // Phi = -(1/2) sum_k omega A_k^2: the unique scalar potential for which
    // the rewritten Hamiltonian equals the original exactly, since expanding
    // (P_k - A_k)^2 / 2 produces +A_k^2 / 2.
    Matrix scalar_potential;
    std::vector<Matrix> commutators; // [A_k, A_l] for k < l, row-major pairs
    GaugeClass classification;       // Abelian iff every commutator is <= 1e-12 in max-norm
    double max_commutator_norm = 0.0;
    double rewrite_residual = 0.0;   // |H_rewritten - H|_max on the check space
};

const char* gauge_class_name(GaugeClass c);

// check_space: space used for the rewrite-residual check; pass nullptr to use
// a small default (cutoff 12 per mode).
GaugeReport extract_gauge_potentials(const ModelSpec& spec,
                                     const SpaceDescriptor* check_space = nullptr);

// Max-norm of H_rewritten - H on the given space; contract: <= 1e-10.
double gauge_rewrite_residual(const ModelSpec& spec, const SpaceDescriptor& space);

} // namespace qedsim
