// states.hpp — Pure kets and density matrices with norm/trace/positivity
// invariants, plus the coherent/product state constructors.

#pragma once

#include <map>
#include <string>
#include <variant>

#include "qedsim/operators.hpp"

namespace qedsim {

// Either a normalized ket or a unit-trace Hermitian positive density matrix.
// Invariants are checked at construction:
//   ket:  | ||psi|| - 1 | <= 1e-10
//   rho:  Hermitian to 1e-12, |tr - 1| <= 1e-10, min eigenvalue >= -1e-8
class QuantumState {
public:
    QuantumState(SpaceDescriptor space, Vector ket);
    QuantumState(SpaceDescriptor space, Matrix rho);

    const SpaceDescriptor& space() const { return space_; }
    bool is_ket() const { return std::holds_alternative<Vector>(state_); }
    const Vector& ket() const;
    const Matrix& rho() const;

    // |psi><psi| for kets, identity for density matrices.
    Matrix density() const;

    double expectation(const OperatorMatrix& op) const;

private:
    SpaceDescriptor space_;
    std::variant<Vector, Matrix> state_;
};

// Basis ket |atom> ⊗ |n_0, n_1, ...>; atom level is 1-based.
QuantumState basis_ket(const SpaceDescriptor& space, int atom_level, std::vector<int> occupations);

// Product ket: per-mode coherent amplitudes (vacuum where omitted) and a
// 1-based atomic level. Each amplitude must satisfy |alpha|^2 <= cutoff/4,
// which keeps the truncated Poisson tail mass below ~1e-10.
QuantumState product_ket(const SpaceDescriptor& space, int atom_level,
                         const std::map<std::string, Complex>& amplitudes);

// Coherent state in one mode, vacuum elsewhere, atom in level 1.
QuantumState coherent_ket(const SpaceDescriptor& space, const std::string& mode_label,
                          Complex alpha, int atom_level = 1);

} // namespace qedsim
