// operators.hpp — Dense operator algebra on a truncated tensor-product space:
// ladder/quadrature operators, atomic projectors, embeddings, commutators.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qedsim/space.hpp"

namespace qedsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return max_abs(m - m.adjoint()) <= tol;
}

// Dense D×D complex matrix tagged with its space. Immutable after creation;
// a true hermitian_hint is validated against |M - M†|_max <= 1e-12 · |M|_max.
class OperatorMatrix {
public:
    OperatorMatrix(SpaceDescriptor space, Matrix entries,
                   std::optional<bool> hermitian_hint = std::nullopt)
        : space_(std::move(space)), m_(std::move(entries)), hermitian_hint_(hermitian_hint) {
        if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
            throw std::invalid_argument("OperatorMatrix: entries must be D x D for the given space");
        if (hermitian_hint_ && *hermitian_hint_) {
            const double scale = max_abs(m_);
            if (max_abs(m_ - m_.adjoint()) > 1e-12 * (scale > 0 ? scale : 1.0))
                throw std::invalid_argument("OperatorMatrix: hermitian_hint set but matrix is not Hermitian");
        }
    }

    const SpaceDescriptor& space() const { return space_; }
    const Matrix& matrix() const { return m_; }
    std::optional<bool> hermitian_hint() const { return hermitian_hint_; }
    Index dim() const { return space_.dim(); }

private:
    SpaceDescriptor space_;
    Matrix m_;
    std::optional<bool> hermitian_hint_;
};

inline void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b,
                               const char* who) {
    if (!(a.space() == b.space()))
        throw std::invalid_argument(std::string(who) + ": operands live on different spaces");
}

// ---------------------------------------------------------------- small blocks

// Single-mode lowering operator, hard truncation: a|n> = sqrt(n)|n-1>, a†|N-1>'s
// image outside the retained space is dropped.
Matrix lowering_block(int cutoff);

// 2x2 Pauli matrices in the ordered atomic basis (|1>, |2>):
// sigma_z = |1><1| - |2><2|, sigma_y = i(|2><1| - |1><2|), so that
// [sigma_x, sigma_y] = 2i sigma_z.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// Gell-Mann matrices used by the three-level model (1-based level labels):
// lambda2 = -i|1><2| + i|2><1|, lambda4 = |3><1| + |1><3|, lambda6 = |3><2| + |2><3|.
Matrix gell_mann(int which); // which ∈ {2, 4, 6}

// ----------------------------------------------------------------- embeddings

// Identity on the full space.
OperatorMatrix identity_op(const SpaceDescriptor& space);

// Embed a cutoff×cutoff single-mode block as identity on everything else.
OperatorMatrix embed_mode_op(const SpaceDescriptor& space, std::size_t mode_k,
                             const Matrix& block,
                             std::optional<bool> hermitian_hint = std::nullopt);

// Embed an M×M atomic block as identity on all modes.
OperatorMatrix embed_atomic_op(const SpaceDescriptor& space, const Matrix& block,
                               std::optional<bool> hermitian_hint = std::nullopt);

// Embed (atomic block) ⊗ (mode-k block), identity on the remaining slots,
// assembled entry-wise rather than through a full D×D product.
Matrix embed_atomic_mode_product(const SpaceDescriptor& space, const Matrix& atom_block,
                                 std::size_t mode_k, const Matrix& mode_block);

// ------------------------------------------------------------------ operators

OperatorMatrix make_annihilator(const SpaceDescriptor& space, const std::string& mode_label);

// X = (a + a†)/√2 and P = i(a† - a)/√2, both Hermitian. The sign of P is fixed
// so that [X, P] = +i on the interior of the truncated space; the opposite
// sign i(a - a†)/√2 would give [X, P] = -i.
std::pair<OperatorMatrix, OperatorMatrix> make_quadratures(const SpaceDescriptor& space,
                                                           const std::string& mode_label);

// |i><j| on the atomic slot, 1-based levels, identity on all modes.
OperatorMatrix make_atomic_projector(const SpaceDescriptor& space, int i, int j);

OperatorMatrix make_number_op(const SpaceDescriptor& space, const std::string& mode_label);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// --------------------------------------------------------------- arithmetic

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);
OperatorMatrix operator*(double s, const OperatorMatrix& a);

} // namespace qedsim
