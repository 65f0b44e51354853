#include "qedsim/operators.hpp"

#include <cmath>

namespace qedsim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Matrix lowering_block(int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("lowering_block: cutoff must be >= 2");
    Matrix a = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix gell_mann(int which) {
    Matrix m = Matrix::Zero(3, 3);
    switch (which) {
        case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
        case 4: m(2, 0) = 1; m(0, 2) = 1; break;
        case 6: m(2, 1) = 1; m(1, 2) = 1; break;
        default: throw std::invalid_argument("gell_mann: only lambda 2, 4, 6 are provided");
    }
    return m;
}

OperatorMatrix identity_op(const SpaceDescriptor& space) {
    return OperatorMatrix(space, Matrix::Identity(space.dim(), space.dim()), true);
}

OperatorMatrix embed_mode_op(const SpaceDescriptor& space, std::size_t mode_k,
                             const Matrix& block, std::optional<bool> hermitian_hint) {
    const int n = space.mode(mode_k).cutoff;
    if (block.rows() != n || block.cols() != n)
        throw std::invalid_argument("embed_mode_op: block dimension does not match mode cutoff");
    const Index d = space.dim();
    Matrix full = Matrix::Zero(d, d);
    for (Index row = 0; row < d; ++row) {
        const int nr = space.occupation_of(row, mode_k);
        for (int nc = 0; nc < n; ++nc) {
            const Complex v = block(nr, nc);
            if (v != 0.0) full(row, space.with_occupation(row, mode_k, nc)) = v;
        }
    }
    return OperatorMatrix(space, std::move(full), hermitian_hint);
}

OperatorMatrix embed_atomic_op(const SpaceDescriptor& space, const Matrix& block,
                               std::optional<bool> hermitian_hint) {
    const int m = space.atom_levels();
    if (block.rows() != m || block.cols() != m)
        throw std::invalid_argument("embed_atomic_op: block dimension does not match atom_levels");
    const Index d = space.dim();
    Matrix full = Matrix::Zero(d, d);
    for (Index row = 0; row < d; ++row) {
        const int ar = space.atom_of(row);
        for (int ac = 0; ac < m; ++ac) {
            const Complex v = block(ar, ac);
            if (v != 0.0) full(row, space.with_atom(row, ac)) = v;
        }
    }
    return OperatorMatrix(space, std::move(full), hermitian_hint);
}

Matrix embed_atomic_mode_product(const SpaceDescriptor& space, const Matrix& atom_block,
                                 std::size_t mode_k, const Matrix& mode_block) {
    const int m = space.atom_levels();
    const int n = space.mode(mode_k).cutoff;
    if (atom_block.rows() != m || atom_block.cols() != m)
        throw std::invalid_argument("embed_atomic_mode_product: atomic block has wrong dimension");
    if (mode_block.rows() != n || mode_block.cols() != n)
        throw std::invalid_argument("embed_atomic_mode_product: mode block has wrong dimension");
    const Index d = space.dim();
    Matrix full = Matrix::Zero(d, d);
    for (Index row = 0; row < d; ++row) {
        const int ar = space.atom_of(row);
        const int nr = space.occupation_of(row, mode_k);
        for (int ac = 0; ac < m; ++ac) {
            const Complex av = atom_block(ar, ac);
            if (av == 0.0) continue;
            const Index col_a = space.with_atom(row, ac);
            for (int nc = 0; nc < n; ++nc) {
                const Complex mv = mode_block(nr, nc);
                if (mv != 0.0) full(row, space.with_occupation(col_a, mode_k, nc)) += av * mv;
            }
        }
    }
    return full;
}

OperatorMatrix make_annihilator(const SpaceDescriptor& space, const std::string& mode_label) {
    const std::size_t k = space.mode_index(mode_label);
    return embed_mode_op(space, k, lowering_block(space.mode(k).cutoff));
}

std::pair<OperatorMatrix, OperatorMatrix> make_quadratures(const SpaceDescriptor& space,
                                                           const std::string& mode_label) {
    const std::size_t k = space.mode_index(mode_label);
    const Matrix a = lowering_block(space.mode(k).cutoff);
    const Matrix ad = a.adjoint();
    const Matrix x = (a + ad) / std::sqrt(2.0);
    const Matrix p = kI * (ad - a) / std::sqrt(2.0);
    return {embed_mode_op(space, k, x, true), embed_mode_op(space, k, p, true)};
}

OperatorMatrix make_atomic_projector(const SpaceDescriptor& space, int i, int j) {
    const int m = space.atom_levels();
    if (i < 1 || i > m || j < 1 || j > m)
        throw std::out_of_range("make_atomic_projector: levels are 1-based and must be <= atom_levels");
    Matrix block = Matrix::Zero(m, m);
    block(i - 1, j - 1) = 1.0;
    return embed_atomic_op(space, block, i == j ? std::optional<bool>(true) : std::nullopt);
}

OperatorMatrix make_number_op(const SpaceDescriptor& space, const std::string& mode_label) {
    const std::size_t k = space.mode_index(mode_label);
    const Matrix a = lowering_block(space.mode(k).cutoff);
    return embed_mode_op(space, k, (a.adjoint() * a).eval(), true);
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b, "commutator");
    return OperatorMatrix(a.space(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b, "operator+");
    return OperatorMatrix(a.space(), a.matrix() + b.matrix());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b, "operator-");
    return OperatorMatrix(a.space(), a.matrix() - b.matrix());
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_space(a, b, "operator*");
    return OperatorMatrix(a.space(), a.matrix() * b.matrix());
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
    return OperatorMatrix(a.space(), s * a.matrix());
}

OperatorMatrix operator*(double s, const OperatorMatrix& a) {
    return OperatorMatrix(a.space(), s * a.matrix());
}

} // namespace qedsim
