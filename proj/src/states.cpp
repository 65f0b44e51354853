#include "qedsim/states.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qedsim {

QuantumState::QuantumState(SpaceDescriptor space, Vector ket)
    : space_(std::move(space)), state_(std::move(ket)) {
    const Vector& v = std::get<Vector>(state_);
    if (v.size() != space_.dim())
        throw std::invalid_argument("QuantumState: ket length does not match space dimension");
    if (std::abs(v.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("QuantumState: ket is not normalized");
}

QuantumState::QuantumState(SpaceDescriptor space, Matrix rho)
    : space_(std::move(space)), state_(std::move(rho)) {
    const Matrix& r = std::get<Matrix>(state_);
    if (r.rows() != space_.dim() || r.cols() != space_.dim())
        throw std::invalid_argument("QuantumState: density matrix must be D x D");
    if (!is_hermitian(r, 1e-12 * std::max(1.0, max_abs(r))))
        throw std::invalid_argument("QuantumState: density matrix is not Hermitian");
    if (std::abs(r.trace().real() - 1.0) > 1e-10 || std::abs(r.trace().imag()) > 1e-10)
        throw std::invalid_argument("QuantumState: density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("QuantumState: eigensolve failed during positivity check");
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw std::invalid_argument("QuantumState: density matrix has a negative eigenvalue beyond tolerance");
}

const Vector& QuantumState::ket() const {
    if (!is_ket()) throw std::logic_error("QuantumState::ket: state is a density matrix");
    return std::get<Vector>(state_);
}

const Matrix& QuantumState::rho() const {
    if (is_ket()) throw std::logic_error("QuantumState::rho: state is a ket");
    return std::get<Matrix>(state_);
}

Matrix QuantumState::density() const {
    if (is_ket()) {
        const Vector& v = ket();
        return v * v.adjoint();
    }
    return rho();
}

double QuantumState::expectation(const OperatorMatrix& op) const {
    if (!(op.space() == space_))
        throw std::invalid_argument("QuantumState::expectation: operator lives on a different space");
    if (is_ket()) return (ket().adjoint() * op.matrix() * ket())(0).real();
    return (op.matrix() * rho()).trace().real();
}

QuantumState basis_ket(const SpaceDescriptor& space, int atom_level, std::vector<int> occupations) {
    Vector v = Vector::Zero(space.dim());
    v(space.flat_index(atom_level - 1, occupations)) = 1.0;
    return QuantumState(space, std::move(v));
}

QuantumState product_ket(const SpaceDescriptor& space, int atom_level,
                         const std::map<std::string, Complex>& amplitudes) {
    if (atom_level < 1 || atom_level > space.atom_levels())
        throw std::out_of_range("product_ket: atom level is 1-based and must be <= atom_levels");
    for (const auto& [label, alpha] : amplitudes) {
        const std::size_t k = space.mode_index(label);
        const double n2 = std::norm(alpha);
        const int cutoff = space.mode(k).cutoff;
        if (n2 > cutoff / 4.0) {
            throw std::invalid_argument(
                "product_ket: |alpha|^2 = " + std::to_string(n2) + " too large for mode '" + label +
                "' (cutoff " + std::to_string(cutoff) + "); requires cutoff >= " +
                std::to_string(static_cast<int>(std::ceil(4.0 * n2))));
        }
    }

    // Per-mode truncated coherent coefficients exp(-|a|^2/2) a^n / sqrt(n!).
    std::vector<std::vector<Complex>> coeffs(space.n_modes());
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
        const int cutoff = space.mode(k).cutoff;
        Complex alpha = 0.0;
        if (auto it = amplitudes.find(space.mode(k).label); it != amplitudes.end())
            alpha = it->second;
        std::vector<Complex> c(cutoff, 0.0);
        c[0] = std::exp(-std::norm(alpha) / 2.0);
        for (int n = 1; n < cutoff; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        coeffs[k] = std::move(c);
    }

    Vector v = Vector::Zero(space.dim());
    const Index block = space.atom_stride();
    const Index base = static_cast<Index>(atom_level - 1) * block;
    for (Index f = 0; f < block; ++f) {
        Complex amp = 1.0;
        for (std::size_t k = 0; k < space.n_modes(); ++k)
            amp *= coeffs[k][space.occupation_of(f, k)];
        v(base + f) = amp;
    }
    v /= v.norm();
    return QuantumState(space, std::move(v));
}

QuantumState coherent_ket(const SpaceDescriptor& space, const std::string& mode_label,
                          Complex alpha, int atom_level) {
    return product_ket(space, atom_level, {{mode_label, alpha}});
}

} // namespace qedsim
