// Test-only oracles: independent Kronecker assembly and an eigendecomposition
// propagator, kept apart from the implementation paths they check.

#pragma once

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qedsim/operators.hpp"

namespace oracle {

using qedsim::Complex;
using qedsim::Matrix;
using qedsim::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

inline Matrix eye(long n) { return Matrix::Identity(n, n); }

// Full-space embedding with the fixed ordering: atom slowest, listed modes
// with mode 0 fastest, i.e. full = atom ⊗ mode_{K-1} ⊗ ... ⊗ mode_0.
inline Matrix embed(const std::vector<Matrix>& factors_atom_first) {
    Matrix out = factors_atom_first.front();
    for (std::size_t i = 1; i < factors_atom_first.size(); ++i)
        out = kron(out, factors_atom_first[i]).eval();
    return out;
}

// Truncated lowering operator built independently of the library.
inline Matrix lowering(int n) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

// U(t) = V exp(-i Lambda t) V† applied to psi0.
inline Vector eig_propagate(const Matrix& h, const Vector& psi0, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector coeffs = es.eigenvectors().adjoint() * psi0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        coeffs(i) *= std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * coeffs;
}

} // namespace oracle
