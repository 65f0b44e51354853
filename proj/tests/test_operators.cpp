#include <doctest.h>

#include <random>

#include "oracle_helpers.hpp"
#include "qedsim/states.hpp"

using namespace qedsim;
using oracle::embed;
using oracle::eye;

namespace {
const Complex kI{0.0, 1.0};
}

TEST_CASE("lowering operator: matrix elements, vacuum kill, number operator") {
    const SpaceDescriptor space = make_space({3}, 2);
    const OperatorMatrix a = make_annihilator(space, "x");

    // nonzero single-mode entries sqrt(1) at (0,1) and sqrt(2) at (1,2), per atom sector
    for (int atom = 0; atom < 2; ++atom) {
        std::vector<int> n0{0}, n1{1}, n2{2};
        CHECK(a.matrix()(space.flat_index(atom, n0), space.flat_index(atom, n1)).real() ==
              doctest::Approx(1.0).epsilon(1e-15));
        CHECK(a.matrix()(space.flat_index(atom, n1), space.flat_index(atom, n2)).real() ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    CHECK(a.matrix().cwiseAbs().sum() == doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))));

    // a |vacuum> = 0
    const Vector vac = basis_ket(space, 1, {0}).ket();
    CHECK((a.matrix() * vac).norm() == 0.0);

    // a†a diagonal 0..N-1
    const Matrix n_op = a.matrix().adjoint() * a.matrix();
    for (int atom = 0; atom < 2; ++atom)
        for (int n = 0; n < 3; ++n) {
            std::vector<int> occ{n};
            const Index i = space.flat_index(atom, occ);
            CHECK(n_op(i, i).real() == doctest::Approx(n).epsilon(1e-15));
        }

    CHECK_THROWS_AS(make_annihilator(space, "nope"), std::invalid_argument);
}

TEST_CASE("embedding agrees with an independent Kronecker oracle") {
    const SpaceDescriptor space = make_space({3, 4}, 2);
    const Matrix ax = oracle::lowering(3);
    const Matrix ay = oracle::lowering(4);

    // mode 0 fastest: full = atom ⊗ mode1 ⊗ mode0
    CHECK(max_abs(make_annihilator(space, "x").matrix() - embed({eye(2), eye(4), ax})) == 0.0);
    CHECK(max_abs(make_annihilator(space, "y").matrix() - embed({eye(2), ay, eye(3)})) == 0.0);
    CHECK(max_abs(make_atomic_projector(space, 1, 2).matrix() -
                  embed({(Matrix(2, 2) << 0, 1, 0, 0).finished(), eye(4), eye(3)})) == 0.0);
}

TEST_CASE("quadratures: Hermiticity, truncation identity, vacuum variance") {
    for (int n : {4, 16, 64}) {
        const SpaceDescriptor space = make_space({n}, 2);
        const auto [x, p] = make_quadratures(space, "x");
        CHECK(is_hermitian(x.matrix(), 1e-14));
        CHECK(is_hermitian(p.matrix(), 1e-14));

        // [X, P] = i(I - N |N-1><N-1|), checked against a direct product oracle
        const Matrix a = oracle::lowering(n);
        const Matrix xb = (a + a.adjoint()) / std::sqrt(2.0);
        const Matrix pb = kI * (a.adjoint() - a) / std::sqrt(2.0);
        Matrix expected = kI * Matrix::Identity(n, n);
        expected(n - 1, n - 1) -= kI * static_cast<double>(n);
        CHECK(oracle::kron(eye(2), (xb * pb - pb * xb - expected).eval()).cwiseAbs().maxCoeff() <=
              1e-13);
        CHECK(max_abs(commutator(x, p).matrix() - embed({eye(2), expected})) <= 1e-13);
    }

    const SpaceDescriptor space = make_space({8}, 2);
    const auto [x, p] = make_quadratures(space, "x");
    const Vector vac = basis_ket(space, 1, {0}).ket();
    const double x2 = (vac.adjoint() * x.matrix() * x.matrix() * vac)(0).real();
    CHECK(x2 == doctest::Approx(0.5).epsilon(1e-14));

    // the identity holds per mode on a multi-mode space
    const SpaceDescriptor two = make_space({5, 7}, 2);
    for (std::size_t k : {std::size_t{0}, std::size_t{1}}) {
        const int n = two.mode(k).cutoff;
        const auto [xk, pk] = make_quadratures(two, two.mode(k).label);
        Matrix expected = kI * Matrix::Identity(n, n);
        expected(n - 1, n - 1) -= kI * static_cast<double>(n);
        CHECK(max_abs(commutator(xk, pk).matrix() - embed_mode_op(two, k, expected).matrix()) <=
              1e-13);
    }
}

TEST_CASE("atomic projectors: Pauli assembly and projector algebra") {
    const SpaceDescriptor space = make_space({3}, 2);
    const OperatorMatrix sz =
        make_atomic_projector(space, 1, 1) - make_atomic_projector(space, 2, 2);

    // eigenvalues {+1, -1} in every field sector
    Eigen::SelfAdjointEigenSolver<Matrix> es(sz.matrix());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        CHECK(std::abs(std::abs(es.eigenvalues()(i)) - 1.0) <= 1e-14);
    CHECK(es.eigenvalues().sum() == doctest::Approx(0.0));

    // |i><j| |k><l| = delta_jk |i><l|
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 2; ++l) {
                    const Matrix prod = (make_atomic_projector(space, i, j) *
                                         make_atomic_projector(space, k, l))
                                            .matrix();
                    const Matrix want =
                        j == k ? make_atomic_projector(space, i, l).matrix()
                               : Matrix::Zero(space.dim(), space.dim());
                    CHECK(max_abs(prod - want) == 0.0);
                }

    CHECK_THROWS_AS(make_atomic_projector(space, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(make_atomic_projector(space, 1, 3), std::out_of_range);

    // lambda_4 = |3><1| + |1><3| on a three-level atom: Hermitian, traceless
    const SpaceDescriptor space3 = make_space({2, 2}, 3);
    const OperatorMatrix l4 =
        make_atomic_projector(space3, 3, 1) + make_atomic_projector(space3, 1, 3);
    CHECK(is_hermitian(l4.matrix(), 1e-15));
    CHECK(std::abs(l4.matrix().trace()) == 0.0);
}

TEST_CASE("commutators: Pauli algebra, self-commutation, Gell-Mann identity") {
    const SpaceDescriptor space = make_space({2}, 2);
    const OperatorMatrix sx = embed_atomic_op(space, pauli_x(), true);
    const OperatorMatrix sy = embed_atomic_op(space, pauli_y(), true);
    const OperatorMatrix sz = embed_atomic_op(space, pauli_z(), true);
    CHECK(max_abs(commutator(sx, sy).matrix() - 2.0 * kI * sz.matrix()) == 0.0);

    const auto [x, p] = make_quadratures(space, "x");
    CHECK(max_abs(commutator(x, x).matrix()) == 0.0);

    // [lambda_4, lambda_6] = i lambda_2, via a brute-force 3x3 product oracle
    Matrix l4 = Matrix::Zero(3, 3), l6 = Matrix::Zero(3, 3), l2 = Matrix::Zero(3, 3);
    l4(2, 0) = l4(0, 2) = 1.0;
    l6(2, 1) = l6(1, 2) = 1.0;
    l2(0, 1) = -kI;
    l2(1, 0) = kI;
    CHECK(max_abs((l4 * l6 - l6 * l4) - kI * l2) == 0.0);
    CHECK(max_abs(gell_mann(4) - l4) == 0.0);
    CHECK(max_abs(gell_mann(6) - l6) == 0.0);
    CHECK(max_abs(gell_mann(2) - l2) == 0.0);

    const SpaceDescriptor other = make_space({3}, 2);
    const auto [xo, po] = make_quadratures(other, "x");
    CHECK_THROWS_AS(commutator(x, xo), std::invalid_argument);
}

TEST_CASE("tensor embeddings on disjoint slots commute") {
    const SpaceDescriptor space = make_space({3, 4}, 2);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_block = [&](int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
        return m;
    };
    for (int rep = 0; rep < 5; ++rep) {
        const OperatorMatrix a = embed_mode_op(space, 0, random_block(3));
        const OperatorMatrix b = embed_mode_op(space, 1, random_block(4));
        CHECK(max_abs((a * b).matrix() - (b * a).matrix()) <= 1e-13);
        const OperatorMatrix c = embed_atomic_op(space, random_block(2));
        CHECK(max_abs((a * c).matrix() - (c * a).matrix()) <= 1e-13);
    }
}

TEST_CASE("coherent states: vacuum limit, Poisson mean, analytic overlap") {
    const SpaceDescriptor tiny = make_space({8}, 2);
    const QuantumState vac = coherent_ket(tiny, "x", 0.0);
    CHECK(vac.expectation(make_number_op(tiny, "x")) == doctest::Approx(0.0).epsilon(1e-15));

    const SpaceDescriptor s20 = make_space({20}, 2);
    const QuantumState one = coherent_ket(s20, "x", 1.0);
    CHECK(std::abs(one.expectation(make_number_op(s20, "x")) - 1.0) <= 1e-8);
    CHECK(std::abs(one.ket().norm() - 1.0) <= 1e-10);

    // overlap with the analytic coefficient vector (coefficient-sum oracle)
    const SpaceDescriptor s30 = make_space({30}, 2);
    const QuantumState two = coherent_ket(s30, "x", 2.0);
    Vector analytic = Vector::Zero(s30.dim());
    double c = std::exp(-2.0); // e^{-|alpha|^2/2}, alpha = 2
    for (int n = 0; n < 30; ++n) {
        std::vector<int> occ{n};
        analytic(s30.flat_index(0, occ)) = c;
        c *= 2.0 / std::sqrt(static_cast<double>(n + 1));
    }
    CHECK(std::abs((analytic.adjoint() * two.ket())(0)) >= 1.0 - 1e-10);

    // truncation-safety rule names the required cutoff
    try {
        coherent_ket(s20, "x", 4.0); // |alpha|^2 = 16 > 20/4
        FAIL("expected truncation-safety rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("requires cutoff >= 64") != std::string::npos);
    }

    // norm invariant across admissible amplitudes
    for (double amp : {0.3, 0.9, 1.6, 2.2})
        CHECK(std::abs(coherent_ket(s30, "x", Complex(amp, 0.2)).ket().norm() - 1.0) <= 1e-10);

    // phase goes into <a>
    const QuantumState boosted = coherent_ket(s30, "x", Complex(0.0, 1.5));
    const OperatorMatrix a = make_annihilator(s30, "x");
    const Complex mean = (boosted.ket().adjoint() * a.matrix() * boosted.ket())(0);
    CHECK(std::abs(mean - Complex(0.0, 1.5)) <= 1e-8);
}

TEST_CASE("state invariants are enforced") {
    const SpaceDescriptor space = make_space({3}, 2);
    Vector bad = Vector::Zero(space.dim());
    bad(0) = 0.9;
    CHECK_THROWS_AS(QuantumState(space, bad), std::invalid_argument);

    Matrix rho = Matrix::Zero(space.dim(), space.dim());
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    CHECK_NOTHROW(QuantumState(space, rho));

    rho(0, 1) = 0.2; // breaks Hermiticity
    CHECK_THROWS_AS(QuantumState(space, rho), std::invalid_argument);

    rho(0, 1) = 0.0;
    rho(0, 0) = 0.7; // trace 1.2
    CHECK_THROWS_AS(QuantumState(space, rho), std::invalid_argument);

    rho(0, 0) = 1.2;
    rho(1, 1) = -0.2; // negative eigenvalue
    CHECK_THROWS_AS(QuantumState(space, rho), std::invalid_argument);
}

TEST_CASE("hermitian hint is validated at construction") {
    const SpaceDescriptor space = make_space({2}, 2);
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(OperatorMatrix(space, m, true), std::invalid_argument);
    CHECK_NOTHROW(OperatorMatrix(space, m));
    CHECK_NOTHROW(OperatorMatrix(space, (m + m.adjoint()).eval(), true));
}

TEST_CASE("space descriptor: index maps and validation") {
    CHECK_THROWS_AS(make_space({1}, 2), std::invalid_argument);          // cutoff < 2
    CHECK_THROWS_AS(make_space({4}, 4), std::invalid_argument);          // levels
    CHECK_THROWS_AS(SpaceDescriptor({{"x", 2}, {"x", 3}}, 2), std::invalid_argument);

    const SpaceDescriptor space = make_space({3, 5}, 3);
    CHECK(space.dim() == 45);
    std::vector<int> occ{2, 4};
    const Index i = space.flat_index(2, occ);
    CHECK(i == 2 * 15 + 4 * 3 + 2);
    CHECK(space.atom_of(i) == 2);
    CHECK(space.occupation_of(i, 0) == 2);
    CHECK(space.occupation_of(i, 1) == 4);
    CHECK(space.with_occupation(i, 0, 0) == i - 2);
    CHECK(space.with_atom(i, 0) == i - 30);
}
