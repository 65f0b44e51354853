#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <numbers>
#include <random>

#include "qedsim/geometry.hpp"

using namespace qedsim;

namespace {
constexpr double kPi = std::numbers::pi;

ModelSpec epsilon_e(double omega, double Omega, double g) {
    ModelSpec s;
    s.variant = ModelVariant::EpsilonE;
    s.omega = omega;
    s.Omega = Omega;
    s.g = g;
    return s;
}

ModelSpec renner_teller(double omega, double e3, double g) {
    ModelSpec s;
    s.variant = ModelVariant::RennerTeller;
    s.omega = omega;
    s.e3 = e3;
    s.g = g;
    return s;
}
} // namespace

TEST_CASE("geometric phase: conical loop gives pi, detached loop gives zero") {
    const ModelSpec conical = epsilon_e(1.0, 0.0, 1.0);

    LoopSpec loop;
    loop.radius = 1.0;
    loop.n_points = 512;
    loop.branch = 0;
    const BerryPhaseResult enclosing = berry_phase(conical, loop);
    CHECK(std::abs(std::abs(enclosing.phase) - kPi) <= 1e-3);

    loop.center_x = 3.0;
    const BerryPhaseResult outside = berry_phase(conical, loop);
    CHECK(std::abs(outside.phase) <= 1e-3);

    // the enclosed phase is topological: radius sweep keeps it at pi
    loop.center_x = 0.0;
    for (double r : {0.1, 1.0, 5.0}) {
        loop.radius = r;
        CHECK(std::abs(std::abs(berry_phase(conical, loop).phase) - kPi) <= 1e-3);
    }
}

TEST_CASE("geometric phase vanishes for the glancing three-level intersection") {
    LoopSpec loop;
    loop.radius = 1.0;
    loop.n_points = 512;
    loop.branch = 0;
    const BerryPhaseResult res = berry_phase(renner_teller(1.0, 1.0, 1.0), loop);
    CHECK(std::abs(res.phase) <= 1e-3);
}

TEST_CASE("Wilson loop is independent of per-point eigenvector phases") {
    const ModelSpec spec = epsilon_e(1.0, 0.4, 1.0);
    LoopSpec loop;
    loop.radius = 1.2;
    loop.n_points = 64;
    loop.branch = 0;
    const BerryPhaseResult lib = berry_phase(spec, loop);

    // same discrete product computed here with randomized per-point phases
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    std::vector<Vector> vecs;
    for (int i = 0; i < loop.n_points; ++i) {
        const double th = 2.0 * kPi * i / loop.n_points;
        Eigen::SelfAdjointEigenSolver<Matrix> es(
            atomic_matrix(spec, loop.radius * std::cos(th), loop.radius * std::sin(th)));
        vecs.push_back(std::exp(Complex(0.0, u(rng))) * es.eigenvectors().col(0));
    }
    Complex prod = 1.0;
    for (int i = 0; i < loop.n_points; ++i)
        prod *= (vecs[i].adjoint() * vecs[(i + 1) % loop.n_points])(0);
    double phase = -std::arg(prod);
    if (phase <= -kPi) phase += 2.0 * kPi;
    CHECK(std::abs(phase - lib.phase_raw) <= 1e-12);
}

TEST_CASE("Richardson estimate bounds the change under doubling n_points") {
    // avoided crossing: the loop phase is n-dependent, so the estimate is nontrivial
    const ModelSpec spec = epsilon_e(1.0, 0.5, 1.0);
    LoopSpec loop;
    loop.radius = 1.0;
    loop.n_points = 32;
    loop.branch = 0;
    const BerryPhaseResult coarse = berry_phase(spec, loop);
    loop.n_points = 64;
    const BerryPhaseResult fine = berry_phase(spec, loop);
    CHECK(std::abs(fine.phase - coarse.phase) <= coarse.richardson_error + 1e-12);
    CHECK(coarse.richardson_error > 0.0);
}

TEST_CASE("degeneracy on the loop is reported with the offending sample") {
    // circle through the origin, where the conical branches touch
    LoopSpec loop;
    loop.center_x = 1.0;
    loop.radius = 1.0;
    loop.n_points = 64;
    loop.branch = 0;
    try {
        berry_phase(epsilon_e(1.0, 0.0, 1.0), loop);
        FAIL("expected a degeneracy error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("degenerate at sample") != std::string::npos);
    }

    CHECK_THROWS_AS(berry_phase(epsilon_e(1, 0, 1), LoopSpec{0, 0, -1.0, 64, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(berry_phase(epsilon_e(1, 0, 1), LoopSpec{0, 0, 1.0, 8, 0}),
                    std::invalid_argument);
}

TEST_CASE("intersection classification: conical, avoided, glancing") {
    const IntersectionReport conical = classify_intersection(epsilon_e(1.0, 0.0, 1.0));
    CHECK(conical.type == IntersectionType::Conical);
    CHECK(std::abs(conical.fitted_exponent - 1.0) <= 0.05);

    for (double Omega : {0.1, 0.5, 1.0}) {
        const IntersectionReport avoided = classify_intersection(epsilon_e(1.0, Omega, 1.0));
        CHECK(avoided.type == IntersectionType::Avoided);
        CHECK(avoided.gap_at_origin == doctest::Approx(Omega).epsilon(1e-12));
    }

    const IntersectionReport glancing = classify_intersection(renner_teller(1.0, 1.0, 1.0));
    CHECK(glancing.type == IntersectionType::Glancing);
    CHECK(std::abs(glancing.fitted_exponent - 2.0) <= 0.05);
}

TEST_CASE("Heisenberg force: harmonic restoring term only at zero coupling") {
    const ForceReport rep = heisenberg_force(epsilon_e(1.2, 0.8, 0.0), make_space({8, 8}, 2));
    CHECK(rep.fx_coefficients[0] == doctest::Approx(-1.44).epsilon(1e-12));
    CHECK(std::abs(rep.fx_coefficients[1]) <= 1e-12);
    CHECK(std::abs(rep.fx_coefficients[2]) <= 1e-12);
    CHECK(rep.fx_residual <= 1e-10);
}

TEST_CASE("Heisenberg force: coefficients from the double-commutator oracle") {
    // -[H,[H,X]] = -omega^2 X - g Omega sigma_y + 2 g^2 P_y sigma_z (exact commutator algebra)
    const double omega = 1.3, Omega = 0.7, g = 0.45;
    const ForceReport rep = heisenberg_force(epsilon_e(omega, Omega, g), make_space({9, 8}, 2));

    CHECK(rep.fx_coefficients[0] == doctest::Approx(-omega * omega).epsilon(1e-10));
    CHECK(rep.fx_coefficients[1] == doctest::Approx(-g * Omega).epsilon(1e-10));
    CHECK(rep.fx_coefficients[2] == doctest::Approx(2.0 * g * g).epsilon(1e-10));

    CHECK(rep.fy_coefficients[0] == doctest::Approx(-omega * omega).epsilon(1e-10));
    CHECK(rep.fy_coefficients[1] == doctest::Approx(+g * Omega).epsilon(1e-10));
    CHECK(rep.fy_coefficients[2] == doctest::Approx(-2.0 * g * g).epsilon(1e-10));

    // transverse part has the cross-product pairing: F_x <-> +P_y, F_y <-> -P_x
    CHECK(rep.fx_coefficients[2] == doctest::Approx(-rep.fy_coefficients[2]).epsilon(1e-12));

    // interior-block residuals: the decomposition is exact away from the cutoff edge
    CHECK(rep.fx_residual <= 1e-10);
    CHECK(rep.fy_residual <= 1e-10);

    ModelSpec beta;
    beta.variant = ModelVariant::BetaE;
    beta.Omega = 1.0;
    beta.g = 0.1;
    CHECK_THROWS_AS(heisenberg_force(beta, make_space({8}, 2)), std::invalid_argument);
}
