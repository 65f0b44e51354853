#include <doctest.h>

#include <random>

#include "qedsim/gauge.hpp"

using namespace qedsim;

namespace {
const Complex kI{0.0, 1.0};

ModelSpec model(ModelVariant v, double omega, double split, double g) {
    ModelSpec s;
    s.variant = v;
    s.omega = omega;
    s.g = g;
    if (v == ModelVariant::RennerTeller) s.e3 = split;
    else s.Omega = split;
    return s;
}
} // namespace

TEST_CASE("single-mode gauge potential: one component, Abelian") {
    const GaugeReport rep = extract_gauge_potentials(model(ModelVariant::BetaE, 2.0, 1.0, 0.8));
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.classification == GaugeClass::Abelian);
    CHECK(rep.commutators.empty());
    CHECK(rep.max_commutator_norm == 0.0);
    CHECK(max_abs(rep.components[0] - (-0.4) * pauli_x()) == 0.0);
    // Phi = -(omega/2) A^2 = -(g^2 / (2 omega)) I for this variant
    CHECK(max_abs(rep.scalar_potential - (-0.16) * Matrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("two-mode gauge potential: commutator 2i (g/omega)^2 sigma_z") {
    // Pauli-product oracle, independent of the library commutator path
    const Matrix sx = pauli_x(), sy = pauli_y();
    const Matrix oracle = sx * sy - sy * sx; // = 2i sigma_z
    CHECK(max_abs(oracle - 2.0 * kI * pauli_z()) == 0.0);

    const GaugeReport unit = extract_gauge_potentials(model(ModelVariant::EpsilonE, 1.0, 1.0, 1.0));
    REQUIRE(unit.components.size() == 2);
    REQUIRE(unit.commutators.size() == 1);
    CHECK(unit.classification == GaugeClass::NonAbelian);
    CHECK(max_abs(unit.commutators[0] - 2.0 * kI * pauli_z()) == 0.0);

    const double g = 0.7, omega = 1.3;
    const GaugeReport gen = extract_gauge_potentials(model(ModelVariant::EpsilonE, omega, 0.4, g));
    const double s2 = (g / omega) * (g / omega);
    CHECK(max_abs(gen.commutators[0] - 2.0 * kI * s2 * pauli_z()) <= 1e-15);
}

TEST_CASE("three-level gauge potential: commutator i (g/omega)^2 lambda_2") {
    const GaugeReport rep = extract_gauge_potentials(model(ModelVariant::RennerTeller, 1.0, 1.0, 1.0));
    REQUIRE(rep.components.size() == 2);
    CHECK(rep.classification == GaugeClass::NonAbelian);
    CHECK(max_abs(rep.commutators[0] - kI * gell_mann(2)) == 0.0);
    CHECK(max_abs(rep.components[0] - (-1.0) * gell_mann(4)) == 0.0);
    CHECK(max_abs(rep.components[1] - (-1.0) * gell_mann(6)) == 0.0);

    CHECK_THROWS_AS(extract_gauge_potentials(model(ModelVariant::DiracLimit, 1, 1, 1)),
                    std::invalid_argument);
}

TEST_CASE("gauge rewrite reproduces the Hamiltonian exactly") {
    // single mode, unit parameters
    CHECK(gauge_rewrite_residual(model(ModelVariant::BetaE, 1.0, 1.0, 1.0), make_space({20}, 2)) <=
          1e-12);

    // zero coupling: A = 0, Phi = 0, residual vanishes identically
    CHECK(gauge_rewrite_residual(model(ModelVariant::BetaE, 1.0, 1.0, 0.0), make_space({12}, 2)) ==
          0.0);

    // random parameter sweep over all three variants
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> u(0.2, 2.5);
    for (int rep = 0; rep < 10; ++rep) {
        const double omega = u(rng), split = u(rng), g = u(rng);
        CHECK(gauge_rewrite_residual(model(ModelVariant::BetaE, omega, split, g),
                                     make_space({14}, 2)) <= 1e-10);
        CHECK(gauge_rewrite_residual(model(ModelVariant::EpsilonE, omega, split, g),
                                     make_space({8, 9}, 2)) <= 1e-10);
        CHECK(gauge_rewrite_residual(model(ModelVariant::RennerTeller, omega, split, g),
                                     make_space({8, 7}, 3)) <= 1e-10);
    }

    // the report carries the residual for its check space
    const SpaceDescriptor space = make_space({10, 10}, 2);
    const GaugeReport rep = extract_gauge_potentials(model(ModelVariant::EpsilonE, 1.0, 0.5, 0.9),
                                                     &space);
    CHECK(rep.rewrite_residual <= 1e-10);
}

TEST_CASE("classification rule: Abelian iff all commutators vanish") {
    // zero coupling makes every variant Abelian (components vanish)
    for (ModelVariant v :
         {ModelVariant::BetaE, ModelVariant::EpsilonE, ModelVariant::RennerTeller}) {
        const GaugeReport rep = extract_gauge_potentials(model(v, 1.0, 1.0, 0.0));
        CHECK(rep.classification == GaugeClass::Abelian);
    }
    CHECK(extract_gauge_potentials(model(ModelVariant::EpsilonE, 1.0, 1.0, 1e-5)).classification ==
          GaugeClass::NonAbelian);
}
