#include "qedsim/gauge.hpp"

#include <cmath>

namespace qedsim {

namespace {
constexpr Complex kI{0.0, 1.0};

void require_gauge_variant(const ModelSpec& spec, const char* who) {
    validate(spec);
    if (spec.variant != ModelVariant::BetaE && spec.variant != ModelVariant::EpsilonE &&
        spec.variant != ModelVariant::RennerTeller)
        throw std::invalid_argument(std::string(who) +
                                    ": supported for beta_e, epsilon_e and renner_teller only");
}

std::vector<Matrix> gauge_components(const ModelSpec& spec) {
    const double s = -spec.g / spec.omega;
    switch (spec.variant) {
        case ModelVariant::BetaE: return {s * pauli_x()};
        case ModelVariant::EpsilonE: return {s * pauli_x(), s * pauli_y()};
        case ModelVariant::RennerTeller: return {s * gell_mann(4), s * gell_mann(6)};
        default: return {};
    }
}

Matrix atomic_energy_block(const ModelSpec& spec) {
    if (spec.variant == ModelVariant::RennerTeller) {
        Matrix e = Matrix::Zero(3, 3);
        e(2, 2) = *spec.e3;
        return e;
    }
    return 0.5 * *spec.Omega * pauli_z();
}

} // namespace

const char* gauge_class_name(GaugeClass c) {
    return c == GaugeClass::Abelian ? "abelian" : "non_abelian";
}

double gauge_rewrite_residual(const ModelSpec& spec, const SpaceDescriptor& space) {
    require_gauge_variant(spec, "gauge_rewrite_residual");
    require_compatible(spec, space);

    const std::vector<Matrix> comps = gauge_components(spec);
    const Index d = space.dim();

    Matrix phi = Matrix::Zero(comps.front().rows(), comps.front().cols());
    for (const Matrix& a : comps) phi -= 0.5 * spec.omega * a * a;

    Matrix h_rw = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
        const Matrix amode = lowering_block(space.mode(k).cutoff);
        const Matrix x = (amode + amode.adjoint()) / std::sqrt(2.0);
        const Matrix p = kI * (amode.adjoint() - amode) / std::sqrt(2.0);
        const Matrix shifted =
            embed_mode_op(space, k, p).matrix() - embed_atomic_op(space, comps[k]).matrix();
        h_rw += 0.5 * spec.omega * (shifted * shifted).eval();
        h_rw += 0.5 * spec.omega * embed_mode_op(space, k, (x * x).eval()).matrix();
    }
    h_rw += embed_atomic_op(space, atomic_energy_block(spec)).matrix();
    h_rw += embed_atomic_op(space, phi).matrix();

    return max_abs(h_rw - build_hamiltonian(spec, space).matrix());
}

GaugeReport extract_gauge_potentials(const ModelSpec& spec, const SpaceDescriptor* check_space) {
    require_gauge_variant(spec, "extract_gauge_potentials");

    GaugeReport rep;
    rep.components = gauge_components(spec);
    for (std::size_t k = 0; k < rep.components.size(); ++k)
        rep.component_labels.push_back(k == 0 ? "x" : "y");

    rep.scalar_potential = Matrix::Zero(rep.components.front().rows(), rep.components.front().cols());
    for (const Matrix& a : rep.components) rep.scalar_potential -= 0.5 * spec.omega * a * a;

    for (std::size_t k = 0; k < rep.components.size(); ++k)
        for (std::size_t l = k + 1; l < rep.components.size(); ++l) {
            Matrix c = rep.components[k] * rep.components[l] - rep.components[l] * rep.components[k];
            rep.max_commutator_norm = std::max(rep.max_commutator_norm, max_abs(c));
            rep.commutators.push_back(std::move(c));
        }
    rep.classification =
        rep.max_commutator_norm <= 1e-12 ? GaugeClass::Abelian : GaugeClass::NonAbelian;

    if (check_space) {
        rep.rewrite_residual = gauge_rewrite_residual(spec, *check_space);
    } else {
        const SpaceShape shape = required_space(spec.variant);
        rep.rewrite_residual = gauge_rewrite_residual(
            spec, make_space(std::vector<int>(shape.n_modes, 12), shape.atom_levels));
    }
    return rep;
}

} // namespace qedsim
