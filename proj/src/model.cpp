#include "qedsim/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qedsim {

namespace {
constexpr Complex kI{0.0, 1.0};

void require_field(const ModelSpec& spec, const std::optional<double>& f, const char* name) {
    if (!f)
        throw std::invalid_argument(std::string("ModelSpec: variant ") + variant_name(spec.variant) +
                                    " requires parameter '" + name + "'");
}

void forbid_field(const ModelSpec& spec, const std::optional<double>& f, const char* name) {
    if (f)
        throw std::invalid_argument(std::string("ModelSpec: variant ") + variant_name(spec.variant) +
                                    " does not take parameter '" + name + "'");
}

// omega * (P^2 + X^2)/2 summed over all modes, assembled from block-level
// products of the truncated quadratures.
Matrix free_field_matrix(const SpaceDescriptor& space, double omega) {
    const Index d = space.dim();
    Matrix h = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
        const Matrix a = lowering_block(space.mode(k).cutoff);
        const Matrix ad = a.adjoint();
        const Matrix x = (a + ad) / std::sqrt(2.0);
        const Matrix p = kI * (ad - a) / std::sqrt(2.0);
        const Matrix block = 0.5 * omega * (p * p + x * x);
        h += embed_mode_op(space, k, block).matrix();
    }
    return h;
}

Matrix quadrature_block(const SpaceDescriptor& space, std::size_t k, bool momentum) {
    const Matrix a = lowering_block(space.mode(k).cutoff);
    const Matrix ad = a.adjoint();
    if (momentum) return kI * (ad - a) / std::sqrt(2.0);
    return (a + ad) / std::sqrt(2.0);
}

Matrix atomic_unit(int m, int i, int j) { // |i><j|, 1-based
    Matrix b = Matrix::Zero(m, m);
    b(i - 1, j - 1) = 1.0;
    return b;
}

} // namespace

const char* variant_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::BetaE: return "beta_e";
        case ModelVariant::EpsilonE: return "epsilon_e";
        case ModelVariant::RennerTeller: return "renner_teller";
        case ModelVariant::DiracLimit: return "dirac_limit";
        case ModelVariant::DiracOscillator: return "dirac_oscillator";
    }
    return "?";
}

void validate(const ModelSpec& spec) {
    if (!(spec.omega > 0.0))
        throw std::invalid_argument("ModelSpec: omega must be positive");
    if (!std::isfinite(spec.g))
        throw std::invalid_argument("ModelSpec: g must be finite");
    switch (spec.variant) {
        case ModelVariant::BetaE:
        case ModelVariant::EpsilonE:
        case ModelVariant::DiracLimit:
            require_field(spec, spec.Omega, "Omega");
            forbid_field(spec, spec.e3, "E3");
            forbid_field(spec, spec.c, "c");
            forbid_field(spec, spec.mass, "mass");
            break;
        case ModelVariant::RennerTeller:
            require_field(spec, spec.e3, "E3");
            forbid_field(spec, spec.Omega, "Omega");
            forbid_field(spec, spec.c, "c");
            forbid_field(spec, spec.mass, "mass");
            break;
        case ModelVariant::DiracOscillator:
            require_field(spec, spec.c, "c");
            require_field(spec, spec.mass, "mass");
            forbid_field(spec, spec.Omega, "Omega");
            forbid_field(spec, spec.e3, "E3");
            if (!(*spec.c > 0.0))
                throw std::invalid_argument("ModelSpec: c must be positive");
            if (*spec.mass < 0.0)
                throw std::invalid_argument("ModelSpec: mass must be non-negative");
            break;
    }
}

SpaceShape required_space(ModelVariant v) {
    switch (v) {
        case ModelVariant::BetaE: return {1, 2};
        case ModelVariant::RennerTeller: return {2, 3};
        default: return {2, 2};
    }
}

void require_compatible(const ModelSpec& spec, const SpaceDescriptor& space) {
    validate(spec);
    const SpaceShape want = required_space(spec.variant);
    if (space.n_modes() != want.n_modes || space.atom_levels() != want.atom_levels)
        throw std::invalid_argument(std::string("build_hamiltonian: variant ") +
                                    variant_name(spec.variant) + " needs " +
                                    std::to_string(want.n_modes) + " mode(s) and " +
                                    std::to_string(want.atom_levels) + " atomic levels");
}

OperatorMatrix build_hamiltonian(const ModelSpec& spec, const SpaceDescriptor& space) {
    require_compatible(spec, space);
    const Index d = space.dim();
    Matrix h = Matrix::Zero(d, d);

    switch (spec.variant) {
        case ModelVariant::BetaE: {
            h = free_field_matrix(space, spec.omega);
            h += 0.5 * *spec.Omega * embed_atomic_op(space, pauli_z()).matrix();
            h += spec.g * embed_atomic_mode_product(space, pauli_x(), 0, quadrature_block(space, 0, true));
            break;
        }
        case ModelVariant::EpsilonE: {
            h = free_field_matrix(space, spec.omega);
            h += 0.5 * *spec.Omega * embed_atomic_op(space, pauli_z()).matrix();
            h += spec.g * embed_atomic_mode_product(space, pauli_x(), 0, quadrature_block(space, 0, true));
            h += spec.g * embed_atomic_mode_product(space, pauli_y(), 1, quadrature_block(space, 1, true));
            break;
        }
        case ModelVariant::RennerTeller: {
            h = free_field_matrix(space, spec.omega);
            h += *spec.e3 * embed_atomic_op(space, atomic_unit(3, 3, 3)).matrix();
            h += spec.g * embed_atomic_mode_product(space, gell_mann(4), 0, quadrature_block(space, 0, true));
            h += spec.g * embed_atomic_mode_product(space, gell_mann(6), 1, quadrature_block(space, 1, true));
            break;
        }
        case ModelVariant::DiracLimit: {
            // Quadratic momentum terms dropped; the fields still sit in the
            // two-dimensional harmonic potential omega (X^2 + Y^2)/2.
            for (std::size_t k = 0; k < 2; ++k) {
                const Matrix x = quadrature_block(space, k, false);
                h += 0.5 * spec.omega * embed_mode_op(space, k, (x * x).eval()).matrix();
            }
            h += 0.5 * *spec.Omega * embed_atomic_op(space, pauli_z()).matrix();
            h += spec.g * embed_atomic_mode_product(space, pauli_x(), 0, quadrature_block(space, 0, true));
            h += spec.g * embed_atomic_mode_product(space, pauli_y(), 1, quadrature_block(space, 1, true));
            break;
        }
        case ModelVariant::DiracOscillator: {
            // c sigma.(p - i m omega sigma_z r) + m c^2 sigma_z with
            // (p, r) -> quadrature pairs; sigma_x sigma_z = -i sigma_y and
            // sigma_y sigma_z = i sigma_x reduce the anti-Hermitian-looking
            // term to m c omega (sigma_x Y - sigma_y X).
            const double c = *spec.c;
            const double m = *spec.mass;
            h = c * embed_atomic_mode_product(space, pauli_x(), 0, quadrature_block(space, 0, true));
            h += c * embed_atomic_mode_product(space, pauli_y(), 1, quadrature_block(space, 1, true));
            h += m * c * spec.omega *
                 embed_atomic_mode_product(space, pauli_x(), 1, quadrature_block(space, 1, false));
            h -= m * c * spec.omega *
                 embed_atomic_mode_product(space, pauli_y(), 0, quadrature_block(space, 0, false));
            h += m * c * c * embed_atomic_op(space, pauli_z()).matrix();
            break;
        }
    }
    return OperatorMatrix(space, std::move(h), true);
}

Matrix atomic_matrix(const ModelSpec& spec, double px, double py) {
    validate(spec);
    switch (spec.variant) {
        case ModelVariant::BetaE:
            return 0.5 * *spec.Omega * pauli_z() + spec.g * px * pauli_x();
        case ModelVariant::EpsilonE:
        case ModelVariant::DiracLimit:
            return 0.5 * *spec.Omega * pauli_z() + spec.g * (px * pauli_x() + py * pauli_y());
        case ModelVariant::RennerTeller:
            return *spec.e3 * atomic_unit(3, 3, 3) +
                   spec.g * (px * gell_mann(4) + py * gell_mann(6));
        case ModelVariant::DiracOscillator:
            throw std::invalid_argument("atomic_matrix: not defined for the Dirac oscillator variant");
    }
    throw std::logic_error("atomic_matrix: unreachable");
}

double kinetic_prefactor(const ModelSpec& spec) {
    return spec.variant == ModelVariant::DiracLimit ? 0.0 : 0.5 * spec.omega;
}

namespace {

void check_axes(const ModelSpec& spec, const std::vector<std::vector<double>>& axes) {
    const std::size_t want = required_space(spec.variant).n_modes;
    if (axes.size() != want)
        throw std::invalid_argument("surfaces: expected " + std::to_string(want) +
                                    " momentum axis/axes for variant " + variant_name(spec.variant));
    for (const auto& ax : axes)
        if (ax.size() < 3)
            throw std::invalid_argument("surfaces: each axis needs at least 3 grid points");
}

template <typename PerPoint>
SurfaceGrid fill_grid(const std::vector<std::vector<double>>& axes, SurfaceGrid::Kind kind,
                      int n_branches, PerPoint per_point) {
    SurfaceGrid out;
    out.kind = kind;
    out.axes = axes;
    out.branches.assign(n_branches, {});
    const std::size_t total = axes.size() == 1 ? axes[0].size() : axes[0].size() * axes[1].size();
    for (auto& b : out.branches) b.reserve(total);
    if (axes.size() == 1) {
        for (double p : axes[0]) per_point(out, p, 0.0);
    } else {
        for (double px : axes[0])
            for (double py : axes[1]) per_point(out, px, py);
    }
    return out;
}

} // namespace

SurfaceGrid adiabatic_surfaces(const ModelSpec& spec, const std::vector<std::vector<double>>& axes) {
    validate(spec);
    if (spec.variant == ModelVariant::DiracOscillator)
        throw std::invalid_argument("adiabatic_surfaces: not defined for the Dirac oscillator variant");
    check_axes(spec, axes);
    const int nb = required_space(spec.variant).atom_levels;
    const double kin = kinetic_prefactor(spec);
    return fill_grid(axes, SurfaceGrid::Kind::Adiabatic, nb,
                     [&](SurfaceGrid& out, double px, double py) {
                         Eigen::SelfAdjointEigenSolver<Matrix> es(atomic_matrix(spec, px, py),
                                                                  Eigen::EigenvaluesOnly);
                         const double rho2 = px * px + py * py;
                         for (int b = 0; b < nb; ++b)
                             out.branches[b].push_back(es.eigenvalues()(b) + kin * rho2);
                     });
}

SurfaceGrid diabatic_surfaces(const ModelSpec& spec, const std::vector<std::vector<double>>& axes) {
    validate(spec);
    if (spec.variant == ModelVariant::DiracOscillator)
        throw std::invalid_argument("diabatic_surfaces: not defined for the Dirac oscillator variant");
    check_axes(spec, axes);
    const int nb = required_space(spec.variant).atom_levels;
    const double kin = kinetic_prefactor(spec);
    const bool coupled = spec.g != 0.0;
    return fill_grid(axes, SurfaceGrid::Kind::Diabatic, nb,
                     [&](SurfaceGrid& out, double px, double py) {
                         const double rho2 = px * px + py * py;
                         const double kinv = kin * rho2;
                         switch (spec.variant) {
                             case ModelVariant::BetaE: {
                                 // signed coordinate keeps the crossing at P = 0
                                 const double cpl = coupled ? spec.g * px : 0.0;
                                 const double off = coupled ? 0.0 : 0.5 * *spec.Omega;
                                 out.branches[0].push_back(kinv - cpl - off);
                                 out.branches[1].push_back(kinv + cpl + off);
                                 break;
                             }
                             case ModelVariant::EpsilonE:
                             case ModelVariant::DiracLimit: {
                                 const double rho = std::sqrt(rho2);
                                 const double cpl = coupled ? spec.g * rho : 0.0;
                                 const double off = coupled ? 0.0 : 0.5 * *spec.Omega;
                                 out.branches[0].push_back(kinv - cpl - off);
                                 out.branches[1].push_back(kinv + cpl + off);
                                 break;
                             }
                             case ModelVariant::RennerTeller: {
                                 const double rho = std::sqrt(rho2);
                                 if (coupled) {
                                     out.branches[0].push_back(kinv + 0.5 * *spec.e3 - spec.g * rho);
                                     out.branches[1].push_back(kinv);
                                     out.branches[2].push_back(kinv + 0.5 * *spec.e3 + spec.g * rho);
                                 } else {
                                     out.branches[0].push_back(kinv);
                                     out.branches[1].push_back(kinv);
                                     out.branches[2].push_back(kinv + *spec.e3);
                                 }
                                 break;
                             }
                             default: break;
                         }
                     });
}

namespace {

// Lower adiabatic branch of the two-level variants as a radial function.
double lower_branch(const ModelSpec& spec, double p) {
    const double om = spec.Omega.value_or(0.0);
    return 0.5 * spec.omega * p * p - std::sqrt(0.25 * om * om + spec.g * spec.g * p * p);
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

const char* regime_name(WellRegime r) {
    switch (r) {
        case WellRegime::SingleWell: return "single_well";
        case WellRegime::DoubleWell: return "double_well";
        case WellRegime::Sombrero: return "sombrero";
    }
    return "?";
}

MinimaReport locate_minima(const ModelSpec& spec) {
    validate(spec);
    if (spec.variant != ModelVariant::BetaE && spec.variant != ModelVariant::EpsilonE)
        throw std::invalid_argument("locate_minima: supported for the beta_e and epsilon_e variants only");

    const double om = *spec.Omega;
    const double g2 = spec.g * spec.g;
    const double w = spec.omega;

    MinimaReport rep;
    rep.threshold_g_derived = std::sqrt(0.5 * w * om);
    rep.threshold_g_literature = 0.5 * std::sqrt(w * om);

    const bool displaced = g2 > 0.5 * w * om;
    auto f = [&](double p) { return lower_branch(spec, p); };

    if (!displaced) {
        rep.regime = WellRegime::SingleWell;
        rep.minima = {{0.0, f(0.0)}};
        // cross-check: the refined minimum of the numeric branch stays at 0
        const double pr = golden_min(f, -1.0 - std::abs(om) / std::max(1e-6, std::abs(spec.g) + 1.0), 1.0, 1e-10);
        if (f(pr) < f(0.0) - 1e-12)
            throw std::runtime_error("locate_minima: grid refinement contradicts single-well stationarity");
        return rep;
    }

    // Stationarity of omega p^2/2 - sqrt(Omega^2/4 + g^2 p^2):
    // sqrt(...) = g^2/omega  =>  p*^2 = g^2/omega^2 - Omega^2/(4 g^2).
    const double pstar2 = g2 / (w * w) - om * om / (4.0 * g2);
    const double pstar = std::sqrt(pstar2);
    const double vstar = -g2 / (2.0 * w) - w * om * om / (8.0 * g2);

    // value comparison only: near the threshold the well is flat and the
    // minimizer position is ill-conditioned
    const double pr = golden_min(f, 1e-12, 2.0 * pstar + 1.0, 1e-12 * (1.0 + pstar));
    if (std::abs(f(pr) - vstar) > 1e-10 * (1.0 + std::abs(vstar)) || f(pstar) > f(pr) + 1e-12)
        throw std::runtime_error("locate_minima: grid refinement disagrees with analytic stationarity");

    if (spec.variant == ModelVariant::BetaE) {
        rep.regime = WellRegime::DoubleWell;
        rep.minima = {{-pstar, vstar}, {pstar, vstar}};
    } else {
        rep.regime = WellRegime::Sombrero;
        rep.minima = {{pstar, vstar}}; // ring radius
    }
    return rep;
}

JcMatchReport dirac_oscillator_jc_match(const ModelSpec& spec, const SpaceDescriptor& space,
                                        int jc_cutoff) {
    validate(spec);
    if (spec.variant != ModelVariant::DiracOscillator)
        throw std::invalid_argument("dirac_oscillator_jc_match: requires the dirac_oscillator variant");
    require_compatible(spec, space);

    const double c = *spec.c;
    const double m = *spec.mass;
    const double g_eff = c * (1.0 + m * spec.omega); // co-rotating chiral coupling
    const double mc2 = m * c * c;

    Eigen::SelfAdjointEigenSolver<Matrix> es_do(build_hamiltonian(spec, space).matrix(),
                                                Eigen::EigenvaluesOnly);
    const Eigen::VectorXd full_levels = es_do.eigenvalues();

    const int n_jc = jc_cutoff > 0 ? jc_cutoff : space.mode(0).cutoff + space.mode(1).cutoff;
    const SpaceDescriptor jc_space = make_space({n_jc}, 2);
    const Matrix a = lowering_block(n_jc);
    Matrix coupling = Matrix::Zero(2, 2);
    coupling(0, 1) = 1.0; // sigma_plus = |1><2|
    Matrix h_jc = kI * g_eff * embed_atomic_mode_product(jc_space, coupling, 0, a.adjoint());
    h_jc += h_jc.adjoint().eval();
    h_jc += mc2 * embed_atomic_op(jc_space, pauli_z()).matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es_jc(h_jc, Eigen::EigenvaluesOnly);

    std::vector<double> jc(es_jc.eigenvalues().data(),
                           es_jc.eigenvalues().data() + es_jc.eigenvalues().size());
    std::sort(jc.begin(), jc.end(), [](double x, double y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
        return x < y;
    });

    JcMatchReport rep;
    rep.jc_levels = jc;
    rep.deviations.reserve(jc.size());
    for (double e : jc) {
        // nearest two-mode eigenvalue (full_levels is ascending)
        const double* lo = std::lower_bound(full_levels.data(), full_levels.data() + full_levels.size(), e);
        double best = std::numeric_limits<double>::infinity();
        if (lo != full_levels.data() + full_levels.size()) best = std::min(best, std::abs(*lo - e));
        if (lo != full_levels.data()) best = std::min(best, std::abs(*(lo - 1) - e));
        rep.deviations.push_back(best);
    }
    for (std::size_t i = 0; i < rep.deviations.size(); ++i) {
        if (rep.deviations[i] > 1e-8) break;
        rep.matched_levels = static_cast<int>(i + 1);
        rep.max_dev = std::max(rep.max_dev, rep.deviations[i]);
    }
    return rep;
}

} // namespace qedsim
