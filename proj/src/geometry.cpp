#include "qedsim/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace qedsim {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) { // into (-pi, pi]
    double w = std::remainder(a, kTwoPi);
    if (w <= -std::numbers::pi) w += kTwoPi;
    return w;
}

struct LoopScan {
    double phase;
    double min_gap;
};

LoopScan wilson_loop(const ModelSpec& spec, const LoopSpec& loop, int n) {
    std::vector<Vector> vecs;
    vecs.reserve(n);
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double th = kTwoPi * i / n;
        const double px = loop.center_x + loop.radius * std::cos(th);
        const double py = loop.center_y + loop.radius * std::sin(th);
        Eigen::SelfAdjointEigenSolver<Matrix> es(atomic_matrix(spec, px, py));
        const auto& ev = es.eigenvalues();
        double gap = std::numeric_limits<double>::infinity();
        if (loop.branch > 0) gap = std::min(gap, ev(loop.branch) - ev(loop.branch - 1));
        if (loop.branch + 1 < ev.size()) gap = std::min(gap, ev(loop.branch + 1) - ev(loop.branch));
        if (gap <= 1e-8)
            throw std::runtime_error("berry_phase: branch degenerate at sample " + std::to_string(i) +
                                     " (P_x=" + std::to_string(px) + ", P_y=" + std::to_string(py) +
                                     ", gap=" + std::to_string(gap) + ")");
        min_gap = std::min(min_gap, gap);
        vecs.push_back(es.eigenvectors().col(loop.branch));
    }
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= (vecs[i].adjoint() * vecs[(i + 1) % n])(0);
    return {wrap_angle(-std::arg(prod)), min_gap};
}

} // namespace

BerryPhaseResult berry_phase(const ModelSpec& spec, const LoopSpec& loop) {
    validate(spec);
    if (spec.variant != ModelVariant::EpsilonE && spec.variant != ModelVariant::RennerTeller)
        throw std::invalid_argument("berry_phase: supported for epsilon_e and renner_teller only");
    if (!(loop.radius > 0.0)) throw std::invalid_argument("berry_phase: radius must be positive");
    if (loop.n_points < 16) throw std::invalid_argument("berry_phase: need n_points >= 16");
    const int nb = required_space(spec.variant).atom_levels;
    if (loop.branch < 0 || loop.branch >= nb)
        throw std::out_of_range("berry_phase: branch index out of range");

    const LoopScan coarse = wilson_loop(spec, loop, loop.n_points);
    const LoopScan fine = wilson_loop(spec, loop, 2 * loop.n_points);

    // discretization error is O(1/n^2): gamma_inf = gamma_2n - (gamma_n - gamma_2n)/3
    const double d = wrap_angle(coarse.phase - fine.phase);
    BerryPhaseResult res;
    res.phase = wrap_angle(fine.phase - d / 3.0);
    res.phase_raw = coarse.phase;
    res.richardson_error = std::abs(d) / 3.0;
    res.min_gap = std::min(coarse.min_gap, fine.min_gap);
    res.n_points = loop.n_points;
    return res;
}

const char* intersection_name(IntersectionType t) {
    switch (t) {
        case IntersectionType::Conical: return "conical";
        case IntersectionType::Glancing: return "glancing";
        case IntersectionType::Avoided: return "avoided";
    }
    return "?";
}

IntersectionReport classify_intersection(const ModelSpec& spec) {
    validate(spec);
    if (spec.variant != ModelVariant::EpsilonE && spec.variant != ModelVariant::RennerTeller)
        throw std::invalid_argument("classify_intersection: supported for epsilon_e and renner_teller only");

    const int nb = required_space(spec.variant).atom_levels;
    Eigen::SelfAdjointEigenSolver<Matrix> es0(atomic_matrix(spec, 0.0, 0.0), Eigen::EigenvaluesOnly);
    int b = 0;
    for (int i = 1; i + 1 < nb; ++i)
        if (es0.eigenvalues()(i + 1) - es0.eigenvalues()(i) <
            es0.eigenvalues()(b + 1) - es0.eigenvalues()(b))
            b = i;

    IntersectionReport rep;
    rep.gap_at_origin = es0.eigenvalues()(b + 1) - es0.eigenvalues()(b);
    if (rep.gap_at_origin > 1e-10) {
        rep.type = IntersectionType::Avoided;
        return rep;
    }

    // log-log fit of the splitting over rho in [1e-4, 1e-2]
    constexpr int kSamples = 9;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double prev = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double rho = std::pow(10.0, -4.0 + 2.0 * i / (kSamples - 1));
        Eigen::SelfAdjointEigenSolver<Matrix> es(atomic_matrix(spec, rho, 0.0), Eigen::EigenvaluesOnly);
        const double dv = es.eigenvalues()(b + 1) - es.eigenvalues()(b);
        if (!(dv > 0.0) || dv < prev)
            throw std::runtime_error("classify_intersection: splitting samples are not positive and monotone");
        prev = dv;
        const double lx = std::log(rho), ly = std::log(dv);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    rep.fitted_exponent = (kSamples * sxy - sx * sy) / (kSamples * sxx - sx * sx);

    if (std::abs(rep.fitted_exponent - 1.0) <= 0.05) rep.type = IntersectionType::Conical;
    else if (std::abs(rep.fitted_exponent - 2.0) <= 0.05) rep.type = IntersectionType::Glancing;
    else
        throw std::runtime_error("classify_intersection: fitted exponent " +
                                 std::to_string(rep.fitted_exponent) + " is neither ~1 nor ~2");
    return rep;
}

namespace {

// Hilbert-Schmidt least squares of F against a basis on the interior block.
std::array<double, 3> decompose_interior(const Matrix& f, const std::array<Matrix, 3>& basis,
                                         const std::vector<Index>& keep, double& residual) {
    const Index n = static_cast<Index>(keep.size());
    auto restrict_to = [&](const Matrix& m) {
        Matrix r(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) r(i, j) = m(keep[i], keep[j]);
        return r;
    };
    const Matrix fr = restrict_to(f);
    std::array<Matrix, 3> br{restrict_to(basis[0]), restrict_to(basis[1]), restrict_to(basis[2])};

    Eigen::Matrix3d gram;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
        rhs(i) = (br[i].adjoint() * fr).trace().real();
        for (int j = 0; j < 3; ++j) gram(i, j) = (br[i].adjoint() * br[j]).trace().real();
    }
    const Eigen::Vector3d c = gram.fullPivLu().solve(rhs);
    Matrix recon = c(0) * br[0] + c(1) * br[1] + c(2) * br[2];
    residual = max_abs(fr - recon);
    return {c(0), c(1), c(2)};
}

} // namespace

ForceReport heisenberg_force(const ModelSpec& spec, const SpaceDescriptor& space) {
    validate(spec);
    if (spec.variant != ModelVariant::EpsilonE)
        throw std::invalid_argument("heisenberg_force: requires the epsilon_e variant");
    require_compatible(spec, space);

    const Matrix h = build_hamiltonian(spec, space).matrix();
    const auto [xop, pxop] = make_quadratures(space, "x");
    const auto [yop, pyop] = make_quadratures(space, "y");

    auto double_comm = [&](const Matrix& r) {
        const Matrix inner = h * r - r * h;
        return (-(h * inner - inner * h)).eval();
    };
    ForceReport rep;
    rep.fx = double_comm(xop.matrix());
    rep.fy = double_comm(yop.matrix());

    // interior = both occupations at least two levels below their cutoff
    std::vector<Index> keep;
    for (Index i = 0; i < space.dim(); ++i)
        if (space.occupation_of(i, 0) <= space.mode(0).cutoff - 3 &&
            space.occupation_of(i, 1) <= space.mode(1).cutoff - 3)
            keep.push_back(i);

    const Matrix py_sz = embed_atomic_mode_product(
        space, pauli_z(), 1, kI * (lowering_block(space.mode(1).cutoff).adjoint() -
                                   lowering_block(space.mode(1).cutoff)) / std::sqrt(2.0));
    const Matrix px_sz = embed_atomic_mode_product(
        space, pauli_z(), 0, kI * (lowering_block(space.mode(0).cutoff).adjoint() -
                                   lowering_block(space.mode(0).cutoff)) / std::sqrt(2.0));

    rep.fx_coefficients = decompose_interior(
        rep.fx, {xop.matrix(), embed_atomic_op(space, pauli_y()).matrix(), py_sz}, keep,
        rep.fx_residual);
    rep.fy_coefficients = decompose_interior(
        rep.fy, {yop.matrix(), embed_atomic_op(space, pauli_x()).matrix(), px_sz}, keep,
        rep.fy_residual);
    return rep;
}

} // namespace qedsim
