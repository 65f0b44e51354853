"""Cavity-QED quadrature simulator: Jahn-Teller surfaces, effective gauge
potentials, geometric phases and closed/lossy dynamics."""

from ._core import (  # noqa: F401
    Evolution,
    Losses,
    Model,
    Space,
    __version__,
    adiabatic_surfaces,
    annihilator,
    berry_phase,
    build_hamiltonian,
    classify_intersection,
    coherent_ket,
    diabatic_surfaces,
    dirac_jc_match,
    evolve_lindblad,
    evolve_schrodinger,
    gauge_report,
    gauge_rewrite_residual,
    heisenberg_force,
    locate_minima,
    quadratures,
    run_config,
    run_hall_experiment,
    run_nonabelian_loop,
    zitterbewegung_probe,
)
