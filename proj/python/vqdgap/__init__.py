"""Pairing-model gap estimation with variational quantum deflation."""

from vqdgap._core import (
    Backend,
    Circuit,
    CouplingGraph,
    GapEstimate,
    GapRunRecord,
    OptResult,
    PauliSum,
    SpectrumResult,
    __version__,
    beta_bound,
    build_qubit_hamiltonian,
    check_topology,
    cobyla_minimize,
    eigenspectrum,
    estimate_gap,
    estimate_overlap,
    excited_population,
    expectation,
    gap_from_spectrum,
    hardware_efficient_ansatz,
    kraus_completeness_residual,
    measurement_groups,
    run_density,
    run_statevector,
    sample_counts,
    solve_spectrum,
    spsa_minimize,
    thermal_relaxation_kraus,
    to_matrix,
)

__all__ = [
    "Backend",
    "Circuit",
    "CouplingGraph",
    "GapEstimate",
    "GapRunRecord",
    "OptResult",
    "PauliSum",
    "SpectrumResult",
    "__version__",
    "beta_bound",
    "build_qubit_hamiltonian",
    "check_topology",
    "cobyla_minimize",
    "eigenspectrum",
    "estimate_gap",
    "estimate_overlap",
    "excited_population",
    "expectation",
    "gap_from_spectrum",
    "hardware_efficient_ansatz",
    "kraus_completeness_residual",
    "measurement_groups",
    "run_density",
    "run_statevector",
    "sample_counts",
    "solve_spectrum",
    "spsa_minimize",
    "thermal_relaxation_kraus",
    "to_matrix",
]
