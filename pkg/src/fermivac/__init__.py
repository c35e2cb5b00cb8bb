"""Gaussian fermionic ground states: covariance matrices, overlaps, sweeps."""

from .gaussian import (
    CanonicalDecomposition,
    CovarianceMatrix,
    MajoranaCoupling,
    Purity,
    canonical_form,
    fidelity_pure_mixed,
    ground_state,
    ground_state_covariance,
    majorana_coupling,
    overlap_pure,
    product_embed,
    reduce,
    spectral_gap,
    thermal_covariance,
)
from .models import (
    ModelParams,
    ModelTag,
    QuadraticHamiltonian,
    build_global,
    build_kitaev_chain,
    build_model,
    build_rectangle,
    build_square_lattice,
    prefix_hamiltonian,
)
from .pipeline import (
    CostEstimate,
    FitResult,
    GrowthScheme,
    GrowthSeries,
    ScalingStudy,
    complexity_estimate,
    half_half_series,
    hamiltonian_gap,
    scaling_study,
    site_by_site_series,
    site_probe_eta,
    vacuum_covariance,
)
from .schmidt import (
    EntanglementSpectrum,
    entanglement_spectrum,
    largest_schmidt,
    renyi_entropy,
)
from .sweep import (
    CSV_HEADER,
    FLAG_DEGENERATE,
    FLAG_INFINITE,
    FLAG_UNDERFLOW,
    QUANTITIES,
    SweepResult,
    SweepRow,
    SweepSpec,
    run_sweep,
    write_csv,
    write_json,
    write_scaling_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "CanonicalDecomposition",
    "CostEstimate",
    "CovarianceMatrix",
    "EntanglementSpectrum",
    "FLAG_DEGENERATE",
    "FLAG_INFINITE",
    "FLAG_UNDERFLOW",
    "FitResult",
    "GrowthScheme",
    "GrowthSeries",
    "MajoranaCoupling",
    "ModelParams",
    "ModelTag",
    "Purity",
    "QUANTITIES",
    "QuadraticHamiltonian",
    "ScalingStudy",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "__version__",
    "build_global",
    "build_kitaev_chain",
    "build_model",
    "build_rectangle",
    "build_square_lattice",
    "canonical_form",
    "complexity_estimate",
    "entanglement_spectrum",
    "fidelity_pure_mixed",
    "ground_state",
    "ground_state_covariance",
    "half_half_series",
    "hamiltonian_gap",
    "largest_schmidt",
    "majorana_coupling",
    "overlap_pure",
    "prefix_hamiltonian",
    "product_embed",
    "reduce",
    "renyi_entropy",
    "run_sweep",
    "scaling_study",
    "site_by_site_series",
    "site_probe_eta",
    "spectral_gap",
    "thermal_covariance",
    "vacuum_covariance",
    "write_csv",
    "write_json",
    "write_scaling_csv",
]
