"""Symmetry-adapted bosonic states in a truncated Fock space.

Cyclic and dihedral projections of seed states, built either by
character-weighted superposition of rotated copies or by photon-number
erasure, plus the observables used to certify them: Wigner functions,
Mandel parameter, and bipartite linear entropy.
"""
from .group import (
    Character,
    GroupSpec,
    character,
    character_orthogonality_report,
    mu,
    root_sum,
    theta,
)
from .fock import (
    TAIL_TOL,
    FockOperator,
    FockVector,
    NoninvarianceReport,
    QuadratureMeans,
    annihilate,
    basis_state,
    check_noninvariant,
    coherent,
    conjugate,
    default_n_max,
    fidelity,
    from_amplitudes,
    inner,
    inversion,
    normalize,
    operator_from_dict,
    operator_to_dict,
    phase_aligned_distance,
    photon_moments,
    pure_density,
    quadrature_means,
    residue_class_masses,
    rotate,
    vector_from_dict,
    vector_to_dict,
)
from .cyclic import (
    CyclicSpec,
    EmptyRepresentationError,
    NormalizationRecord,
    annihilation_irrep_shift,
    circle_limit,
    circle_limit_quadrature_gap,
    cyclic_density,
    cyclic_erasure,
    cyclic_set,
    cyclic_superposition,
    density_route_gap,
    dihedral_gram,
    dihedral_inversion_check,
    dihedral_state,
    normalization_record,
    rotation_phase_check,
)
from .gaussian import (
    EMBED_TAIL_TOL,
    GaussianMoments,
    GaussianParams,
    c2_closed_form,
    cyclic_gaussian,
    cyclic_gaussian_wavefunction,
    fock_wavefunction,
    gaussian_to_fock,
    hermite_functions,
    moments,
    rotate_params,
    wavefunction,
)
from .observables import (
    BipartiteSpec,
    EntanglementResult,
    MemoryGuardError,
    WignerGrid,
    bipartite_norm_squared,
    bipartite_normalize,
    linear_entropy,
    linear_entropy_oracle,
    mandel,
    reconstruct_rotated,
    wigner,
    wigner_direct,
    wigner_normalization_error,
    wigner_points,
    wigner_reflection_residual,
    wigner_rotation_residual,
    write_wigner_csv,
)
from .verify import CheckRow, DEFAULT_SEED, SUITES, format_report, run_suites

__version__ = "0.1.0"

__all__ = [
    "Character",
    "GroupSpec",
    "character",
    "character_orthogonality_report",
    "mu",
    "root_sum",
    "theta",
    "TAIL_TOL",
    "FockOperator",
    "FockVector",
    "NoninvarianceReport",
    "QuadratureMeans",
    "annihilate",
    "basis_state",
    "check_noninvariant",
    "coherent",
    "conjugate",
    "default_n_max",
    "fidelity",
    "from_amplitudes",
    "inner",
    "inversion",
    "normalize",
    "operator_from_dict",
    "operator_to_dict",
    "phase_aligned_distance",
    "photon_moments",
    "pure_density",
    "quadrature_means",
    "residue_class_masses",
    "rotate",
    "vector_from_dict",
    "vector_to_dict",
    "CyclicSpec",
    "EmptyRepresentationError",
    "NormalizationRecord",
    "annihilation_irrep_shift",
    "circle_limit",
    "circle_limit_quadrature_gap",
    "cyclic_density",
    "cyclic_erasure",
    "cyclic_set",
    "cyclic_superposition",
    "density_route_gap",
    "dihedral_gram",
    "dihedral_inversion_check",
    "dihedral_state",
    "normalization_record",
    "rotation_phase_check",
    "EMBED_TAIL_TOL",
    "GaussianMoments",
    "GaussianParams",
    "c2_closed_form",
    "cyclic_gaussian",
    "cyclic_gaussian_wavefunction",
    "fock_wavefunction",
    "gaussian_to_fock",
    "hermite_functions",
    "moments",
    "rotate_params",
    "wavefunction",
    "BipartiteSpec",
    "EntanglementResult",
    "MemoryGuardError",
    "WignerGrid",
    "bipartite_norm_squared",
    "bipartite_normalize",
    "linear_entropy",
    "linear_entropy_oracle",
    "mandel",
    "reconstruct_rotated",
    "wigner",
    "wigner_direct",
    "wigner_normalization_error",
    "wigner_points",
    "wigner_reflection_residual",
    "wigner_rotation_residual",
    "write_wigner_csv",
    "CheckRow",
    "DEFAULT_SEED",
    "SUITES",
    "format_report",
    "run_suites",
    "__version__",
]
