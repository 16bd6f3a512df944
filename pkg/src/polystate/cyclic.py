"""Symmetry adaptation of Fock-space seeds under C_n and D_n.

Two routes produce the same normalized state: the character-weighted
superposition over the rotated copies of the seed, and the erasure map
that keeps only the photon numbers m = lam - 1 (mod n). Both are kept
and cross-checked; neither is ever derived from the other.

Phase convention. The raw superposition sum_r chi^(lam)(g_r) R(theta_r)|phi>
has m-amplitude n A_m on the residue class and zero elsewhere, so it is a
positive multiple of the erased vector. The normalization constant is
chosen as N_lam = mu_n^(lam-1) / raw_norm, which makes

    erased = mu_n^(1-lam) x superposition

an exact identity, while the erasure route stays real and positive on the
seed's surviving amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    FockVector,
    FockOperator,
    basis_state,
    inner,
    normalize,
    residue_class_masses,
    rotate,
    inversion,
    fidelity,
)
from .group import character, mu, theta

__all__ = [
    "CyclicSpec",
    "NormalizationRecord",
    "EmptyRepresentationError",
    "cyclic_superposition",
    "cyclic_erasure",
    "cyclic_set",
    "normalization_record",
    "rotation_phase_check",
    "cyclic_density",
    "density_route_gap",
    "circle_limit",
    "circle_limit_quadrature_gap",
    "dihedral_state",
    "dihedral_inversion_check",
    "dihedral_gram",
    "annihilation_irrep_shift",
]

# Mass below tol^2 on the target residue class means the component is absent.
_EMPTY_TOL = 1e-12


@dataclass(frozen=True)
class CyclicSpec:
    """Group order n and 1-based irrep label lam in 1..n."""

    n: int
    lam: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group order n={self.n} must be >= 1")
        if not 1 <= self.lam <= self.n:
            raise ValueError(f"irrep index lam={self.lam} outside 1..{self.n}")


@dataclass(frozen=True)
class NormalizationRecord:
    """raw_norm is ||sum_r chi_r R(theta_r) phi||; n_lambda the applied constant.

    Invariant: |n_lambda| * raw_norm = 1 for a unit-norm output.
    phase_convention names where the unimodular freedom went: the erasure
    route is real-positive and the superposition constant carries
    mu_n^(lam-1), making the two routes differ by exactly mu_n^(1-lam).
    """

    raw_norm: float
    n_lambda: complex
    phase_convention: str = "erasure-real-positive"


class EmptyRepresentationError(ValueError):
    """The seed has no component in the requested symmetry sector."""

    def __init__(self, n: int, lam: int, masses: np.ndarray, detail: str = ""):
        self.n = n
        self.lam = lam
        self.masses = masses
        msg = (f"seed carries no weight in the (n={n}, lam={lam}) sector; "
               f"residue-class masses {np.array2string(masses, precision=3)}")
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _raw_superposition(phi: FockVector, spec: CyclicSpec) -> np.ndarray:
    n, lam = spec.n, spec.lam
    acc = np.zeros(phi.n_max + 1, dtype=complex)
    for r in range(1, n + 1):
        acc += character(n, lam, r) * rotate(phi, theta(n, r)).amplitudes
    return acc


def cyclic_superposition(phi: FockVector, spec: CyclicSpec
                         ) -> tuple[FockVector, NormalizationRecord]:
    """Character-weighted sum over the rotated seed copies, normalized.

    Raises EmptyRepresentationError when the seed has no weight on the
    residue class m = lam - 1 (mod n). The output support is verified to
    lie on that class (off-class leakage <= 1e-12 of the norm; the exact
    cancellation is limited by rotation phases e^{-i theta m} with
    theta*m of order n_max, so machine noise here is ~1e-14, not eps).
    """
    n, lam = spec.n, spec.lam
    raw = _raw_superposition(phi, spec)
    raw_norm = float(np.linalg.norm(raw))
    if raw_norm < _EMPTY_TOL:
        raise EmptyRepresentationError(n, lam, residue_class_masses(phi, n))
    n_lambda = complex(mu(n) ** (lam - 1) / raw_norm)
    amps = n_lambda * raw

    m = np.arange(amps.size)
    off = np.linalg.norm(amps[(m - (lam - 1)) % n != 0])
    if off > 1e-12:
        raise AssertionError(f"off-class leakage {off:.3e} in superposition route")

    out = FockVector(phi.n_max, amps, phi.tail_flagged)
    return out, NormalizationRecord(raw_norm=raw_norm, n_lambda=n_lambda)


def normalization_record(phi: FockVector, spec: CyclicSpec) -> NormalizationRecord:
    """The NormalizationRecord of cyclic_superposition without keeping the state."""
    return cyclic_superposition(phi, spec)[1]


def cyclic_erasure(phi: FockVector, spec: CyclicSpec) -> FockVector:
    """Keep only amplitudes with m = lam - 1 (mod n), then renormalize.

    Acts as the identity on states already supported on the class. The
    scale is real and positive: surviving amplitudes keep their phases.
    """
    n, lam = spec.n, spec.lam
    amps = phi.amplitudes.copy()
    m = np.arange(amps.size)
    amps[(m - (lam - 1)) % n != 0] = 0.0
    nrm = np.linalg.norm(amps)
    if nrm < _EMPTY_TOL:
        raise EmptyRepresentationError(n, lam, residue_class_masses(phi, n))
    return FockVector(phi.n_max, amps / nrm, phi.tail_flagged)


def cyclic_set(phi: FockVector, n: int
               ) -> list[tuple[FockVector, NormalizationRecord]]:
    """All constructible (state, record) pairs for lam = 1..n, in lam order.

    Sectors where the seed has no weight are skipped; an entirely empty
    result is impossible for a nonzero seed.
    """
    out = []
    for lam in range(1, n + 1):
        try:
            out.append(cyclic_superposition(phi, CyclicSpec(n, lam)))
        except EmptyRepresentationError:
            continue
    return out


def rotation_phase_check(psi: FockVector, spec: CyclicSpec, l: int
                         ) -> tuple[float, float]:
    """Apply l elementary rotations and compare against the predicted phase.

    R(2 pi l / n) acting on the lam-sector state reproduces it up to the
    phase mu_n^((1-lam) l). Returns (fidelity, phase_residual): fidelity is
    |<psi|R|psi>| for the unit-normalized state, the residual is the angle
    difference wrapped to (-pi, pi]. l = n is the identity element.
    """
    n, lam = spec.n, spec.lam
    rotated = rotate(psi, 2.0 * np.pi * l / n)
    ov = inner(psi, rotated)
    fid = abs(ov) / (psi.norm ** 2)
    predicted = mu(n) ** ((1 - lam) * l)
    diff = np.angle(ov / predicted)
    return float(fid), float(abs(diff))


def _class_projector_diag(n_max: int, n: int, lam: int) -> np.ndarray:
    m = np.arange(n_max + 1)
    return ((m - (lam - 1)) % n == 0).astype(float)


def _density_routes(rho: FockOperator, spec: CyclicSpec
                    ) -> tuple[np.ndarray, np.ndarray]:
    """(double character sum, residue-class projection), both unnormalized."""
    n, lam = spec.n, spec.lam
    d = rho.n_max + 1
    m = np.arange(d)

    acc = np.zeros((d, d), dtype=complex)
    for r in range(1, n + 1):
        phase_r = np.exp(-1j * theta(n, r) * m)
        for rp in range(1, n + 1):
            phase_rp = np.exp(-1j * theta(n, rp) * m)
            weight = character(n, lam, r) * np.conj(character(n, lam, rp))
            acc += weight * (phase_r[:, None] * rho.matrix * np.conj(phase_rp)[None, :])
    double_sum = acc / n ** 2

    diag = _class_projector_diag(rho.n_max, n, lam)
    projected = diag[:, None] * rho.matrix * diag[None, :]
    return double_sum, projected


def density_route_gap(rho: FockOperator, spec: CyclicSpec) -> float:
    """Entrywise max difference between the two density constructions."""
    double_sum, projected = _density_routes(rho, spec)
    return float(np.abs(double_sum - projected).max())


def cyclic_density(rho: FockOperator, spec: CyclicSpec) -> FockOperator:
    """Symmetry-adapted density matrix, by double character sum and projection.

    Both routes are always evaluated: the double sum
    (1/n^2) sum_{r,r'} chi_r chi_{r'}^* R_r rho R_{r'}^dag and the residue
    class projection P rho P. They agree entrywise up to the character-sum
    identity; disagreement beyond 1e-12 raises. The returned operator is the
    trace-renormalized projection.
    """
    n, lam = spec.n, spec.lam
    double_sum, projected = _density_routes(rho, spec)

    gap = float(np.abs(double_sum - projected).max())
    if gap > 1e-12:
        raise AssertionError(
            f"density routes disagree by {gap:.3e}; inputs are inconsistent"
        )

    tr = projected.trace().real
    if tr < _EMPTY_TOL:
        raise EmptyRepresentationError(n, lam, np.abs(np.diag(rho.matrix)).real)
    return FockOperator(rho.n_max, projected / tr)


def _circle_average(phi: FockVector, lam: int) -> np.ndarray:
    """(1/2pi) int dtheta e^{i theta (lam-1)} R(theta)|phi> by trapezoid rule.

    2 (n_max + 1) equispaced angles resolve every frequency present, so the
    rule integrates the trigonometric-polynomial integrand exactly.
    """
    npts = 2 * (phi.n_max + 1)
    thetas = 2.0 * np.pi * np.arange(npts) / npts
    m = np.arange(phi.n_max + 1)
    return (np.exp(1j * np.outer(thetas, (lam - 1) - m)) * phi.amplitudes).mean(axis=0)


def circle_limit_quadrature_gap(phi: FockVector, lam: int) -> float:
    """Max amplitude difference between the quadrature and analytic limits."""
    limit = circle_limit(phi, lam)
    quad = _circle_average(phi, lam)
    return float(np.abs(quad / np.linalg.norm(quad) - limit.amplitudes).max())


def circle_limit(phi: FockVector, lam: int) -> FockVector:
    """The n -> infinity limit of the cyclic family: the number state |lam - 1>.

    The analytic limit is exact. It is cross-checked against the continuous
    average integral over all rotation angles, whose quadrature must agree
    to 1e-10 after normalization.
    """
    if lam < 1:
        raise ValueError(f"irrep index lam={lam} must be >= 1")
    if lam - 1 > phi.n_max:
        raise EmptyRepresentationError(
            0, lam, np.abs(phi.amplitudes) ** 2, detail="lam - 1 beyond truncation")
    a = phi.amplitudes[lam - 1]
    if abs(a) ** 2 < _EMPTY_TOL ** 2:
        raise EmptyRepresentationError(0, lam, np.abs(phi.amplitudes) ** 2)

    quad = _circle_average(phi, lam)
    limit = basis_state(lam - 1, phi.n_max).amplitudes * (a / abs(a))
    gap = float(np.abs(quad / np.linalg.norm(quad) - limit).max())
    if gap > 1e-10:
        raise AssertionError(f"circle-limit quadrature check failed ({gap:.3e})")
    return FockVector(phi.n_max, limit)


def dihedral_state(phi: FockVector, spec: CyclicSpec, variant: str = "sum"
                   ) -> tuple[FockVector, NormalizationRecord]:
    """D_n-adapted state built from the cyclic sum and its conjugate partner.

    variant 'sum' weights the inversion half by chi^*, giving amplitudes
    proportional to Re A_m on the surviving class; 'difference' weights it
    by -chi^*, giving Im A_m. Both live on the single residue class
    m = lam - 1 (mod n). A seed with real amplitudes has a vanishing
    difference variant, which raises EmptyRepresentationError.

    The normalization constant is real-positive for both variants, so sum
    amplitudes come out real and difference amplitudes purely imaginary.
    """
    if variant not in ("sum", "difference"):
        raise ValueError(f"variant must be 'sum' or 'difference', got {variant!r}")
    n, lam = spec.n, spec.lam
    acc = np.zeros(phi.n_max + 1, dtype=complex)
    for r in range(1, n + 1):
        chi = character(n, lam, r)
        acc += chi * rotate(phi, theta(n, r)).amplitudes
        half = np.conj(chi) * inversion(phi, r, n).amplitudes
        acc += half if variant == "sum" else -half
    raw_norm = float(np.linalg.norm(acc))
    if raw_norm < _EMPTY_TOL:
        raise EmptyRepresentationError(
            n, lam, residue_class_masses(phi, n),
            detail=f"dihedral {variant} variant vanishes")
    n_lambda = complex(1.0 / raw_norm)
    amps = n_lambda * acc

    m = np.arange(amps.size)
    off = np.linalg.norm(amps[(m - (lam - 1)) % n != 0])
    if off > 1e-12:
        raise AssertionError(f"off-class leakage {off:.3e} in dihedral route")

    out = FockVector(phi.n_max, amps, phi.tail_flagged)
    record = NormalizationRecord(raw_norm=raw_norm, n_lambda=n_lambda,
                                 phase_convention="real-positive")
    return out, record


def dihedral_inversion_check(gamma: FockVector, spec: CyclicSpec, l: int
                             ) -> tuple[float, complex]:
    """Apply the inversion U_l = C R(2 pi l / n); return (fidelity, phase).

    l counts elementary rotation units, matching rotation_phase_check. The
    sum variant reproduces itself with phase mu_n^((lam-1) l), the
    difference variant with the opposite sign (its amplitudes are purely
    imaginary, and U is antilinear in the global phase, so the sign is a
    convention, which is why the phase is returned rather than judged).
    Fidelity alone certifies the state is an eigenvector of the inversion.
    """
    r = (l % spec.n) + 1  # theta_r = 2 pi l / n mod 2 pi
    inverted = inversion(gamma, r, spec.n)
    ov = inner(gamma, inverted)
    fid = abs(ov) ** 2 / (gamma.norm ** 4)
    return float(fid), complex(ov / abs(ov)) if abs(ov) > 0 else complex(0)


def dihedral_gram(phi: FockVector, n: int, variant: str = "sum") -> np.ndarray:
    """Gram matrix of the constructible dihedral states over lam = 1..n.

    Entries for sectors that raise EmptyRepresentationError are left as
    identity rows so the residual against the identity stays meaningful.
    """
    states: dict[int, FockVector] = {}
    for lam in range(1, n + 1):
        try:
            states[lam], _ = dihedral_state(phi, CyclicSpec(n, lam), variant)
        except EmptyRepresentationError:
            continue
    g = np.eye(n, dtype=complex)
    for i in states:
        for j in states:
            g[i - 1, j - 1] = inner(states[i], states[j])
    return g


def annihilation_irrep_shift(psi: FockVector, spec: CyclicSpec
                             ) -> tuple[FockVector, int]:
    """a|psi^(lam)> lands in the lam - 1 sector (wrapping lam = 1 to n).

    Returns the normalized annihilated state and its new irrep label.
    Off-class leakage beyond 1e-12 raises, since the shift property is an
    exact consequence of the single-class support.
    """
    from .fock import annihilate

    n, lam = spec.n, spec.lam
    new_lam = lam - 1 if lam >= 2 else n
    lowered = annihilate(psi)
    nrm = lowered.norm
    if nrm < _EMPTY_TOL:
        raise EmptyRepresentationError(
            n, new_lam, residue_class_masses(psi, n),
            detail="annihilation gives the zero vector")
    amps = lowered.amplitudes / nrm
    m = np.arange(amps.size)
    off = float(np.linalg.norm(amps[(m - (new_lam - 1)) % n != 0]))
    if off > 1e-12:
        raise AssertionError(f"annihilation leaked {off:.3e} outside the shifted class")
    return FockVector(psi.n_max, amps, psi.tail_flagged), new_lam
