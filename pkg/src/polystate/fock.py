"""Truncated Fock-space states, operators, and the elementary maps on them.

A state lives in the span of |0>..|n_max> and is stored as its complex
amplitude vector A_m. Conventions fixed here and inherited by every other
module: x = (a + a^dag)/sqrt(2), p = i (a^dag - a)/sqrt(2), and the
rotation R(theta) = exp(-i theta n) multiplies A_m by exp(-i theta m).
With these choices the coherent state with real alpha > 0 has
<x> = sqrt(2) alpha and <p> = 0.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TAIL_TOL",
    "default_n_max",
    "FockVector",
    "FockOperator",
    "QuadratureMeans",
    "NoninvarianceReport",
    "from_amplitudes",
    "basis_state",
    "coherent",
    "normalize",
    "rotate",
    "conjugate",
    "inversion",
    "inner",
    "fidelity",
    "phase_aligned_distance",
    "quadrature_means",
    "photon_moments",
    "residue_class_masses",
    "check_noninvariant",
    "pure_density",
    "annihilate",
    "vector_to_dict",
    "vector_from_dict",
    "operator_to_dict",
    "operator_from_dict",
]

# Tail mass above this marks a state as not cleanly representable at its n_max.
TAIL_TOL = 1e-10


def default_n_max() -> int:
    """Default truncation, 64 unless overridden by the POLYSTATE_NMAX env var."""
    return int(os.environ.get("POLYSTATE_NMAX", "64"))


@dataclass(frozen=True)
class FockVector:
    """State vector on |0>..|n_max|; amplitudes has length n_max + 1.

    tail_flagged is set by constructors when the tail mass |A_{n_max}|^2
    exceeds TAIL_TOL (or a constructor-specific threshold), meaning the
    truncation is too tight for the state.
    """

    n_max: int
    amplitudes: np.ndarray
    tail_flagged: bool = False

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size != self.n_max + 1:
            raise ValueError(
                f"amplitudes must have length n_max+1={self.n_max + 1}, got {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)  # value semantics
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def tail_mass(self) -> float:
        return float(np.abs(self.amplitudes[-1]) ** 2)


@dataclass(frozen=True)
class FockOperator:
    """Operator on the truncated space; matrix is (n_max+1) x (n_max+1)."""

    n_max: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.n_max + 1
        if mat.shape != (d, d):
            raise ValueError(f"matrix must be {d}x{d}, got {mat.shape}")
        if not np.all(np.isfinite(mat.view(float))):
            raise ValueError("matrix entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def hermiticity_residual(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitian part; positivity check on demand."""
        h = (self.matrix + self.matrix.conj().T) / 2
        return float(np.linalg.eigvalsh(h)[0])


@dataclass(frozen=True)
class QuadratureMeans:
    mean_x: float
    mean_p: float


@dataclass(frozen=True)
class NoninvarianceReport:
    """Diagnostics for whether a seed can feed the (n, lam) construction.

    quadrature_noninvariant: max(|<x>|, |<p>|) > tol, the sufficient
        displacement criterion.
    class_mass: w_lam, the probability mass on photon numbers
        m = lam - 1 (mod n).
    constructible: w_lam > tol^2, the sharp criterion.
    """

    quadrature_noninvariant: bool
    class_mass: float
    constructible: bool
    mean_x: float
    mean_p: float


def from_amplitudes(amps, n_max: int | None = None, tail_tol: float = TAIL_TOL) -> FockVector:
    """Wrap an amplitude array, flagging excessive tail mass."""
    amps = np.asarray(amps, dtype=complex)
    if n_max is None:
        n_max = amps.size - 1
    flagged = bool(np.abs(amps[-1]) ** 2 > tail_tol)
    return FockVector(n_max=n_max, amplitudes=amps, tail_flagged=flagged)


def basis_state(m: int, n_max: int | None = None) -> FockVector:
    """Number state |m>."""
    if n_max is None:
        n_max = default_n_max()
    if not 0 <= m <= n_max:
        raise ValueError(f"basis index m={m} outside 0..{n_max}")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[m] = 1.0
    return FockVector(n_max=n_max, amplitudes=amps)


def coherent(alpha: complex, n_max: int | None = None) -> FockVector:
    """Coherent state amplitudes alpha^m e^{-|alpha|^2/2}/sqrt(m!), renormalized.

    The sqrt(m!) is folded in by iterative ratio updates so no factorial is
    ever formed (safe past m = 170). The tail flag is set when |alpha|^2
    exceeds n_max or when the truncated tail mass is above TAIL_TOL.
    """
    if n_max is None:
        n_max = default_n_max()
    amps = np.empty(n_max + 1, dtype=complex)
    amps[0] = 1.0
    for m in range(n_max):
        amps[m + 1] = amps[m] * alpha / np.sqrt(m + 1.0)
    amps *= np.exp(-abs(alpha) ** 2 / 2)
    flagged = abs(alpha) ** 2 > n_max or np.abs(amps[-1]) ** 2 > TAIL_TOL
    amps /= np.linalg.norm(amps)
    return FockVector(n_max=n_max, amplitudes=amps, tail_flagged=bool(flagged))


def normalize(state: FockVector) -> FockVector:
    nrm = state.norm
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return FockVector(state.n_max, state.amplitudes / nrm, state.tail_flagged)


def rotate(state: FockVector, theta: float) -> FockVector:
    """R(theta) = exp(-i theta n): amplitude m picks up exp(-i theta m)."""
    m = np.arange(state.n_max + 1)
    return FockVector(state.n_max, state.amplitudes * np.exp(-1j * theta * m),
                      state.tail_flagged)


def conjugate(state: FockVector) -> FockVector:
    """Complex conjugation of the number-basis amplitudes."""
    return FockVector(state.n_max, np.conj(state.amplitudes), state.tail_flagged)


def inversion(state: FockVector, r: int, n: int) -> FockVector:
    """U_r = C R(theta_r): amplitude m of the result is A_m^* e^{i theta_r m}.

    These are the reflection elements completing C_n to the dihedral group
    D_n; r is the 1-based element index with theta_r = 2 pi (r-1)/n.
    """
    if not 1 <= r <= n:
        raise ValueError(f"element index r={r} outside 1..{n}")
    th = 2.0 * np.pi * (r - 1) / n
    m = np.arange(state.n_max + 1)
    return FockVector(state.n_max, np.conj(state.amplitudes) * np.exp(1j * th * m),
                      state.tail_flagged)


def inner(bra: FockVector, ket: FockVector) -> complex:
    """<bra|ket> = sum_m A_m(bra)^* A_m(ket); shorter vector is zero-padded."""
    a, b = bra.amplitudes, ket.amplitudes
    k = min(a.size, b.size)  # padding contributes nothing
    return complex(np.vdot(a[:k], b[:k]))


def fidelity(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2 for unit vectors; inputs are normalized defensively."""
    na, nb = a.norm, b.norm
    if na == 0.0 or nb == 0.0:
        raise ValueError("fidelity of a zero vector is undefined")
    return float(abs(inner(a, b)) ** 2 / (na * nb) ** 2)


def phase_aligned_distance(a: FockVector, b: FockVector) -> float:
    """min over phi of max_m |A_m(a) - e^{i phi} A_m(b)|.

    Global-phase-blind sup distance. The minimum is located by a coarse
    phase scan refined by golden-section search; the objective is
    continuous and unimodal near its minimum, and the scan is fine enough
    (512 samples) to bracket the global one.
    """
    av, bv = a.amplitudes, b.amplitudes
    k = max(av.size, bv.size)
    av = np.pad(av, (0, k - av.size))
    bv = np.pad(bv, (0, k - bv.size))

    def objective(phi):
        return np.abs(av - np.exp(1j * phi) * bv).max()

    phis = np.linspace(0.0, 2 * np.pi, 512, endpoint=False)
    vals = [objective(p) for p in phis]
    i = int(np.argmin(vals))
    lo, hi = phis[i] - 2 * np.pi / 512, phis[i] + 2 * np.pi / 512
    golden = (np.sqrt(5.0) - 1) / 2
    c = hi - golden * (hi - lo)
    d = lo + golden * (hi - lo)
    for _ in range(60):
        if objective(c) < objective(d):
            hi = d
        else:
            lo = c
        c = hi - golden * (hi - lo)
        d = lo + golden * (hi - lo)
    return float(objective((lo + hi) / 2))


def quadrature_means(state: FockVector) -> QuadratureMeans:
    """<x> and <p> from <a> = sum_m sqrt(m+1) A_m^* A_{m+1}.

    <x> = sqrt(2) Re <a>, <p> = sqrt(2) Im <a>; sign convention fixed so
    coherent(alpha real > 0) gives <x> = sqrt(2) alpha, <p> = 0.
    """
    A = state.amplitudes
    m = np.arange(1, A.size)
    a_mean = np.vdot(A[:-1], np.sqrt(m) * A[1:])
    return QuadratureMeans(mean_x=float(np.sqrt(2) * a_mean.real),
                           mean_p=float(np.sqrt(2) * a_mean.imag))


def photon_moments(state: FockVector) -> tuple[float, float, np.ndarray]:
    """(<n>, <n^2>, p_m) with p_m = |A_m|^2."""
    p = np.abs(state.amplitudes) ** 2
    m = np.arange(p.size)
    return float((m * p).sum()), float((m * m * p).sum()), p


def residue_class_masses(state: FockVector, n: int) -> np.ndarray:
    """w_lam for lam = 1..n: mass on photon numbers m = lam - 1 (mod n)."""
    p = np.abs(state.amplitudes) ** 2
    m = np.arange(p.size)
    return np.array([p[(m - (lam - 1)) % n == 0].sum() for lam in range(1, n + 1)])


def check_noninvariant(state: FockVector, n: int, lam: int,
                       tol: float = 1e-12) -> NoninvarianceReport:
    """Diagnose the (n, lam) construction preconditions for a seed state.

    A displaced mean quadrature is sufficient for the seed not to be
    rotation invariant, but the sharp constructibility criterion is a
    nonzero residue-class mass w_lam; both are reported.
    """
    if not 1 <= lam <= n:
        raise ValueError(f"irrep index lam={lam} outside 1..{n}")
    q = quadrature_means(state)
    w = float(residue_class_masses(state, n)[lam - 1])
    return NoninvarianceReport(
        quadrature_noninvariant=bool(max(abs(q.mean_x), abs(q.mean_p)) > tol),
        class_mass=w,
        constructible=bool(w > tol * tol),
        mean_x=q.mean_x,
        mean_p=q.mean_p,
    )


def pure_density(state: FockVector) -> FockOperator:
    """Rank-one density matrix |psi><psi| of a unit-normalized state."""
    psi = normalize(state).amplitudes
    return FockOperator(state.n_max, np.outer(psi, np.conj(psi)))


def annihilate(state: FockVector) -> FockVector:
    """a|psi>: amplitude m of the result is sqrt(m+1) A_{m+1}. Unnormalized."""
    A = state.amplitudes
    out = np.zeros_like(A)
    m = np.arange(1, A.size)
    out[:-1] = np.sqrt(m) * A[1:]
    return FockVector(state.n_max, out, state.tail_flagged)


# ---------------------------------------------------------------------------
# JSON interchange: {"n_max": N, "amplitudes": [[re, im], ...]} with exactly
# N+1 pairs; operators use "matrix", row-major, (N+1)^2 pairs.

def vector_to_dict(state: FockVector) -> dict:
    return {
        "n_max": int(state.n_max),
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
    }


def vector_from_dict(data: dict) -> FockVector:
    try:
        n_max = int(data["n_max"])
        pairs = data["amplitudes"]
        if len(pairs) != n_max + 1:
            raise ValueError(
                f"expected {n_max + 1} amplitude pairs, got {len(pairs)}"
            )
        amps = np.array([complex(re, im) for re, im in pairs])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state JSON: {exc}") from exc
    return from_amplitudes(amps, n_max)


def operator_to_dict(op: FockOperator) -> dict:
    return {
        "n_max": int(op.n_max),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in op.matrix],
    }


def operator_from_dict(data: dict) -> FockOperator:
    try:
        n_max = int(data["n_max"])
        rows = data["matrix"]
        d = n_max + 1
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"expected a {d}x{d} matrix")
        mat = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed operator JSON: {exc}") from exc
    return FockOperator(n_max=n_max, matrix=mat)
