import numpy as np
import pytest

from polystate.fock import (
    basis_state,
    coherent,
    fidelity,
    from_amplitudes,
    normalize,
    pure_density,
)
from polystate.fock import FockOperator
from polystate.group import mu
from polystate.cyclic import (
    CyclicSpec,
    EmptyRepresentationError,
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


def test_spec_validation():
    with pytest.raises(ValueError):
        CyclicSpec(0, 1)
    with pytest.raises(ValueError):
        CyclicSpec(3, 0)
    with pytest.raises(ValueError):
        CyclicSpec(3, 4)


# ---- superposition route ----

def test_superposition_even_class_projection():
    phi = normalize(from_amplitudes(np.array([1.0, 1.0, 0.0])))
    psi, _ = cyclic_superposition(phi, CyclicSpec(2, 1))
    assert np.abs(psi.amplitudes - basis_state(0, 2).amplitudes).max() < 1e-15


def test_superposition_trivial_group_is_identity():
    phi = coherent(0.7 + 0.2j, 24)
    psi, rec = cyclic_superposition(phi, CyclicSpec(1, 1))
    assert np.abs(psi.amplitudes - phi.amplitudes).max() < 1e-14
    assert rec.n_lambda == pytest.approx(1.0)


def test_superposition_cat_states():
    alpha = 1.3
    phi = coherent(alpha, 48)
    plus = coherent(alpha, 48).amplitudes + coherent(-alpha, 48).amplitudes
    minus = coherent(alpha, 48).amplitudes - coherent(-alpha, 48).amplitudes
    even_cat = from_amplitudes(plus / np.linalg.norm(plus))
    odd_cat = from_amplitudes(minus / np.linalg.norm(minus))
    for lam, cat in ((1, even_cat), (2, odd_cat)):
        psi, _ = cyclic_superposition(phi, CyclicSpec(2, lam))
        assert 1.0 - fidelity(psi, cat) < 1e-12
        # the erasure route carries the real-positive representative
        er = cyclic_erasure(phi, CyclicSpec(2, lam))
        assert np.abs(er.amplitudes - cat.amplitudes).max() < 1e-13


def test_normalization_record_invariant():
    phi = coherent(1.1 + 0.4j, 40)
    for n in (2, 3, 5):
        for lam in range(1, n + 1):
            rec = normalization_record(phi, CyclicSpec(n, lam))
            assert abs(rec.n_lambda) * rec.raw_norm == pytest.approx(1.0, abs=1e-12)
            assert rec.phase_convention == "erasure-real-positive"


def test_empty_sector_raises_with_diagnostics():
    with pytest.raises(EmptyRepresentationError) as exc:
        cyclic_superposition(basis_state(0, 8), CyclicSpec(3, 2))
    msg = str(exc.value)
    assert "n=3" in msg and "lam=2" in msg and "masses" in msg
    assert exc.value.masses[0] == pytest.approx(1.0)


# ---- erasure route ----

def test_erasure_single_survivor():
    phi = normalize(from_amplitudes(np.array([1.0, 1.0, 1.0]) / np.sqrt(3)))
    out = cyclic_erasure(phi, CyclicSpec(3, 2))
    assert np.abs(out.amplitudes - basis_state(1, 2).amplitudes).max() < 1e-15


def test_erasure_identity_on_image():
    psi = cyclic_erasure(coherent(1.0, 30), CyclicSpec(3, 1))
    again = cyclic_erasure(psi, CyclicSpec(3, 1))
    assert np.abs(again.amplitudes - psi.amplitudes).max() < 1e-15


def test_route_equivalence_seeded():
    rng = np.random.default_rng(99)
    amps = rng.normal(size=33) + 1j * rng.normal(size=33)
    phi = from_amplitudes(amps / np.linalg.norm(amps))
    spec = CyclicSpec(5, 3)
    er = cyclic_erasure(phi, spec)
    sup, _ = cyclic_superposition(phi, spec)
    assert np.abs(er.amplitudes - mu(5) ** (1 - 3) * sup.amplitudes).max() < 1e-12


def test_cyclic_set_skips_empty_sectors():
    phi = normalize(from_amplitudes(np.array([1.0, 1.0, 0.0])))
    pairs = cyclic_set(phi, 3)
    assert len(pairs) == 2  # class 2 carries no mass


# ---- rotation eigenphase ----

def test_rotation_full_cycle_is_identity():
    psi, _ = cyclic_superposition(coherent(1.0, 40), CyclicSpec(4, 2))
    fid, phase = rotation_phase_check(psi, CyclicSpec(4, 2), 4)
    assert fid == pytest.approx(1.0, abs=1e-12)
    assert phase < 1e-12


def test_rotation_trivial_irrep_phase_zero():
    psi, _ = cyclic_superposition(coherent(1.0, 40), CyclicSpec(3, 1))
    for l in (1, 2, 3):
        fid, phase = rotation_phase_check(psi, CyclicSpec(3, 1), l)
        assert fid == pytest.approx(1.0, abs=1e-12)
        assert phase < 1e-12


def test_rotation_phase_n4_lam3_l2():
    # mu_4^((1-3)*2) = mu_4^(-4) = 1, so the picked-up phase vanishes
    psi, _ = cyclic_superposition(coherent(1.0, 40), CyclicSpec(4, 3))
    fid, phase = rotation_phase_check(psi, CyclicSpec(4, 3), 2)
    assert fid == pytest.approx(1.0, abs=1e-12)
    assert phase < 1e-12


def test_rotation_every_element():
    psi, _ = cyclic_superposition(coherent(1.2, 48), CyclicSpec(5, 4))
    for l in range(1, 6):
        fid, phase = rotation_phase_check(psi, CyclicSpec(5, 4), l)
        assert abs(fid - 1.0) < 1e-10
        assert phase < 1e-10


# ---- density matrices ----

def test_density_invariant_input_unchanged():
    rho = pure_density(basis_state(0, 4))
    out = cyclic_density(rho, CyclicSpec(2, 1))
    assert np.abs(out.matrix - rho.matrix).max() < 1e-14


def test_density_pure_state_matches_erasure_outer_product():
    phi = coherent(1.0, 24)
    spec = CyclicSpec(3, 2)
    out = cyclic_density(pure_density(phi), spec)
    er = cyclic_erasure(phi, spec)
    expected = np.outer(er.amplitudes, np.conj(er.amplitudes))
    assert np.abs(out.matrix - expected).max() < 1e-12


def test_density_mixture_class_projection():
    half = 0.5 * (pure_density(basis_state(0, 4)).matrix
                  + pure_density(basis_state(1, 4)).matrix)
    rho = FockOperator(4, half)
    out = cyclic_density(rho, CyclicSpec(2, 2))
    expected = pure_density(basis_state(1, 4)).matrix
    assert np.abs(out.matrix - expected).max() < 1e-14


def test_density_route_gap_small():
    rho = pure_density(coherent(0.9 + 0.5j, 20))
    assert density_route_gap(rho, CyclicSpec(4, 2)) < 1e-13


def test_density_empty_sector_raises():
    with pytest.raises(EmptyRepresentationError):
        cyclic_density(pure_density(basis_state(0, 6)), CyclicSpec(2, 2))


# ---- circle limit ----

def test_circle_limit_vacuum_component():
    out = circle_limit(coherent(0.8, 24), 1)
    assert np.abs(out.amplitudes - basis_state(0, 24).amplitudes).max() < 1e-14


def test_circle_limit_number_state_selection():
    out = circle_limit(coherent(1.0, 24), 3)
    assert np.abs(out.amplitudes - basis_state(2, 24).amplitudes).max() < 1e-14


def test_circle_limit_fixed_point():
    out = circle_limit(basis_state(5, 8), 6)
    np.testing.assert_array_equal(out.amplitudes, basis_state(5, 8).amplitudes)


def test_circle_limit_quadrature_gap():
    assert circle_limit_quadrature_gap(coherent(1.0, 32), 2) < 1e-10


def test_circle_limit_empty_raises():
    with pytest.raises(EmptyRepresentationError):
        circle_limit(basis_state(5, 8), 1)


# ---- dihedral states ----

def test_dihedral_sum_matches_cyclic_for_real_seed():
    phi = coherent(1.1, 32)  # real alpha, real amplitudes
    for lam in (1, 2):
        gamma, rec = dihedral_state(phi, CyclicSpec(2, lam), "sum")
        psi, _ = cyclic_superposition(phi, CyclicSpec(2, lam))
        assert 1.0 - fidelity(gamma, psi) < 1e-12
        assert rec.phase_convention == "real-positive"
        assert np.abs(gamma.amplitudes.imag).max() < 1e-14


def test_dihedral_difference_vanishes_for_real_seed():
    with pytest.raises(EmptyRepresentationError):
        dihedral_state(coherent(1.1, 32), CyclicSpec(2, 1), "difference")


def test_dihedral_variants_reality_structure():
    # sum amplitudes real, difference purely imaginary; both unit norm
    phi = coherent(1.0 + 0.8j, 40)
    gs, _ = dihedral_state(phi, CyclicSpec(3, 2), "sum")
    gd, _ = dihedral_state(phi, CyclicSpec(3, 2), "difference")
    assert np.abs(gs.amplitudes.imag).max() < 1e-14
    assert np.abs(gd.amplitudes.real).max() < 1e-14
    assert gs.norm == pytest.approx(1.0, abs=1e-12)
    assert gd.norm == pytest.approx(1.0, abs=1e-12)


def test_dihedral_invalid_variant():
    with pytest.raises(ValueError):
        dihedral_state(coherent(1.0, 16), CyclicSpec(2, 1), "product")


def test_dihedral_inversion_eigenstate():
    phi = coherent(1.0 + 0.8j, 40)
    n = 3
    for lam in (1, 2, 3):
        for variant, sign in (("sum", 1.0), ("difference", -1.0)):
            gamma, _ = dihedral_state(phi, CyclicSpec(n, lam), variant)
            for l in range(n):
                fid, phase = dihedral_inversion_check(gamma, CyclicSpec(n, lam), l)
                assert fid == pytest.approx(1.0, abs=1e-10)
                predicted = sign * mu(n) ** ((lam - 1) * l)
                assert abs(phase - predicted) < 1e-10


def test_dihedral_gram_identity():
    g = dihedral_gram(coherent(1.0 + 0.8j, 40), 3, "sum")
    assert np.abs(g - np.eye(3)).max() < 1e-10


# ---- annihilation shift ----

def test_annihilation_shift_odd_cat():
    psi, _ = cyclic_superposition(coherent(1.0, 48), CyclicSpec(2, 2))
    shifted, new_lam = annihilation_irrep_shift(psi, CyclicSpec(2, 2))
    assert new_lam == 1
    w = np.abs(shifted.amplitudes[1::2]) ** 2
    assert w.sum() < 1e-24  # support moved to the even class


def test_annihilation_shift_wraps():
    psi, _ = cyclic_superposition(coherent(1.0, 48), CyclicSpec(3, 1))
    _, new_lam = annihilation_irrep_shift(psi, CyclicSpec(3, 1))
    assert new_lam == 3


def test_annihilation_n_cycle():
    n, lam = 3, 2
    state, cur = cyclic_superposition(coherent(1.0, 48), CyclicSpec(n, lam))[0], lam
    for _ in range(n):
        state, cur = annihilation_irrep_shift(state, CyclicSpec(n, cur))
    assert cur == lam
    m = np.arange(state.n_max + 1)
    off = np.abs(state.amplitudes[(m - (lam - 1)) % n != 0]).max()
    assert off < 1e-12
