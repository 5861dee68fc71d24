import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.stats import binom

from noonlab.cli import commutator_tolerance
from noonlab.schwinger import (
    Axis,
    RotationSpec,
    basis_change_matrix,
    casimir_defect,
    change_basis,
    commutator_defect,
    expectation,
    j_operators,
    rotate,
    rotation_matrix,
    squeezing_relation_residual,
    variance,
)
from noonlab.states import Basis, build_eta_state, fock_state, from_amplitudes, noon_state


def random_state(n, seed, basis=Basis.INPUT):
    rng = np.random.default_rng(seed)
    return from_amplitudes(n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1), basis)


@pytest.mark.parametrize("basis", list(Basis))
@pytest.mark.parametrize("n", [1, 5, 40])
def test_algebra(n, basis):
    assert commutator_defect(n, basis) <= 1e-12
    assert casimir_defect(n, basis) <= 1e-10


def test_algebra_up_to_200():
    for n in range(1, 201):
        assert commutator_defect(n) <= commutator_tolerance(n), n
        assert casimir_defect(n) <= 1e-10


def test_input_operator_structure():
    j1, j2, j3 = j_operators(6)
    np.testing.assert_array_equal(np.diag(j1.matrix).real, [3, 2, 1, 0, -1, -2, -3])
    off = np.sqrt([(k + 1) * (6 - k) for k in range(6)]) / 2
    np.testing.assert_allclose(np.abs(np.diag(j2.matrix, 1)), off)
    np.testing.assert_allclose(np.abs(np.diag(j3.matrix, 1)), off)
    assert np.count_nonzero(np.triu(j3.matrix, 2)) == 0


def test_path_operators_are_rotated_input_operators():
    for n in (1, 4, 9):
        u = basis_change_matrix(n, Basis.INPUT, Basis.PATH)
        for a, b in zip(j_operators(n, Basis.INPUT), j_operators(n, Basis.PATH)):
            np.testing.assert_allclose(u @ a.matrix @ u.conj().T, b.matrix, atol=1e-12)
        j3p = j_operators(n, Basis.PATH)[2].matrix
        assert np.count_nonzero(j3p - np.diag(np.diag(j3p))) == 0


@pytest.mark.parametrize("n", [1, 5, 40])
def test_basis_change_convention(n):
    j1, j2, j3 = (op.matrix for op in j_operators(n))
    r = expm(1j * math.pi / 2 * j2)
    np.testing.assert_allclose(r @ j1 @ r.conj().T, j3, atol=1e-12)
    np.testing.assert_allclose(basis_change_matrix(n, Basis.PATH, Basis.INPUT), r, atol=1e-12)


def test_expectations_and_variances_of_reference_states():
    for n in (1, 4, 11):
        top = fock_state(n, 0)
        j1, j2, j3 = j_operators(n)
        assert expectation(j1, top) == n / 2
        assert variance(j2, top) == pytest.approx(n / 4, abs=1e-12)
        np.testing.assert_allclose(j1.matrix @ top.amplitudes, n / 2 * top.amplitudes)
        _, _, j3p = j_operators(n, Basis.PATH)
        assert expectation(j3p, noon_state(n)) == pytest.approx(0, abs=1e-14)
        assert variance(j3p, noon_state(n)) == pytest.approx(n * n / 4, rel=1e-14)


def test_basis_mismatch_is_an_error():
    j1, _, _ = j_operators(4, Basis.INPUT)
    with pytest.raises(ValueError, match="basis"):
        expectation(j1, noon_state(4))
    with pytest.raises(ValueError, match="sector"):
        variance(j1, noon_state(5))


def test_eq8_at_noon_point():
    j1, _, _ = j_operators(60)
    assert abs(expectation(j1, build_eta_state(60, 2.0))) <= 0.05 * 60


def test_noon_point_j2_noise():
    _, j2, _ = j_operators(100)
    assert variance(j2, build_eta_state(100, 2.0)) == pytest.approx(100 / 8, rel=0.15)


@pytest.mark.parametrize("n", [1, 5, 40])
def test_rotation_unitarity(n):
    for basis in Basis:
        for axis in Axis:
            u = rotation_matrix(n, basis, axis, 0.731)
            assert np.abs(u.conj().T @ u - np.eye(n + 1)).max() <= 1e-12


def test_rotation_identity_and_phases():
    s = random_state(7, 1)
    for axis in Axis:
        out = rotate(s, RotationSpec(axis, 0.0))
        np.testing.assert_allclose(out.amplitudes, s.amplitudes, atol=1e-14, rtol=0)
    eig = fock_state(7, 3, Basis.PATH)
    out = rotate(eig, RotationSpec(Axis.J3, 1.234))
    np.testing.assert_allclose(out.probabilities, eig.probabilities, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 30), theta=st.floats(-7, 7), axis=st.sampled_from(list(Axis)),
       basis=st.sampled_from(list(Basis)), seed=st.integers(0, 2**16))
def test_rotation_properties(n, theta, axis, basis, seed):
    s = random_state(n, seed, basis)
    there = rotate(s, RotationSpec(axis, theta))
    back = rotate(there, RotationSpec(axis, -theta))
    assert np.abs(back.amplitudes - s.amplitudes).max() <= 1e-12
    assert abs(np.linalg.norm(there.amplitudes) - 1) <= 1e-12
    assert there.basis is basis
    ops = j_operators(n, basis)
    cas = sum(expectation(op.squared(), there) for op in ops)
    assert cas == pytest.approx(n / 2 * (n / 2 + 1), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 25), phi=st.floats(-4, 4), seed=st.integers(0, 2**16))
def test_heisenberg_picture_phase_rotation(n, phi, seed):
    s = random_state(n, seed)
    j1, j2, _ = j_operators(n)
    moved = rotate(s, RotationSpec(Axis.J3, phi))
    expected = math.cos(phi) * expectation(j2, s) + math.sin(phi) * expectation(j1, s)
    assert expectation(j2, moved) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("n", [1, 5, 40])
def test_basis_round_trip(n):
    s = random_state(n, n)
    back = change_basis(change_basis(s, Basis.PATH), Basis.INPUT)
    assert back.basis is Basis.INPUT
    assert np.abs(back.amplitudes - s.amplitudes).max() <= 1e-12
    assert change_basis(s, Basis.INPUT) is s


def test_pole_goes_to_binomial_in_path_basis():
    for n in (1, 6, 25):
        p = change_basis(fock_state(n, 0), Basis.PATH).probabilities
        np.testing.assert_allclose(p, binom.pmf(np.arange(n + 1), n, 0.5), atol=1e-13)


def test_squeezing_relation_on_eta_states():
    for n in (2, 5, 17, 30):
        for eta in (0.1, 0.5, 1.0, 2.0, 10.0, 4.0 * n):
            assert squeezing_relation_residual(build_eta_state(n, eta), eta) <= 1e-10
    for n in (60, 120):
        for eta in (0.5, 2.0, 4.0 * n):
            assert squeezing_relation_residual(build_eta_state(n, eta), eta) <= 1e-8


def test_squeezing_relation_off_family():
    # brute force: J2|4;0> and J3|4;0> are both nonzero, eta = 2 leaves them unbalanced
    assert squeezing_relation_residual(fock_state(4, 0), 2.0) > 0.1
    for n in (1, 3, 8):
        assert squeezing_relation_residual(fock_state(n, 0), 0.0) == 0.0
