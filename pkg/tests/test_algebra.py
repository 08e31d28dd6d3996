"""Operator algebra: matrices, eigenbases, exponentials, z-rotations."""

import numpy as np
import pytest

from spinphase import (
    NonHermitianGenerator,
    SpinOperator,
    SpinQuantum,
    SpinState,
    angular_momentum_operator,
    basis_matrix,
    coherent_state,
    eigenbasis,
    ladder_about_x,
    noon_state,
    rotate_about_z,
    unitary_exp,
    yurke_state,
)


def op(two_j, axis):
    return angular_momentum_operator(SpinQuantum(two_j), axis).matrix


def test_spin_quantum_validation():
    assert SpinQuantum(1).dim == 2
    assert SpinQuantum(7).j == 3.5
    assert SpinQuantum(10).n_particles == 10
    with pytest.raises(ValueError):
        SpinQuantum(0)
    with pytest.raises(ValueError):
        SpinQuantum(2.0)


def test_pauli_halves():
    assert np.allclose(op(1, "z"), np.diag([-0.5, 0.5]))
    assert np.allclose(op(1, "x"), [[0, 0.5], [0.5, 0]])
    assert np.allclose(op(1, "y"), [[0, 0.5j], [-0.5j, 0]])


def test_spin_one_z_and_commutator():
    assert np.allclose(op(2, "z"), np.diag([-1.0, 0.0, 1.0]))
    jx, jy, jz = (op(2, a) for a in "xyz")
    assert np.max(np.abs(jx @ jy - jy @ jx - 1j * jz)) < 1e-14


@pytest.mark.parametrize("two_j", [1, 2, 3, 8, 41, 200])
def test_commutation_cyclic(two_j):
    mats = {a: op(two_j, a) for a in "xyz"}
    # the product entries are O(J^2), so the achievable absolute error
    # grows with J^2 eps; the flat 1e-12 floor covers two_j up to ~120
    tol = max(1e-12, 1.5 * np.finfo(float).eps * (two_j / 2) ** 2)
    for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        assert np.max(np.abs(comm - 1j * mats[c])) < tol


@pytest.mark.parametrize("two_j", [1, 2, 9, 40])
def test_casimir(two_j):
    j = two_j / 2
    total = sum(op(two_j, a) @ op(two_j, a) for a in "xyz")
    assert np.max(np.abs(total - j * (j + 1) * np.eye(two_j + 1))) < 1e-10


def test_operator_flags_measured():
    j = SpinQuantum(4)
    assert angular_momentum_operator(j, "y").hermitian
    assert not angular_momentum_operator(j, "y").unitary
    u = unitary_exp(angular_momentum_operator(j, "z"), 0.37)
    assert u.unitary and not u.hermitian
    ident = SpinOperator(j, np.eye(5))
    assert ident.hermitian and ident.unitary


def test_ladder_about_x_definition_and_dagger():
    j = SpinQuantum(1)
    jp, jm = ladder_about_x(j)
    jy, jz = op(1, "y"), op(1, "z")
    assert np.allclose(jp.matrix, jy + 1j * jz)
    assert np.allclose(jm.matrix, jp.matrix.conj().T)


def test_ladder_annihilates_top_x_state():
    j = SpinQuantum(2)
    jp, _ = ladder_about_x(j)
    top = eigenbasis(j, "x")[-1][1]  # mu = +1 eigenvector of J_x
    assert np.linalg.norm(jp.matrix @ top) < 1e-12


def test_ladder_squares_antihermitian():
    jp, jm = ladder_about_x(SpinQuantum(4))
    a = jp.matrix @ jp.matrix - jm.matrix @ jm.matrix
    assert np.max(np.abs(a + a.conj().T)) < 1e-12


def test_eigenbasis_z_is_standard_basis():
    j = SpinQuantum(1)
    basis = eigenbasis(j, "z")
    assert [mu for mu, _ in basis] == [-0.5, 0.5]
    assert np.allclose(basis[0][1], [1, 0])
    assert np.allclose(basis[1][1], [0, 1])


def test_eigenbasis_x_spin1_overlaps():
    # |<J,mu|_z |1,+1>_x|^2 from diagonalizing the 3x3 J_x by hand
    vec = eigenbasis(SpinQuantum(2), "x")[-1][1]
    assert np.allclose(np.abs(vec) ** 2, [0.25, 0.5, 0.25], atol=1e-12)


@pytest.mark.parametrize("two_j", [1, 2, 5, 20])
@pytest.mark.parametrize("axis", ["x", "y", "z"])
def test_eigenbasis_orthonormal_and_eigenvalues(two_j, axis):
    j = SpinQuantum(two_j)
    basis = eigenbasis(j, axis)
    v = np.column_stack([vec for _, vec in basis])
    assert np.max(np.abs(v.conj().T @ v - np.eye(j.dim))) < 1e-12
    expected = np.arange(j.dim) - j.j
    assert np.max(np.abs(np.array([mu for mu, _ in basis]) - expected)) < 1e-10
    m = angular_momentum_operator(j, axis).matrix
    for mu, vec in basis:
        assert np.linalg.norm(m @ vec - mu * vec) < 1e-10


def test_eigenbasis_deterministic():
    a = basis_matrix(SpinQuantum(12), "y")
    b = basis_matrix(SpinQuantum(12), "y")
    assert np.array_equal(a, b)


def test_unitary_exp_zero_scale_is_identity():
    j = SpinQuantum(6)
    u = unitary_exp(angular_momentum_operator(j, "x"), 0.0)
    assert np.max(np.abs(u.matrix - np.eye(j.dim))) < 1e-14


def test_unitary_exp_full_turn_integer_spin():
    j = SpinQuantum(8)  # integer J = 4
    u = unitary_exp(angular_momentum_operator(j, "z"), 2 * np.pi)
    assert np.max(np.abs(u.matrix - np.eye(j.dim))) < 1e-10


def test_unitary_exp_diagonal_action():
    j = SpinQuantum(4)
    phi = 0.83
    u = unitary_exp(angular_momentum_operator(j, "z"), phi)
    expected = np.exp(-1j * j.mu_values() * phi)
    assert np.max(np.abs(np.diag(u.matrix) - expected)) < 1e-12
    off = u.matrix - np.diag(np.diag(u.matrix))
    assert np.max(np.abs(off)) < 1e-14


def test_unitary_exp_rejects_nonhermitian():
    j = SpinQuantum(2)
    jp, _ = ladder_about_x(j)
    with pytest.raises(NonHermitianGenerator):
        unitary_exp(jp, 1.0)


@pytest.mark.parametrize("scale", [-10.0, -1.3, 2.7, 10.0])
def test_unitary_exp_unitarity(scale):
    j = SpinQuantum(15)
    gen = angular_momentum_operator(j, "y")
    u = unitary_exp(gen, scale).matrix
    assert np.max(np.abs(u.conj().T @ u - np.eye(j.dim))) < 1e-10


def test_rotate_zero_is_identity():
    st = coherent_state(SpinQuantum(6))
    assert np.array_equal(rotate_about_z(st, 0.0).coeffs, st.coeffs)


def test_rotate_preserves_norm():
    st = coherent_state(SpinQuantum(11))
    rot = rotate_about_z(st, 1.234)
    assert abs(np.linalg.norm(rot.coeffs) - 1) < 1e-12


def test_noon_invariant_under_2pi_over_n():
    for n in (4, 10, 20):
        st = noon_state(SpinQuantum(n))
        rot = rotate_about_z(st, 2 * np.pi / n)
        assert rot.fidelity(st) > 1 - 1e-12


def test_near_yurke_invariant_under_pi():
    st = yurke_state(SpinQuantum(10), 1e-6)
    rot = rotate_about_z(st, np.pi)
    assert rot.fidelity(st) > 1 - 1e-10


def test_spin_state_validation():
    j = SpinQuantum(2)
    with pytest.raises(ValueError):
        SpinState(j, np.array([1.0, 0.0]))  # wrong length
    with pytest.raises(ValueError):
        SpinState(j, np.array([1.0, 1.0, 0.0]))  # badly unnormalized
    # small drift is snapped back to norm 1
    c = np.array([1.0, 0.0, 0.0]) * (1 + 5e-9)
    st = SpinState(j, c)
    assert abs(np.linalg.norm(st.coeffs) - 1) < 1e-15


def test_state_is_immutable():
    st = coherent_state(SpinQuantum(4))
    with pytest.raises(ValueError):
        st.coeffs[0] = 1.0
