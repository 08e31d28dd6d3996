"""Finite-dimensional angular-momentum algebra for a single spin-J system.

Everything lives in the J_z eigenbasis with basis index i running over
mu = -J ... +J in ascending order (i = mu + J).  Total spin is stored as
the integer 2J so half-integer J is exact.  All values are immutable
after construction and every operation is a pure function of its inputs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import NonHermitianGenerator

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORM_TOL = 1e-8

AXES = ("x", "y", "z")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinQuantum:
    """Total spin of the symmetric sector, stored doubled: two_j = 2J = N."""

    two_j: int

    def __post_init__(self):
        if not isinstance(self.two_j, (int, np.integer)) or self.two_j < 1:
            raise ValueError(f"two_j must be a positive integer, got {self.two_j!r}")

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def n_particles(self) -> int:
        return self.two_j

    def mu_values(self) -> np.ndarray:
        """Eigenvalues mu = -J ... +J in basis-index order."""
        return np.arange(self.dim) - self.j


@dataclass(frozen=True)
class SpinState:
    """Normalized pure state, coefficients over the J_z eigenbasis.

    The constructor snaps the norm to 1 (tolerating drift up to 1e-8,
    e.g. from a unitary application) and stores a read-only copy.
    """

    j: SpinQuantum
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.j.dim,):
            raise ValueError(f"expected {self.j.dim} coefficients, got shape {c.shape}")
        norm = np.linalg.norm(c)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"coefficient vector is not normalized (norm={norm})")
        object.__setattr__(self, "coeffs", _frozen(c / norm))

    def expectation(self, matrix: np.ndarray) -> complex:
        return complex(np.vdot(self.coeffs, matrix @ self.coeffs))

    def overlap(self, other: "SpinState") -> complex:
        return complex(np.vdot(self.coeffs, other.coeffs))

    def fidelity(self, other: "SpinState") -> float:
        return abs(self.overlap(other)) ** 2

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.coeffs, self.coeffs.conj())


class SpinOperator:
    """Dense operator on the spin-J space with measured symmetry flags.

    The hermitian/unitary flags are computed from the matrix at
    construction time, never trusted from the caller.
    """

    __slots__ = ("j", "matrix", "hermitian", "unitary")

    def __init__(self, j: SpinQuantum, matrix: np.ndarray):
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (j.dim, j.dim):
            raise ValueError(f"expected a {j.dim}x{j.dim} matrix, got shape {m.shape}")
        self.j = j
        self.matrix = _frozen(m.copy())
        self.hermitian = bool(np.max(np.abs(m - m.conj().T)) < HERMITIAN_TOL)
        gram = m.conj().T @ m
        self.unitary = bool(np.max(np.abs(gram - np.eye(j.dim))) < UNITARY_TOL)

    def dagger(self) -> "SpinOperator":
        return SpinOperator(self.j, self.matrix.conj().T)

    def apply(self, state: SpinState) -> SpinState:
        c = self.matrix @ state.coeffs
        return SpinState(state.j, c / np.linalg.norm(c))

    def __matmul__(self, other: "SpinOperator") -> "SpinOperator":
        if self.j != other.j:
            raise ValueError("operator dimensions differ")
        return SpinOperator(self.j, self.matrix @ other.matrix)

    def __repr__(self):
        return (f"SpinOperator(two_j={self.j.two_j}, hermitian={self.hermitian}, "
                f"unitary={self.unitary})")


@functools.lru_cache(maxsize=64)
def _spin_matrices(two_j: int):
    """Cached (J_x, J_y, J_z) matrices in the J_z eigenbasis (read-only)."""
    j = two_j / 2
    mu = np.arange(two_j) - j  # mu = -J ... J-1
    ladder = np.sqrt(j * (j + 1) - mu * (mu + 1))
    jp = np.diag(ladder.astype(complex), -1)  # <mu+1|J_+|mu> entries
    jx = (jp + jp.conj().T) / 2
    jy = (jp - jp.conj().T) / 2j
    jz = np.diag((np.arange(two_j + 1) - j).astype(complex))
    return _frozen(jx), _frozen(jy), _frozen(jz)


def angular_momentum_operator(j: SpinQuantum, axis: str) -> SpinOperator:
    """Standard spin-J component matrix J_axis in the J_z eigenbasis.

    Satisfies [J_x, J_y] = i J_z and cyclic permutations.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    jx, jy, jz = _spin_matrices(j.two_j)
    return SpinOperator(j, {"x": jx, "y": jy, "z": jz}[axis])


def ladder_about_x(j: SpinQuantum) -> tuple[SpinOperator, SpinOperator]:
    """Raising and lowering operators about the x axis: J_pm = J_y +- i J_z."""
    _, jy, jz = _spin_matrices(j.two_j)
    return SpinOperator(j, jy + 1j * jz), SpinOperator(j, jy - 1j * jz)


# Transverse raising operator used to fix eigenvector phases per axis.
# For the y basis the choice J_x - i J_z makes real-coefficient
# superpositions of adjacent |J,m>_y states point along +x, which is the
# orientation convention used by every factory state.  For the x basis the
# raising operator about x itself (J_y + i J_z) plays the same role with
# the +y direction.
def _phase_ladder(two_j: int, axis: str) -> np.ndarray:
    jx, jy, jz = _spin_matrices(two_j)
    return {"x": jy + 1j * jz, "y": jx - 1j * jz}[axis]


def _anchor_phase(v: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component real positive (lowest index on ties)."""
    mags = np.abs(v)
    k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    return v * np.conj(v[k] / mags[k])


def eigenbasis(j: SpinQuantum, axis: str) -> list[tuple[float, np.ndarray]]:
    """Orthonormal eigenvectors of J_axis with eigenvalues mu = -J ... +J.

    Returned in ascending-mu order as (eigenvalue, vector) pairs, vectors
    expressed in the J_z basis.  Phases are fixed deterministically: the
    lowest-mu vector has its largest component real positive, and each
    subsequent vector's phase is chosen so the transverse raising matrix
    element connecting it to its predecessor is real positive.  This is
    the convention under which the package's x-oriented states come out
    with real, positive-sign coefficient patterns.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    dim = j.dim
    if axis == "z":
        vals = j.mu_values()
        eye = np.eye(dim, dtype=complex)
        return [(float(vals[i]), _frozen(eye[:, i].copy())) for i in range(dim)]

    op = angular_momentum_operator(j, axis)
    vals, vecs = np.linalg.eigh(op.matrix)
    ladder = _phase_ladder(j.two_j, axis)
    vecs[:, 0] = _anchor_phase(vecs[:, 0])
    for k in range(1, dim):
        t = np.vdot(vecs[:, k], ladder @ vecs[:, k - 1])
        # scaling v_k by t/|t| turns <v_k|ladder|v_{k-1}> into |t| > 0
        vecs[:, k] *= t / abs(t)
    return [(float(vals[i]), _frozen(vecs[:, i].copy())) for i in range(dim)]


def basis_matrix(j: SpinQuantum, axis: str) -> np.ndarray:
    """Eigenbasis of J_axis as columns (ascending mu), phases as in eigenbasis()."""
    return np.column_stack([v for _, v in eigenbasis(j, axis)])


def unitary_exp(generator: SpinOperator, scale: float) -> SpinOperator:
    """exp(-i * scale * generator) for a Hermitian generator.

    Computed by eigendecomposition of the generator, which keeps the
    result unitary up to diagonalization error.

    Raises NonHermitianGenerator if the generator fails the 1e-12
    Hermiticity check.
    """
    m = generator.matrix
    defect = np.max(np.abs(m - m.conj().T))
    if defect > HERMITIAN_TOL:
        raise NonHermitianGenerator(f"generator deviates from Hermitian by {defect:.3e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    u = (v * np.exp(-1j * scale * w)) @ v.conj().T
    return SpinOperator(generator.j, u)


def rotate_about_z(state: SpinState, varphi: float) -> SpinState:
    """Apply exp(-i * varphi * J_z): c_mu -> exp(-i mu varphi) c_mu."""
    phases = np.exp(-1j * state.j.mu_values() * varphi)
    return SpinState(state.j, phases * state.coeffs)
